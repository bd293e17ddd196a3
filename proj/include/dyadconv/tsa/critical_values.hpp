#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dyadconv/random.hpp"
#include "dyadconv/tsa/adf.hpp"
#include "dyadconv/tsa/critical_value_table.hpp"

namespace dyadconv::tsa {

inline constexpr std::array<double, 3> kSignificanceLevels{0.01, 0.05, 0.10};

inline std::string to_string(AdfForm f) {
    switch (f) {
        case AdfForm::none: return "none";
        case AdfForm::drift: return "drift";
        case AdfForm::drift_trend: return "drift_trend";
    }
    return "unknown";
}

/// Sample quantile with linear interpolation between order statistics (type 7).
inline double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw std::invalid_argument("quantile: empty sample");
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

/**
 * Draw the Dickey-Fuller null distribution: fit the test regression to
 * `replications` Gaussian random walks of length n and collect the gamma
 * t-ratios.
 */
inline std::vector<double> simulate_null_statistics(AdfForm form, std::size_t lag_order, std::size_t n,
                                                    std::size_t replications, std::uint64_t seed) {
    std::vector<double> stats;
    stats.reserve(replications);
    std::vector<double> walk(n);
    for (std::size_t r = 0; r < replications; ++r) {
        Rng rng(derive_seed(seed, r));
        double level = 0.0;
        for (auto& v : walk) {
            level += rng.normal();
            v = level;
        }
        stats.push_back(adf_regression(walk, lag_order, form).statistic);
    }
    return stats;
}

/// Critical values at 1%, 5% and 10% by key (form, n).
class CriticalValueTable {
public:
    struct Key {
        AdfForm form;
        std::size_t n;
        auto operator<=>(const Key&) const = default;
    };

    void set(AdfForm form, std::size_t n, double level, double value) { values_[{form, n}][level_index(level)] = value; }

    [[nodiscard]] bool empty() const { return values_.empty(); }

    /**
     * Critical value for a series of length n. Between tabulated sizes the
     * value is interpolated linearly in 1/n; outside them the nearest segment
     * is extended, so n -> infinity approaches the asymptotic value.
     */
    [[nodiscard]] double lookup(AdfForm form, double level, std::size_t n) const {
        const std::size_t li = level_index(level);
        std::vector<std::pair<double, double>> pts;  // (1/n, value), ascending in 1/n
        for (const auto& [key, row] : values_) {
            if (key.form == form) pts.emplace_back(1.0 / static_cast<double>(key.n), row[li]);
        }
        if (pts.empty()) throw std::out_of_range("critical value table has no entries for form " + to_string(form));
        std::sort(pts.begin(), pts.end());
        if (pts.size() == 1) return pts.front().second;
        const double x = n == 0 ? 1.0 : 1.0 / static_cast<double>(n);
        std::size_t seg = 0;
        while (seg + 2 < pts.size() && x > pts[seg + 1].first) ++seg;
        const auto [x0, y0] = pts[seg];
        const auto [x1, y1] = pts[seg + 1];
        return y0 + (x - x0) * (y1 - y0) / (x1 - x0);
    }

    [[nodiscard]] nlohmann::json to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [key, row] : values_) {
            for (std::size_t i = 0; i < kSignificanceLevels.size(); ++i) {
                arr.push_back({{"form", to_string(key.form)}, {"n", key.n}, {"level", kSignificanceLevels[i]},
                               {"value", row[i]}});
            }
        }
        return arr;
    }

    static CriticalValueTable from_json(const nlohmann::json& arr) {
        CriticalValueTable t;
        for (const auto& e : arr) {
            const auto f = e.at("form").get<std::string>();
            const AdfForm form = f == "none" ? AdfForm::none : f == "drift" ? AdfForm::drift : AdfForm::drift_trend;
            t.set(form, e.at("n").get<std::size_t>(), e.at("level").get<double>(), e.at("value").get<double>());
        }
        return t;
    }

    /// Table compiled into the library (see tools/gen_critical_values.cpp).
    static const CriticalValueTable& embedded() {
        static const CriticalValueTable table = [] {
            CriticalValueTable t;
            for (const auto& e : kEmbeddedCriticalValues) t.set(e.form, e.n, e.level, e.value);
            return t;
        }();
        return table;
    }

    static std::size_t level_index(double level) {
        for (std::size_t i = 0; i < kSignificanceLevels.size(); ++i) {
            if (std::abs(level - kSignificanceLevels[i]) < 1e-12) return i;
        }
        throw std::invalid_argument("unsupported significance level " + std::to_string(level) +
                                    " (use 0.01, 0.05 or 0.10)");
    }

private:
    std::map<Key, std::array<double, 3>> values_;
};

struct SimulationPlan {
    std::vector<AdfForm> forms{AdfForm::none, AdfForm::drift, AdfForm::drift_trend};
    std::vector<std::size_t> sizes{25, 50, 100, 250, 500, 1000};
    std::size_t lag_order = 3;
    std::size_t replications = 100000;
    std::uint64_t seed = 20160101;
};

inline CriticalValueTable simulate_critical_values(const SimulationPlan& plan) {
    CriticalValueTable table;
    for (AdfForm form : plan.forms) {
        for (std::size_t n : plan.sizes) {
            const auto stats = simulate_null_statistics(form, plan.lag_order, n, plan.replications,
                                                        derive_seed(plan.seed, n * 4 + static_cast<std::size_t>(form)));
            for (double level : kSignificanceLevels) table.set(form, n, level, quantile(stats, level));
        }
    }
    return table;
}

/// Load a previously simulated table from `cache`, or simulate and write it there.
inline CriticalValueTable load_or_simulate(const std::filesystem::path& cache, const SimulationPlan& plan) {
    if (std::filesystem::exists(cache)) {
        std::ifstream in(cache);
        const auto doc = nlohmann::json::parse(in);
        if (doc.value("replications", std::size_t{0}) == plan.replications && doc.value("seed", std::uint64_t{0}) == plan.seed &&
            doc.value("lag_order", std::size_t{0}) == plan.lag_order) {
            return CriticalValueTable::from_json(doc.at("table"));
        }
    }
    CriticalValueTable table = simulate_critical_values(plan);
    nlohmann::json doc{{"replications", plan.replications}, {"seed", plan.seed}, {"lag_order", plan.lag_order},
                       {"table", table.to_json()}};
    if (cache.has_parent_path()) std::filesystem::create_directories(cache.parent_path());
    const auto tmp = cache.string() + ".tmp";
    {
        std::ofstream out(tmp);
        out << doc.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, cache);
    return table;
}

/// Critical value of the Dickey-Fuller distribution for the regression form chosen by `spec`.
inline double critical_value(double significance, std::size_t n, const AdfSpec& spec,
                             const CriticalValueTable& table = CriticalValueTable::embedded()) {
    if (!is_supported_significance(significance)) {
        throw std::invalid_argument("critical_value: significance must be 0.01, 0.05 or 0.10");
    }
    return table.lookup(spec.form(), significance, n);
}

}  // namespace dyadconv::tsa
