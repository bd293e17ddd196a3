#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "dyadconv/error.hpp"

namespace dyadconv::tsa {

template <typename Feature>
struct StrengthScore {
    std::map<Feature, double> scaled;  ///< per-feature score in [0, 1], 1 = strongest convergence
    double composite = 0.0;            ///< unweighted mean of `scaled`
};

namespace detail {

template <typename T>
std::string describe(const T& value) {
    if constexpr (requires { to_string(value); }) {
        return std::string(to_string(value));
    } else if constexpr (requires(std::ostream& os) { os << value; }) {
        std::ostringstream os;
        os << value;
        return os.str();
    } else {
        return "<feature>";
    }
}

}  // namespace detail

/**
 * Composite convergence strength.
 *
 * ADF statistics are negated (more negative = stronger convergence), min-max
 * scaled per feature over every session in the input, then averaged over the
 * features available for each session.
 *
 * Throws DegenerateSeriesError if a feature's statistics have zero range.
 */
template <typename Feature, typename SessionKey>
std::map<SessionKey, StrengthScore<Feature>> convergence_strength(
    const std::map<std::pair<Feature, SessionKey>, double>& statistics) {
    std::map<Feature, std::pair<double, double>> range;  // over negated statistics
    for (const auto& [key, stat] : statistics) {
        const double x = -stat;
        auto [it, fresh] = range.try_emplace(key.first, x, x);
        if (!fresh) {
            it->second.first = std::min(it->second.first, x);
            it->second.second = std::max(it->second.second, x);
        }
    }
    for (const auto& [feature, mm] : range) {
        if (!(mm.second > mm.first)) {
            throw DegenerateSeriesError("convergence_strength: feature '" + detail::describe(feature) +
                                        "' has zero range across sessions");
        }
    }

    std::map<SessionKey, StrengthScore<Feature>> out;
    for (const auto& [key, stat] : statistics) {
        const auto& [lo, hi] = range.at(key.first);
        out[key.second].scaled[key.first] = (-stat - lo) / (hi - lo);
    }
    for (auto& [session, score] : out) {
        double sum = 0.0;
        for (const auto& [feature, v] : score.scaled) sum += v;
        score.composite = sum / static_cast<double>(score.scaled.size());
    }
    return out;
}

}  // namespace dyadconv::tsa
