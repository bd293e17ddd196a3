#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dyadconv/stats/ols.hpp"

namespace dyadconv::stats {

struct NamedColumn {
    std::string name;
    std::vector<double> values;
};

/// Categorical grouping factor (dyad, session, ...). Levels are dummy coded
/// against the lexicographically smallest level.
struct GroupingFactor {
    std::string name;
    std::vector<std::string> levels;
};

struct RegressionTerm {
    std::string name;
    double coefficient = 0.0;
    double std_error = 0.0;
};

struct DummyOlsResult {
    std::vector<RegressionTerm> terms;  ///< intercept first, then fixed effects, dummies, covariates
    double r_squared = 0.0;
    std::size_t n = 0;

    [[nodiscard]] const RegressionTerm& term(const std::string& name) const {
        for (const auto& t : terms) {
            if (t.name == name) return t;
        }
        throw std::out_of_range("no regression term named " + name);
    }
};

/**
 * Fixed-effects stand-in for a random-intercept mixed model: the outcome is
 * regressed by OLS on an intercept, the fixed effects of interest, one dummy
 * per non-reference level of each grouping factor, and the covariates.
 *
 * Throws RankDeficientError when the dummy-coded design is collinear.
 */
inline DummyOlsResult dummy_ols_outcomes(std::span<const double> outcome,
                                         std::span<const NamedColumn> fixed_effects,
                                         std::span<const GroupingFactor> groups,
                                         std::span<const NamedColumn> covariates) {
    const std::size_t n = outcome.size();
    std::vector<std::string> names{"(intercept)"};
    std::vector<std::vector<double>> columns{std::vector<double>(n, 1.0)};

    auto add_numeric = [&](const NamedColumn& c) {
        if (c.values.size() != n) {
            throw std::invalid_argument("dummy_ols_outcomes: column '" + c.name + "' has wrong length");
        }
        names.push_back(c.name);
        columns.push_back(c.values);
    };

    for (const auto& c : fixed_effects) add_numeric(c);
    for (const auto& g : groups) {
        if (g.levels.size() != n) {
            throw std::invalid_argument("dummy_ols_outcomes: factor '" + g.name + "' has wrong length");
        }
        std::vector<std::string> distinct(g.levels);
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (std::size_t l = 1; l < distinct.size(); ++l) {
            std::vector<double> dummy(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) dummy[i] = g.levels[i] == distinct[l] ? 1.0 : 0.0;
            names.push_back(g.name + "=" + distinct[l]);
            columns.push_back(std::move(dummy));
        }
    }
    for (const auto& c : covariates) add_numeric(c);

    Eigen::MatrixXd X(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = columns[j][i];
        }
    }
    Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(outcome.data(), static_cast<Eigen::Index>(n));
    const OlsFit fit = ols_fit(X, y);

    DummyOlsResult out;
    out.n = n;
    for (std::size_t j = 0; j < names.size(); ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        out.terms.push_back({names[j], fit.coefficients(jj), fit.std_errors(jj)});
    }
    const double tss = (y.array() - y.mean()).square().sum();
    out.r_squared = tss > 0.0 ? 1.0 - fit.rss / tss : 1.0;
    return out;
}

}  // namespace dyadconv::stats
