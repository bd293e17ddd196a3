#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "dyadconv/error.hpp"
#include "dyadconv/stats/distributions.hpp"
#include "dyadconv/stats/ols.hpp"

namespace dyadconv::tsa {

/// Three 30-second slices: a 90 second look-back.
inline constexpr std::size_t kGrangerLags = 3;

struct GrangerResult {
    double f_statistic = 0.0;  ///< used as the causality magnitude
    double p_value = 1.0;
    std::size_t lags = kGrangerLags;
    std::size_t df1 = 0;
    std::size_t df2 = 0;
    std::string cause;
    std::string effect;
    bool significant = false;
    bool cause_dropped = false;  ///< cause block was collinear and removed; F = 0, p = 1
};

/**
 * Does `cause` Granger-cause `effect`?
 *
 * Restricted model:   effect_t ~ 1 + effect_{t-1..t-L}
 * Unrestricted model: adds cause_{t-1..t-L}
 * F = ((RSS_r - RSS_u) / L) / (RSS_u / (m - 2L - 1)), m = n - L regression rows.
 */
inline GrangerResult granger_causes(std::span<const double> effect, std::span<const double> cause,
                                    std::size_t lags = kGrangerLags, double significance = 0.05,
                                    std::string effect_id = "effect", std::string cause_id = "cause") {
    if (effect.size() != cause.size()) {
        throw std::invalid_argument("granger: series lengths differ");
    }
    if (lags < 1) throw std::invalid_argument("granger: lags must be >= 1");
    const std::size_t n = effect.size();
    if (n < lags + 10) {
        throw std::invalid_argument("granger: need at least " + std::to_string(lags + 10) + " observations");
    }
    const std::size_t rows = n - lags;
    const std::size_t k_r = 1 + lags;
    const std::size_t k_u = 1 + 2 * lags;

    Eigen::MatrixXd Xu(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(k_u));
    Eigen::VectorXd y(static_cast<Eigen::Index>(rows));
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = r + lags;
        const auto ri = static_cast<Eigen::Index>(r);
        Xu(ri, 0) = 1.0;
        for (std::size_t k = 1; k <= lags; ++k) {
            Xu(ri, static_cast<Eigen::Index>(k)) = effect[t - k];
            Xu(ri, static_cast<Eigen::Index>(lags + k)) = cause[t - k];
        }
        y(ri) = effect[t];
    }
    const Eigen::MatrixXd Xr = Xu.leftCols(static_cast<Eigen::Index>(k_r));

    GrangerResult out;
    out.lags = lags;
    out.df1 = lags;
    out.df2 = rows - k_u;
    out.cause = std::move(cause_id);
    out.effect = std::move(effect_id);

    stats::OlsFit restricted;
    try {
        restricted = stats::ols_fit(Xr, y);
    } catch (const RankDeficientError&) {
        throw DegenerateSeriesError("granger: effect series '" + out.effect + "' is constant or collinear");
    }

    stats::OlsFit unrestricted;
    try {
        unrestricted = stats::ols_fit(Xu, y);
    } catch (const RankDeficientError&) {
        out.cause_dropped = true;
        out.f_statistic = 0.0;
        out.p_value = 1.0;
        out.significant = false;
        return out;
    }

    const double num = std::max(0.0, restricted.rss - unrestricted.rss) / static_cast<double>(out.df1);
    const double den = unrestricted.rss / static_cast<double>(out.df2);
    if (den <= 0.0) {
        out.f_statistic = num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    } else {
        out.f_statistic = num / den;
    }
    out.p_value = stats::f_sf(out.f_statistic, static_cast<double>(out.df1), static_cast<double>(out.df2));
    out.significant = out.p_value < significance;
    return out;
}

}  // namespace dyadconv::tsa
