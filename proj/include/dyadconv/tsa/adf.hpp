#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dyadconv/error.hpp"
#include "dyadconv/stats/ols.hpp"

namespace dyadconv::tsa {

/// Deterministic terms of the test regression.
enum class AdfForm { none, drift, drift_trend };

/**
 * Test configuration. The regression is
 *
 *   dy_t = alpha + beta*t + gamma*y_{t-1} + delta_1*dy_{t-1} + ... + delta_{p-1}*dy_{t-p+1} + e_t
 *
 * with alpha and beta switched by the flags. lag_order is p, so p-1 lagged
 * differences enter.
 */
struct AdfSpec {
    std::size_t lag_order = 3;
    bool include_drift = true;
    bool include_trend = true;
    double significance = 0.01;

    [[nodiscard]] AdfForm form() const {
        if (include_trend) return AdfForm::drift_trend;
        return include_drift ? AdfForm::drift : AdfForm::none;
    }
};

inline bool is_supported_significance(double level) {
    return level == 0.01 || level == 0.05 || level == 0.10;
}

inline void validate(const AdfSpec& spec) {
    if (spec.lag_order < 1) throw std::invalid_argument("AdfSpec: lag_order must be >= 1");
    if (spec.include_trend && !spec.include_drift) {
        throw std::invalid_argument("AdfSpec: a trend term requires the drift term");
    }
    if (!is_supported_significance(spec.significance)) {
        throw std::invalid_argument("AdfSpec: significance must be 0.01, 0.05 or 0.10");
    }
}

struct AdfRegression {
    double statistic = 0.0;  ///< gamma / se(gamma)
    double gamma = 0.0;
    double gamma_se = 0.0;
    double alpha = 0.0;  ///< 0 when the drift term is off
    double beta = 0.0;   ///< 0 when the trend term is off
    std::vector<double> delta;
    std::size_t rows = 0;
};

/// Minimum series length accepted by adf_regression for a given lag order.
constexpr std::size_t adf_min_length(std::size_t lag_order) { return lag_order + 10; }

/**
 * Fit the test regression and return the gamma t-ratio with all coefficients.
 * Regression rows run over t = p .. n-1.
 */
inline AdfRegression adf_regression(std::span<const double> y, std::size_t lag_order, AdfForm form) {
    const std::size_t n = y.size();
    const std::size_t p = lag_order;
    if (p < 1) throw std::invalid_argument("adf: lag_order must be >= 1");
    if (n < adf_min_length(p)) {
        throw std::invalid_argument("adf: series of length " + std::to_string(n) + " is too short (need " +
                                    std::to_string(adf_min_length(p)) + ")");
    }
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    if (!(*hi - *lo > 0.0)) {
        throw DegenerateSeriesError("adf: degenerate series (constant)");
    }

    const std::size_t n_det = form == AdfForm::none ? 0 : (form == AdfForm::drift ? 1 : 2);
    const std::size_t cols = n_det + 1 + (p - 1);
    const std::size_t rows = n - p;
    Eigen::MatrixXd X(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    Eigen::VectorXd dy(static_cast<Eigen::Index>(rows));
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = r + p;
        const auto ri = static_cast<Eigen::Index>(r);
        Eigen::Index c = 0;
        if (n_det >= 1) X(ri, c++) = 1.0;
        if (n_det == 2) X(ri, c++) = static_cast<double>(t);
        X(ri, c++) = y[t - 1];
        for (std::size_t k = 1; k < p; ++k) X(ri, c++) = y[t - k] - y[t - k - 1];
        dy(ri) = y[t] - y[t - 1];
    }

    const stats::OlsFit fit = stats::ols_fit(X, dy);
    AdfRegression out;
    out.rows = rows;
    const auto g = static_cast<Eigen::Index>(n_det);
    out.gamma = fit.coefficients(g);
    out.gamma_se = fit.std_errors(g);
    if (!(out.gamma_se > 0.0)) {
        throw DegenerateSeriesError("adf: regression fits exactly, statistic undefined");
    }
    out.statistic = out.gamma / out.gamma_se;
    if (n_det >= 1) out.alpha = fit.coefficients(0);
    if (n_det == 2) out.beta = fit.coefficients(1);
    for (std::size_t k = 1; k < p; ++k) out.delta.push_back(fit.coefficients(g + static_cast<Eigen::Index>(k)));
    return out;
}

}  // namespace dyadconv::tsa
