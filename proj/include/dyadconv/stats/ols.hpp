#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "dyadconv/error.hpp"

namespace dyadconv::stats {

/**
 * @brief Ordinary least squares fit with classical standard errors.
 *
 * Standard errors are sqrt of the diagonal of sigma^2 (X'X)^-1 with
 * sigma^2 = RSS / (rows - cols).
 */
struct OlsFit {
    Eigen::VectorXd coefficients;
    Eigen::VectorXd std_errors;
    Eigen::VectorXd residuals;
    double rss = 0.0;
    double sigma2 = 0.0;
    std::size_t rows = 0;
    std::size_t cols = 0;

    [[nodiscard]] double t_statistic(std::size_t j) const { return coefficients(j) / std_errors(j); }
};

/// Relative pivot threshold below which a column counts as linearly dependent.
inline constexpr double kRankTolerance = 1e-10;

/**
 * @brief Fit y ~ X by column-pivoted Householder QR.
 *
 * @throws std::invalid_argument if rows(X) <= cols(X) or sizes disagree
 * @throws RankDeficientError if X does not have full column rank
 */
inline OlsFit ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    const auto n = X.rows();
    const auto k = X.cols();
    if (y.size() != n) {
        throw std::invalid_argument("ols_fit: response length does not match design rows");
    }
    if (k == 0 || n <= k) {
        throw std::invalid_argument("ols_fit: need more rows than columns");
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(kRankTolerance);
    if (qr.rank() < k) {
        throw RankDeficientError("ols_fit: design matrix is rank deficient (rank " +
                                 std::to_string(qr.rank()) + " < " + std::to_string(k) + ")");
    }

    OlsFit fit;
    fit.rows = static_cast<std::size_t>(n);
    fit.cols = static_cast<std::size_t>(k);
    fit.coefficients = qr.solve(y);
    fit.residuals = y - X * fit.coefficients;
    fit.rss = fit.residuals.squaredNorm();
    fit.sigma2 = fit.rss / static_cast<double>(n - k);

    // (X'X)^-1 = P R^-1 R^-T P'
    const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(k, k).template triangularView<Eigen::Upper>();
    const Eigen::MatrixXd r_inv =
        r.template triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    const Eigen::MatrixXd xtx_inv_perm = r_inv * r_inv.transpose();
    const auto& perm = qr.colsPermutation();
    const Eigen::MatrixXd xtx_inv = perm * xtx_inv_perm * perm.transpose();

    fit.std_errors = (fit.sigma2 * xtx_inv.diagonal().array()).sqrt().matrix();
    return fit;
}

/// Convenience overload for row-major nested data.
inline OlsFit ols_fit(const std::vector<std::vector<double>>& rows, std::span<const double> y) {
    if (rows.empty()) {
        throw std::invalid_argument("ols_fit: empty design");
    }
    const auto k = rows.front().size();
    Eigen::MatrixXd X(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != k) {
            throw std::invalid_argument("ols_fit: ragged design rows");
        }
        for (std::size_t j = 0; j < k; ++j) {
            X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
    return ols_fit(X, v);
}

}  // namespace dyadconv::stats
