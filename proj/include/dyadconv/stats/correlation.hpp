#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "dyadconv/error.hpp"
#include "dyadconv/stats/distributions.hpp"

namespace dyadconv::stats {

enum class CorrelationKind { pearson, spearman, point_biserial };

constexpr std::string_view to_string(CorrelationKind kind) {
    switch (kind) {
        case CorrelationKind::pearson: return "pearson";
        case CorrelationKind::spearman: return "spearman";
        case CorrelationKind::point_biserial: return "point_biserial";
    }
    return "unknown";
}

struct CorrelationResult {
    double coefficient = 0.0;
    double p_value = 1.0;
    std::size_t n = 0;
    CorrelationKind kind = CorrelationKind::pearson;
};

namespace detail {

inline double mean(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

/// p-value for H0: rho = 0 through t = r sqrt((n-2)/(1-r^2)) with n-2 df.
inline double correlation_p_value(double r, std::size_t n) {
    const double df = static_cast<double>(n) - 2.0;
    if (std::abs(r) >= 1.0) return 0.0;
    const double t = r * std::sqrt(df / (1.0 - r * r));
    return t_two_sided_p(t, df);
}

inline double pearson_coefficient(std::span<const double> x, std::span<const double> y) {
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw DegenerateSeriesError("correlation: zero variance input");
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

inline void check_pair(std::span<const double> x, std::span<const double> y, std::size_t min_n) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("correlation: inputs differ in length");
    }
    if (x.size() < min_n) {
        throw std::invalid_argument("correlation: need at least " + std::to_string(min_n) + " pairs");
    }
}

}  // namespace detail

/// Mid-ranks (1-based), ties receive the average of the ranks they span.
inline std::vector<double> rank(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
        const double mid = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mid;
        i = j + 1;
    }
    return ranks;
}

inline CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
    detail::check_pair(x, y, 3);
    const double r = detail::pearson_coefficient(x, y);
    return {r, detail::correlation_p_value(r, x.size()), x.size(), CorrelationKind::pearson};
}

inline CorrelationResult spearman(std::span<const double> x, std::span<const double> y) {
    detail::check_pair(x, y, 3);
    const auto rx = rank(x);
    const auto ry = rank(y);
    const double r = detail::pearson_coefficient(rx, ry);
    return {r, detail::correlation_p_value(r, x.size()), x.size(), CorrelationKind::spearman};
}

/// Pearson correlation between a 0/1 group indicator and a continuous measure.
inline CorrelationResult point_biserial(std::span<const double> binary, std::span<const double> continuous) {
    detail::check_pair(binary, continuous, 3);
    bool has0 = false, has1 = false;
    for (double b : binary) {
        if (b == 0.0) has0 = true;
        else if (b == 1.0) has1 = true;
        else throw std::invalid_argument("point_biserial: binary argument must be coded 0/1");
    }
    if (!has0 || !has1) {
        throw DegenerateSeriesError("point_biserial: binary argument has a single class");
    }
    const double r = detail::pearson_coefficient(binary, continuous);
    return {r, detail::correlation_p_value(r, binary.size()), binary.size(), CorrelationKind::point_biserial};
}

}  // namespace dyadconv::stats
