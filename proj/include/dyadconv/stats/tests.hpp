#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "dyadconv/error.hpp"
#include "dyadconv/stats/distributions.hpp"

namespace dyadconv::stats {

struct PairedTResult {
    double statistic = 0.0;
    std::size_t df = 0;
    double p_value = 1.0;  ///< two-sided
};

/// Paired t-test on post - pre.
inline PairedTResult paired_t(std::span<const double> pre, std::span<const double> post) {
    if (pre.size() != post.size()) {
        throw std::invalid_argument("paired_t: inputs differ in length");
    }
    const std::size_t n = pre.size();
    if (n < 2) {
        throw std::invalid_argument("paired_t: need at least 2 pairs");
    }
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = post[i] - pre[i];
    const double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double v : d) ss += (v - mean) * (v - mean);
    const double var = ss / static_cast<double>(n - 1);
    PairedTResult out;
    out.df = n - 1;
    if (var == 0.0) {
        if (mean == 0.0) {
            out.statistic = 0.0;
            out.p_value = 1.0;
            return out;
        }
        throw DegenerateSeriesError("paired_t: differences have zero variance");
    }
    out.statistic = mean / std::sqrt(var / static_cast<double>(n));
    out.p_value = t_two_sided_p(out.statistic, static_cast<double>(out.df));
    return out;
}

/// Standardize to mean 0 and sample standard deviation 1.
inline std::vector<double> zscore(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) {
        throw std::invalid_argument("zscore: need at least 2 values");
    }
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (sd == 0.0) {
        throw DegenerateSeriesError("zscore: zero variance");
    }
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = (values[i] - mean) / sd;
    return out;
}

}  // namespace dyadconv::stats
