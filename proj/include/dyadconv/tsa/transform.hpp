#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "dyadconv/error.hpp"

namespace dyadconv::tsa {

/// y_t = a_t - b_{t-lag}, for t = lag .. n-1.
struct DifferencedSeries {
    std::vector<double> values;
    std::size_t lag = 0;
};

inline DifferencedSeries difference(std::span<const double> a, std::span<const double> b, std::size_t lag = 0) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("difference: series lengths differ");
    }
    if (lag > 2) {
        throw std::invalid_argument("difference: lag must be 0, 1 or 2");
    }
    DifferencedSeries out;
    out.lag = lag;
    if (a.size() <= lag) return out;
    out.values.reserve(a.size() - lag);
    for (std::size_t t = lag; t < a.size(); ++t) out.values.push_back(a[t] - b[t - lag]);
    return out;
}

/// Residuals of the least-squares line value ~ a + b*t (t = 0, 1, ...).
inline std::vector<double> detrend(std::span<const double> y) {
    const std::size_t n = y.size();
    if (n < 3) {
        throw std::invalid_argument("detrend: need at least 3 values");
    }
    const double t_mean = static_cast<double>(n - 1) / 2.0;
    double y_mean = 0.0;
    for (double v : y) y_mean += v;
    y_mean /= static_cast<double>(n);
    double sty = 0.0, stt = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double dt = static_cast<double>(t) - t_mean;
        sty += dt * (y[t] - y_mean);
        stt += dt * dt;
    }
    const double slope = sty / stt;
    std::vector<double> out(n);
    for (std::size_t t = 0; t < n; ++t) {
        out[t] = (y[t] - y_mean) - slope * (static_cast<double>(t) - t_mean);
    }
    return out;
}

/// Centered moving average; near the ends the window is truncated to the available values.
inline std::vector<double> smooth(std::span<const double> y, std::size_t window = 3) {
    if (window < 1 || window % 2 == 0) {
        throw std::invalid_argument("smooth: window must be odd and >= 1");
    }
    const std::size_t half = window / 2;
    const std::size_t n = y.size();
    std::vector<double> out(n);
    for (std::size_t t = 0; t < n; ++t) {
        const std::size_t lo = t >= half ? t - half : 0;
        const std::size_t hi = std::min(n - 1, t + half);
        double sum = 0.0;
        for (std::size_t k = lo; k <= hi; ++k) sum += y[k];
        out[t] = sum / static_cast<double>(hi - lo + 1);
    }
    return out;
}

}  // namespace dyadconv::tsa
