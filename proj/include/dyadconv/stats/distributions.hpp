#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>

namespace dyadconv::stats {

/// CDF of the F(d1, d2) distribution via the regularized incomplete beta function.
inline double f_cdf(double x, double d1, double d2) {
    if (!(d1 >= 1.0) || !(d2 >= 1.0) || !std::isfinite(d1) || !std::isfinite(d2)) {
        throw std::invalid_argument("f_cdf: degrees of freedom must be >= 1");
    }
    if (std::isnan(x) || x < 0.0) {
        throw std::invalid_argument("f_cdf: x must be >= 0");
    }
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    const double z = d1 * x / (d1 * x + d2);
    return boost::math::ibeta(d1 / 2.0, d2 / 2.0, z);
}

/// Upper tail P(F > x).
inline double f_sf(double x, double d1, double d2) {
    if (!(d1 >= 1.0) || !(d2 >= 1.0)) {
        throw std::invalid_argument("f_sf: degrees of freedom must be >= 1");
    }
    if (std::isnan(x) || x < 0.0) {
        throw std::invalid_argument("f_sf: x must be >= 0");
    }
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    // complement computed directly to keep precision in the far tail
    const double z = d2 / (d2 + d1 * x);
    return boost::math::ibeta(d2 / 2.0, d1 / 2.0, z);
}

/// Two-sided p-value of a Student t statistic with df degrees of freedom.
inline double t_two_sided_p(double t, double df) {
    if (!(df > 0.0)) {
        throw std::invalid_argument("t_two_sided_p: df must be > 0");
    }
    if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
    if (std::isinf(t)) return 0.0;
    // P(|T| > t) = I_{df/(df+t^2)}(df/2, 1/2)
    const double z = df / (df + t * t);
    return boost::math::ibeta(df / 2.0, 0.5, z);
}

}  // namespace dyadconv::stats
