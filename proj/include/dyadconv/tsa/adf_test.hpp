#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dyadconv/tsa/adf.hpp"
#include "dyadconv/tsa/critical_values.hpp"

namespace dyadconv::tsa {

/**
 * @brief Outcome of the Augmented Dickey-Fuller test on a partner-difference series.
 *
 * A statistic below the critical value rejects the unit root: the difference
 * between partners is stationary, which is read as convergence.
 */
struct AdfResult {
    double statistic = 0.0;
    double gamma = 0.0;
    std::vector<double> delta;  ///< delta_1 .. delta_{p-1}
    double alpha = 0.0;
    double beta = 0.0;
    std::size_t lag_order = 0;
    std::size_t n = 0;  ///< series length
    double significance = 0.01;
    double critical_value = 0.0;
    bool converged = false;
};

inline AdfResult adf_test(std::span<const double> y, const AdfSpec& spec = {},
                          const CriticalValueTable& table = CriticalValueTable::embedded()) {
    validate(spec);
    const AdfRegression reg = adf_regression(y, spec.lag_order, spec.form());
    AdfResult out;
    out.statistic = reg.statistic;
    out.gamma = reg.gamma;
    out.delta = reg.delta;
    out.alpha = reg.alpha;
    out.beta = reg.beta;
    out.lag_order = spec.lag_order;
    out.n = y.size();
    out.significance = spec.significance;
    out.critical_value = critical_value(spec.significance, y.size(), spec, table);
    out.converged = out.statistic < out.critical_value;
    return out;
}

}  // namespace dyadconv::tsa
