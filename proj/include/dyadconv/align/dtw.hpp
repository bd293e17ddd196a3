#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dyadconv/error.hpp"

namespace dyadconv::align {

struct DtwOptions {
    bool open_end = true;  ///< free the endpoint of the second series
};

/**
 * @brief Result of a symmetric-step DTW alignment.
 *
 * Path indices are 0-based; the path starts at (0, 0) and ends at
 * (n-1, matched_end_of_b).
 */
struct AlignmentResult {
    double raw_distance = 0.0;
    double normalized_distance = 0.0;  ///< raw / (n + m)
    std::vector<std::pair<std::size_t, std::size_t>> path;
    std::size_t matched_end_of_b = 0;
    std::size_t n = 0;
    std::size_t m = 0;
};

/**
 * Dynamic time warping of event times `a` against `b` with local cost
 * |a_i - b_j| and the symmetric step pattern: a diagonal step is charged
 * twice the local cost, horizontal and vertical steps once. The start cell
 * counts as a diagonal step from outside the grid.
 *
 * With open_end, the alignment must consume all of `a` but may stop at any
 * element of `b`; the cheapest end column wins (first on ties).
 */
inline AlignmentResult dtw(std::span<const double> a, std::span<const double> b, DtwOptions options = {}) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("dtw: empty event series");
    }
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> g(n * m, inf);
    auto at = [m](std::size_t i, std::size_t j) { return i * m + j; };
    auto cost = [&](std::size_t i, std::size_t j) { return std::abs(a[i] - b[j]); };

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double d = cost(i, j);
            if (i == 0 && j == 0) {
                g[at(0, 0)] = 2.0 * d;
                continue;
            }
            double best = inf;
            if (i > 0 && j > 0) best = std::min(best, g[at(i - 1, j - 1)] + 2.0 * d);
            if (i > 0) best = std::min(best, g[at(i - 1, j)] + d);
            if (j > 0) best = std::min(best, g[at(i, j - 1)] + d);
            g[at(i, j)] = best;
        }
    }

    std::size_t end_j = m - 1;
    if (options.open_end) {
        for (std::size_t j = 0; j < m; ++j) {
            if (g[at(n - 1, j)] < g[at(n - 1, end_j)] || (g[at(n - 1, j)] == g[at(n - 1, end_j)] && j < end_j)) {
                end_j = j;
            }
        }
    }

    AlignmentResult out;
    out.n = n;
    out.m = m;
    out.matched_end_of_b = end_j;
    out.raw_distance = g[at(n - 1, end_j)];
    out.normalized_distance = out.raw_distance / static_cast<double>(n + m);

    // Backtrack; prefer diagonal, then vertical, then horizontal on ties.
    std::size_t i = n - 1, j = end_j;
    out.path.emplace_back(i, j);
    while (i > 0 || j > 0) {
        const double here = g[at(i, j)];
        const double d = cost(i, j);
        if (i > 0 && j > 0 && g[at(i - 1, j - 1)] + 2.0 * d == here) {
            --i;
            --j;
        } else if (i > 0 && g[at(i - 1, j)] + d == here) {
            --i;
        } else {
            --j;
        }
        out.path.emplace_back(i, j);
    }
    std::reverse(out.path.begin(), out.path.end());
    return out;
}

}  // namespace dyadconv::align
