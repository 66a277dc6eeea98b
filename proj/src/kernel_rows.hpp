#ifndef DRIFTWATCH_KERNEL_ROWS_HPP
#define DRIFTWATCH_KERNEL_ROWS_HPP

// Per-row bodies shared by the serial and OpenMP kernels so both variants
// execute the same floating-point operations in the same order.

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "driftwatch/micro_cluster.hpp"

namespace driftwatch::kernels::detail {

inline void nearest_row(const double* x, const double* centroids, std::size_t k, std::size_t d,
                        std::uint32_t& label, double& best) {
    std::uint32_t arg = 0;
    double min2 = squared_distance(x, centroids, d);
    for (std::size_t j = 1; j < k; ++j) {
        const double d2 = squared_distance(x, centroids + j * d, d);
        if (d2 < min2) {
            min2 = d2;
            arg = static_cast<std::uint32_t>(j);
        }
    }
    label = arg;
    best = min2;
}

inline bool outside_all_row(const double* x, const double* centroids, const double* radii, std::size_t k,
                            std::size_t d) {
    for (std::size_t j = 0; j < k; ++j) {
        if (!(std::sqrt(squared_distance(x, centroids + j * d, d)) > radii[j])) {
            return false;
        }
    }
    return true;
}

}  // namespace driftwatch::kernels::detail

#endif
