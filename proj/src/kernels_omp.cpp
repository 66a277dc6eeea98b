#include "driftwatch/kernels.hpp"

#include <algorithm>
#include <stdexcept>

#include "kernel_rows.hpp"

namespace driftwatch::kernels {

// Without OpenMP the pragmas are ignored and these run serially.

void assign_nearest_parallel(PointsView points, PointsView centroids, std::span<std::uint32_t> labels,
                             std::span<double> dist2) {
    if (centroids.rows == 0 || centroids.cols != points.cols) {
        throw std::invalid_argument("centroid matrix does not match point dimension");
    }
    const auto n = static_cast<std::ptrdiff_t>(points.rows);
    const double* c = centroids.data.data();
    const std::size_t k = centroids.rows;
    const std::size_t d = points.cols;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        detail::nearest_row(points.row(i), c, k, d, labels[i], dist2[i]);
    }
}

void update_nearest_seed_parallel(PointsView points, std::span<const double> seed, std::span<double> dist2) {
    const auto n = static_cast<std::ptrdiff_t>(points.rows);
    const std::size_t d = points.cols;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        dist2[i] = std::min(dist2[i], squared_distance(points.row(i), seed.data(), d));
    }
}

void outside_all_parallel(PointsView points, PointsView centroids, std::span<const double> radii,
                          std::span<std::uint8_t> outside) {
    if (centroids.rows == 0 || centroids.cols != points.cols) {
        throw std::invalid_argument("centroid matrix does not match point dimension");
    }
    const auto n = static_cast<std::ptrdiff_t>(points.rows);
    const double* c = centroids.data.data();
    const std::size_t k = centroids.rows;
    const std::size_t d = points.cols;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        outside[i] = detail::outside_all_row(points.row(i), c, radii.data(), k, d);
    }
}

}  // namespace driftwatch::kernels
