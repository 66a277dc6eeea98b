#include "driftwatch/kernels.hpp"

#include <algorithm>
#include <stdexcept>

#include "kernel_rows.hpp"

#ifdef DRIFTWATCH_HAVE_OPENMP
#include <omp.h>
#endif

namespace driftwatch::kernels {

namespace {

// Below this much work the thread fork costs more than it saves.
constexpr std::size_t kParallelWorkThreshold = 1u << 16;

void check_centroids(PointsView points, PointsView centroids) {
    if (centroids.rows == 0 || centroids.cols != points.cols) {
        throw std::invalid_argument("centroid matrix does not match point dimension");
    }
}

}  // namespace

PointsView::PointsView(std::span<const double> values, std::size_t n, std::size_t d)
    : data(values), rows(n), cols(d) {
    if (values.size() != n * d) {
        throw std::invalid_argument("point buffer size is not rows * cols");
    }
}

bool parallel_available() {
#ifdef DRIFTWATCH_HAVE_OPENMP
    return true;
#else
    return false;
#endif
}

int max_threads() {
#ifdef DRIFTWATCH_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

ExecPolicy resolve(ExecPolicy policy, std::size_t work) {
    if (policy != ExecPolicy::automatic) {
        return policy;
    }
    if (parallel_available() && max_threads() > 1 && work >= kParallelWorkThreshold) {
        return ExecPolicy::parallel;
    }
    return ExecPolicy::serial;
}

void assign_nearest_serial(PointsView points, PointsView centroids, std::span<std::uint32_t> labels,
                           std::span<double> dist2) {
    check_centroids(points, centroids);
    for (std::size_t i = 0; i < points.rows; ++i) {
        detail::nearest_row(points.row(i), centroids.data.data(), centroids.rows, points.cols, labels[i], dist2[i]);
    }
}

void update_nearest_seed_serial(PointsView points, std::span<const double> seed, std::span<double> dist2) {
    for (std::size_t i = 0; i < points.rows; ++i) {
        dist2[i] = std::min(dist2[i], squared_distance(points.row(i), seed.data(), points.cols));
    }
}

void outside_all_serial(PointsView points, PointsView centroids, std::span<const double> radii,
                        std::span<std::uint8_t> outside) {
    check_centroids(points, centroids);
    for (std::size_t i = 0; i < points.rows; ++i) {
        outside[i] = detail::outside_all_row(points.row(i), centroids.data.data(), radii.data(), centroids.rows,
                                             points.cols);
    }
}

void assign_nearest(ExecPolicy policy, PointsView points, PointsView centroids, std::span<std::uint32_t> labels,
                    std::span<double> dist2) {
    if (resolve(policy, points.rows * points.cols * centroids.rows) == ExecPolicy::parallel) {
        assign_nearest_parallel(points, centroids, labels, dist2);
    } else {
        assign_nearest_serial(points, centroids, labels, dist2);
    }
}

void update_nearest_seed(ExecPolicy policy, PointsView points, std::span<const double> seed, std::span<double> dist2) {
    if (resolve(policy, points.rows * points.cols) == ExecPolicy::parallel) {
        update_nearest_seed_parallel(points, seed, dist2);
    } else {
        update_nearest_seed_serial(points, seed, dist2);
    }
}

void outside_all(ExecPolicy policy, PointsView points, PointsView centroids, std::span<const double> radii,
                 std::span<std::uint8_t> outside) {
    if (resolve(policy, points.rows * points.cols * centroids.rows) == ExecPolicy::parallel) {
        outside_all_parallel(points, centroids, radii, outside);
    } else {
        outside_all_serial(points, centroids, radii, outside);
    }
}

}  // namespace driftwatch::kernels
