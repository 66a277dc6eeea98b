#ifndef DRIFTWATCH_KERNELS_HPP
#define DRIFTWATCH_KERNELS_HPP

#include <cstddef>
#include <cstdint>
#include <span>

// Data-parallel inner loops shared by k-means and batch predicate
// evaluation. Each kernel has a serial reference and an OpenMP variant;
// both produce bit-identical output because every output element depends
// only on its own input row.

namespace driftwatch::kernels {

enum class ExecPolicy { serial, parallel, automatic };

/// Row-major n x d view of contiguous point data.
struct PointsView {
    std::span<const double> data;
    std::size_t rows = 0;
    std::size_t cols = 0;

    PointsView() = default;
    PointsView(std::span<const double> values, std::size_t n, std::size_t d);

    const double* row(std::size_t i) const { return data.data() + i * cols; }
};

/// True when the OpenMP variants were compiled in.
bool parallel_available();
int max_threads();

/// Resolves `automatic` to serial or parallel given the work size
/// (roughly rows * cols * k).
ExecPolicy resolve(ExecPolicy policy, std::size_t work);

// For each row: index of the nearest centroid (lowest index on ties) and the
// squared distance to it.
void assign_nearest_serial(PointsView points, PointsView centroids, std::span<std::uint32_t> labels,
                           std::span<double> dist2);
void assign_nearest_parallel(PointsView points, PointsView centroids, std::span<std::uint32_t> labels,
                             std::span<double> dist2);
void assign_nearest(ExecPolicy policy, PointsView points, PointsView centroids, std::span<std::uint32_t> labels,
                    std::span<double> dist2);

// dist2[i] = min(dist2[i], |row_i - seed|^2)
void update_nearest_seed_serial(PointsView points, std::span<const double> seed, std::span<double> dist2);
void update_nearest_seed_parallel(PointsView points, std::span<const double> seed, std::span<double> dist2);
void update_nearest_seed(ExecPolicy policy, PointsView points, std::span<const double> seed, std::span<double> dist2);

// outside[i] = 1 iff for every cluster j: distance(row_i, centroid_j) > radius_j
void outside_all_serial(PointsView points, PointsView centroids, std::span<const double> radii,
                        std::span<std::uint8_t> outside);
void outside_all_parallel(PointsView points, PointsView centroids, std::span<const double> radii,
                          std::span<std::uint8_t> outside);
void outside_all(ExecPolicy policy, PointsView points, PointsView centroids, std::span<const double> radii,
                 std::span<std::uint8_t> outside);

}  // namespace driftwatch::kernels

#endif
