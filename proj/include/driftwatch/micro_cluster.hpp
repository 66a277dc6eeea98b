#ifndef DRIFTWATCH_MICRO_CLUSTER_HPP
#define DRIFTWATCH_MICRO_CLUSTER_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "driftwatch/stream.hpp"

namespace driftwatch {

class ClusterError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Additive summary of a point set: count, per-dimension linear and squared
/// sums, and the linear and squared sums of the timestamps.
///
/// The value summaries are enough to derive centroid and RMS radius without
/// keeping the points. The temporal sums follow the same additivity but are
/// not consulted by change detection.
struct MicroCluster {
    std::uint64_t n = 0;
    std::vector<double> ls;  // sum of values, per dimension
    std::vector<double> ss;  // sum of squared values, per dimension
    double ts = 0.0;         // sum of timestamps
    double tss = 0.0;        // sum of squared timestamps

    MicroCluster() = default;
    /// Empty summary of the given dimension.
    explicit MicroCluster(std::size_t dimension) : ls(dimension, 0.0), ss(dimension, 0.0) {}

    std::size_t dimension() const { return ls.size(); }
    bool empty() const { return n == 0; }

    /// Absorbs one point in place.
    void insert(std::span<const double> values, double timestamp);
    void insert(const StreamElement& e) { insert(e.values, e.timestamp); }

    /// In-place merge with a disjoint summary.
    MicroCluster& operator+=(const MicroCluster& other);

    bool operator==(const MicroCluster&) const = default;
};

MicroCluster mc_from_point(const StreamElement& x);
MicroCluster mc_merge(const MicroCluster& a, const MicroCluster& b);

/// ls / n. Throws ClusterError for an empty summary.
std::vector<double> mc_centroid(const MicroCluster& m);

/// sqrt(sum_p (ss[p]/n - (ls[p]/n)^2)); per-dimension variance is clamped
/// at zero before summing. Throws ClusterError for an empty summary.
double mc_radius(const MicroCluster& m);

/// Euclidean distance between a point and a centroid.
double point_centroid_distance(std::span<const double> x, std::span<const double> c);
inline double point_centroid_distance(const StreamElement& x, std::span<const double> c) {
    return point_centroid_distance(x.values, c);
}

/// Squared Euclidean distance, unchecked dimensions.
inline double squared_distance(const double* a, const double* b, std::size_t d) {
    double acc = 0.0;
    for (std::size_t p = 0; p < d; ++p) {
        const double diff = a[p] - b[p];
        acc += diff * diff;
    }
    return acc;
}

/// K non-empty micro-clusters with their derived centroids and radii.
/// Immutable once built.
class ClusterModel {
public:
    explicit ClusterModel(std::vector<MicroCluster> clusters);

    std::size_t size() const { return clusters_.size(); }
    std::size_t dimension() const { return dimension_; }

    const std::vector<MicroCluster>& clusters() const { return clusters_; }
    const MicroCluster& cluster(std::size_t i) const { return clusters_[i]; }
    std::span<const double> centroid(std::size_t i) const {
        return {centroids_.data() + i * dimension_, dimension_};
    }
    double radius(std::size_t i) const { return radii_[i]; }
    const std::vector<double>& radii() const { return radii_; }

    /// Row-major K x d centroid matrix.
    std::span<const double> centroid_matrix() const { return centroids_; }

    std::uint64_t total_points() const;

private:
    std::vector<MicroCluster> clusters_;
    std::size_t dimension_ = 0;
    std::vector<double> centroids_;
    std::vector<double> radii_;
};

}  // namespace driftwatch

#endif
