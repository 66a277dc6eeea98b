#include "driftwatch/micro_cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace driftwatch {

void MicroCluster::insert(std::span<const double> values, double timestamp) {
    if (n == 0 && ls.empty()) {
        ls.assign(values.size(), 0.0);
        ss.assign(values.size(), 0.0);
    }
    if (values.size() != ls.size()) {
        throw ClusterError("point of dimension " + std::to_string(values.size()) + " inserted into micro-cluster of "
                           "dimension " + std::to_string(ls.size()));
    }
    for (std::size_t p = 0; p < values.size(); ++p) {
        ls[p] += values[p];
        ss[p] += values[p] * values[p];
    }
    ts += timestamp;
    tss += timestamp * timestamp;
    ++n;
}

MicroCluster& MicroCluster::operator+=(const MicroCluster& other) {
    if (other.empty() && other.ls.empty()) {
        return *this;
    }
    if (empty() && ls.empty()) {
        *this = other;
        return *this;
    }
    if (other.dimension() != dimension()) {
        throw ClusterError("cannot merge micro-clusters of dimension " + std::to_string(dimension()) + " and " +
                           std::to_string(other.dimension()));
    }
    n += other.n;
    for (std::size_t p = 0; p < ls.size(); ++p) {
        ls[p] += other.ls[p];
        ss[p] += other.ss[p];
    }
    ts += other.ts;
    tss += other.tss;
    return *this;
}

MicroCluster mc_from_point(const StreamElement& x) {
    MicroCluster m(x.dimension());
    m.insert(x);
    return m;
}

MicroCluster mc_merge(const MicroCluster& a, const MicroCluster& b) {
    MicroCluster out = a;
    out += b;
    return out;
}

std::vector<double> mc_centroid(const MicroCluster& m) {
    if (m.n == 0) {
        throw ClusterError("centroid of an empty micro-cluster is undefined");
    }
    const double inv = 1.0 / static_cast<double>(m.n);
    std::vector<double> c(m.dimension());
    for (std::size_t p = 0; p < c.size(); ++p) {
        c[p] = m.ls[p] * inv;
    }
    return c;
}

double mc_radius(const MicroCluster& m) {
    if (m.n == 0) {
        throw ClusterError("radius of an empty micro-cluster is undefined");
    }
    const double inv = 1.0 / static_cast<double>(m.n);
    // a-priori rounding bound of an n-term sum, relative to ss/n
    const double resolution = 2.0 * static_cast<double>(m.n) * std::numeric_limits<double>::epsilon();
    double acc = 0.0;
    for (std::size_t p = 0; p < m.dimension(); ++p) {
        const double mean = m.ls[p] * inv;
        const double second = m.ss[p] * inv;
        const double var = second - mean * mean;
        // below the rounding error of the sums the difference is noise
        if (var > resolution * second) {
            acc += var;
        }
    }
    return std::sqrt(acc);
}

double point_centroid_distance(std::span<const double> x, std::span<const double> c) {
    if (x.size() != c.size()) {
        throw ClusterError("distance between vectors of dimension " + std::to_string(x.size()) + " and " +
                           std::to_string(c.size()));
    }
    return std::sqrt(squared_distance(x.data(), c.data(), x.size()));
}

ClusterModel::ClusterModel(std::vector<MicroCluster> clusters) : clusters_(std::move(clusters)) {
    if (clusters_.empty()) {
        throw ClusterError("a cluster model needs at least one cluster");
    }
    dimension_ = clusters_.front().dimension();
    if (dimension_ == 0) {
        throw ClusterError("cluster model of dimension 0");
    }
    centroids_.reserve(clusters_.size() * dimension_);
    radii_.reserve(clusters_.size());
    for (std::size_t i = 0; i < clusters_.size(); ++i) {
        const auto& m = clusters_[i];
        if (m.dimension() != dimension_) {
            throw ClusterError("cluster " + std::to_string(i) + " has mismatched dimension");
        }
        if (m.n == 0) {
            throw ClusterError("cluster " + std::to_string(i) + " is empty");
        }
        const auto c = mc_centroid(m);
        centroids_.insert(centroids_.end(), c.begin(), c.end());
        radii_.push_back(mc_radius(m));
    }
}

std::uint64_t ClusterModel::total_points() const {
    std::uint64_t total = 0;
    for (const auto& m : clusters_) {
        total += m.n;
    }
    return total;
}

}  // namespace driftwatch
