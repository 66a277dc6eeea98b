#include "driftwatch/detector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace driftwatch {

namespace {

void check_dimension(const StreamElement& x, const ClusterModel& model) {
    if (x.dimension() != model.dimension()) {
        throw ClusterError("point " + std::to_string(x.index) + " has dimension " + std::to_string(x.dimension()) +
                           ", model has " + std::to_string(model.dimension()));
    }
}

bool outside_every_cluster(const StreamElement& x, const ClusterModel& model, double radius_floor) {
    const std::size_t d = model.dimension();
    const double* centroids = model.centroid_matrix().data();
    for (std::size_t i = 0; i < model.size(); ++i) {
        const double r = std::max(model.radius(i), radius_floor);
        if (!(std::sqrt(squared_distance(x.values.data(), centroids + i * d, d)) > r)) {
            return false;
        }
    }
    return true;
}

}  // namespace

bool point_is_change(const StreamElement& x, const ClusterModel& model) {
    return point_is_change(x, model, 0.0);
}

bool point_is_change(const StreamElement& x, const ClusterModel& model, double radius_floor) {
    check_dimension(x, model);
    return outside_every_cluster(x, model, radius_floor);
}

std::vector<double> centroid_distances(const StreamElement& x, const ClusterModel& model) {
    check_dimension(x, model);
    std::vector<double> out(model.size());
    for (std::size_t i = 0; i < model.size(); ++i) {
        out[i] = point_centroid_distance(x.values, model.centroid(i));
    }
    return out;
}

ChangeDecision block_is_change(const Block& blk, const ClusterModel& model, const BlockCheckOptions& opts) {
    ChangeDecision out;
    for (std::size_t pos = 0; pos < blk.size(); ++pos) {
        if (!point_is_change(blk[pos], model, opts.radius_floor)) {
            continue;
        }
        if (out.offending.empty() && opts.with_distances) {
            out.distances = centroid_distances(blk[pos], model);
        }
        out.offending.push_back(pos);
        if (opts.report == OffendingReport::first_only) {
            break;
        }
    }
    out.changed = !out.offending.empty();
    return out;
}

}  // namespace driftwatch
