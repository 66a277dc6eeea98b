#ifndef DRIFTWATCH_DETECTOR_HPP
#define DRIFTWATCH_DETECTOR_HPP

#include <cstddef>
#include <vector>

#include "driftwatch/micro_cluster.hpp"
#include "driftwatch/stream.hpp"

namespace driftwatch {

/// Outcome of testing a block against the reference model.
/// `changed` holds iff `offending` is non-empty.
struct ChangeDecision {
    bool changed = false;
    std::vector<std::size_t> offending;  // positions within the block
    std::vector<double> distances;       // to every centroid, first offending point; only on request
};

enum class OffendingReport {
    first_only,  // stop at the first change point
    all,         // evaluate every element of the block
};

struct BlockCheckOptions {
    OffendingReport report = OffendingReport::first_only;
    bool with_distances = false;
    // Extension beyond the literal predicate: radii below this value are
    // raised to it. 0 keeps the predicate unmodified.
    double radius_floor = 0.0;
};

/// A point is a change point when it lies strictly outside every cluster:
/// distance(x, centroid_i) > radius_i for all i. A point exactly on a
/// boundary is a member.
bool point_is_change(const StreamElement& x, const ClusterModel& model);
bool point_is_change(const StreamElement& x, const ClusterModel& model, double radius_floor);

/// A block changes when at least one of its points is a change point.
ChangeDecision block_is_change(const Block& blk, const ClusterModel& model, const BlockCheckOptions& opts = {});

/// Distances from `x` to each centroid of `model`.
std::vector<double> centroid_distances(const StreamElement& x, const ClusterModel& model);

}  // namespace driftwatch

#endif
