#ifndef DRIFTWATCH_SNAPSHOT_HPP
#define DRIFTWATCH_SNAPSHOT_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "driftwatch/micro_cluster.hpp"

namespace driftwatch {

/// One clustering in the history, tagged with the stream index of the last
/// element of the reference window it was fitted on.
struct ClusteringSnapshot {
    std::uint64_t at_index = 0;
    ClusterModel model;
};

/// Single-line JSON:
///   {"at_index":i,"clusters":[{"n":..,"ls":[..],"ss":[..],"ts":..,"tss":..,
///                              "centroid":[..],"radius":..},...]}
std::string serialize_snapshot(const ClusteringSnapshot& snap);

/// Parses one line. The stored centroid and radius are checked against
/// values recomputed from the CF fields (1e-9 relative); a mismatch or a
/// malformed record throws ClusterError.
ClusteringSnapshot parse_snapshot(const std::string& line);

/// Reads a JSONL history file; errors carry the path and line number.
std::vector<ClusteringSnapshot> read_snapshot_history(const std::filesystem::path& path);

/// |a - b| <= rel * max(|a|, |b|, 1e-300)
bool approx_equal_relative(double a, double b, double rel);

}  // namespace driftwatch

#endif
