#ifndef DRIFTWATCH_PIPELINE_HPP
#define DRIFTWATCH_PIPELINE_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "driftwatch/detector.hpp"
#include "driftwatch/kmeans.hpp"
#include "driftwatch/snapshot.hpp"
#include "driftwatch/stream.hpp"

namespace driftwatch {

enum class DetectorMode {
    continuous,  // after a change the current window becomes the reference
    restarting,  // after a change the next N elements refill the reference untested
};

DetectorMode parse_detector_mode(const std::string& name);
const char* to_string(DetectorMode m);

struct DetectorConfig {
    std::size_t window_width = 1000;
    std::size_t block_size = 1;
    DetectorMode mode = DetectorMode::continuous;
    KMeansConfig kmeans;
    double radius_floor = 0.0;
    OffendingReport report = OffendingReport::first_only;

    void validate() const;
};

struct ChangeEvent {
    std::uint64_t index = 0;  // stream index of the first offending point
    double timestamp = 0.0;
    std::uint64_t block_start = 0;
    std::vector<std::uint64_t> offending;  // stream indices
    std::vector<double> distances;         // diagnostics, not serialized
};

/// {"index":..,"timestamp":..,"block_start":..,"offending":[..]}
std::string serialize_event(const ChangeEvent& ev);

struct PipelineReport {
    std::uint64_t change_count = 0;
    std::uint64_t clustering_count = 0;
    std::uint64_t points_processed = 0;  // every element consumed from the source
    std::uint64_t points_tested = 0;     // elements admitted through a tested block
    std::uint64_t points_skipped = 0;    // restarting-mode refills
    std::uint64_t points_dropped = 0;    // trailing partial block left untested
    std::uint64_t wall_time_ms = 0;
    std::uint64_t wall_time_ns = 0;
    std::uint64_t peak_memory_bytes = 0;
    bool complete = false;
};

/// Consumers of pipeline output. All callbacks run on the pipeline thread.
class PipelineSink {
public:
    virtual ~PipelineSink() = default;
    virtual void on_clustering(const ClusteringSnapshot&) {}
    virtual void on_change(const ChangeEvent&) {}
    /// Request per-centroid distances on change events.
    virtual bool wants_distances() const { return false; }
};

class JsonlEventSink final : public PipelineSink {
public:
    explicit JsonlEventSink(std::ostream& out) : out_(out) {}
    void on_change(const ChangeEvent& ev) override;

private:
    std::ostream& out_;
};

class JsonlSnapshotSink final : public PipelineSink {
public:
    explicit JsonlSnapshotSink(std::ostream& out) : out_(out) {}
    void on_clustering(const ClusteringSnapshot& snap) override;

private:
    std::ostream& out_;
};

/// Keeps everything in memory.
class CollectingSink final : public PipelineSink {
public:
    explicit CollectingSink(bool distances = false) : distances_(distances) {}

    void on_clustering(const ClusteringSnapshot& snap) override { snapshots.push_back(snap); }
    void on_change(const ChangeEvent& ev) override { events.push_back(ev); }
    bool wants_distances() const override { return distances_; }

    std::vector<ClusteringSnapshot> snapshots;
    std::vector<ChangeEvent> events;

private:
    bool distances_;
};

/// Overlapping-window change detection with reactive re-clustering.
///
/// The first N elements form the reference window and are clustered. Each
/// subsequent block of b elements slides the current window and is tested
/// against the reference model; on a change the model is rebuilt (from the
/// current window in continuous mode, from a fresh untested window of N
/// elements in restarting mode). Every model is emitted as a snapshot, so a
/// finished run always has one more clustering than it has changes.
class ReactivePipeline {
public:
    ReactivePipeline(DetectorConfig cfg, std::span<PipelineSink* const> sinks);

    /// Runs to the end of `source`. Throws EndOfStream if the source holds
    /// fewer than N elements; k-means errors propagate. report() stays
    /// valid after an exception and describes the work done so far.
    PipelineReport run(ElementSource& source);

    const PipelineReport& report() const { return report_; }
    const DetectorConfig& config() const { return cfg_; }

private:
    ClusterModel refit(const SlidingWindow& window);
    void emit_snapshot(std::uint64_t at_index, const ClusterModel& model);
    void emit_change(const Block& blk, const ChangeDecision& decision);

    DetectorConfig cfg_;
    std::vector<PipelineSink*> sinks_;
    bool want_distances_ = false;
    PipelineReport report_;
    std::uint64_t paused_ns_ = 0;
};

PipelineReport run_pipeline(ElementSource& source, const DetectorConfig& cfg,
                            std::span<PipelineSink* const> sinks = {});

/// Metrics document: {"changes","clusterings","points","skipped",
/// "wall_time_ms","peak_memory_bytes","complete","config":{...}}
std::string metrics_json(const PipelineReport& report, const DetectorConfig& cfg,
                         const std::optional<std::string>& error = std::nullopt);

}  // namespace driftwatch

#endif
