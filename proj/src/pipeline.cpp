#include "driftwatch/pipeline.hpp"

#include <chrono>
#include <ostream>

#include <json.hpp>

#include "driftwatch/memory.hpp"

namespace driftwatch {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t elapsed_ns(Clock::time_point since) {
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - since).count());
}

// Distinct, reproducible seed for the i-th fit of a run.
std::uint64_t fit_seed(std::uint64_t base, std::uint64_t fit_index) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (fit_index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class PauseGuard {
public:
    explicit PauseGuard(std::uint64_t& acc) : acc_(acc), start_(Clock::now()) {}
    ~PauseGuard() { acc_ += elapsed_ns(start_); }
    PauseGuard(const PauseGuard&) = delete;
    PauseGuard& operator=(const PauseGuard&) = delete;

private:
    std::uint64_t& acc_;
    Clock::time_point start_;
};

}  // namespace

DetectorMode parse_detector_mode(const std::string& name) {
    if (name == "continuous") {
        return DetectorMode::continuous;
    }
    if (name == "restarting") {
        return DetectorMode::restarting;
    }
    throw std::invalid_argument("unknown detector mode '" + name + "' (expected continuous or restarting)");
}

const char* to_string(DetectorMode m) {
    return m == DetectorMode::continuous ? "continuous" : "restarting";
}

void DetectorConfig::validate() const {
    kmeans.validate();
    if (window_width == 0) {
        throw std::invalid_argument("window width must be positive");
    }
    if (window_width < kmeans.k) {
        throw std::invalid_argument("window width " + std::to_string(window_width) +
                                    " is smaller than the number of clusters " + std::to_string(kmeans.k));
    }
    if (block_size == 0 || block_size > window_width) {
        throw std::invalid_argument("block size must be in [1, window width]");
    }
    if (!(radius_floor >= 0.0)) {
        throw std::invalid_argument("radius floor must be non-negative");
    }
}

std::string serialize_event(const ChangeEvent& ev) {
    nlohmann::ordered_json j;
    j["index"] = ev.index;
    j["timestamp"] = ev.timestamp;
    j["block_start"] = ev.block_start;
    j["offending"] = ev.offending;
    return j.dump();
}

void JsonlEventSink::on_change(const ChangeEvent& ev) {
    out_ << serialize_event(ev) << '\n';
}

void JsonlSnapshotSink::on_clustering(const ClusteringSnapshot& snap) {
    out_ << serialize_snapshot(snap) << '\n';
}

ReactivePipeline::ReactivePipeline(DetectorConfig cfg, std::span<PipelineSink* const> sinks)
    : cfg_(std::move(cfg)), sinks_(sinks.begin(), sinks.end()) {
    cfg_.validate();
    for (auto* s : sinks_) {
        want_distances_ = want_distances_ || s->wants_distances();
    }
}

ClusterModel ReactivePipeline::refit(const SlidingWindow& window) {
    auto km = cfg_.kmeans;
    km.rng_seed = fit_seed(cfg_.kmeans.rng_seed, report_.clustering_count);
    const auto points = window.elements();
    ClusterModel model = kmeans_fit(points, km);
    ++report_.clustering_count;
    return model;
}

void ReactivePipeline::emit_snapshot(std::uint64_t at_index, const ClusterModel& model) {
    if (sinks_.empty()) {
        return;
    }
    PauseGuard pause(paused_ns_);
    const ClusteringSnapshot snap{at_index, model};
    for (auto* s : sinks_) {
        s->on_clustering(snap);
    }
}

void ReactivePipeline::emit_change(const Block& blk, const ChangeDecision& decision) {
    ++report_.change_count;
    if (sinks_.empty()) {
        return;
    }
    PauseGuard pause(paused_ns_);
    ChangeEvent ev;
    const auto& first = blk[decision.offending.front()];
    ev.index = first.index;
    ev.timestamp = first.timestamp;
    ev.block_start = blk.first_index();
    ev.offending.reserve(decision.offending.size());
    for (auto pos : decision.offending) {
        ev.offending.push_back(blk[pos].index);
    }
    ev.distances = decision.distances;
    for (auto* s : sinks_) {
        s->on_change(ev);
    }
}

PipelineReport ReactivePipeline::run(ElementSource& source) {
    report_ = PipelineReport{};
    paused_ns_ = 0;
    const auto start = Clock::now();
    auto stamp = [&] {
        const auto total = elapsed_ns(start);
        report_.wall_time_ns = total > paused_ns_ ? total - paused_ns_ : 0;
        report_.wall_time_ms = report_.wall_time_ns / 1'000'000;
        report_.peak_memory_bytes = peak_memory_bytes();
    };

    try {
        std::optional<SlidingWindow> initial;
        try {
            initial.emplace(window_fill(source, cfg_.window_width));
        } catch (const EndOfStream& eos) {
            report_.points_processed = eos.count();
            throw;
        }
        SlidingWindow window = std::move(*initial);
        report_.points_processed = window.size();
        ClusterModel model = refit(window);
        emit_snapshot(window.back().index, model);

        const BlockCheckOptions opts{cfg_.report, want_distances_, cfg_.radius_floor};
        bool exhausted = false;
        while (!exhausted) {
            std::optional<Block> blk;
            try {
                blk.emplace(window_slide(window, cfg_.block_size, source));
            } catch (const EndOfStream& eos) {
                report_.points_processed += eos.count();
                report_.points_dropped += eos.count();
                break;
            }
            report_.points_processed += blk->size();
            report_.points_tested += blk->size();

            const ChangeDecision decision = block_is_change(*blk, model, opts);
            if (!decision.changed) {
                continue;
            }
            emit_change(*blk, decision);

            if (cfg_.mode == DetectorMode::restarting) {
                // untested refill; a short tail still yields a full window of the latest elements
                for (std::size_t i = 0; i < cfg_.window_width; ++i) {
                    auto e = source.next();
                    if (!e) {
                        exhausted = true;
                        break;
                    }
                    window.push(std::move(*e));
                    ++report_.points_processed;
                    ++report_.points_skipped;
                }
            }
            model = refit(window);
            emit_snapshot(window.back().index, model);
        }
    } catch (...) {
        stamp();
        throw;
    }
    stamp();
    report_.complete = true;
    return report_;
}

PipelineReport run_pipeline(ElementSource& source, const DetectorConfig& cfg, std::span<PipelineSink* const> sinks) {
    ReactivePipeline pipeline(cfg, sinks);
    return pipeline.run(source);
}

std::string metrics_json(const PipelineReport& report, const DetectorConfig& cfg,
                         const std::optional<std::string>& error) {
    nlohmann::ordered_json j;
    j["changes"] = report.change_count;
    j["clusterings"] = report.clustering_count;
    j["points"] = report.points_processed;
    j["skipped"] = report.points_skipped;
    j["wall_time_ms"] = report.wall_time_ms;
    j["peak_memory_bytes"] = report.peak_memory_bytes;
    j["complete"] = report.complete && !error;
    if (error) {
        j["error"] = *error;
    }
    nlohmann::ordered_json c;
    c["window"] = cfg.window_width;
    c["clusters"] = cfg.kmeans.k;
    c["block"] = cfg.block_size;
    c["mode"] = to_string(cfg.mode);
    c["seed"] = cfg.kmeans.rng_seed;
    c["seeding"] = to_string(cfg.kmeans.seeding);
    c["max_iterations"] = cfg.kmeans.max_iterations;
    c["tolerance"] = cfg.kmeans.tolerance;
    c["radius_floor"] = cfg.radius_floor;
    c["all_offending"] = cfg.report == OffendingReport::all;
    j["config"] = std::move(c);
    return j.dump(2);
}

}  // namespace driftwatch
