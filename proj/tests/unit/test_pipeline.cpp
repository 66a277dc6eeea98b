#include <doctest.h>

#include <sstream>

#include "driftwatch/datagen.hpp"
#include "driftwatch/pipeline.hpp"
#include "driftwatch/snapshot.hpp"
#include "test_support.hpp"

using namespace driftwatch;
using namespace driftwatch::testing;

namespace {

// `first` copies of a, then `second` copies of b.
std::vector<StreamElement> two_regimes(std::size_t first, std::size_t second, std::vector<double> a = {0, 0},
                                       std::vector<double> b = {5, 5}) {
    Points pts(first, a);
    pts.insert(pts.end(), second, b);
    return make_elements(pts);
}

DetectorConfig make_config(std::size_t n, std::size_t k, std::size_t b, DetectorMode mode, std::uint64_t seed = 0) {
    DetectorConfig cfg;
    cfg.window_width = n;
    cfg.block_size = b;
    cfg.mode = mode;
    cfg.kmeans.k = k;
    cfg.kmeans.rng_seed = seed;
    return cfg;
}

struct Run {
    PipelineReport report;
    CollectingSink sink;
};

Run run_with(const std::vector<StreamElement>& stream, const DetectorConfig& cfg) {
    Run out;
    VectorSource src(stream);
    std::vector<PipelineSink*> sinks{&out.sink};
    out.report = run_pipeline(src, cfg, sinks);
    return out;
}

std::vector<StreamElement> small_shift_stream(std::uint64_t seed = 3) {
    ShiftStreamConfig cfg;
    cfg.segment_length = 400;
    cfg.n_segments = 3;
    cfg.dims = 3;
    cfg.rng_seed = seed;
    return gen_shift_stream(cfg).elements;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("a constant stream never changes") {
    const auto stream = make_elements(Points(300, {1.5, -2.0}));
    for (auto mode : {DetectorMode::continuous, DetectorMode::restarting}) {
        for (std::size_t b : {1u, 3u}) {
            const auto run = run_with(stream, make_config(50, 1, b, mode));
            CHECK(run.report.change_count == 0);
            CHECK(run.report.clustering_count == 1);
            CHECK(run.report.complete);
            CHECK(run.sink.snapshots.size() == 1);
            CHECK(run.sink.events.empty());
        }
    }
}

TEST_CASE("a regime switch fires at the boundary") {
    const auto stream = two_regimes(100, 100);
    for (auto mode : {DetectorMode::continuous, DetectorMode::restarting}) {
        for (std::size_t b : {1u, 4u}) {
            const auto run = run_with(stream, make_config(20, 1, b, mode));
            REQUIRE(!run.sink.events.empty());
            CHECK(run.sink.events.front().index == 100);
            CHECK(run.sink.events.front().block_start == 100);
            CHECK(run.sink.events.front().offending == std::vector<std::uint64_t>{100});
        }
    }
    // boundary inside a block
    const auto mid = two_regimes(102, 50);
    const auto run = run_with(mid, make_config(20, 1, 4, DetectorMode::continuous));
    REQUIRE(!run.sink.events.empty());
    CHECK(run.sink.events.front().index == 102);
    CHECK(run.sink.events.front().block_start == 100);
}

TEST_CASE("restarting refills the window without testing it") {
    const auto stream = two_regimes(100, 100);
    const auto run = run_with(stream, make_config(20, 1, 1, DetectorMode::restarting));
    CHECK(run.report.change_count == 1);
    CHECK(run.report.clustering_count == 2);
    CHECK(run.report.points_skipped == 20);
    CHECK(run.report.points_tested == 200 - 20 - 20);
    CHECK(run.report.points_processed == 200);
    REQUIRE(run.sink.snapshots.size() == 2);
    CHECK(run.sink.snapshots[0].at_index == 19);
    CHECK(run.sink.snapshots[1].at_index == 120);
    CHECK(run.sink.snapshots[1].model.centroid(0)[0] == 5.0);
}

TEST_CASE("a refill cut short by the end of the stream still refits") {
    const auto stream = two_regimes(100, 10);
    const auto run = run_with(stream, make_config(20, 1, 1, DetectorMode::restarting));
    CHECK(run.report.change_count == 1);
    CHECK(run.report.clustering_count == 2);
    CHECK(run.report.points_skipped == 9);
    CHECK(run.report.complete);
    REQUIRE(run.sink.snapshots.size() == 2);
    CHECK(run.sink.snapshots[1].at_index == 109);
}

TEST_CASE("continuous mode refits from the current window") {
    const auto stream = two_regimes(100, 100);
    const auto run = run_with(stream, make_config(20, 1, 1, DetectorMode::continuous));
    REQUIRE(run.sink.snapshots.size() >= 2);
    CHECK(run.sink.snapshots[1].at_index == 100);
    CHECK(run.sink.snapshots[1].model.cluster(0).n == 20);
    CHECK(run.report.points_tested == 180);
    CHECK(run.report.points_skipped == 0);
    for (std::size_t i = 0; i < run.sink.events.size(); ++i) {
        CHECK(run.sink.snapshots[i + 1].at_index == run.sink.events[i].index);
    }
}

TEST_CASE("clusterings are changes plus one") {
    const auto stream = small_shift_stream();
    for (auto mode : {DetectorMode::continuous, DetectorMode::restarting}) {
        for (std::size_t k : {1u, 2u, 4u}) {
            for (std::size_t b : {1u, 5u}) {
                const auto run = run_with(stream, make_config(100, k, b, mode, 9));
                CHECK(run.report.clustering_count == run.report.change_count + 1);
                CHECK(run.sink.snapshots.size() == run.report.clustering_count);
                CHECK(run.sink.events.size() == run.report.change_count);
                CHECK(run.report.points_processed ==
                      100 + run.report.points_tested + run.report.points_skipped + run.report.points_dropped);
                if (mode == DetectorMode::restarting) {
                    CHECK(run.report.points_skipped <= run.report.change_count * 100);
                }
            }
        }
    }
}

TEST_CASE("restarting never reports more changes than continuous") {
    const auto stream = small_shift_stream(4);
    for (std::size_t n : {50u, 100u, 200u}) {
        const auto c = run_with(stream, make_config(n, 2, 1, DetectorMode::continuous, 1));
        const auto r = run_with(stream, make_config(n, 2, 1, DetectorMode::restarting, 1));
        CHECK(r.report.change_count <= c.report.change_count);
        CHECK(c.report.points_tested == stream.size() - n);
    }
}

TEST_CASE("trailing partial blocks are dropped") {
    const auto stream = make_elements(Points(107, {0.0}));
    const auto run = run_with(stream, make_config(20, 1, 4, DetectorMode::continuous));
    CHECK(run.report.points_tested == 84);
    CHECK(run.report.points_dropped == 3);
    CHECK(run.report.points_processed == 107);
}

TEST_CASE("runs are deterministic") {
    const auto stream = small_shift_stream(5);
    const auto cfg = make_config(100, 3, 2, DetectorMode::continuous, 77);
    const auto a = run_with(stream, cfg);
    const auto b = run_with(stream, cfg);
    REQUIRE(a.sink.events.size() == b.sink.events.size());
    for (std::size_t i = 0; i < a.sink.events.size(); ++i) {
        CHECK(serialize_event(a.sink.events[i]) == serialize_event(b.sink.events[i]));
    }
    REQUIRE(a.sink.snapshots.size() == b.sink.snapshots.size());
    for (std::size_t i = 0; i < a.sink.snapshots.size(); ++i) {
        CHECK(serialize_snapshot(a.sink.snapshots[i]) == serialize_snapshot(b.sink.snapshots[i]));
    }
}

TEST_CASE("jsonl sinks write one parseable line per record") {
    const auto stream = small_shift_stream(6);
    std::ostringstream events, snaps;
    JsonlEventSink es(events);
    JsonlSnapshotSink ss(snaps);
    std::vector<PipelineSink*> sinks{&es, &ss};
    VectorSource src(stream);
    const auto report = run_pipeline(src, make_config(100, 2, 1, DetectorMode::restarting, 2), sinks);

    std::istringstream in(snaps.str());
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) {
        const auto snap = parse_snapshot(line);
        CHECK(serialize_snapshot(snap) == line);
        CHECK(snap.model.size() == 2);
        ++lines;
    }
    CHECK(lines == report.clustering_count);

    std::istringstream ev(events.str());
    lines = 0;
    while (std::getline(ev, line)) {
        CHECK(line.rfind("{\"index\":", 0) == 0);
        ++lines;
    }
    CHECK(lines == report.change_count);
}

TEST_CASE("a stream shorter than the window is an error") {
    const auto stream = make_elements(Points(10, {0.0}));
    VectorSource src(stream);
    CollectingSink sink;
    std::vector<PipelineSink*> sinks{&sink};
    ReactivePipeline pipe(make_config(20, 1, 1, DetectorMode::continuous), sinks);
    try {
        pipe.run(src);
        FAIL("expected EndOfStream");
    } catch (const EndOfStream& eos) {
        CHECK(eos.count() == 10);
        CHECK(eos.requested() == 20);
    }
    CHECK_FALSE(pipe.report().complete);
    CHECK(pipe.report().clustering_count == 0);
    CHECK(pipe.report().points_processed == 10);
    CHECK(sink.snapshots.empty());
}

TEST_CASE("configuration validation") {
    CHECK_THROWS_AS(make_config(3, 5, 1, DetectorMode::continuous).validate(), std::invalid_argument);
    CHECK_THROWS_AS(make_config(10, 2, 0, DetectorMode::continuous).validate(), std::invalid_argument);
    CHECK_THROWS_AS(make_config(10, 2, 11, DetectorMode::continuous).validate(), std::invalid_argument);
    CHECK_NOTHROW(make_config(10, 10, 10, DetectorMode::restarting).validate());
    CHECK(parse_detector_mode("restarting") == DetectorMode::restarting);
    CHECK_THROWS(parse_detector_mode("sometimes"));
}

TEST_CASE("metrics document") {
    const auto stream = small_shift_stream(8);
    const auto cfg = make_config(100, 2, 1, DetectorMode::continuous, 3);
    const auto run = run_with(stream, cfg);
    const auto doc = metrics_json(run.report, cfg);
    CHECK(doc.find("\"changes\": " + std::to_string(run.report.change_count)) != std::string::npos);
    CHECK(doc.find("\"clusterings\": " + std::to_string(run.report.clustering_count)) != std::string::npos);
    CHECK(doc.find("\"complete\": true") != std::string::npos);
    CHECK(doc.find("\"error\"") == std::string::npos);
    const auto failed = metrics_json(run.report, cfg, std::string("boom"));
    CHECK(failed.find("\"error\": \"boom\"") != std::string::npos);
}

}
