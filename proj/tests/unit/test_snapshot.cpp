#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include <json.hpp>

#include "driftwatch/snapshot.hpp"
#include "test_support.hpp"

using namespace driftwatch;
using namespace driftwatch::testing;

TEST_SUITE("snapshot") {

TEST_CASE("serialized layout follows the schema") {
    const auto model = model_from_partition({{{-1, 0}, {1, 0}}});
    const auto line = serialize_snapshot({7, model});
    CHECK(line.find('\n') == std::string::npos);
    CHECK(line == R"({"at_index":7,"clusters":[{"n":2,"ls":[0.0,0.0],"ss":[2.0,0.0],"ts":0.0,"tss":0.0,)"
                  R"("centroid":[0.0,0.0],"radius":1.0}]})");
}

TEST_CASE("serialize-parse-serialize is byte identical") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t d = 1 + rng() % 6;
        std::vector<Points> parts;
        for (std::size_t k = 0; k < 1 + rng() % 5; ++k) {
            parts.push_back(random_points(rng, 1 + rng() % 40, d, -1e3, 1e3));
        }
        const ClusteringSnapshot snap{rng() % 100000, model_from_partition(parts)};
        const auto first = serialize_snapshot(snap);
        const auto parsed = parse_snapshot(first);
        CHECK(parsed.at_index == snap.at_index);
        CHECK(parsed.model.clusters() == snap.model.clusters());
        CHECK(serialize_snapshot(parsed) == first);
    }
}

TEST_CASE("inconsistent or malformed snapshots are rejected") {
    const auto model = model_from_partition({{{0, 0}, {2, 2}}});
    auto j = nlohmann::json::parse(serialize_snapshot({0, model}));

    auto bad_centroid = j;
    bad_centroid["clusters"][0]["centroid"][0] = 1.5;
    CHECK_THROWS_AS(parse_snapshot(bad_centroid.dump()), ClusterError);

    auto bad_radius = j;
    bad_radius["clusters"][0]["radius"] = 2.0;
    CHECK_THROWS_AS(parse_snapshot(bad_radius.dump()), ClusterError);

    auto empty_cluster = j;
    empty_cluster["clusters"][0]["n"] = 0;
    CHECK_THROWS_AS(parse_snapshot(empty_cluster.dump()), ClusterError);

    auto missing = j;
    missing["clusters"][0].erase("ss");
    CHECK_THROWS_AS(parse_snapshot(missing.dump()), ClusterError);

    CHECK_THROWS_AS(parse_snapshot("{"), ClusterError);
    CHECK_THROWS_AS(parse_snapshot(R"({"at_index":-1,"clusters":[]})"), ClusterError);
}

TEST_CASE("history files report the failing line") {
    const auto path = std::filesystem::temp_directory_path() / "driftwatch_snap_test.jsonl";
    const auto model = model_from_partition({{{0, 0}, {2, 2}}});
    {
        std::ofstream out(path);
        out << serialize_snapshot({0, model}) << '\n' << serialize_snapshot({5, model}) << '\n';
    }
    const auto hist = read_snapshot_history(path);
    REQUIRE(hist.size() == 2);
    CHECK(hist[1].at_index == 5);
    {
        std::ofstream out(path, std::ios::app);
        out << "{broken\n";
    }
    try {
        (void)read_snapshot_history(path);
        FAIL("expected ClusterError");
    } catch (const ClusterError& err) {
        CHECK(std::string(err.what()).find(":3:") != std::string::npos);
    }
    std::filesystem::remove(path);
}

}
