#include <doctest.h>

#include <random>

#include "driftwatch/detector.hpp"
#include "test_support.hpp"

using namespace driftwatch;
using namespace driftwatch::testing;

namespace {

// One cluster centred at the origin with radius exactly 1.
ClusterModel unit_model() { return model_from_partition({{{1, 0}, {-1, 0}}}); }

ClusterModel random_model(std::mt19937_64& rng, std::size_t d) {
    const std::size_t k = 1 + rng() % 5;
    std::vector<Points> parts;
    for (std::size_t i = 0; i < k; ++i) {
        parts.push_back(random_points(rng, 1 + rng() % 20, d, -5.0, 5.0));
    }
    return model_from_partition(parts);
}

std::vector<StreamElement> block_points(std::mt19937_64& rng, std::size_t b, std::size_t d, std::uint64_t first) {
    return make_elements(random_points(rng, b, d, -8.0, 8.0), first);
}

}  // namespace

TEST_SUITE("detector") {

TEST_CASE("geometry examples") {
    const auto model = unit_model();
    REQUIRE(model.radius(0) == 1.0);
    CHECK(point_is_change(point({0, 2}), model));
    CHECK_FALSE(point_is_change(point({0, 1}), model));
    CHECK_FALSE(point_is_change(point({1, 0}), model));
    CHECK_FALSE(point_is_change(point({0, 0}), model));
    CHECK(point_is_change(point({0.8, 0.8}), model));
}

TEST_CASE("a point inside any one cluster is not a change") {
    const auto model = model_from_partition({{{0, 0}, {0, 2}}, {{10, 0}, {10, 2}}});
    CHECK_FALSE(point_is_change(point({10, 1.5}), model));
    CHECK_FALSE(point_is_change(point({0, 0.5}), model));
    CHECK(point_is_change(point({5, 1}), model));
}

TEST_CASE("the point predicate agrees with brute force") {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t d = 1 + rng() % 10;
        const auto model = random_model(rng, d);
        const auto x = random_points(rng, 1, d, -8.0, 8.0)[0];
        CHECK(point_is_change(point(x), model) == brute_force_change(x, model));
    }
}

TEST_CASE("block examples") {
    const auto model = unit_model();
    const Block blk(make_elements({{0, 0}, {0, 3}, {0.5, 0}, {4, 4}}, 10));
    const auto first = block_is_change(blk, model);
    CHECK(first.changed);
    CHECK(first.offending == std::vector<std::size_t>{1});
    CHECK(first.distances.empty());

    const auto all = block_is_change(blk, model, {OffendingReport::all, true, 0.0});
    CHECK(all.offending == std::vector<std::size_t>{1, 3});
    REQUIRE(all.distances.size() == 1);
    CHECK(all.distances[0] == 3.0);

    const Block quiet(make_elements({{0, 0}, {0, 1}}, 0));
    const auto none = block_is_change(quiet, model);
    CHECK_FALSE(none.changed);
    CHECK(none.offending.empty());
}

TEST_CASE("a block changes iff some point does") {
    std::mt19937_64 rng(52);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t d = 1 + rng() % 6;
        const std::size_t b = 1 + rng() % 8;
        const auto model = random_model(rng, d);
        const auto pts = block_points(rng, b, d, trial * 10);
        bool any = false;
        std::vector<std::size_t> expected;
        for (std::size_t i = 0; i < b; ++i) {
            if (brute_force_change(pts[i].values, model)) {
                any = true;
                expected.push_back(i);
            }
        }
        const Block blk(pts);
        const auto all = block_is_change(blk, model, {OffendingReport::all, false, 0.0});
        const auto first = block_is_change(blk, model);
        CHECK(all.changed == any);
        CHECK(first.changed == any);
        CHECK(all.offending == expected);
        if (any) {
            CHECK(first.offending == std::vector<std::size_t>{expected.front()});
        }
    }
}

TEST_CASE("distances on request") {
    const auto model = model_from_partition({{{0, 0}}, {{3, 4}}});
    const auto dist = centroid_distances(point({0, 0}), model);
    CHECK(dist == std::vector<double>{0.0, 5.0});
    const Block blk(make_elements({{0, 10}}, 0));
    const auto decision = block_is_change(blk, model, {OffendingReport::first_only, true, 0.0});
    REQUIRE(decision.distances.size() == 2);
    CHECK(decision.distances[0] == 10.0);
}

TEST_CASE("raising the radius floor never creates changes") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t d = 1 + rng() % 5;
        const auto model = random_model(rng, d);
        const auto x = point(random_points(rng, 1, d, -8.0, 8.0)[0]);
        bool prev = point_is_change(x, model, 0.0);
        CHECK(prev == point_is_change(x, model));
        for (double floor : {0.5, 1.0, 2.0, 4.0, 8.0, 100.0}) {
            const bool now = point_is_change(x, model, floor);
            CHECK((prev || !now));
            prev = now;
        }
        CHECK_FALSE(prev);
    }
}

TEST_CASE("power-of-two scaling preserves decisions") {
    std::mt19937_64 rng(54);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = 1 + rng() % 5;
        std::vector<Points> parts;
        for (int c = 0; c < 3; ++c) {
            parts.push_back(random_points(rng, 1 + rng() % 6, d, -4.0, 4.0));
        }
        auto x = random_points(rng, 1, d, -6.0, 6.0)[0];
        const bool base = point_is_change(point(x), model_from_partition(parts));
        for (double s : {0.25, 4.0, 1024.0}) {
            auto scaled = parts;
            for (auto& part : scaled) {
                for (auto& p : part) {
                    for (auto& v : p) {
                        v *= s;
                    }
                }
            }
            auto xs = x;
            for (auto& v : xs) {
                v *= s;
            }
            CHECK(point_is_change(point(xs), model_from_partition(scaled)) == base);
        }
    }
}

TEST_CASE("singleton clusters have zero radius") {
    const auto model = model_from_partition({{{2, 2}}});
    CHECK(model.radius(0) == 0.0);
    CHECK_FALSE(point_is_change(point({2, 2}), model));
    CHECK(point_is_change(point({2, 2.000001}), model));
}

TEST_CASE("dimension mismatch is an error") {
    const auto model = unit_model();
    CHECK_THROWS_AS((void)point_is_change(point({1, 2, 3}), model), ClusterError);
    const Block blk(make_elements({{1}}, 0));
    CHECK_THROWS_AS((void)block_is_change(blk, model), ClusterError);
}

}
