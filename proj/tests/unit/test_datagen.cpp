#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "driftwatch/datagen.hpp"
#include "driftwatch/stream_io.hpp"

using namespace driftwatch;

TEST_SUITE("datagen") {

TEST_CASE("without drift or noise labels follow the concept") {
    HyperplaneConfig cfg;
    cfg.n_points = 5000;
    cfg.drift_magnitude = 0.0;
    cfg.noise_fraction = 0.0;
    cfg.rng_seed = 11;
    const auto data = gen_hyperplane(cfg);
    const RotatingHyperplane concept_check(cfg);
    for (std::size_t i = 0; i < data.elements.size(); ++i) {
        REQUIRE(concept_check.classify(data.elements[i].values) == data.labels[i]);
    }
}

TEST_CASE("default hyperplane shape") {
    const HyperplaneConfig cfg;
    const auto data = gen_hyperplane(cfg);
    REQUIRE(data.elements.size() == 100000);
    REQUIRE(data.labels.size() == 100000);
    std::set<std::uint32_t> classes;
    bool in_range = true;
    for (std::size_t i = 0; i < data.elements.size(); ++i) {
        const auto& e = data.elements[i];
        REQUIRE(e.values.size() == 10);
        REQUIRE(e.index == i);
        for (double v : e.values) {
            in_range &= v >= 0.0 && v <= 1.0;
        }
        classes.insert(data.labels[i]);
    }
    CHECK(in_range);
    CHECK(classes == std::set<std::uint32_t>{0, 1, 2, 3, 4});
}

TEST_CASE("fixed seed gives byte-identical output") {
    HyperplaneConfig cfg;
    cfg.n_points = 2000;
    cfg.rng_seed = 12;
    std::ostringstream a, b, c;
    write_csv(a, gen_hyperplane(cfg).elements, true);
    write_csv(b, gen_hyperplane(cfg).elements, true);
    cfg.rng_seed = 13;
    write_csv(c, gen_hyperplane(cfg).elements, true);
    CHECK(a.str() == b.str());
    CHECK(a.str() != c.str());
}

TEST_CASE("drift moves the concept") {
    HyperplaneConfig cfg;
    cfg.rng_seed = 14;
    RotatingHyperplane hp(cfg);
    const auto w0 = hp.weights();
    Rng probe_rng(99);
    std::vector<std::vector<double>> probes(2000, std::vector<double>(cfg.dims));
    for (auto& p : probes) {
        for (auto& v : p) {
            v = probe_rng.uniform();
        }
    }
    std::vector<std::uint32_t> before;
    for (const auto& p : probes) {
        before.push_back(hp.classify(p));
    }
    for (int i = 0; i < 10000; ++i) {
        hp.advance();
    }
    std::size_t moved = 0;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        moved += hp.classify(probes[i]) != before[i];
    }
    CHECK(hp.weights() != w0);
    CHECK(moved > probes.size() / 20);

    cfg.drift_magnitude = 0.0;
    RotatingHyperplane still(cfg);
    for (int i = 0; i < 1000; ++i) {
        still.advance();
    }
    CHECK(still.weights() == w0);
}

TEST_CASE("noise randomises roughly the requested fraction") {
    HyperplaneConfig cfg;
    cfg.n_points = 20000;
    cfg.drift_magnitude = 0.0;
    cfg.noise_fraction = 0.5;
    cfg.rng_seed = 15;
    const auto data = gen_hyperplane(cfg);
    const RotatingHyperplane hp(cfg);
    std::size_t differ = 0;
    for (std::size_t i = 0; i < data.elements.size(); ++i) {
        differ += hp.classify(data.elements[i].values) != data.labels[i];
    }
    // a randomised label matches by chance 1/5 of the time
    const double rate = static_cast<double>(differ) / 20000.0;
    CHECK(rate == doctest::Approx(0.4).epsilon(0.1));
}

TEST_CASE("hyperplane validation") {
    HyperplaneConfig cfg;
    cfg.drifting_dims = 11;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.noise_fraction = 1.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.dims = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("shift stream ground truth") {
    ShiftStreamConfig cfg;
    cfg.n_segments = 1;
    CHECK(gen_shift_stream(cfg).change_points.empty());
    cfg.n_segments = 3;
    const auto s = gen_shift_stream(cfg);
    CHECK(s.change_points == std::vector<std::uint64_t>{1000, 2000});
    CHECK(s.elements.size() == 3000);
}

TEST_CASE("shift stream segment means") {
    ShiftStreamConfig cfg;
    cfg.rng_seed = 16;
    cfg.noise_std = 2.0;
    const auto s = gen_shift_stream(cfg);
    const auto shift = uniform_shift(cfg.dims, 10.0 * cfg.noise_std);
    double len = 0.0;
    for (double v : shift) {
        len += v * v;
    }
    CHECK(std::sqrt(len) == doctest::Approx(20.0));
    const double bound = 4.0 * cfg.noise_std / std::sqrt(static_cast<double>(cfg.segment_length));
    for (std::size_t seg = 0; seg < cfg.n_segments; ++seg) {
        for (std::size_t p = 0; p < cfg.dims; ++p) {
            double mean = 0.0;
            for (std::size_t i = 0; i < cfg.segment_length; ++i) {
                mean += s.elements[seg * cfg.segment_length + i].values[p];
            }
            mean /= static_cast<double>(cfg.segment_length);
            CHECK(std::abs(mean - static_cast<double>(seg) * shift[p]) < bound);
        }
    }
}

TEST_CASE("shift stream determinism and options") {
    ShiftStreamConfig cfg;
    cfg.rng_seed = 17;
    cfg.base_mean = {1, 2, 3, 4};
    cfg.shift_vector = {0, 0, 0, 50};
    const auto a = gen_shift_stream(cfg);
    const auto b = gen_shift_stream(cfg);
    for (std::size_t i = 0; i < a.elements.size(); ++i) {
        REQUIRE(a.elements[i].values == b.elements[i].values);
        REQUIRE(a.elements[i].index == i);
    }
    CHECK(a.elements[4999].values[3] > 150.0);
    cfg.base_mean = {1};
    CHECK_THROWS_AS(gen_shift_stream(cfg), std::invalid_argument);
    cfg.base_mean.clear();
    cfg.noise_std = 0.0;
    CHECK_THROWS_AS(gen_shift_stream(cfg), std::invalid_argument);
}

}
