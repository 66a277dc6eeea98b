#include <doctest.h>

#include <random>

#include "driftwatch/kernels.hpp"
#include "test_support.hpp"

#ifdef DRIFTWATCH_HAVE_OPENMP
#include <omp.h>
#endif

using namespace driftwatch;
using namespace driftwatch::kernels;

namespace {

std::vector<double> flat(const testing::Points& pts) {
    std::vector<double> out;
    for (const auto& p : pts) {
        out.insert(out.end(), p.begin(), p.end());
    }
    return out;
}

struct ThreadCount {
    explicit ThreadCount([[maybe_unused]] int n) {
#ifdef DRIFTWATCH_HAVE_OPENMP
        saved_ = omp_get_max_threads();
        omp_set_num_threads(n);
#endif
    }
    ~ThreadCount() {
#ifdef DRIFTWATCH_HAVE_OPENMP
        omp_set_num_threads(saved_);
#endif
    }
    int saved_ = 1;
};

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("parallel kernels match the serial reference bit for bit") {
    ThreadCount threads(4);
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + rng() % 3000;
        const std::size_t d = 1 + rng() % 12;
        const std::size_t k = 1 + rng() % 9;
        const auto pts = flat(testing::random_points(rng, n, d));
        const auto cen = flat(testing::random_points(rng, k, d));
        const PointsView pv(pts, n, d);
        const PointsView cv(cen, k, d);

        std::vector<std::uint32_t> l1(n), l2(n);
        std::vector<double> d1(n), d2(n);
        assign_nearest_serial(pv, cv, l1, d1);
        assign_nearest_parallel(pv, cv, l2, d2);
        CHECK(l1 == l2);
        CHECK(d1 == d2);

        std::vector<double> m1(n, 1e9), m2(n, 1e9);
        const std::span<const double> seed(cen.data(), d);
        update_nearest_seed_serial(pv, seed, m1);
        update_nearest_seed_parallel(pv, seed, m2);
        CHECK(m1 == m2);

        std::vector<double> radii(k);
        for (auto& r : radii) {
            r = std::uniform_real_distribution<double>(0.0, 15.0)(rng);
        }
        std::vector<std::uint8_t> o1(n), o2(n);
        outside_all_serial(pv, cv, radii, o1);
        outside_all_parallel(pv, cv, radii, o2);
        CHECK(o1 == o2);
    }
}

TEST_CASE("nearest centroid ties go to the lower index") {
    const std::vector<double> pts{0.0, 0.0, 5.0, 0.0};
    const std::vector<double> cen{1.0, 0.0, -1.0, 0.0, 5.0, 0.0, 5.0, 0.0};
    std::vector<std::uint32_t> labels(2);
    std::vector<double> dist2(2);
    assign_nearest_serial({pts, 2, 2}, {cen, 4, 2}, labels, dist2);
    CHECK(labels[0] == 0);
    CHECK(labels[1] == 2);
    CHECK(dist2[0] == 1.0);
    CHECK(dist2[1] == 0.0);
}

TEST_CASE("outside_all uses a strict boundary") {
    const std::vector<double> cen{0.0, 0.0};
    const std::vector<double> radii{1.0};
    const std::vector<double> pts{0.0, 1.0, 0.0, 1.0000001, 0.0, 0.0};
    std::vector<std::uint8_t> out(3);
    outside_all_serial({pts, 3, 2}, {cen, 1, 2}, radii, out);
    CHECK(out == std::vector<std::uint8_t>{0, 1, 0});
}

TEST_CASE("policy resolution") {
    CHECK(resolve(ExecPolicy::serial, 1u << 30) == ExecPolicy::serial);
    CHECK(resolve(ExecPolicy::parallel, 1) == ExecPolicy::parallel);
    CHECK(resolve(ExecPolicy::automatic, 10) == ExecPolicy::serial);
    CHECK_THROWS(PointsView(std::vector<double>(5), 2, 3));
}

}
