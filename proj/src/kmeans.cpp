#include "driftwatch/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "driftwatch/random.hpp"

namespace driftwatch {

namespace {

using kernels::PointsView;

bool same_row(const double* a, const double* b, std::size_t d) {
    return std::equal(a, a + d, b);
}

std::vector<double> gather_rows(PointsView points, std::span<const std::size_t> idx) {
    std::vector<double> out;
    out.reserve(idx.size() * points.cols);
    for (auto i : idx) {
        out.insert(out.end(), points.row(i), points.row(i) + points.cols);
    }
    return out;
}

// Moves the farthest eligible point into each empty cluster. A point is
// eligible when its current cluster keeps at least one other member.
void repair_empty_clusters(std::vector<std::uint32_t>& labels, std::vector<double>& dist2,
                           std::vector<std::size_t>& counts) {
    for (std::size_t j = 0; j < counts.size(); ++j) {
        if (counts[j] != 0) {
            continue;
        }
        std::size_t best = labels.size();
        double best_d2 = -1.0;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (counts[labels[i]] > 1 && dist2[i] > best_d2) {
                best_d2 = dist2[i];
                best = i;
            }
        }
        // n >= k guarantees some cluster has a spare member
        --counts[labels[best]];
        labels[best] = static_cast<std::uint32_t>(j);
        dist2[best] = 0.0;
        counts[j] = 1;
    }
}

}  // namespace

Seeding parse_seeding(const std::string& name) {
    if (name == "plus-plus" || name == "kmeans++" || name == "plusplus") {
        return Seeding::plus_plus;
    }
    if (name == "uniform-random" || name == "uniform" || name == "random") {
        return Seeding::uniform_random;
    }
    throw KMeansError(KMeansError::Kind::invalid_config, "unknown seeding '" + name + "'");
}

const char* to_string(Seeding s) {
    return s == Seeding::plus_plus ? "plus-plus" : "uniform-random";
}

void KMeansConfig::validate() const {
    if (k == 0) {
        throw KMeansError(KMeansError::Kind::invalid_config, "k must be at least 1");
    }
    if (max_iterations == 0) {
        throw KMeansError(KMeansError::Kind::invalid_config, "max_iterations must be at least 1");
    }
    if (!(tolerance >= 0.0)) {
        throw KMeansError(KMeansError::Kind::invalid_config, "tolerance must be non-negative");
    }
}

PointMatrix PointMatrix::from_elements(std::span<const StreamElement> points) {
    PointMatrix m;
    m.rows = points.size();
    m.dim = points.empty() ? 0 : points.front().dimension();
    m.values.reserve(m.rows * m.dim);
    m.timestamps.reserve(m.rows);
    for (const auto& e : points) {
        if (e.dimension() != m.dim) {
            throw KMeansError(KMeansError::Kind::dimension_mismatch,
                              "point " + std::to_string(e.index) + " has dimension " + std::to_string(e.dimension()) +
                                  ", expected " + std::to_string(m.dim));
        }
        m.values.insert(m.values.end(), e.values.begin(), e.values.end());
        m.timestamps.push_back(e.timestamp);
    }
    return m;
}

std::vector<std::size_t> seed_uniform_indices(std::size_t rows, std::size_t k, std::uint64_t rng_seed) {
    if (k > rows) {
        throw KMeansError(KMeansError::Kind::insufficient_points,
                          "cannot draw " + std::to_string(k) + " seeds from " + std::to_string(rows) + " points");
    }
    Rng rng(rng_seed);
    std::vector<std::size_t> pool(rows);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t s = 0; s < k; ++s) {
        const auto j = s + rng.index(rows - s);
        std::swap(pool[s], pool[j]);
    }
    pool.resize(k);
    return pool;
}

std::vector<std::size_t> seed_plus_plus_indices(PointsView points, std::size_t k, std::uint64_t rng_seed,
                                                kernels::ExecPolicy exec) {
    const std::size_t n = points.rows;
    if (k == 0) {
        throw KMeansError(KMeansError::Kind::invalid_config, "k must be at least 1");
    }
    if (k > n) {
        throw KMeansError(KMeansError::Kind::insufficient_points,
                          "cannot draw " + std::to_string(k) + " seeds from " + std::to_string(n) + " points");
    }
    Rng rng(rng_seed);
    std::vector<std::size_t> chosen;
    chosen.reserve(k);
    chosen.push_back(rng.index(n));

    std::vector<double> dist2(n, std::numeric_limits<double>::infinity());
    kernels::update_nearest_seed(exec, points, {points.row(chosen.back()), points.cols}, dist2);

    while (chosen.size() < k) {
        // serial, index-ordered sum keeps the draw independent of threading
        double total = 0.0;
        for (double v : dist2) {
            total += v;
        }
        std::size_t pick = n;
        if (total > 0.0) {
            const double target = rng.uniform() * total;
            double cum = 0.0;
            std::size_t last_positive = n;
            for (std::size_t i = 0; i < n; ++i) {
                if (dist2[i] <= 0.0) {
                    continue;
                }
                last_positive = i;
                cum += dist2[i];
                if (cum > target) {
                    pick = i;
                    break;
                }
            }
            if (pick == n) {
                pick = last_positive;
            }
        } else {
            std::vector<std::size_t> candidates;
            for (std::size_t i = 0; i < n; ++i) {
                const bool coincides = std::any_of(chosen.begin(), chosen.end(), [&](std::size_t c) {
                    return same_row(points.row(i), points.row(c), points.cols);
                });
                if (!coincides) {
                    candidates.push_back(i);
                }
            }
            if (candidates.empty()) {
                throw KMeansError(KMeansError::Kind::degenerate_seeding,
                                  "only " + std::to_string(chosen.size()) + " distinct points available for k=" +
                                      std::to_string(k));
            }
            pick = candidates[rng.index(candidates.size())];
        }
        chosen.push_back(pick);
        kernels::update_nearest_seed(exec, points, {points.row(pick), points.cols}, dist2);
    }
    return chosen;
}

std::vector<std::vector<double>> seed_plus_plus(std::span<const StreamElement> points, std::size_t k,
                                                std::uint64_t rng_seed) {
    const auto m = PointMatrix::from_elements(points);
    const auto idx = seed_plus_plus_indices(m.view(), k, rng_seed);
    std::vector<std::vector<double>> seeds;
    seeds.reserve(idx.size());
    for (auto i : idx) {
        seeds.emplace_back(m.view().row(i), m.view().row(i) + m.dim);
    }
    return seeds;
}

FitDetails kmeans_fit_detailed(const PointMatrix& points, const KMeansConfig& cfg, bool record_wcss) {
    cfg.validate();
    const std::size_t n = points.rows;
    const std::size_t d = points.dim;
    const std::size_t k = cfg.k;
    if (n < k) {
        throw KMeansError(KMeansError::Kind::insufficient_points,
                          "k-means needs at least k=" + std::to_string(k) + " points, got " + std::to_string(n));
    }
    if (d == 0) {
        throw KMeansError(KMeansError::Kind::dimension_mismatch, "points have dimension 0");
    }
    const PointsView view = points.view();

    const auto seeds = cfg.seeding == Seeding::plus_plus ? seed_plus_plus_indices(view, k, cfg.rng_seed, cfg.exec)
                                                         : seed_uniform_indices(n, k, cfg.rng_seed);
    std::vector<double> centroids = gather_rows(view, seeds);
    std::vector<double> next(k * d);
    std::vector<std::uint32_t> labels(n);
    std::vector<double> dist2(n);
    std::vector<std::size_t> counts(k);

    std::vector<double> wcss_history;
    wcss_history.reserve(cfg.max_iterations);
    std::size_t iterations = 0;
    bool converged = false;

    for (std::size_t iter = 0; iter < cfg.max_iterations; ++iter) {
        kernels::assign_nearest(cfg.exec, view, PointsView{centroids, k, d}, labels, dist2);

        std::fill(counts.begin(), counts.end(), std::size_t{0});
        for (auto l : labels) {
            ++counts[l];
        }
        repair_empty_clusters(labels, dist2, counts);

        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double* dst = next.data() + labels[i] * d;
            const double* src = view.row(i);
            for (std::size_t p = 0; p < d; ++p) {
                dst[p] += src[p];
            }
        }
        double displacement = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            const double inv = 1.0 / static_cast<double>(counts[j]);
            for (std::size_t p = 0; p < d; ++p) {
                next[j * d + p] *= inv;
            }
            displacement = std::max(displacement, squared_distance(next.data() + j * d, centroids.data() + j * d, d));
        }
        displacement = std::sqrt(displacement);
        centroids.swap(next);

        if (record_wcss) {
            double wcss = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                wcss += squared_distance(view.row(i), centroids.data() + labels[i] * d, d);
            }
            wcss_history.push_back(wcss);
        }
        iterations = iter + 1;
        if (displacement <= cfg.tolerance) {
            converged = true;
            break;
        }
    }

    std::vector<MicroCluster> clusters(k, MicroCluster(d));
    for (std::size_t i = 0; i < n; ++i) {
        clusters[labels[i]].insert({view.row(i), d}, points.timestamps[i]);
    }
    return FitDetails{ClusterModel(std::move(clusters)), std::move(labels), iterations, converged,
                      std::move(wcss_history)};
}

ClusterModel kmeans_fit(std::span<const StreamElement> points, const KMeansConfig& cfg) {
    return kmeans_fit_detailed(PointMatrix::from_elements(points), cfg, false).model;
}

}  // namespace driftwatch
