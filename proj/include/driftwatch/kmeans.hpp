#ifndef DRIFTWATCH_KMEANS_HPP
#define DRIFTWATCH_KMEANS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "driftwatch/kernels.hpp"
#include "driftwatch/micro_cluster.hpp"
#include "driftwatch/stream.hpp"

namespace driftwatch {

enum class Seeding { uniform_random, plus_plus };

Seeding parse_seeding(const std::string& name);
const char* to_string(Seeding s);

struct KMeansConfig {
    std::size_t k = 5;
    Seeding seeding = Seeding::plus_plus;
    std::size_t max_iterations = 100;
    double tolerance = 1e-9;  // max centroid displacement, data units
    std::uint64_t rng_seed = 0;
    kernels::ExecPolicy exec = kernels::ExecPolicy::automatic;

    void validate() const;
};

class KMeansError : public std::runtime_error {
public:
    enum class Kind { invalid_config, insufficient_points, dimension_mismatch, degenerate_seeding };

    KMeansError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Flattened points plus timestamps, the form every fit works on.
struct PointMatrix {
    std::vector<double> values;  // row-major rows x dim
    std::vector<double> timestamps;
    std::size_t rows = 0;
    std::size_t dim = 0;

    static PointMatrix from_elements(std::span<const StreamElement> points);
    kernels::PointsView view() const { return {values, rows, dim}; }
};

struct FitDetails {
    ClusterModel model;
    std::vector<std::uint32_t> labels;  // cluster of every input point
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> wcss_history;  // within-cluster SS after each update step, if recorded
};

/// Lloyd's algorithm. Returns exactly cfg.k non-empty clusters; each
/// cluster's micro-cluster summarises the points assigned to it.
ClusterModel kmeans_fit(std::span<const StreamElement> points, const KMeansConfig& cfg);
FitDetails kmeans_fit_detailed(const PointMatrix& points, const KMeansConfig& cfg, bool record_wcss = true);

/// k-means++ seeding. Returns the chosen row indices in draw order.
std::vector<std::size_t> seed_plus_plus_indices(kernels::PointsView points, std::size_t k, std::uint64_t rng_seed,
                                                kernels::ExecPolicy exec = kernels::ExecPolicy::automatic);
std::vector<std::vector<double>> seed_plus_plus(std::span<const StreamElement> points, std::size_t k,
                                                std::uint64_t rng_seed);

/// k distinct row indices drawn uniformly without replacement.
std::vector<std::size_t> seed_uniform_indices(std::size_t rows, std::size_t k, std::uint64_t rng_seed);

}  // namespace driftwatch

#endif
