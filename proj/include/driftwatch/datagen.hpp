#ifndef DRIFTWATCH_DATAGEN_HPP
#define DRIFTWATCH_DATAGEN_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "driftwatch/random.hpp"
#include "driftwatch/stream.hpp"

namespace driftwatch {

/// Rotating-hyperplane stream: points uniform in [0,1]^d, labels from the
/// signed margin to a drifting hyperplane quantised into n_classes bands.
/// Defaults give the 100000 x 10 / 5-class shape; drift and noise levels
/// are chosen so the concept moves visibly within ~10k points.
struct HyperplaneConfig {
    std::size_t n_points = 100000;
    std::size_t dims = 10;
    std::size_t n_classes = 5;
    double drift_magnitude = 0.001;
    std::size_t drifting_dims = 10;
    double noise_fraction = 0.05;
    double sign_flip_probability = 0.1;
    std::uint64_t rng_seed = 1;

    void validate() const;
};

struct LabeledStream {
    std::vector<StreamElement> elements;
    std::vector<std::uint32_t> labels;
};

/// The drifting concept behind gen_hyperplane. classify() is the noise-free
/// label of a point under the current weights; advance() applies one step
/// of drift.
class RotatingHyperplane {
public:
    explicit RotatingHyperplane(const HyperplaneConfig& cfg);

    std::uint32_t classify(std::span<const double> x) const;
    void advance();
    const std::vector<double>& weights() const { return weights_; }

    /// Draws the next point, its (possibly noisy) label, then drifts.
    StreamElement next(std::uint32_t& label);

private:
    HyperplaneConfig cfg_;
    Rng rng_;
    std::vector<double> weights_;
    std::vector<double> direction_;
    std::uint64_t emitted_ = 0;
};

LabeledStream gen_hyperplane(const HyperplaneConfig& cfg);

/// Piecewise-stationary Gaussian stream. Segment s (indices [s*L, (s+1)*L))
/// has mean base_mean + s * shift_vector and isotropic noise.
struct ShiftStreamConfig {
    std::size_t segment_length = 1000;
    std::size_t n_segments = 5;
    std::size_t dims = 4;
    std::vector<double> base_mean;     // empty means the origin
    std::vector<double> shift_vector;  // empty means uniform_shift(dims, 10 * noise_std)
    double noise_std = 1.0;
    std::uint64_t rng_seed = 1;

    void validate() const;
};

struct ShiftStream {
    std::vector<StreamElement> elements;
    std::vector<std::uint64_t> change_points;  // first index of every segment after the first
};

ShiftStream gen_shift_stream(const ShiftStreamConfig& cfg);

/// Vector of Euclidean length `magnitude` along the all-ones diagonal.
std::vector<double> uniform_shift(std::size_t dims, double magnitude);

}  // namespace driftwatch

#endif
