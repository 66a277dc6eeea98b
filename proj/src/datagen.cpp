#include "driftwatch/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace driftwatch {

void HyperplaneConfig::validate() const {
    if (n_points == 0 || dims == 0 || n_classes == 0) {
        throw std::invalid_argument("hyperplane stream needs positive points, dims and classes");
    }
    if (drifting_dims == 0 || drifting_dims > dims) {
        throw std::invalid_argument("drifting dims must be in [1, dims]");
    }
    if (!(drift_magnitude >= 0.0)) {
        throw std::invalid_argument("drift magnitude must be non-negative");
    }
    if (!(noise_fraction >= 0.0 && noise_fraction <= 1.0)) {
        throw std::invalid_argument("noise fraction must be in [0, 1]");
    }
    if (!(sign_flip_probability >= 0.0 && sign_flip_probability <= 1.0)) {
        throw std::invalid_argument("sign flip probability must be in [0, 1]");
    }
}

RotatingHyperplane::RotatingHyperplane(const HyperplaneConfig& cfg)
    : cfg_(cfg), rng_(cfg.rng_seed), weights_(cfg.dims), direction_(cfg.dims, 1.0) {
    cfg_.validate();
    for (auto& w : weights_) {
        w = rng_.uniform();
    }
    for (std::size_t p = 0; p < cfg_.drifting_dims; ++p) {
        direction_[p] = rng_.bernoulli(0.5) ? 1.0 : -1.0;
    }
}

std::uint32_t RotatingHyperplane::classify(std::span<const double> x) const {
    double dot = 0.0;
    double wsum = 0.0;
    double wabs = 0.0;
    for (std::size_t p = 0; p < weights_.size(); ++p) {
        dot += weights_[p] * x[p];
        wsum += weights_[p];
        wabs += std::abs(weights_[p]);
    }
    // hyperplane through the cube centre; margin scaled into [-1, 1]
    const double margin = wabs > 0.0 ? (dot - 0.5 * wsum) / (0.5 * wabs) : 0.0;
    const auto classes = static_cast<double>(cfg_.n_classes);
    const double band = std::floor((margin + 1.0) * 0.5 * classes);
    return static_cast<std::uint32_t>(std::clamp(band, 0.0, classes - 1.0));
}

void RotatingHyperplane::advance() {
    if (cfg_.drift_magnitude <= 0.0) {
        return;
    }
    for (std::size_t p = 0; p < cfg_.drifting_dims; ++p) {
        weights_[p] += direction_[p] * cfg_.drift_magnitude;
        if (rng_.bernoulli(cfg_.sign_flip_probability)) {
            direction_[p] = -direction_[p];
        }
    }
}

StreamElement RotatingHyperplane::next(std::uint32_t& label) {
    StreamElement e;
    e.index = emitted_++;
    e.timestamp = static_cast<double>(e.index);
    e.values.resize(cfg_.dims);
    for (auto& v : e.values) {
        v = rng_.uniform();
    }
    label = classify(e.values);
    if (cfg_.noise_fraction > 0.0 && rng_.bernoulli(cfg_.noise_fraction)) {
        label = static_cast<std::uint32_t>(rng_.index(cfg_.n_classes));
    }
    advance();
    return e;
}

LabeledStream gen_hyperplane(const HyperplaneConfig& cfg) {
    RotatingHyperplane hyperplane(cfg);
    LabeledStream out;
    out.elements.reserve(cfg.n_points);
    out.labels.reserve(cfg.n_points);
    for (std::size_t i = 0; i < cfg.n_points; ++i) {
        std::uint32_t label = 0;
        out.elements.push_back(hyperplane.next(label));
        out.labels.push_back(label);
    }
    return out;
}

std::vector<double> uniform_shift(std::size_t dims, double magnitude) {
    if (dims == 0) {
        throw std::invalid_argument("uniform_shift needs dims >= 1");
    }
    return std::vector<double>(dims, magnitude / std::sqrt(static_cast<double>(dims)));
}

void ShiftStreamConfig::validate() const {
    if (segment_length == 0 || n_segments == 0 || dims == 0) {
        throw std::invalid_argument("shift stream needs positive segment length, segment count and dims");
    }
    if (!base_mean.empty() && base_mean.size() != dims) {
        throw std::invalid_argument("base mean has " + std::to_string(base_mean.size()) + " entries, dims is " +
                                    std::to_string(dims));
    }
    if (!shift_vector.empty() && shift_vector.size() != dims) {
        throw std::invalid_argument("shift vector has " + std::to_string(shift_vector.size()) +
                                    " entries, dims is " + std::to_string(dims));
    }
    if (!(noise_std > 0.0)) {
        throw std::invalid_argument("noise std must be positive");
    }
}

ShiftStream gen_shift_stream(const ShiftStreamConfig& cfg) {
    cfg.validate();
    const auto base = cfg.base_mean.empty() ? std::vector<double>(cfg.dims, 0.0) : cfg.base_mean;
    const auto shift = cfg.shift_vector.empty() ? uniform_shift(cfg.dims, 10.0 * cfg.noise_std) : cfg.shift_vector;

    Rng rng(cfg.rng_seed);
    ShiftStream out;
    out.elements.reserve(cfg.segment_length * cfg.n_segments);
    for (std::size_t s = 0; s < cfg.n_segments; ++s) {
        if (s > 0) {
            out.change_points.push_back(s * cfg.segment_length);
        }
        for (std::size_t i = 0; i < cfg.segment_length; ++i) {
            StreamElement e;
            e.index = s * cfg.segment_length + i;
            e.timestamp = static_cast<double>(e.index);
            e.values.resize(cfg.dims);
            for (std::size_t p = 0; p < cfg.dims; ++p) {
                e.values[p] = base[p] + static_cast<double>(s) * shift[p] + cfg.noise_std * rng.normal();
            }
            out.elements.push_back(std::move(e));
        }
    }
    return out;
}

}  // namespace driftwatch
