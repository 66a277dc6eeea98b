#ifndef DRIFTWATCH_BENCH_HPP
#define DRIFTWATCH_BENCH_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "driftwatch/pipeline.hpp"

namespace driftwatch {

enum class SweepAxis { window_width, cluster_count };

SweepAxis parse_sweep_axis(const std::string& name);
const char* to_string(SweepAxis a);

/// {200, 400, ..., 2000} for window width, {2, ..., 10} for cluster count.
std::vector<std::size_t> default_sweep_values(SweepAxis axis);

struct SweepSpec {
    DetectorConfig fixed;  // the swept field is overwritten per cell
    SweepAxis axis = SweepAxis::window_width;
    std::vector<std::size_t> values;
    std::size_t repetitions = 3;
    std::vector<DetectorMode> modes{DetectorMode::continuous, DetectorMode::restarting};
    bool strict_timing = false;  // cells run one after another
    std::size_t jobs = 1;        // concurrent cells when not strict

    void validate() const;
};

struct SweepRow {
    std::size_t axis_value = 0;
    DetectorMode mode = DetectorMode::continuous;
    std::uint64_t changes = 0;
    std::uint64_t clusterings = 0;
    std::uint64_t time_ns = 0;  // median over repetitions
    std::uint64_t mem_bytes = 0;
    std::vector<std::uint64_t> rep_times_ns;
    std::optional<std::string> error;
};

/// One row per (value, mode), ordered by value then mode. A failing cell
/// becomes an error row; the sweep carries on.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, std::span<const StreamElement> stream);

/// axis_value,mode,changes,clusterings,time_ms,mem_bytes,status
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

std::uint64_t median(std::vector<std::uint64_t> values);

}  // namespace driftwatch

#endif
