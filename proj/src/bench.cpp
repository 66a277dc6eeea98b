#include "driftwatch/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace driftwatch {

SweepAxis parse_sweep_axis(const std::string& name) {
    if (name == "window" || name == "window_width") {
        return SweepAxis::window_width;
    }
    if (name == "clusters" || name == "cluster_count") {
        return SweepAxis::cluster_count;
    }
    throw std::invalid_argument("unknown sweep axis '" + name + "' (expected window or clusters)");
}

const char* to_string(SweepAxis a) {
    return a == SweepAxis::window_width ? "window_width" : "cluster_count";
}

std::vector<std::size_t> default_sweep_values(SweepAxis axis) {
    std::vector<std::size_t> v;
    if (axis == SweepAxis::window_width) {
        for (std::size_t n = 200; n <= 2000; n += 200) {
            v.push_back(n);
        }
    } else {
        for (std::size_t k = 2; k <= 10; ++k) {
            v.push_back(k);
        }
    }
    return v;
}

void SweepSpec::validate() const {
    if (values.empty()) {
        throw std::invalid_argument("sweep needs at least one value");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] == 0) {
            throw std::invalid_argument("sweep values must be positive");
        }
        if (i > 0 && values[i] <= values[i - 1]) {
            throw std::invalid_argument("sweep values must be strictly increasing");
        }
    }
    if (repetitions == 0) {
        throw std::invalid_argument("repetitions must be at least 1");
    }
    if (modes.empty()) {
        throw std::invalid_argument("sweep needs at least one detector mode");
    }
}

std::uint64_t median(std::vector<std::uint64_t> values) {
    if (values.empty()) {
        return 0;
    }
    std::sort(values.begin(), values.end());
    const auto mid = values.size() / 2;
    if (values.size() % 2 == 1) {
        return values[mid];
    }
    return values[mid - 1] + (values[mid] - values[mid - 1]) / 2;
}

namespace {

SweepRow run_cell(const SweepSpec& spec, std::span<const StreamElement> stream, std::size_t value,
                  DetectorMode mode) {
    SweepRow row;
    row.axis_value = value;
    row.mode = mode;
    try {
        DetectorConfig cfg = spec.fixed;
        cfg.mode = mode;
        if (spec.axis == SweepAxis::window_width) {
            cfg.window_width = value;
        } else {
            cfg.kmeans.k = value;
        }
        std::vector<std::uint64_t> mems;
        for (std::size_t rep = 0; rep < spec.repetitions; ++rep) {
            VectorSource src(stream);
            const auto report = run_pipeline(src, cfg);
            if (rep == 0) {
                row.changes = report.change_count;
                row.clusterings = report.clustering_count;
            } else if (report.change_count != row.changes || report.clustering_count != row.clusterings) {
                throw std::runtime_error("change counts differ across repetitions");
            }
            row.rep_times_ns.push_back(report.wall_time_ns);
            mems.push_back(report.peak_memory_bytes);
        }
        row.time_ns = median(row.rep_times_ns);
        row.mem_bytes = median(std::move(mems));
    } catch (const std::exception& err) {
        row.error = err.what();
    }
    return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, std::span<const StreamElement> stream) {
    spec.validate();
    struct Cell {
        std::size_t value;
        DetectorMode mode;
    };
    std::vector<Cell> cells;
    for (auto v : spec.values) {
        for (auto m : spec.modes) {
            cells.push_back({v, m});
        }
    }
    std::vector<SweepRow> rows(cells.size());
    const auto n = static_cast<std::ptrdiff_t>(cells.size());
    const int threads = spec.strict_timing ? 1 : static_cast<int>(std::max<std::size_t>(spec.jobs, 1));
    // run_cell never throws, so the parallel region is exception-free
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (threads > 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        rows[i] = run_cell(spec, stream, cells[i].value, cells[i].mode);
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
    out << "axis_value,mode,changes,clusterings,time_ms,mem_bytes,status\n";
    for (const auto& r : rows) {
        out << r.axis_value << ',' << to_string(r.mode) << ',';
        if (r.error) {
            std::string msg = *r.error;
            std::replace(msg.begin(), msg.end(), ',', ';');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            out << ",,,,error: " << msg << '\n';
            continue;
        }
        char ms[32];
        std::snprintf(ms, sizeof(ms), "%.3f", static_cast<double>(r.time_ns) / 1e6);
        out << r.changes << ',' << r.clusterings << ',' << ms << ',' << r.mem_bytes << ",ok\n";
    }
}

}  // namespace driftwatch
