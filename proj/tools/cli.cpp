#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "driftwatch/driftwatch.hpp"

namespace fs = std::filesystem;

namespace driftwatch::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void setup_logging() {
    auto logger = spdlog::get("driftwatch");
    if (!logger) {
        logger = spdlog::stderr_color_mt("driftwatch");
        spdlog::set_default_logger(logger);
        spdlog::set_pattern("[%l] %v");
    }
    auto level = spdlog::level::warn;
    if (const char* env = std::getenv("DRIFTWATCH_LOG")) {
        level = spdlog::level::from_str(env);
    }
    spdlog::set_level(level);
}

std::ofstream open_output(const fs::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

fs::path sidecar(const fs::path& stream_path, const std::string& suffix) {
    fs::path p = stream_path;
    p.replace_extension(suffix);
    return p;
}

void write_stream(const fs::path& path, const std::vector<StreamElement>& elements, const std::string& format,
                  bool timestamps) {
    auto out = open_output(path);
    const auto fmt = format.empty() ? format_from_path(path) : parse_stream_format(format);
    if (fmt == StreamFormat::jsonl) {
        write_jsonl(out, elements);
    } else {
        write_csv(out, elements, timestamps);
    }
    if (!out) {
        throw std::runtime_error("write failed for " + path.string());
    }
}

struct GenerateArgs {
    fs::path output;
    std::string format;
    bool timestamps = false;
    std::string sidecar_path;

    HyperplaneConfig hyper;
    ShiftStreamConfig shift;
    double shift_sigmas = 10.0;
};

void cmd_generate_hyperplane(const GenerateArgs& a) {
    const auto stream = gen_hyperplane(a.hyper);
    write_stream(a.output, stream.elements, a.format, a.timestamps);
    const fs::path labels_path = a.sidecar_path.empty() ? sidecar(a.output, ".labels.csv") : fs::path(a.sidecar_path);
    auto out = open_output(labels_path);
    for (auto l : stream.labels) {
        out << l << '\n';
    }
    std::cout << "wrote " << stream.elements.size() << " points (d=" << a.hyper.dims << ", classes=" << a.hyper.n_classes
              << ") to " << a.output.string() << ", labels to " << labels_path.string() << '\n';
}

void cmd_generate_shift(GenerateArgs a) {
    a.shift.shift_vector = uniform_shift(a.shift.dims, a.shift_sigmas * a.shift.noise_std);
    const auto stream = gen_shift_stream(a.shift);
    write_stream(a.output, stream.elements, a.format, a.timestamps);
    const fs::path truth_path = a.sidecar_path.empty() ? sidecar(a.output, ".truth.json") : fs::path(a.sidecar_path);
    auto out = open_output(truth_path);
    out << nlohmann::json(stream.change_points).dump() << '\n';
    std::cout << "wrote " << stream.elements.size() << " points (d=" << a.shift.dims << ", " << a.shift.n_segments
              << " segments) to " << a.output.string() << ", ground truth to " << truth_path.string() << '\n';
}

struct DetectorFlags {
    std::size_t window = 1000;
    std::size_t clusters = 5;
    std::size_t block = 1;
    std::string mode = "continuous";
    std::uint64_t seed = 0;
    std::string seeding = "plus-plus";
    std::size_t max_iter = 100;
    double tolerance = 1e-9;
    double radius_floor = 0.0;
    bool all_offending = false;
    std::string exec = "auto";

    void add_to(CLI::App* app, bool with_mode) {
        app->add_option("--window,-N", window, "Window width in tuples")->check(CLI::PositiveNumber);
        app->add_option("--clusters,-K", clusters, "Number of clusters")->check(CLI::PositiveNumber);
        app->add_option("--block,-b", block, "Block size (elements per slide)")->check(CLI::PositiveNumber);
        if (with_mode) {
            app->add_option("--mode", mode, "continuous or restarting")
                ->check(CLI::IsMember({"continuous", "restarting"}));
        }
        app->add_option("--seed", seed, "RNG seed for k-means");
        app->add_option("--seeding", seeding, "plus-plus or uniform-random")
            ->check(CLI::IsMember({"plus-plus", "uniform-random"}));
        app->add_option("--max-iter", max_iter, "Lloyd iteration cap")->check(CLI::PositiveNumber);
        app->add_option("--tol", tolerance, "Convergence tolerance (max centroid displacement)")
            ->check(CLI::NonNegativeNumber);
        app->add_option("--radius-floor", radius_floor, "Minimum cluster radius used by the predicate")
            ->check(CLI::NonNegativeNumber);
        app->add_flag("--all-offending", all_offending, "Report every change point of a block, not just the first");
        app->add_option("--exec", exec, "Kernel execution: auto, serial or parallel")
            ->check(CLI::IsMember({"auto", "serial", "parallel"}));
    }

    DetectorConfig to_config() const {
        DetectorConfig cfg;
        cfg.window_width = window;
        cfg.block_size = block;
        cfg.mode = parse_detector_mode(mode);
        cfg.radius_floor = radius_floor;
        cfg.report = all_offending ? OffendingReport::all : OffendingReport::first_only;
        cfg.kmeans.k = clusters;
        cfg.kmeans.seeding = parse_seeding(seeding);
        cfg.kmeans.max_iterations = max_iter;
        cfg.kmeans.tolerance = tolerance;
        cfg.kmeans.rng_seed = seed;
        cfg.kmeans.exec = exec == "serial"     ? kernels::ExecPolicy::serial
                          : exec == "parallel" ? kernels::ExecPolicy::parallel
                                               : kernels::ExecPolicy::automatic;
        try {
            cfg.validate();
        } catch (const std::exception& err) {
            throw UsageError(err.what());
        }
        return cfg;
    }
};

struct InputFlags {
    std::string path;
    std::string format;
    bool timestamp_column = false;
    bool header = false;

    void add_to(CLI::App* app, bool required) {
        auto* opt = app->add_option("input,--input,-i", path, "Stream file (CSV or JSONL)");
        if (required) {
            opt->required();
        }
        app->add_option("--format", format, "csv or jsonl (default: by extension)")
            ->check(CLI::IsMember({"csv", "jsonl"}));
        app->add_flag("--timestamp-column", timestamp_column, "CSV: first column is the timestamp");
        app->add_flag("--header", header, "CSV: skip the first line");
    }

    std::vector<StreamElement> load() const {
        CsvOptions csv;
        csv.timestamp_column = timestamp_column;
        csv.header = header;
        std::optional<StreamFormat> fmt;
        if (!format.empty()) {
            fmt = parse_stream_format(format);
        }
        return read_stream_file(path, fmt, csv);
    }
};

void cmd_detect(const InputFlags& input, const DetectorFlags& flags, const fs::path& out_dir) {
    const DetectorConfig cfg = flags.to_config();
    const auto stream = input.load();
    spdlog::info("loaded {} elements from {}", stream.size(), input.path);

    auto events_out = open_output(out_dir / "events.jsonl");
    auto snapshots_out = open_output(out_dir / "snapshots.jsonl");
    JsonlEventSink events(events_out);
    JsonlSnapshotSink snapshots(snapshots_out);
    PipelineSink* sinks[] = {&events, &snapshots};

    ReactivePipeline pipeline(cfg, sinks);
    VectorSource src(stream);
    std::optional<std::string> failure;
    try {
        pipeline.run(src);
    } catch (const std::exception& err) {
        failure = err.what();
    }
    events_out.flush();
    snapshots_out.flush();
    const auto& report = pipeline.report();
    {
        auto metrics_out = open_output(out_dir / "metrics.json");
        metrics_out << metrics_json(report, cfg, failure) << '\n';
    }
    if (failure) {
        throw std::runtime_error("detection failed: " + *failure);
    }
    if (report.clustering_count != report.change_count + 1) {
        spdlog::error("clusterings ({}) != changes + 1 ({})", report.clustering_count, report.change_count + 1);
    }
    std::cout << "changes=" << report.change_count << " clusterings=" << report.clustering_count
              << " points=" << report.points_processed << " skipped=" << report.points_skipped
              << " time_ms=" << report.wall_time_ms << " -> " << out_dir.string() << '\n';
}

struct BenchFlags {
    std::string axis = "window";
    std::vector<std::size_t> values;
    std::size_t reps = 3;
    std::vector<std::string> modes{"continuous", "restarting"};
    bool strict_timing = false;
    std::size_t jobs = 1;
    std::string generator = "hyperplane";
    std::size_t gen_points = 10000;
    std::uint64_t gen_seed = 1;
    std::string output;
};

void cmd_bench(const InputFlags& input, DetectorFlags detector, const BenchFlags& b) {
    SweepSpec spec;
    spec.axis = parse_sweep_axis(b.axis);
    spec.values = b.values.empty() ? default_sweep_values(spec.axis) : b.values;
    spec.repetitions = b.reps;
    spec.strict_timing = b.strict_timing;
    spec.jobs = b.jobs;
    spec.modes.clear();
    for (const auto& m : b.modes) {
        spec.modes.push_back(parse_detector_mode(m));
    }
    // the swept axis is overwritten per cell; validate the rest against the smallest cell
    if (spec.axis == SweepAxis::window_width) {
        detector.window = std::max(detector.window, detector.clusters);
    } else {
        detector.clusters = 1;
    }
    spec.fixed = detector.to_config();
    try {
        spec.validate();
    } catch (const std::exception& err) {
        throw UsageError(err.what());
    }

    std::vector<StreamElement> stream;
    if (!input.path.empty()) {
        stream = input.load();
    } else if (b.generator == "hyperplane") {
        HyperplaneConfig hc;
        hc.n_points = b.gen_points;
        hc.rng_seed = b.gen_seed;
        stream = gen_hyperplane(hc).elements;
    } else {
        ShiftStreamConfig sc;
        sc.n_segments = std::max<std::size_t>(1, b.gen_points / sc.segment_length);
        sc.rng_seed = b.gen_seed;
        stream = gen_shift_stream(sc).elements;
    }
    spdlog::info("bench over {} elements, {} cells", stream.size(), spec.values.size() * spec.modes.size());

    const auto rows = run_sweep(spec, stream);
    for (const auto& r : rows) {
        if (!r.error && r.clusterings != r.changes + 1) {
            spdlog::error("row {} {}: clusterings != changes + 1", r.axis_value, to_string(r.mode));
        }
    }
    if (b.output.empty()) {
        write_sweep_csv(std::cout, rows);
    } else {
        auto out = open_output(b.output);
        write_sweep_csv(out, rows);
        std::cout << "wrote " << rows.size() << " rows to " << b.output << '\n';
    }
}

}  // namespace

int run(const std::vector<std::string>& args) {
    setup_logging();

    CLI::App app{"Clustering-based change detection over multivariate streams"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Write a synthetic evaluation stream");
    generate->require_subcommand(1);
    auto add_common_gen = [&](CLI::App* sub) {
        sub->add_option("-o,--output", gen.output, "Output stream file")->required();
        sub->add_option("--format", gen.format, "csv or jsonl (default: by extension)")
            ->check(CLI::IsMember({"csv", "jsonl"}));
        sub->add_flag("--timestamps", gen.timestamps, "CSV: write a leading timestamp column");
    };
    auto* hyper = generate->add_subcommand("hyperplane", "Rotating-hyperplane drift stream");
    add_common_gen(hyper);
    hyper->add_option("--points", gen.hyper.n_points)->check(CLI::PositiveNumber);
    hyper->add_option("--dims", gen.hyper.dims)->check(CLI::PositiveNumber);
    hyper->add_option("--classes", gen.hyper.n_classes)->check(CLI::PositiveNumber);
    hyper->add_option("--drift", gen.hyper.drift_magnitude, "Per-point weight increment")
        ->check(CLI::NonNegativeNumber);
    auto* drifting = hyper->add_option("--drifting-dims", gen.hyper.drifting_dims, "Weights that drift (default: all)");
    hyper->add_option("--noise", gen.hyper.noise_fraction, "Fraction of randomised labels")
        ->check(CLI::Range(0.0, 1.0));
    hyper->add_option("--flip-prob", gen.hyper.sign_flip_probability, "Per-point drift direction flip probability")
        ->check(CLI::Range(0.0, 1.0));
    hyper->add_option("--seed", gen.hyper.rng_seed);
    hyper->add_option("--labels", gen.sidecar_path, "Label sidecar path (default: <output>.labels.csv)");

    auto* shift = generate->add_subcommand("shift", "Piecewise Gaussian mean-shift stream with ground truth");
    add_common_gen(shift);
    shift->add_option("--segment", gen.shift.segment_length, "Segment length")->check(CLI::PositiveNumber);
    shift->add_option("--segments", gen.shift.n_segments, "Number of segments")->check(CLI::PositiveNumber);
    shift->add_option("--dims", gen.shift.dims)->check(CLI::PositiveNumber);
    shift->add_option("--noise-std", gen.shift.noise_std)->check(CLI::PositiveNumber);
    shift->add_option("--shift", gen.shift_sigmas, "Shift length per boundary, in noise std units")
        ->check(CLI::NonNegativeNumber);
    shift->add_option("--seed", gen.shift.rng_seed);
    shift->add_option("--truth", gen.sidecar_path, "Ground-truth path (default: <output>.truth.json)");

    InputFlags detect_input;
    DetectorFlags detect_flags;
    std::string out_dir = ".";
    auto* detect = app.add_subcommand("detect", "Run change detection with reactive re-clustering");
    detect_input.add_to(detect, true);
    detect_flags.add_to(detect, true);
    detect->add_option("--out-dir,-o", out_dir, "Directory for events.jsonl, snapshots.jsonl, metrics.json");

    InputFlags bench_input;
    DetectorFlags bench_detector;
    bench_detector.window = 500;
    BenchFlags bench_flags;
    auto* bench = app.add_subcommand("bench", "Sweep window width or cluster count and tabulate results");
    bench_input.add_to(bench, false);
    bench_detector.add_to(bench, false);
    bench->add_option("--axis", bench_flags.axis, "window or clusters")->check(CLI::IsMember({"window", "clusters"}));
    bench->add_option("--values", bench_flags.values, "Comma-separated axis values")->delimiter(',');
    bench->add_option("--reps", bench_flags.reps, "Repetitions per cell")->check(CLI::PositiveNumber);
    bench->add_option("--modes", bench_flags.modes, "Detector modes")
        ->delimiter(',')
        ->check(CLI::IsMember({"continuous", "restarting"}));
    bench->add_flag("--strict-timing", bench_flags.strict_timing, "Run cells sequentially");
    bench->add_option("--jobs,-j", bench_flags.jobs, "Concurrent cells")->check(CLI::PositiveNumber);
    bench->add_option("--gen", bench_flags.generator, "Generator when no input is given")
        ->check(CLI::IsMember({"hyperplane", "shift"}));
    bench->add_option("--points", bench_flags.gen_points, "Generated stream length")->check(CLI::PositiveNumber);
    bench->add_option("--gen-seed", bench_flags.gen_seed, "Generator seed");
    bench->add_option("-o,--output", bench_flags.output, "Results CSV (default: stdout)");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (hyper->parsed()) {
            if (drifting->count() == 0) {
                gen.hyper.drifting_dims = gen.hyper.dims;
            }
            cmd_generate_hyperplane(gen);
        } else if (shift->parsed()) {
            cmd_generate_shift(gen);
        } else if (detect->parsed()) {
            cmd_detect(detect_input, detect_flags, out_dir);
        } else if (bench->parsed()) {
            cmd_bench(bench_input, bench_detector, bench_flags);
        }
    } catch (const UsageError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kUsage;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kRuntime;
    }
    return kOk;
}

}  // namespace driftwatch::cli
