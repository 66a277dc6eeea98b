#include "driftwatch/stream_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include <json.hpp>

namespace driftwatch {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::optional<double> parse_double(std::string_view s) {
    s = trim(s);
    if (s.empty()) {
        return std::nullopt;
    }
    if (s.front() == '+') {
        s.remove_prefix(1);
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

}  // namespace

StreamFormat format_from_path(const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    if (ext == ".jsonl" || ext == ".ndjson") {
        return StreamFormat::jsonl;
    }
    return StreamFormat::csv;
}

StreamFormat parse_stream_format(const std::string& name) {
    if (name == "csv") {
        return StreamFormat::csv;
    }
    if (name == "jsonl") {
        return StreamFormat::jsonl;
    }
    throw StreamError("unknown stream format '" + name + "' (expected csv or jsonl)");
}

std::optional<StreamElement> TextSourceBase::next() {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_no_;
        if (pending_skip_ > 0) {
            --pending_skip_;
            continue;
        }
        if (trim(line).empty()) {
            continue;
        }
        Row row = parse_line(line);
        StreamElement e;
        e.values = std::move(row.values);
        e.index = next_index_++;
        e.timestamp = row.timestamp.value_or(static_cast<double>(e.index));
        if (e.values.empty()) {
            throw StreamError("line " + std::to_string(line_no_) + ": element has no values");
        }
        if (dim_ && *dim_ != e.values.size()) {
            throw StreamError("line " + std::to_string(line_no_) + ": expected " + std::to_string(*dim_) +
                              " values, got " + std::to_string(e.values.size()));
        }
        dim_ = e.values.size();
        if (last_ts_ && e.timestamp < *last_ts_) {
            throw StreamError("line " + std::to_string(line_no_) + ": timestamp decreases");
        }
        last_ts_ = e.timestamp;
        return e;
    }
    if (in_.bad()) {
        throw StreamError("read failure after line " + std::to_string(line_no_));
    }
    return std::nullopt;
}

CsvSource::CsvSource(std::istream& in, CsvOptions opts) : TextSourceBase(in), opts_(opts) {
    if (opts_.header) {
        skip_lines(1);
    }
}

TextSourceBase::Row CsvSource::parse_line(const std::string& line) {
    Row e;
    std::string_view rest(line);
    std::size_t column = 0;
    while (true) {
        const auto cut = rest.find(opts_.delimiter);
        const auto field = rest.substr(0, cut);
        const auto v = parse_double(field);
        if (!v) {
            throw StreamError("line " + std::to_string(line_number()) + ", column " + std::to_string(column + 1) +
                              ": not a finite number: '" + std::string(trim(field)) + "'");
        }
        if (column == 0 && opts_.timestamp_column) {
            e.timestamp = *v;
        } else {
            e.values.push_back(*v);
        }
        ++column;
        if (cut == std::string_view::npos) {
            break;
        }
        rest.remove_prefix(cut + 1);
    }
    return e;
}

TextSourceBase::Row JsonlSource::parse_line(const std::string& line) {
    const auto where = [&] { return "line " + std::to_string(line_number()) + ": "; };
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& err) {
        throw StreamError(where() + "invalid JSON: " + err.what());
    }
    if (!j.is_object() || !j.contains("x") || !j["x"].is_array()) {
        throw StreamError(where() + "expected an object with an array field \"x\"");
    }
    Row e;
    for (const auto& v : j["x"]) {
        if (!v.is_number()) {
            throw StreamError(where() + "\"x\" must contain only numbers");
        }
        e.values.push_back(v.get<double>());
    }
    if (j.contains("t")) {
        if (!j["t"].is_number()) {
            throw StreamError(where() + "\"t\" must be a number");
        }
        e.timestamp = j["t"].get<double>();
    }
    return e;
}

std::vector<StreamElement> read_stream_file(const std::filesystem::path& path, std::optional<StreamFormat> format,
                                            CsvOptions csv) {
    std::ifstream in(path);
    if (!in) {
        throw StreamError("cannot open " + path.string());
    }
    const auto fmt = format.value_or(format_from_path(path));
    std::vector<StreamElement> out;
    auto drain = [&](ElementSource& src) {
        while (auto e = src.next()) {
            out.push_back(std::move(*e));
        }
    };
    try {
        if (fmt == StreamFormat::csv) {
            CsvSource src(in, csv);
            drain(src);
        } else {
            JsonlSource src(in);
            drain(src);
        }
    } catch (const StreamError& err) {
        throw StreamError(path.string() + ": " + err.what());
    }
    return out;
}

void write_csv(std::ostream& out, std::span<const StreamElement> elements, bool with_timestamp) {
    for (const auto& e : elements) {
        bool first = true;
        if (with_timestamp) {
            out << format_number(e.timestamp);
            first = false;
        }
        for (double v : e.values) {
            if (!first) {
                out << ',';
            }
            out << format_number(v);
            first = false;
        }
        out << '\n';
    }
}

void write_jsonl(std::ostream& out, std::span<const StreamElement> elements) {
    for (const auto& e : elements) {
        out << "{\"t\":" << format_number(e.timestamp) << ",\"x\":[";
        for (std::size_t i = 0; i < e.values.size(); ++i) {
            if (i) {
                out << ',';
            }
            out << format_number(e.values[i]);
        }
        out << "]}\n";
    }
}

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) {
        throw StreamError("cannot format number");
    }
    return std::string(buf, ptr);
}

}  // namespace driftwatch
