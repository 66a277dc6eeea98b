#ifndef DRIFTWATCH_STREAM_IO_HPP
#define DRIFTWATCH_STREAM_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "driftwatch/stream.hpp"

namespace driftwatch {

enum class StreamFormat { csv, jsonl };

/// csv for anything except a ".jsonl"/".ndjson" extension.
StreamFormat format_from_path(const std::filesystem::path& path);
StreamFormat parse_stream_format(const std::string& name);

struct CsvOptions {
    bool timestamp_column = false;  // first column is the timestamp
    bool header = false;            // skip the first line
    char delimiter = ',';
};

/// Shared validation for text sources: fixed dimension, non-decreasing
/// timestamps, consecutive indices. Errors carry the 1-based line number.
class TextSourceBase : public ElementSource {
public:
    explicit TextSourceBase(std::istream& in) : in_(in) {}

    std::optional<StreamElement> next() final;

protected:
    struct Row {
        std::vector<double> values;
        std::optional<double> timestamp;
    };

    /// Parses one non-empty line. Throws StreamError on malformed content.
    virtual Row parse_line(const std::string& line) = 0;
    std::size_t line_number() const { return line_no_; }
    void skip_lines(std::size_t n) { pending_skip_ = n; }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
    std::size_t pending_skip_ = 0;
    std::uint64_t next_index_ = 0;
    std::optional<std::size_t> dim_;
    std::optional<double> last_ts_;
};

/// One element per row: d numeric columns, optionally preceded by a
/// timestamp column. Without a timestamp column the timestamp is the index.
class CsvSource final : public TextSourceBase {
public:
    CsvSource(std::istream& in, CsvOptions opts);

protected:
    Row parse_line(const std::string& line) override;

private:
    CsvOptions opts_;
};

/// One JSON object per line: {"t": <number>, "x": [<number>, ...]}.
/// "t" may be omitted, in which case the index is used.
class JsonlSource final : public TextSourceBase {
public:
    explicit JsonlSource(std::istream& in) : TextSourceBase(in) {}

protected:
    Row parse_line(const std::string& line) override;
};

/// Loads a whole stream file into memory.
std::vector<StreamElement> read_stream_file(const std::filesystem::path& path,
                                            std::optional<StreamFormat> format = std::nullopt,
                                            CsvOptions csv = {});

void write_csv(std::ostream& out, std::span<const StreamElement> elements, bool with_timestamp);
void write_jsonl(std::ostream& out, std::span<const StreamElement> elements);

/// Shortest decimal text that parses back to exactly `v`.
std::string format_number(double v);

}  // namespace driftwatch

#endif
