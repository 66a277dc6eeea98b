#ifndef DRIFTWATCH_STREAM_HPP
#define DRIFTWATCH_STREAM_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace driftwatch {

/// One arrival of a multivariate stream: a d-dimensional value vector,
/// its timestamp and its zero-based position in the stream.
struct StreamElement {
    std::vector<double> values;
    double timestamp = 0.0;
    std::uint64_t index = 0;

    std::size_t dimension() const { return values.size(); }
};

/// Thrown when a source runs dry before a requested number of elements
/// could be read. `count()` is how many were actually obtained.
class EndOfStream : public std::runtime_error {
public:
    EndOfStream(std::size_t requested, std::size_t count);

    std::size_t requested() const { return requested_; }
    std::size_t count() const { return count_; }

private:
    std::size_t requested_;
    std::size_t count_;
};

/// Raised for malformed input, dimension mismatches and similar contract
/// violations on stream data.
class StreamError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Pull-based element source. Implementations hand out elements in stream
/// order and return std::nullopt once exhausted.
class ElementSource {
public:
    virtual ~ElementSource() = default;
    virtual std::optional<StreamElement> next() = 0;
};

/// Source over an in-memory sequence. The referenced storage must outlive
/// the source.
class VectorSource final : public ElementSource {
public:
    explicit VectorSource(std::span<const StreamElement> elements) : elements_(elements) {}

    std::optional<StreamElement> next() override;
    std::size_t position() const { return pos_; }

private:
    std::span<const StreamElement> elements_;
    std::size_t pos_ = 0;
};

/// Consecutive run of newly admitted elements (b >= 1).
class Block {
public:
    explicit Block(std::vector<StreamElement> elements);

    std::size_t size() const { return elements_.size(); }
    const StreamElement& operator[](std::size_t i) const { return elements_[i]; }
    const std::vector<StreamElement>& elements() const { return elements_; }
    std::uint64_t first_index() const { return elements_.front().index; }

    auto begin() const { return elements_.begin(); }
    auto end() const { return elements_.end(); }

private:
    std::vector<StreamElement> elements_;
};

/// Tuple-based window over the most recent `capacity` elements.
///
/// Storage is a ring buffer: pushing into a full window evicts the oldest
/// element in O(1). Logical index 0 is always the oldest element.
class SlidingWindow {
public:
    explicit SlidingWindow(std::size_t capacity);

    std::size_t capacity() const { return capacity_; }
    std::size_t size() const { return size_; }
    bool full() const { return size_ == capacity_; }
    bool empty() const { return size_ == 0; }

    /// Appends `e`. Indices must stay consecutive and the dimension fixed.
    void push(StreamElement e);

    const StreamElement& operator[](std::size_t i) const;
    const StreamElement& front() const { return (*this)[0]; }
    const StreamElement& back() const { return (*this)[size_ - 1]; }

    /// Contents oldest first.
    std::vector<StreamElement> elements() const;

private:
    std::size_t capacity_;
    std::size_t head_ = 0;  // slot of the oldest element
    std::size_t size_ = 0;
    std::vector<StreamElement> slots_;
};

/// Reads the first `n` elements of `source` into a new window.
/// Throws EndOfStream if fewer than `n` are available.
SlidingWindow window_fill(ElementSource& source, std::size_t n);

/// Advances a full window by `step` elements and returns the block of newly
/// admitted ones. If the source cannot supply `step` elements the window is
/// left untouched and EndOfStream is thrown; the partial elements are lost.
Block window_slide(SlidingWindow& window, std::size_t step, ElementSource& source);

/// Number of elements two windows have in common (by stream index).
std::size_t window_overlap(const SlidingWindow& a, const SlidingWindow& b);

}  // namespace driftwatch

#endif
