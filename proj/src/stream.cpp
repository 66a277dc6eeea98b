#include "driftwatch/stream.hpp"

#include <algorithm>

namespace driftwatch {

EndOfStream::EndOfStream(std::size_t requested, std::size_t count)
    : std::runtime_error("end of stream: requested " + std::to_string(requested) + " elements, read " +
                         std::to_string(count)),
      requested_(requested),
      count_(count) {}

std::optional<StreamElement> VectorSource::next() {
    if (pos_ >= elements_.size()) {
        return std::nullopt;
    }
    return elements_[pos_++];
}

Block::Block(std::vector<StreamElement> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) {
        throw StreamError("block must hold at least one element");
    }
    for (std::size_t i = 1; i < elements_.size(); ++i) {
        if (elements_[i].index != elements_[i - 1].index + 1) {
            throw StreamError("block indices are not consecutive at position " + std::to_string(i));
        }
    }
}

SlidingWindow::SlidingWindow(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) {
        throw StreamError("window capacity must be positive");
    }
    slots_.reserve(capacity);
}

void SlidingWindow::push(StreamElement e) {
    if (size_ > 0) {
        const StreamElement& last = back();
        if (e.index != last.index + 1) {
            throw StreamError("window requires consecutive indices: got " + std::to_string(e.index) + " after " +
                              std::to_string(last.index));
        }
        if (e.dimension() != last.dimension()) {
            throw StreamError("dimension mismatch: window holds d=" + std::to_string(last.dimension()) +
                              ", element has d=" + std::to_string(e.dimension()));
        }
    }
    if (slots_.size() < capacity_) {
        slots_.push_back(std::move(e));
        ++size_;
        return;
    }
    slots_[head_] = std::move(e);
    head_ = (head_ + 1) % capacity_;
}

const StreamElement& SlidingWindow::operator[](std::size_t i) const {
    if (i >= size_) {
        throw std::out_of_range("window position out of range");
    }
    return slots_[(head_ + i) % capacity_];
}

std::vector<StreamElement> SlidingWindow::elements() const {
    std::vector<StreamElement> out;
    out.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i) {
        out.push_back((*this)[i]);
    }
    return out;
}

SlidingWindow window_fill(ElementSource& source, std::size_t n) {
    SlidingWindow w(n);
    while (w.size() < n) {
        auto e = source.next();
        if (!e) {
            throw EndOfStream(n, w.size());
        }
        w.push(std::move(*e));
    }
    return w;
}

Block window_slide(SlidingWindow& window, std::size_t step, ElementSource& source) {
    if (step == 0) {
        throw StreamError("slide step must be positive");
    }
    if (!window.full()) {
        throw StreamError("can only slide a full window");
    }
    std::vector<StreamElement> fresh;
    fresh.reserve(step);
    while (fresh.size() < step) {
        auto e = source.next();
        if (!e) {
            throw EndOfStream(step, fresh.size());
        }
        fresh.push_back(std::move(*e));
    }
    // Validate before mutating so a bad element cannot leave the window half-advanced.
    Block blk(fresh);
    if (blk.first_index() != window.back().index + 1) {
        throw StreamError("slide would break index continuity");
    }
    for (const auto& e : fresh) {
        window.push(e);
    }
    return blk;
}

std::size_t window_overlap(const SlidingWindow& a, const SlidingWindow& b) {
    if (a.empty() || b.empty()) {
        return 0;
    }
    const auto lo = std::max(a.front().index, b.front().index);
    const auto hi = std::min(a.back().index, b.back().index);
    return hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0;
}

}  // namespace driftwatch
