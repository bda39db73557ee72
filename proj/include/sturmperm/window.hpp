#pragma once

// A window T = {0, m_1, ..., m_{k-1}}: the offset set against which pattern
// complexity of words and permutations is measured.

#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "sturmperm/errors.hpp"

namespace sturmperm {

class Window {
public:
    /// offsets must start at 0 and be strictly increasing
    explicit Window(std::vector<std::size_t> offsets) : offsets_(std::move(offsets)) {
        if (offsets_.empty() || offsets_.front() != 0)
            throw PreconditionFailedError("window offsets must start at 0");
        for (std::size_t i = 1; i < offsets_.size(); ++i)
            if (offsets_[i] <= offsets_[i - 1])
                throw PreconditionFailedError("window offsets must be strictly increasing");
    }

    /// the contiguous window {0, 1, ..., k-1}
    static Window contiguous(std::size_t k) {
        std::vector<std::size_t> offs(k);
        std::iota(offs.begin(), offs.end(), std::size_t{0});
        return Window(std::move(offs));
    }

    std::size_t size() const { return offsets_.size(); }
    std::size_t max() const { return offsets_.back(); }
    std::size_t operator[](std::size_t i) const { return offsets_[i]; }
    const std::vector<std::size_t>& offsets() const { return offsets_; }

    friend bool operator==(const Window& a, const Window& b) { return a.offsets_ == b.offsets_; }
    friend bool operator<(const Window& a, const Window& b) { return a.offsets_ < b.offsets_; }

    /// "0;m1;...;mk-1" (semicolons keep CSV cells unambiguous)
    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < offsets_.size(); ++i) {
            if (i) s += ';';
            s += std::to_string(offsets_[i]);
        }
        return s;
    }

private:
    std::vector<std::size_t> offsets_;
};

} // namespace sturmperm
