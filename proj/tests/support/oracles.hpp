#pragma once

// Test-only combinatorial oracles: the Fibonacci word as the fixed point of
// the substitution 0 -> 01, 1 -> 0, and brute-force balance checking by
// direct enumeration of all factor weights.

#include <algorithm>
#include <set>
#include <string>

#include "sturmperm/words.hpp"

namespace oracle {

/// prefix of the fixed point of 0 -> 01, 1 -> 0
inline std::string fibonacci_word(std::size_t length) {
    std::string w = "0";
    while (w.size() < length) {
        std::string next;
        next.reserve(2 * w.size());
        for (char c : w) next += (c == '0') ? "01" : "0";
        w = std::move(next);
    }
    return w.substr(0, length);
}

/// balance by definition: enumerate the weights of all factors of each length
inline bool brute_force_balanced(const std::string& bits) {
    for (std::size_t n = 1; n <= bits.size(); ++n) {
        std::set<std::size_t> weights;
        for (std::size_t i = 0; i + n <= bits.size(); ++i) {
            std::size_t w = 0;
            for (std::size_t t = 0; t < n; ++t) w += bits[i + t] == '1';
            weights.insert(w);
        }
        if (weights.size() > 2) return false;
        if (weights.size() == 2 && *weights.rbegin() - *weights.begin() != 1) return false;
    }
    return true;
}

} // namespace oracle
