#pragma once

// Finite prefixes of infinite permutations, represented by sequences of
// pairwise-distinct ExactReal values, plus the machinery measured on them:
// the gamma relation table, T-factors and their rank-vector canonical form,
// factor/pattern complexity, periodicity detection, and the permutation
// families used throughout the toolkit.
//
// A prefix caches the global rank of every value at construction; all
// downstream counting then runs on plain integers, with exact arithmetic
// confined to the one sort that builds the ranks.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sturmperm/errors.hpp"
#include "sturmperm/exact.hpp"
#include "sturmperm/window.hpp"
#include "sturmperm/words.hpp"

namespace sturmperm::perms {

using exact::BigInt;
using exact::ExactReal;
using words::Word;

enum class GammaRelation : std::uint8_t { LT, GT };

inline char to_symbol(GammaRelation g) { return g == GammaRelation::LT ? '<' : '>'; }

/// Rank-vector canonical form of a T-factor: ranks[t] = number of window
/// entries with smaller value.  Two T-factors are order-isomorphic iff their
/// PatternIds are equal.
struct PatternId {
    std::vector<std::uint8_t> ranks;
    friend bool operator==(const PatternId& a, const PatternId& b) { return a.ranks == b.ranks; }
    friend bool operator<(const PatternId& a, const PatternId& b) { return a.ranks < b.ranks; }
    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < ranks.size(); ++i) {
            if (i) s += ';';
            s += std::to_string(ranks[i]);
        }
        return s;
    }
};

class PermutationPrefix {
public:
    explicit PermutationPrefix(std::vector<ExactReal> values, std::string origin = "")
        : values_(std::move(values)), origin_(std::move(origin)) {
        if (values_.empty()) throw PreconditionFailedError("empty permutation prefix");
        std::vector<std::size_t> order(values_.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return values_[a] < values_[b];
        });
        for (std::size_t k = 1; k < order.size(); ++k)
            if (values_[order[k - 1]] == values_[order[k]])
                throw DegenerateParametersError(
                    "values collide at positions " + std::to_string(order[k - 1]) + " and " +
                    std::to_string(order[k]));
        ranks_.resize(values_.size());
        for (std::size_t k = 0; k < order.size(); ++k)
            ranks_[order[k]] = static_cast<std::uint32_t>(k);
    }

    std::size_t size() const { return values_.size(); }
    const ExactReal& value(std::size_t i) const { return values_[i]; }
    const std::vector<ExactReal>& values() const { return values_; }
    std::uint32_t rank(std::size_t i) const { return ranks_[i]; }
    const std::vector<std::uint32_t>& ranks() const { return ranks_; }
    const std::string& origin() const { return origin_; }

private:
    std::vector<ExactReal> values_;
    std::vector<std::uint32_t> ranks_;
    std::string origin_;
};

// ---------------------------------------------------------------------------
// construction

/// Walks a_{i+1} = a_i + x (w_i = 0) / a_i - y (w_i = 1); the Sturmian
/// permutation when w is Sturmian and the walk never revisits a value.
inline PermutationPrefix build_from_word(const Word& w, const ExactReal& x, const ExactReal& y,
                                         const ExactReal& a0) {
    if (w.alphabet() != "01") throw PreconditionFailedError("build_from_word needs a binary word");
    if (!(x > ExactReal(0)) || !(y > ExactReal(0)))
        throw PreconditionFailedError("build_from_word needs x > 0 and y > 0");
    std::vector<ExactReal> vals;
    vals.reserve(w.size() + 1);
    vals.push_back(a0);
    for (std::size_t i = 0; i < w.size(); ++i)
        vals.push_back(w[i] == '0' ? vals.back() + x : vals.back() - y);
    return PermutationPrefix(std::move(vals),
                             "sturmian x=" + x.str() + " y=" + y.str() + " a0=" + a0.str());
}

/// values[i] = frac(sigma*i + rho)
inline PermutationPrefix fractional_orbit(const ExactReal& sigma, const ExactReal& rho,
                                          std::size_t n) {
    if (n == 0) throw PreconditionFailedError("empty orbit requested");
    const ExactReal one(1);
    std::vector<ExactReal> vals;
    vals.reserve(n);
    const ExactReal step = sigma.frac();
    ExactReal x = rho.frac();
    for (std::size_t i = 0; i < n; ++i) {
        vals.push_back(x);
        x += step;
        if (x >= one) x -= one;
    }
    // a rational sigma repeats within the prefix and is rejected here
    return PermutationPrefix(std::move(vals),
                             "fractional-orbit sigma=" + sigma.str() + " rho=" + rho.str());
}

/// the 2-periodic family -1, 2m-2, 1, 2m, 3, 2m+2, 5, 2m+4, ...
inline PermutationPrefix periodic_example(long long nparam, std::size_t n) {
    if (nparam < 2) throw PreconditionFailedError("periodic_example needs nparam >= 2");
    if (n == 0) throw PreconditionFailedError("empty prefix requested");
    std::vector<ExactReal> vals;
    vals.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const long long k = static_cast<long long>(i / 2);
        vals.push_back(i % 2 == 0 ? ExactReal(2 * k - 1) : ExactReal(2 * nparam - 2 + 2 * k));
    }
    return PermutationPrefix(std::move(vals),
                             "periodic-example nparam=" + std::to_string(nparam));
}

/// Aperiodic low-factor-complexity family: a_{2k} = k, a_{2k+1} = gaps[k] + 1/2
/// with gaps strictly increasing and gaps[k] >= k+1.  The construction
/// verifies its defining inequality families on the produced prefix:
///   a_{2k} < a_{2k+2} < a_{2k+1} < a_{2k+3}  and  a_{2*gaps[k]} < a_{2k+1} < a_{2*gaps[k]+2}.
inline PermutationPrefix low_complexity_example(const std::vector<BigInt>& gaps, std::size_t n) {
    if (n == 0) throw PreconditionFailedError("empty prefix requested");
    const std::size_t odd_count = n / 2;
    if (gaps.size() < odd_count)
        throw InvalidGapsError("need " + std::to_string(odd_count) + " gap values, got " +
                               std::to_string(gaps.size()));
    for (std::size_t k = 0; k < odd_count; ++k) {
        if (gaps[k] < BigInt(k + 1)) throw InvalidGapsError("gaps[k] >= k+1 violated");
        if (k > 0 && gaps[k] <= gaps[k - 1]) throw InvalidGapsError("gaps must strictly increase");
    }
    std::vector<ExactReal> vals;
    vals.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i % 2 == 0)
            vals.push_back(ExactReal(BigInt(i / 2)));
        else
            vals.push_back(ExactReal::rational(2 * gaps[i / 2] + 1, 2));
    }
    PermutationPrefix prefix(std::move(vals), "low-complexity");

    auto lt = [&](std::size_t a, std::size_t b) { return prefix.rank(a) < prefix.rank(b); };
    for (std::size_t k = 0; 2 * k < n; ++k) {
        if (2 * k + 2 < n && !lt(2 * k, 2 * k + 2)) throw InvalidGapsError("a_{2k} < a_{2k+2} fails");
        if (2 * k + 2 < n && !lt(2 * k + 2, 2 * k + 1))
            throw InvalidGapsError("a_{2k+2} < a_{2k+1} fails");
        if (2 * k + 3 < n && !lt(2 * k + 1, 2 * k + 3))
            throw InvalidGapsError("a_{2k+1} < a_{2k+3} fails");
        if (2 * k + 1 < n && gaps[k] * 2 < BigInt(n)) {
            const std::size_t g2 = static_cast<std::size_t>(gaps[k] * 2);
            if (!lt(g2, 2 * k + 1)) throw InvalidGapsError("a_{2 n_k} < a_{2k+1} fails");
            if (g2 + 2 < n && !lt(2 * k + 1, g2 + 2))
                throw InvalidGapsError("a_{2k+1} < a_{2 n_k + 2} fails");
        }
    }
    return prefix;
}

/// default gap sequence n_k = 2^k + k
inline std::vector<BigInt> default_gaps(std::size_t count) {
    std::vector<BigInt> gaps;
    gaps.reserve(count);
    BigInt pow = 1;
    for (std::size_t k = 0; k < count; ++k) {
        gaps.push_back(pow + BigInt(k));
        pow <<= 1;
    }
    return gaps;
}

// ---------------------------------------------------------------------------
// gamma relations

inline GammaRelation gamma(const PermutationPrefix& a, std::size_t i, std::size_t j) {
    if (i >= a.size() || j >= a.size() || i == j)
        throw IndexOutOfRangeError("gamma indices out of range");
    return a.rank(i) < a.rank(j) ? GammaRelation::LT : GammaRelation::GT;
}

/// gamma_i as a word over {<,>}: symbols (gamma_{n,n+i}) for n = 0,1,...
inline Word gamma_row(const PermutationPrefix& a, std::size_t i) {
    if (i == 0 || i >= a.size()) throw IndexOutOfRangeError("gamma_row difference out of range");
    std::string symbols;
    symbols.reserve(a.size() - i);
    for (std::size_t n = 0; n + i < a.size(); ++n)
        symbols.push_back(to_symbol(gamma(a, n, n + i)));
    return Word::relations(std::move(symbols));
}

/// gamma_i^j: the arithmetic subsequence (gamma_{j+ni, j+(n+1)i}) for n = 0,1,...
inline Word gamma_ap(const PermutationPrefix& a, std::size_t i, std::size_t j) {
    if (i == 0 || j >= i) throw IndexOutOfRangeError("gamma_ap needs 0 <= j < i");
    if (j + i >= a.size()) throw IndexOutOfRangeError("gamma_ap subsequence is empty");
    std::string symbols;
    for (std::size_t n = 0; j + (n + 1) * i < a.size(); ++n)
        symbols.push_back(to_symbol(gamma(a, j + n * i, j + (n + 1) * i)));
    return Word::relations(std::move(symbols));
}

// ---------------------------------------------------------------------------
// T-factors and complexity

inline PatternId t_factor(const PermutationPrefix& a, const Window& T, std::size_t n) {
    if (n + T.max() >= a.size()) throw IndexOutOfRangeError("T-factor reaches past the prefix");
    if (T.size() > 255) throw PreconditionFailedError("window too large for rank encoding");
    const std::size_t k = T.size();
    PatternId id;
    id.ranks.resize(k);
    for (std::size_t s = 0; s < k; ++s) {
        std::uint8_t rank = 0;
        const std::uint32_t rs = a.rank(n + T[s]);
        for (std::size_t t = 0; t < k; ++t)
            if (a.rank(n + T[t]) < rs) ++rank;
        id.ranks[s] = rank;
    }
    return id;
}

/// number of distinct T-factors over all fully-inside positions
inline std::size_t pattern_complexity(const PermutationPrefix& a, const Window& T) {
    if (T.max() >= a.size()) throw WindowTooWideError("window reaches past the prefix");
    std::set<PatternId> seen;
    for (std::size_t n = 0; n + T.max() < a.size(); ++n) seen.insert(t_factor(a, T, n));
    return seen.size();
}

/// pattern complexity of the contiguous window {0,...,n-1}
inline std::size_t factor_complexity(const PermutationPrefix& a, std::size_t n) {
    if (n == 0) throw PreconditionFailedError("factor length must be positive");
    if (n > a.size()) throw WindowTooWideError("factor length exceeds the prefix");
    return pattern_complexity(a, Window::contiguous(n));
}

/// Exhaustive max of pattern_complexity over all k-windows with offsets
/// <= max_offset (lexicographic enumeration; first witness achieving the max).
/// A lower bound for the true maximal pattern complexity.
inline std::pair<std::size_t, Window> max_pattern_complexity_bounded(
    const PermutationPrefix& a, std::size_t k, std::size_t max_offset) {
    if (k == 0) throw PreconditionFailedError("window size must be positive");
    if (k - 1 > max_offset)
        throw PreconditionFailedError("max_offset too small for requested window size");
    if (max_offset + 1 >= a.size()) throw WindowTooWideError("max_offset reaches past the prefix");

    std::size_t best = 0;
    std::optional<Window> witness;
    std::vector<std::size_t> tail(k - 1);
    for (std::size_t i = 0; i < tail.size(); ++i) tail[i] = i + 1;
    for (;;) {
        std::vector<std::size_t> offs{0};
        offs.insert(offs.end(), tail.begin(), tail.end());
        Window T(std::move(offs));
        const std::size_t c = pattern_complexity(a, T);
        if (c > best) {
            best = c;
            witness = T;
        }
        if (tail.empty()) break;
        std::size_t i = tail.size();
        while (i > 0 && tail[i - 1] == max_offset - (tail.size() - i)) --i;
        if (i == 0) break;
        ++tail[i - 1];
        for (std::size_t j = i; j < tail.size(); ++j) tail[j] = tail[j - 1] + 1;
    }
    return {best, *witness};
}

// ---------------------------------------------------------------------------
// periodicity

/// gamma_{ij} = gamma_{i+t,j+t} for all from <= i < j < N - t
inline bool is_t_periodic(const PermutationPrefix& a, std::size_t t, std::size_t from = 0) {
    if (t == 0 || t >= a.size()) throw PreconditionFailedError("period out of range");
    for (std::size_t i = a.size() - t; i-- > from;)
        for (std::size_t j = i + 1; j + t < a.size(); ++j)
            if ((a.rank(i) < a.rank(j)) != (a.rank(i + t) < a.rank(j + t))) return false;
    return true;
}

/// Smallest period t <= max_period (with its minimal preperiod <= max_preperiod)
/// such that gamma_{ij} = gamma_{i+t,j+t} for all preperiod <= i < j < N-t.
/// Brute force over gamma pairs; the scan runs from high indices down so the
/// first violation met pins the minimal preperiod for that t.
inline std::optional<std::pair<std::size_t, std::size_t>> detect_permutation_period(
    const PermutationPrefix& a, std::size_t max_preperiod, std::size_t max_period) {
    if (max_period == 0) throw PreconditionFailedError("max_period must be positive");
    if (max_preperiod + 3 * max_period > a.size())
        throw InsufficientEvidenceError("prefix too short for the requested period bounds");
    const std::size_t n = a.size();
    for (std::size_t t = 1; t <= max_period; ++t) {
        std::size_t pre = 0;
        bool rejected = false;
        for (std::size_t i = n - t; i-- > 0 && !rejected;) {
            for (std::size_t j = i + 1; j + t < n; ++j) {
                if ((a.rank(i) < a.rank(j)) != (a.rank(i + t) < a.rank(j + t))) {
                    pre = i + 1;
                    rejected = pre > max_preperiod;
                    break;
                }
            }
            if (pre != 0) break; // highest violating i found; lower i cannot raise it
        }
        if (!rejected && pre <= max_preperiod) return std::make_pair(pre, t);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// restriction and shift

/// re-indexed subpermutation alpha_i^j: values at positions j, j+i, j+2i, ...
inline PermutationPrefix restrict_arithmetic(const PermutationPrefix& a, std::size_t i,
                                             std::size_t j) {
    if (i == 0 || j >= i) throw IndexOutOfRangeError("restrict_arithmetic needs 0 <= j < i");
    if (j >= a.size()) throw IndexOutOfRangeError("restriction is empty");
    std::vector<ExactReal> vals;
    for (std::size_t pos = j; pos < a.size(); pos += i) vals.push_back(a.value(pos));
    return PermutationPrefix(std::move(vals), a.origin() + " | restrict i=" + std::to_string(i) +
                                                  " j=" + std::to_string(j));
}

/// tau^n alpha: drop the first n entries
inline PermutationPrefix shift(const PermutationPrefix& a, std::size_t n) {
    if (n >= a.size()) throw IndexOutOfRangeError("shift past the end of the prefix");
    std::vector<ExactReal> vals(a.values().begin() + static_cast<std::ptrdiff_t>(n),
                                a.values().end());
    return PermutationPrefix(std::move(vals), a.origin() + " | shift " + std::to_string(n));
}

} // namespace sturmperm::perms
