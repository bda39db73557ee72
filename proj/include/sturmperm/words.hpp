#pragma once

// Finite prefixes of infinite words: mechanical (Sturmian) words, rotation
// words coded against a labeled circle partition, and the word-side analysis
// toolkit (subword/pattern complexity, balance, periodicity, classification).
//
// Everything here is exact: lattice decisions like "is sigma*i + rho an
// integer" are made with ExactReal, never floating point.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sturmperm/errors.hpp"
#include "sturmperm/exact.hpp"
#include "sturmperm/window.hpp"

namespace sturmperm::words {

using exact::BigInt;
using exact::ExactReal;

inline constexpr char kLess = '<';
inline constexpr char kGreater = '>';

/// Finite word over a small alphabet of single-character symbols.
class Word {
public:
    Word() : alphabet_("01") {}

    Word(std::string symbols, std::string alphabet)
        : symbols_(std::move(symbols)), alphabet_(std::move(alphabet)) {
        for (char c : symbols_)
            if (alphabet_.find(c) == std::string::npos)
                throw PreconditionFailedError(std::string("symbol '") + c +
                                              "' not in declared alphabet \"" + alphabet_ + "\"");
    }

    static Word binary(std::string bits) { return Word(std::move(bits), "01"); }
    static Word relations(std::string rels) { return Word(std::move(rels), "<>"); }

    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    char operator[](std::size_t i) const { return symbols_[i]; }
    const std::string& str() const { return symbols_; }
    const std::string& alphabet() const { return alphabet_; }
    std::string_view factor(std::size_t pos, std::size_t len) const {
        return std::string_view(symbols_).substr(pos, len);
    }

    Word prefix(std::size_t len) const { return Word(symbols_.substr(0, len), alphabet_); }

    /// distinct symbols actually occurring, in alphabet order
    std::string occurring() const {
        std::string out;
        for (char c : alphabet_)
            if (symbols_.find(c) != std::string::npos) out += c;
        return out;
    }

    friend bool operator==(const Word& a, const Word& b) { return a.symbols_ == b.symbols_; }
    friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }

private:
    std::string symbols_;
    std::string alphabet_;
};

enum class MechanicalVariant { lower, upper };

struct MechanicalWord {
    Word word;
    std::vector<std::size_t> lattice_hits; // indices i <= n with sigma*i + rho integer
    bool rational_slope = false;
};

/// w_i = floor(sigma*(i+1) + rho) - floor(sigma*i + rho)   (lower)
/// w_i = ceil(sigma*(i+1) + rho) - ceil(sigma*i + rho)     (upper)
/// sigma in (0,1), rho in [0,1).  A rational sigma is allowed but flagged;
/// positions where sigma*i + rho is an integer are reported as lattice hits.
inline MechanicalWord mechanical_word(const ExactReal& sigma, const ExactReal& rho,
                                      std::size_t n, MechanicalVariant variant) {
    const ExactReal zero(0), one(1);
    if (!(sigma > zero && sigma < one))
        throw PreconditionFailedError("mechanical_word: sigma must lie in (0,1)");
    if (!(rho >= zero && rho < one))
        throw PreconditionFailedError("mechanical_word: rho must lie in [0,1)");

    MechanicalWord out;
    out.rational_slope = sigma.is_rational();
    std::string bits;
    bits.reserve(n);

    // track f_i = frac(sigma*i + rho); the step is +1 exactly when the
    // fractional part wraps (lower variant). Ceil differs from floor only at
    // integers, i.e. at lattice hits.
    ExactReal f = rho; // rho in [0,1) so frac(sigma*0 + rho) = rho
    if (f.is_zero()) out.lattice_hits.push_back(0);
    for (std::size_t i = 0; i < n; ++i) {
        ExactReal next = f + sigma;
        bool wrapped = false;
        if (next >= one) {
            next -= one;
            wrapped = true;
        }
        if (next.is_zero()) out.lattice_hits.push_back(i + 1);
        bool bit;
        if (variant == MechanicalVariant::lower) {
            bit = wrapped;
        } else {
            // ceil(x) = floor(x) + [frac(x) > 0]
            const bool f_int = f.is_zero();
            const bool next_int = next.is_zero();
            const int step = (wrapped ? 1 : 0) + (next_int ? 0 : 1) - (f_int ? 0 : 1);
            bit = step == 1;
        }
        bits.push_back(bit ? '1' : '0');
        f = next;
    }
    out.word = Word::binary(std::move(bits));
    return out;
}

enum class IntervalConvention { left_closed, right_closed };

/// Partition of the unit circle [0,1) into labeled half-open intervals; each
/// cut point starts the interval carrying its label (walking counterclockwise).
class CirclePartition {
public:
    CirclePartition(std::vector<std::pair<ExactReal, char>> cuts,
                    IntervalConvention convention = IntervalConvention::left_closed)
        : convention_(convention) {
        if (cuts.empty()) throw PreconditionFailedError("empty circle partition");
        const ExactReal zero(0), one(1);
        for (auto& [point, label] : cuts) {
            if (!(point >= zero && point < one))
                throw PreconditionFailedError("cut point outside [0,1): " + point.str());
            cuts_.push_back({point, label});
        }
        std::sort(cuts_.begin(), cuts_.end(),
                  [](const Cut& a, const Cut& b) { return a.start < b.start; });
        for (std::size_t i = 1; i < cuts_.size(); ++i)
            if (cuts_[i].start == cuts_[i - 1].start)
                throw BoundaryHitError("duplicate cut point " + cuts_[i].start.str());
    }

    IntervalConvention convention() const { return convention_; }
    std::size_t interval_count() const { return cuts_.size(); }
    const ExactReal& cut(std::size_t i) const { return cuts_[i].start; }
    char label(std::size_t i) const { return cuts_[i].label; }

    std::string alphabet() const {
        std::string out;
        for (const Cut& c : cuts_)
            if (out.find(c.label) == std::string::npos) out += c.label;
        std::sort(out.begin(), out.end());
        return out;
    }

    /// label of the interval containing x (x must already be in [0,1))
    char label_of(const ExactReal& x) const {
        // left-closed: largest cut <= x; right-closed: largest cut < x;
        // if none, wrap to the last interval.
        std::size_t best = cuts_.size(); // sentinel: wrap
        for (std::size_t i = 0; i < cuts_.size(); ++i) {
            const int c = compare(cuts_[i].start, x);
            const bool starts_before =
                convention_ == IntervalConvention::left_closed ? c <= 0 : c < 0;
            if (starts_before)
                best = i;
            else
                break;
        }
        return best == cuts_.size() ? cuts_.back().label : cuts_[best].label;
    }

private:
    struct Cut {
        ExactReal start;
        char label;
    };
    std::vector<Cut> cuts_;
    IntervalConvention convention_;
};

/// v_i = label of the interval containing frac(x0 + i*xi)
inline Word rotation_word(const CirclePartition& part, const ExactReal& xi,
                          const ExactReal& x0, std::size_t n) {
    const ExactReal one(1);
    const ExactReal step = xi.frac();
    ExactReal x = x0.frac();
    std::string symbols;
    symbols.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        symbols.push_back(part.label_of(x));
        x += step;
        if (x >= one) x -= one;
    }
    return Word(std::move(symbols), part.alphabet());
}

/// number of distinct length-n factors of w
inline std::size_t subword_complexity(const Word& w, std::size_t n) {
    if (n > w.size()) throw PreconditionFailedError("factor length exceeds word length");
    if (n == 0) return 1;
    std::set<std::string_view> factors;
    for (std::size_t i = 0; i + n <= w.size(); ++i) factors.insert(w.factor(i, n));
    return factors.size();
}

/// number of distinct tuples (w_{n+t})_{t in T} over all n with T+n inside w
inline std::size_t word_pattern_complexity(const Word& w, const Window& T) {
    if (T.max() >= w.size())
        throw WindowTooWideError("window reaches past the end of the word");
    std::set<std::string> patterns;
    for (std::size_t n = 0; n + T.max() < w.size(); ++n) {
        std::string key;
        key.reserve(T.size());
        for (std::size_t t : T.offsets()) key.push_back(w[n + t]);
        patterns.insert(std::move(key));
    }
    return patterns.size();
}

/// exhaustive max of word_pattern_complexity over all k-windows with offsets
/// <= max_offset; returns the max and the lexicographically first witness
inline std::pair<std::size_t, Window> word_max_pattern_complexity_bounded(
    const Word& w, std::size_t k, std::size_t max_offset) {
    if (k == 0) throw PreconditionFailedError("window size must be positive");
    if (k - 1 > max_offset)
        throw PreconditionFailedError("max_offset too small for requested window size");
    if (max_offset >= w.size()) throw WindowTooWideError("max_offset reaches past the word");

    std::size_t best = 0;
    std::optional<Window> witness;
    std::vector<std::size_t> tail(k - 1);
    for (std::size_t i = 0; i < tail.size(); ++i) tail[i] = i + 1;
    for (;;) {
        std::vector<std::size_t> offs{0};
        offs.insert(offs.end(), tail.begin(), tail.end());
        Window T(std::move(offs));
        const std::size_t c = word_pattern_complexity(w, T);
        if (c > best) {
            best = c;
            witness = T;
        }
        if (tail.empty()) break;
        // next (k-1)-combination of {1..max_offset} in lexicographic order
        std::size_t i = tail.size();
        while (i > 0 && tail[i - 1] == max_offset - (tail.size() - i)) --i;
        if (i == 0) break;
        ++tail[i - 1];
        for (std::size_t j = i; j < tail.size(); ++j) tail[j] = tail[j - 1] + 1;
    }
    return {best, *witness};
}

/// count of 1s in a binary word
inline std::size_t weight(const Word& u) {
    if (u.alphabet() != "01") throw PreconditionFailedError("weight needs a binary word");
    return static_cast<std::size_t>(std::count(u.str().begin(), u.str().end(), '1'));
}

struct BalanceReport {
    bool balanced = true;
    std::size_t first_violation_length = 0; // valid when !balanced
    explicit operator bool() const { return balanced; }
};

/// true iff for every n the weights of length-n factors take at most two
/// (necessarily consecutive) values
inline BalanceReport is_balanced(const Word& w) {
    if (w.alphabet() != "01") throw PreconditionFailedError("is_balanced needs a binary word");
    for (std::size_t n = 1; n <= w.size(); ++n) {
        std::size_t cur = 0;
        for (std::size_t i = 0; i < n; ++i) cur += w[i] == '1';
        std::size_t lo = cur, hi = cur;
        for (std::size_t i = n; i < w.size(); ++i) {
            cur += (w[i] == '1') - (w[i - n] == '1');
            lo = std::min(lo, cur);
            hi = std::max(hi, cur);
        }
        if (hi - lo > 1) return {false, n};
    }
    return {};
}

/// smallest period t <= max_period (with its minimal preperiod <= max_preperiod)
/// consistent with the whole prefix: w_i = w_{i+t} for all i >= preperiod
inline std::optional<std::pair<std::size_t, std::size_t>> detect_word_period(
    const Word& w, std::size_t max_preperiod, std::size_t max_period) {
    if (max_period == 0) throw PreconditionFailedError("max_period must be positive");
    if (max_preperiod + 2 * max_period > w.size())
        throw InsufficientEvidenceError("word too short for the requested period bounds");
    for (std::size_t t = 1; t <= max_period; ++t) {
        std::size_t pre = 0;
        for (std::size_t i = w.size() - t; i-- > 0;) {
            if (w[i] != w[i + t]) {
                pre = i + 1;
                break;
            }
        }
        if (pre <= max_preperiod) return std::make_pair(pre, t);
    }
    return std::nullopt;
}

struct WordClassification {
    enum class Kind { constant, periodic, sturmian_like, other };
    Kind kind = Kind::other;
    std::size_t period = 0;    // for constant/periodic
    std::size_t preperiod = 0; // for constant/periodic
};

struct ClassifyConfig {
    std::size_t min_length = 64;
    std::size_t complexity_cap = 16;       // f(n) <= n+1 must hold for n up to this
    std::size_t strict_complexity_cap = 8; // f(n) == n+1 required up to this
    std::size_t max_preperiod = 0;         // 0: min(length/4, 32)
    std::size_t max_period = 0;            // 0: min(length/4, 32)
};

/// Evidence-bounded classification of a finite prefix; "sturmian_like" means
/// aperiodic within bounds AND balanced AND f(n) = n+1 for small n with
/// f(n) <= n+1 up to the larger cap.  (Equality for large n is not demanded:
/// a short prefix need not yet contain every factor of the infinite word.)
/// The default period bound is deliberately modest: a rotation word shadows
/// the denominators of its slope's continued fraction, so a prefix can agree
/// with a long phantom period everywhere while being aperiodic; the periodic
/// structure this classifier is after lives at small periods.
/// Never a statement about the infinite word.
inline WordClassification classify_word(const Word& w, const ClassifyConfig& cfg = {}) {
    if (w.size() < cfg.min_length)
        throw InsufficientEvidenceError("word shorter than configured evidence minimum (" +
                                        std::to_string(w.size()) + " < " +
                                        std::to_string(cfg.min_length) + ")");
    const std::size_t max_pre =
        cfg.max_preperiod ? cfg.max_preperiod : std::min<std::size_t>(w.size() / 4, 32);
    const std::size_t max_per =
        cfg.max_period ? cfg.max_period : std::min<std::size_t>(w.size() / 4, 32);

    if (w.occurring().size() == 1) return {WordClassification::Kind::constant, 1, 0};

    if (auto p = detect_word_period(w, max_pre, max_per))
        return {WordClassification::Kind::periodic, p->second, p->first};

    // aperiodic within bounds; Sturmian evidence applies to two-letter words
    if (w.occurring().size() == 2) {
        std::string bits;
        bits.reserve(w.size());
        const char zero_sym = w.occurring()[0];
        for (std::size_t i = 0; i < w.size(); ++i) bits.push_back(w[i] == zero_sym ? '0' : '1');
        const Word b = Word::binary(std::move(bits));
        if (is_balanced(b).balanced) {
            bool complexity_ok = true;
            const std::size_t strict_cap = std::min(cfg.strict_complexity_cap, w.size() / 32);
            const std::size_t cap = std::min(cfg.complexity_cap, w.size() / 4);
            for (std::size_t n = 1; n <= cap && complexity_ok; ++n) {
                const std::size_t f = subword_complexity(b, n);
                if (f > n + 1 || (n <= strict_cap && f != n + 1)) complexity_ok = false;
            }
            if (complexity_ok) return {WordClassification::Kind::sturmian_like, 0, 0};
        }
    }
    return {WordClassification::Kind::other, 0, 0};
}

} // namespace sturmperm::words
