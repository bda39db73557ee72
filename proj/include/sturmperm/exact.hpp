#pragma once

// Exact arithmetic over a fixed real quadratic field Q(sqrt(d)).
//
// An ExactReal is (p + q*sqrt(d)) / r with arbitrary-precision integers
// p, q, r and a squarefree radicand d >= 0.  Every sign, floor and
// comparison is decided with integer arithmetic only, so the value can sit
// on a decision path (word generation, permutation comparisons) without any
// rounding concerns.  Values are immutable; all operations are pure.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "sturmperm/errors.hpp"

namespace sturmperm::exact {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

// floor division with b > 0
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b; // truncates toward zero
    if (a % b != 0 && a < 0) --q;
    return q;
}

// strips square factors: d = s^2 * d' with d' squarefree; returns (s, d').
// Trial division; radicands in this toolkit are small.
inline std::pair<BigInt, BigInt> extract_square_part(BigInt d) {
    BigInt s = 1;
    for (BigInt f = 2; f * f <= d; ++f) {
        const BigInt ff = f * f;
        while (d % ff == 0) {
            d /= ff;
            s *= f;
        }
    }
    return {s, d};
}

inline int sign_of(const BigInt& v) { return v.sign(); }

} // namespace detail

/// A value (p + q*sqrt(d))/r in canonical form:
///   r > 0, gcd(p, q, r) = 1, d squarefree, q = 0 implies d = 0,
///   d in {0, 1} is folded away (d = 0 encodes pure rationals).
/// Canonical forms are unique, so equality is componentwise.
class ExactReal {
public:
    ExactReal() = default;
    ExactReal(long long n) : p_(n) {} // NOLINT: implicit, integers embed in every field
    explicit ExactReal(BigInt n) : p_(std::move(n)) {}

    static ExactReal rational(BigInt num, BigInt den) {
        if (den == 0) throw DivisionByZeroError("rational with zero denominator");
        return ExactReal(std::move(num), 0, 0, std::move(den));
    }

    static ExactReal quadratic(BigInt p, BigInt q, BigInt d, BigInt r) {
        if (r == 0) throw DivisionByZeroError("quadratic with zero denominator");
        if (d < 0) throw PreconditionFailedError("negative radicand");
        return ExactReal(std::move(p), std::move(q), std::move(d), std::move(r));
    }

    static ExactReal sqrt_of(BigInt d) { return quadratic(0, 1, std::move(d), 1); }

    const BigInt& p() const { return p_; }
    const BigInt& q() const { return q_; }
    const BigInt& d() const { return d_; }
    const BigInt& r() const { return r_; }

    bool is_rational() const { return q_ == 0; }
    bool is_zero() const { return p_ == 0 && q_ == 0; }

    /// Exact sign in {-1, 0, +1}, decided by integer comparisons: when p and
    /// q disagree in sign the decision reduces to p^2 vs q^2*d.
    int sign() const {
        if (q_ == 0) return detail::sign_of(p_);
        const int sp = detail::sign_of(p_);
        const int sq = detail::sign_of(q_);
        if (sp == 0) return sq;
        if (sp == sq) return sp;
        const BigInt lhs = p_ * p_;
        const BigInt rhs = q_ * q_ * d_;
        const int cmp = lhs == rhs ? 0 : (lhs > rhs ? 1 : -1);
        // |p| dominates  ->  sign of p wins, else sign of q*sqrt(d)
        if (cmp == 0) return 0; // unreachable in canonical form (sqrt(d) irrational)
        return cmp > 0 ? sp : sq;
    }

    /// Largest integer n with n <= value.  Brackets q*sqrt(d) by its integer
    /// square root, then corrects by at most two sign tests.
    BigInt floor() const {
        using boost::multiprecision::sqrt;
        BigInt n;
        if (q_ == 0) {
            n = detail::floor_div(p_, r_);
        } else {
            const BigInt s = sqrt(BigInt(q_ * q_ * d_)); // s <= |q|sqrt(d) < s+1
            n = q_ > 0 ? detail::floor_div(p_ + s, r_) : detail::floor_div(p_ - s - 1, r_);
        }
        while ((*this - ExactReal(n + 1)).sign() >= 0) ++n;
        while ((*this - ExactReal(n)).sign() < 0) --n;
        return n;
    }

    /// value - floor(value), in [0, 1)
    ExactReal frac() const { return *this - ExactReal(floor()); }

    friend ExactReal operator-(const ExactReal& a) {
        return ExactReal(-a.p_, -a.q_, a.d_, a.r_);
    }

    friend ExactReal operator+(const ExactReal& a, const ExactReal& b) {
        const BigInt& d = merged_radicand(a, b);
        return ExactReal(a.p_ * b.r_ + b.p_ * a.r_, a.q_ * b.r_ + b.q_ * a.r_, d,
                         a.r_ * b.r_);
    }

    friend ExactReal operator-(const ExactReal& a, const ExactReal& b) { return a + (-b); }

    friend ExactReal operator*(const ExactReal& a, const ExactReal& b) {
        const BigInt& d = merged_radicand(a, b);
        return ExactReal(a.p_ * b.p_ + a.q_ * b.q_ * d, a.p_ * b.q_ + a.q_ * b.p_, d,
                         a.r_ * b.r_);
    }

    friend ExactReal operator/(const ExactReal& a, const ExactReal& b) {
        if (b.is_zero()) throw DivisionByZeroError("division by zero ExactReal");
        merged_radicand(a, b); // field compatibility check
        // 1/b = (p - q*sqrt(d)) * r / (p^2 - q^2 d)
        const BigInt norm = b.p_ * b.p_ - b.q_ * b.q_ * b.d_;
        return a * ExactReal(b.p_ * b.r_, -b.q_ * b.r_, b.d_, norm);
    }

    ExactReal& operator+=(const ExactReal& b) { return *this = *this + b; }
    ExactReal& operator-=(const ExactReal& b) { return *this = *this - b; }
    ExactReal& operator*=(const ExactReal& b) { return *this = *this * b; }
    ExactReal& operator/=(const ExactReal& b) { return *this = *this / b; }

    /// -1 / 0 / +1, consistent with sign(a - b); throws MixedRadicandError on
    /// incompatible irrational fields.
    friend int compare(const ExactReal& a, const ExactReal& b) { return (a - b).sign(); }

    // canonical forms are unique, so equality needs no field merge
    friend bool operator==(const ExactReal& a, const ExactReal& b) {
        return a.p_ == b.p_ && a.q_ == b.q_ && a.d_ == b.d_ && a.r_ == b.r_;
    }
    friend bool operator!=(const ExactReal& a, const ExactReal& b) { return !(a == b); }
    friend bool operator<(const ExactReal& a, const ExactReal& b) { return compare(a, b) < 0; }
    friend bool operator>(const ExactReal& a, const ExactReal& b) { return compare(a, b) > 0; }
    friend bool operator<=(const ExactReal& a, const ExactReal& b) { return compare(a, b) <= 0; }
    friend bool operator>=(const ExactReal& a, const ExactReal& b) { return compare(a, b) >= 0; }

    /// Exact text form: "p" or "p/r" for rationals, "(p+q*sqrt(d))/r" otherwise.
    std::string str() const {
        if (q_ == 0) {
            std::string s = p_.str();
            if (r_ != 1) s += "/" + r_.str();
            return s;
        }
        std::string s = "(" + p_.str();
        s += q_ < 0 ? "-" : "+";
        s += BigInt(boost::multiprecision::abs(q_)).str();
        s += "*sqrt(" + d_.str() + "))/" + r_.str();
        return s;
    }

    /// Parses the exact text form (and only it -- no decimals).
    static ExactReal parse(std::string_view text);

    /// Decimal string truncated toward -infinity at `digits` places; for
    /// human-facing hints only, never for decisions.
    std::string decimal_hint(unsigned digits = 6) const {
        BigInt scale = 1;
        for (unsigned i = 0; i < digits; ++i) scale *= 10;
        const BigInt n = (*this * ExactReal(scale)).floor();
        const bool neg = n < 0;
        const BigInt mag = neg ? BigInt(-n) : n;
        std::string frac_digits = BigInt(mag % scale).str();
        frac_digits.insert(0, digits - frac_digits.size(), '0');
        return (neg ? "-" : "") + BigInt(mag / scale).str() + "." + frac_digits;
    }

    friend std::ostream& operator<<(std::ostream& os, const ExactReal& v) {
        return os << v.str();
    }

private:
    ExactReal(BigInt p, BigInt q, BigInt d, BigInt r)
        : p_(std::move(p)), q_(std::move(q)), d_(std::move(d)), r_(std::move(r)) {
        normalize();
    }

    // One field per computation: rationals embed anywhere, two distinct
    // irrational radicands are an error rather than a degree-4 extension.
    static const BigInt& merged_radicand(const ExactReal& a, const ExactReal& b) {
        if (a.q_ == 0) return b.d_;
        if (b.q_ == 0) return a.d_;
        if (a.d_ != b.d_)
            throw MixedRadicandError("mixed radicands: sqrt(" + a.d_.str() + ") vs sqrt(" +
                                     b.d_.str() + ")");
        return a.d_;
    }

    void normalize() {
        using boost::multiprecision::abs;
        using boost::multiprecision::gcd;
        if (r_ < 0) {
            p_ = -p_;
            q_ = -q_;
            r_ = -r_;
        }
        if (q_ == 0 || d_ == 0) {
            q_ = 0;
            d_ = 0;
        } else {
            auto [s, rest] = detail::extract_square_part(d_);
            q_ *= s;
            d_ = rest;
            if (d_ == 1) { // sqrt(1) folds into the rational part
                p_ += q_;
                q_ = 0;
                d_ = 0;
            }
        }
        BigInt g = gcd(gcd(abs(p_), abs(q_)), r_);
        if (g > 1) {
            p_ /= g;
            q_ /= g;
            r_ /= g;
        }
    }

    BigInt p_{0};
    BigInt q_{0};
    BigInt d_{0};
    BigInt r_{1};
};

namespace detail {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }

    bool eat(char c) {
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c))
            throw ParseError("expected '" + std::string(1, c) + "' at position " +
                             std::to_string(pos) + " in \"" + std::string(text) + "\"");
    }

    void expect_lit(std::string_view lit) {
        if (text.substr(pos, lit.size()) != lit)
            throw ParseError("expected \"" + std::string(lit) + "\" at position " +
                             std::to_string(pos) + " in \"" + std::string(text) + "\"");
        pos += lit.size();
    }

    BigInt integer() {
        skip_ws();
        const std::size_t start = pos;
        bool negative = false;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            negative = text[pos] == '-';
            ++pos;
        }
        const std::size_t digits_start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (pos == digits_start)
            throw ParseError("expected integer at position " + std::to_string(start) +
                             " in \"" + std::string(text) + "\"");
        BigInt value(std::string(text.substr(digits_start, pos - digits_start)));
        return negative ? BigInt(-value) : value;
    }

    void done() {
        skip_ws();
        if (pos != text.size())
            throw ParseError("trailing characters at position " + std::to_string(pos) +
                             " in \"" + std::string(text) + "\"");
    }
};

} // namespace detail

inline ExactReal ExactReal::parse(std::string_view text) {
    detail::Parser in{text};
    in.skip_ws();
    if (in.eat('(')) {
        // (p+q*sqrt(d))/r
        BigInt p = in.integer();
        in.skip_ws();
        BigInt q = in.integer(); // sign carries the +/- separator
        in.skip_ws();
        in.expect('*');
        in.expect_lit("sqrt(");
        BigInt d = in.integer();
        in.expect(')');
        in.skip_ws();
        in.expect(')');
        in.expect('/');
        BigInt r = in.integer();
        in.done();
        if (r == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
        if (d < 0) throw ParseError("negative radicand in \"" + std::string(text) + "\"");
        return quadratic(std::move(p), std::move(q), std::move(d), std::move(r));
    }
    BigInt p = in.integer();
    in.skip_ws();
    if (in.eat('/')) {
        BigInt r = in.integer();
        in.done();
        if (r == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
        return rational(std::move(p), std::move(r));
    }
    in.done();
    return ExactReal(std::move(p));
}

} // namespace sturmperm::exact
