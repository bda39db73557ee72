#pragma once

// Test-only interval-arithmetic oracle, independent of ExactReal's own sign
// and floor logic.  A value (p + q*sqrt(d))/r is bracketed by scaled integer
// square roots: with s = isqrt(q^2 d 4^k), q*sqrt(d)*2^k lies in [s, s+1]
// (sign-adjusted), so r*2^k*value lies in an integer interval of width one.
// The bracket starts at 256 fractional bits and is refined until it excludes
// zero, or the value is the algebraic zero p = q = 0.

#include "sturmperm/exact.hpp"

namespace oracle {

using sturmperm::exact::BigInt;
using sturmperm::exact::ExactReal;

struct Bracket {
    BigInt lo, hi;  // numerators; value in [lo, hi] / (r * 2^bits)
    BigInt scale;   // r * 2^bits
};

inline Bracket bracket(const ExactReal& v, unsigned bits) {
    using boost::multiprecision::sqrt;
    const BigInt two_k = BigInt(1) << bits;
    Bracket b;
    b.scale = v.r() * two_k;
    if (v.q() == 0) {
        b.lo = b.hi = v.p() * two_k;
        return b;
    }
    const BigInt s = sqrt(BigInt(v.q() * v.q() * v.d() * (BigInt(1) << (2 * bits))));
    if (v.q() > 0) {
        b.lo = v.p() * two_k + s;
        b.hi = v.p() * two_k + s + 1;
    } else {
        b.lo = v.p() * two_k - s - 1;
        b.hi = v.p() * two_k - s;
    }
    return b;
}

/// sign via interval refinement (exact 0 only for the algebraic zero)
inline int interval_sign(const ExactReal& v, unsigned start_bits = 256) {
    if (v.p() == 0 && v.q() == 0) return 0;
    for (unsigned bits = start_bits;; bits *= 2) {
        const Bracket b = bracket(v, bits);
        if (b.lo > 0) return 1;
        if (b.hi < 0) return -1;
        if (b.lo == b.hi) return b.lo == 0 ? 0 : (b.lo > 0 ? 1 : -1);
    }
}

/// floor via interval refinement; exact for rationals, terminates for
/// irrationals because they are never integers
inline BigInt interval_floor(const ExactReal& v, unsigned start_bits = 256) {
    auto floor_div = [](const BigInt& a, const BigInt& b) {
        BigInt q = a / b;
        if (a % b != 0 && a < 0) --q;
        return q;
    };
    if (v.q() == 0) return floor_div(v.p(), v.r());
    for (unsigned bits = start_bits;; bits *= 2) {
        const Bracket b = bracket(v, bits);
        const BigInt flo = floor_div(b.lo, b.scale);
        const BigInt fhi = floor_div(b.hi, b.scale);
        if (flo == fhi) return flo;
    }
}

} // namespace oracle
