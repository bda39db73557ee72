#include <catch_amalgamated.hpp>

#include <array>

#include "sturmperm/exact.hpp"
#include "support/interval_oracle.hpp"
#include "support/random_exact.hpp"

using sturmperm::DivisionByZeroError;
using sturmperm::MixedRadicandError;
using sturmperm::ParseError;
using sturmperm::exact::BigInt;
using sturmperm::exact::ExactReal;

namespace {
const ExactReal kSigma = ExactReal::parse("(3-1*sqrt(5))/2"); // 0.381966...
}

TEST_CASE("canonical form") {
    // d = 1 folds into the rational part
    CHECK(ExactReal::quadratic(1, 3, 1, 2) == ExactReal::rational(4, 2));
    // square factors of d migrate into q: sqrt(12) = 2 sqrt(3)
    const ExactReal v = ExactReal::quadratic(0, 1, 12, 1);
    CHECK(v.q() == 2);
    CHECK(v.d() == 3);
    // negative denominators normalize away
    CHECK(ExactReal::rational(1, -2) == ExactReal::rational(-1, 2));
    // d = 0 encodes rationals: q is dropped
    CHECK(ExactReal::quadratic(3, 5, 0, 1) == ExactReal(3));
    // gcd reduction
    const ExactReal w = ExactReal::quadratic(2, 4, 5, 6);
    CHECK(w.p() == 1);
    CHECK(w.q() == 2);
    CHECK(w.r() == 3);
}

TEST_CASE("field operations") {
    CHECK(ExactReal::rational(1, 2) + ExactReal::rational(1, 2) == ExactReal(1));
    const ExactReal golden_conj = ExactReal::quadratic(-1, 1, 5, 2); // (sqrt5 - 1)/2
    CHECK(golden_conj * golden_conj == kSigma);                      // (3 - sqrt5)/2
    CHECK(kSigma * ExactReal(5) == ExactReal::quadratic(15, -5, 5, 2));
    CHECK((golden_conj / golden_conj) == ExactReal(1));
    CHECK(ExactReal(1) / kSigma == ExactReal::quadratic(3, 1, 5, 2)); // (3+sqrt5)/2
}

TEST_CASE("operation errors") {
    const ExactReal r2 = ExactReal::sqrt_of(2), r3 = ExactReal::sqrt_of(3);
    CHECK_THROWS_AS(r2 + r3, MixedRadicandError);
    CHECK_THROWS_AS(r2 * r3, MixedRadicandError);
    CHECK_THROWS_AS(compare(r2, r3), MixedRadicandError);
    CHECK_THROWS_AS(r2 / ExactReal(0), DivisionByZeroError);
    CHECK_THROWS_AS(ExactReal::rational(1, 0), DivisionByZeroError);
    // rationals embed in any field
    CHECK(r2 + ExactReal::rational(1, 2) == ExactReal::quadratic(1, 2, 2, 2));
}

TEST_CASE("sign") {
    CHECK(ExactReal::quadratic(-2, 1, 5, 1).sign() == 1); // sqrt5 - 2 > 0
    CHECK(ExactReal(0).sign() == 0);
    CHECK((kSigma - ExactReal(1)).sign() == -1);
    CHECK(ExactReal::quadratic(2, -1, 5, 1).sign() == -1); // 2 - sqrt5 < 0
}

TEST_CASE("floor and frac") {
    // derived via the interval oracle, frozen: 5 * 0.381966... = 1.9098...
    const ExactReal v = ExactReal(5) * kSigma;
    CHECK(oracle::interval_floor(v) == 1);
    CHECK(v.floor() == 1);
    CHECK(ExactReal::rational(-1, 2).floor() == -1);
    CHECK(ExactReal::rational(7, 3).frac() == ExactReal::rational(1, 3));
    CHECK(ExactReal::quadratic(0, -1, 2, 1).floor() == -2); // -sqrt2
}

TEST_CASE("compare") {
    const ExactReal golden_conj = ExactReal::quadratic(-1, 1, 5, 2);
    CHECK(compare(golden_conj, ExactReal::rational(1, 2)) > 0);
    CHECK(compare(kSigma, kSigma) == 0);
    // frac(2 sigma) = 0.7639... vs frac(3 sigma) = 0.1459...
    const ExactReal f2 = (ExactReal(2) * kSigma).frac();
    const ExactReal f3 = (ExactReal(3) * kSigma).frac();
    CHECK(oracle::interval_sign(f2 - f3) == 1);
    CHECK(compare(f2, f3) > 0);
}

TEST_CASE("text form round trip") {
    const char* cases[] = {"0",    "-7",        "1/3",           "-11/4",
                           "(3-1*sqrt(5))/2",   "(0+1*sqrt(2))/1", "(-2+3*sqrt(7))/5"};
    for (const char* text : cases) {
        const ExactReal v = ExactReal::parse(text);
        CHECK(ExactReal::parse(v.str()) == v);
        CHECK(v.str() == text);
    }
    CHECK(ExactReal::parse(" 1/2 ") == ExactReal::rational(1, 2));
    CHECK_THROWS_AS(ExactReal::parse("0.5"), ParseError);
    CHECK_THROWS_AS(ExactReal::parse("1/0"), ParseError);
    CHECK_THROWS_AS(ExactReal::parse("(1+2*sqrt(5))"), ParseError);
    CHECK_THROWS_AS(ExactReal::parse("sqrt(5)"), ParseError);
    CHECK_THROWS_AS(ExactReal::parse(""), ParseError);
}

TEST_CASE("decimal hint truncates toward minus infinity") {
    CHECK(kSigma.decimal_hint() == "0.381966");
    CHECK(ExactReal::rational(-1, 2).decimal_hint(1) == "-0.5");
    CHECK(ExactReal::rational(-55, 100).decimal_hint(1) == "-0.6");
    CHECK(ExactReal(3).decimal_hint(2) == "3.00");
}

TEST_CASE("canonicalization is idempotent on random inputs") {
    testgen::Rng rng(0x5eed0001);
    for (int it = 0; it < 2000; ++it) {
        const long long d = std::array<long long, 6>{0, 2, 3, 5, 7, 12}[rng.integer(0, 5)];
        const ExactReal v = rng.value(d);
        CHECK(ExactReal::quadratic(v.p(), v.q(), v.d(), v.r()) == v);
    }
}

TEST_CASE("ring laws on random samples in one field") {
    testgen::Rng rng(0x5eed0002);
    for (int it = 0; it < 2000; ++it) {
        const long long d = std::array<long long, 4>{0, 2, 5, 7}[rng.integer(0, 3)];
        const ExactReal a = rng.value(d), b = rng.value(d), c = rng.value(d);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
        if (!b.is_zero()) CHECK(a / b * b == a);
    }
}

TEST_CASE("floor/frac contract on 10^4 random values, certified by sign") {
    testgen::Rng rng(0x5eed0003);
    const ExactReal one(1);
    for (int it = 0; it < 10000; ++it) {
        const long long d = std::array<long long, 5>{0, 2, 3, 5, 13}[rng.integer(0, 4)];
        const ExactReal a = rng.value(d, 1000);
        const ExactReal fl{a.floor()};
        CHECK((a - fl).sign() >= 0);
        CHECK((a - fl - one).sign() < 0);
        const ExactReal fr = a.frac();
        CHECK(fr.sign() >= 0);
        CHECK((fr - one).sign() < 0);
        CHECK(fl + fr == a);
    }
}

TEST_CASE("sign agrees with the 256-bit interval oracle on 10^4 inputs") {
    testgen::Rng rng(0x5eed0004);
    for (int it = 0; it < 10000; ++it) {
        const long long d = std::array<long long, 5>{0, 2, 3, 5, 61}[rng.integer(0, 4)];
        // mix ordinary magnitudes with adversarial near-cancellations
        const ExactReal a = (it % 4 == 0 && d != 0) ? rng.near_zero(d) : rng.value(d, 1000000);
        CHECK(a.sign() == oracle::interval_sign(a));
    }
}
