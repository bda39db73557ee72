#include <catch_amalgamated.hpp>

#include <array>
#include <random>

#include "sturmperm/structure.hpp"
#include "support/oracles.hpp"

using namespace sturmperm;
using exact::BigInt;
using exact::ExactReal;
using perms::PermutationPrefix;
using structure::RowKind;
using words::Word;

namespace {
const ExactReal kSigmaWord = ExactReal::parse("(3-1*sqrt(5))/2");  // word slope 0.3819...
const ExactReal kSigma = ExactReal::parse("(-1+1*sqrt(5))/2");     // gamma_1 slope 0.6180...
const ExactReal kD5 = ExactReal::parse("1/5");

Word fib_word(std::size_t len) { return Word::binary(oracle::fibonacci_word(len)); }

// alpha(w, 1 - sigma - d, sigma + d): monotone rows decreasing, S/M split at d
PermutationPrefix threshold_perm(const ExactReal& d, std::size_t n) {
    const ExactReal x = ExactReal(1) - kSigma - d;
    const ExactReal y = kSigma + d;
    return perms::build_from_word(fib_word(n - 1), x, y, ExactReal(0));
}

PermutationPrefix canonical_perm(std::size_t n) {
    return perms::build_from_word(fib_word(n - 1), kSigmaWord, ExactReal(1) - kSigmaWord,
                                  kSigmaWord);
}
} // namespace

TEST_CASE("slope conventions are mirror images") {
    CHECK(kSigma == ExactReal(1) - kSigmaWord);
}

TEST_CASE("gamma classification of the threshold construction") {
    const auto a = threshold_perm(kD5, 3000);

    const auto g1 = structure::classify_gamma(a, 1);
    CHECK(g1.aggregate == RowKind::sturmian_like);

    const auto g3 = structure::classify_gamma(a, 3);
    CHECK(g3.aggregate == RowKind::monotone_dec);
    for (const auto& v : g3.residues) {
        CHECK(v.kind == RowKind::monotone_dec);
        CHECK(v.preperiod == 0); // monotone outright, not just ultimately
    }

    const auto pe = perms::periodic_example(2, 400);
    const auto g2 = structure::classify_gamma(pe, 2);
    CHECK(g2.aggregate == RowKind::monotone_inc);
}

TEST_CASE("sm partition of the d = 1/5 construction") {
    const auto a = threshold_perm(kD5, 3000);
    const auto part = structure::sm_partition(a, kSigma, 7);
    CHECK(part.S == std::set<std::size_t>{1, 2});
    CHECK(part.M == std::set<std::size_t>{3, 4, 5, 6, 7});
    CHECK(part.m_rows_decreasing);

    // threshold interval: max over M at i=5, min over S at i=1,2
    CHECK(part.d_lower == ExactReal::parse("(13-5*sqrt(5))/10"));
    CHECK(part.d_upper == kSigmaWord);
    CHECK(part.d_lower < kD5);
    CHECK(kD5 < part.d_upper);

    // independent gamma-sign-scan oracle: M rows constant, S rows mixed
    for (std::size_t i = 1; i <= 7; ++i) {
        bool has_lt = false, has_gt = false;
        for (std::size_t m = 0; m + i < a.size(); ++m) {
            const int s = compare(a.value(m), a.value(m + i));
            (s < 0 ? has_lt : has_gt) = true;
        }
        CHECK(part.in_S(i) == (has_lt && has_gt));
    }
}

TEST_CASE("sm partition of the canonical construction is all S") {
    const auto a = canonical_perm(3000);
    const auto part = structure::sm_partition(a, kSigma, 4);
    CHECK(part.S == std::set<std::size_t>{1, 2, 3, 4});
    CHECK(part.M.empty());
    CHECK(part.d_lower == ExactReal(0));
    CHECK(part.d_upper == ExactReal(0)); // degenerate: only d = 0 fits S = all
}

TEST_CASE("sm partition rejects non-sturmian gamma_1") {
    const auto pe = perms::periodic_example(2, 400);
    CHECK_THROWS_AS(structure::sm_partition(pe, kSigma, 3), InconclusiveError);
}

TEST_CASE("closure conditions hold for computed partitions") {
    const auto a = threshold_perm(kD5, 3000);
    for (std::size_t max_i : {4, 7, 10}) {
        const auto part = structure::sm_partition(a, kSigma, max_i);
        const auto report = structure::verify_closure(part, kSigma);
        CHECK(report.ok());
        CHECK(report.pairs_checked > 0);
    }
    const auto canon = canonical_perm(3000);
    const auto part0 = structure::sm_partition(canon, kSigma, 4);
    CHECK(structure::verify_closure(part0, kSigma).ok()); // M empty: (3) vacuous
}

TEST_CASE("closure violations are detected") {
    // S = {1} with 2 in M contradicts condition (4): {sigma}+{sigma} > 1
    structure::SMPartition fake;
    fake.max_i = 3;
    fake.S = {1};
    fake.M = {2, 3};
    const auto report = structure::verify_closure(fake, kSigma);
    REQUIRE_FALSE(report.ok());
    bool found = false;
    for (const auto& v : report.violations)
        found = found || (v.condition == 4 && v.i == 1 && v.j == 1);
    CHECK(found);
}

TEST_CASE("q identity") {
    // q_2 = 1 = q_1 + q_1 + 1 and {sigma}+{sigma} = 1.236... > 1
    CHECK((kSigma * ExactReal(2)).floor() == 1);
    CHECK((kSigma * ExactReal(1)).floor() == 0);
    CHECK(kSigma.frac() + kSigma.frac() > ExactReal(1));

    // sigma' = (3-sqrt5)/2: q_3 = 1 = q_1 + q_2 + 1, fracs 0.381 + 0.763 > 1
    CHECK((kSigmaWord * ExactReal(3)).floor() == 1);
    CHECK((kSigmaWord * ExactReal(1)).floor() == 0);
    CHECK((kSigmaWord * ExactReal(2)).floor() == 0);

    for (const char* s : {"(-1+1*sqrt(5))/2", "(3-1*sqrt(5))/2", "(-1+1*sqrt(2))/1"}) {
        const auto report = structure::verify_q_identity(ExactReal::parse(s), 200);
        CHECK(report.ok());
        CHECK(report.pairs_checked == 200 * 201 / 2);
    }
}

TEST_CASE("claim 6 coding identity") {
    // canonical orbit: a_i = {sigma_w i + rho}, gamma_1 parameters are the
    // mirrored (sigma, rho)
    const auto canon = canonical_perm(800);
    const auto part = structure::sm_partition(canon, kSigma, 4);
    const ExactReal rho_struct = (ExactReal(0) - kSigmaWord).frac(); // 1 - rho_w
    const auto r1 = structure::verify_claim6(canon, part, kSigma, rho_struct, 1);
    CHECK(r1.ok());
    CHECK(r1.positions_checked == 799);

    const auto a = threshold_perm(kD5, 800);
    const auto part5 = structure::sm_partition(a, kSigma, 4);
    const auto r2 = structure::verify_claim6(a, part5, kSigma, rho_struct, 2);
    CHECK(r2.ok());

    CHECK_THROWS_AS(structure::verify_claim6(a, part5, kSigma, rho_struct, 3),
                    PreconditionFailedError);
}

TEST_CASE("reconstruction: canonical case") {
    const auto report =
        structure::verify_reconstruction(fib_word(499), kSigmaWord, kSigmaWord,
                                         ExactReal(1) - kSigmaWord, 500);
    CHECK(report.isomorphic);
    CHECK_FALSE(report.mirrored);
    CHECK(report.d_star == ExactReal(0));
    CHECK(report.partition.M.empty());
}

TEST_CASE("reconstruction: threshold case") {
    const ExactReal x = ExactReal(1) - kSigma - kD5;
    const ExactReal y = kSigma + kD5;
    const auto report = structure::verify_reconstruction(fib_word(499), kSigmaWord, x, y, 500);
    CHECK(report.isomorphic);
    CHECK(report.partition.d_lower < report.d_star);
    CHECK(report.d_star < report.partition.d_upper);
}

TEST_CASE("scaling x and y preserves the order type and the partition") {
    const ExactReal x = ExactReal(1) - kSigma - kD5;
    const ExactReal y = kSigma + kD5;
    const Word w = fib_word(799);
    const auto a = perms::build_from_word(w, x, y, ExactReal(0));
    const auto b = perms::build_from_word(w, x * ExactReal(3), y * ExactReal(3), ExactReal(0));
    CHECK(a.ranks() == b.ranks());
    const auto pa = structure::sm_partition(a, kSigma, 4);
    const auto pb = structure::sm_partition(b, kSigma, 4);
    CHECK(pa.S == pb.S);
    CHECK(pa.M == pb.M);
}

TEST_CASE("reconstruction round-trips for sampled threshold configurations") {
    // sigma pool in several fields; d rational strictly inside a ratio gap
    // above 1/5, so differences beyond max_i stay on the monotone side
    const std::array<const char*, 5> sigmas{"(-1+1*sqrt(5))/2", "(-1+1*sqrt(2))/1",
                                            "(3-1*sqrt(5))/2", "(-1+1*sqrt(3))/1",
                                            "(0+1*sqrt(2))/2"};
    const std::array<const char*, 3> rhos{"0", "1/3", "(3-1*sqrt(5))/2"};
    int tested = 0;
    for (const char* stext : sigmas) {
        const ExactReal sigma = ExactReal::parse(stext);
        REQUIRE(sigma > ExactReal(0));
        REQUIRE(sigma < ExactReal(1));
        for (const char* rtext : rhos) {
            ExactReal rho = ExactReal::parse(rtext);
            if (!rho.is_rational() && rho.d() != sigma.d()) continue;
            // choose d rational in each gap between consecutive ratios above 1/5
            std::vector<ExactReal> ratios;
            for (std::size_t i = 1; i <= 4; ++i) ratios.push_back(structure::sm_ratio(sigma, i));
            std::sort(ratios.begin(), ratios.end());
            const ExactReal fifth = ExactReal::rational(1, 5);
            for (std::size_t cut = 0; cut + 1 < ratios.size(); ++cut) {
                const ExactReal lo = ratios[cut] > fifth ? ratios[cut] : fifth;
                const ExactReal hi = ratios[cut + 1];
                if (!(lo < hi)) continue;
                const ExactReal mid = (lo + hi) / ExactReal(2);
                const ExactReal d =
                    ExactReal::rational((mid * ExactReal(1000000)).floor(), 1000000);
                if (!(lo < d && d < hi)) continue;
                const ExactReal sw = ExactReal(1) - sigma;
                const auto w = words::mechanical_word(sw, rho.frac(), 499,
                                                      words::MechanicalVariant::lower);
                const auto report = structure::verify_reconstruction(
                    w.word, sw, ExactReal(1) - sigma - d, sigma + d, 500);
                CHECK(report.isomorphic);
                ++tested;
            }
        }
    }
    CHECK(tested >= 10);
}

TEST_CASE("adjusted subpermutations") {
    const auto pe = perms::periodic_example(2, 400);
    const auto r = structure::are_adjusted(pe, 2, 0, 1, 80);
    CHECK(r.adjusted);
    CHECK(r.period == 2);

    const auto lc = perms::low_complexity_example(perms::default_gaps(200), 400);
    CHECK_FALSE(structure::are_adjusted(lc, 2, 0, 1, 80).adjusted);

    CHECK_THROWS_AS(structure::are_adjusted(pe, 2, 0, 0, 80), PreconditionFailedError);
}

TEST_CASE("adjustedness matches period detection on the re-indexed union") {
    // a shift by t' = i*m maps the union of two residue classes onto itself,
    // advancing the re-indexed prefix by 2m positions, so the two views of
    // periodicity must agree
    for (long long nparam : {2, 3}) {
        const auto pe = perms::periodic_example(nparam, 420);
        for (std::size_t i : {std::size_t{2}, std::size_t{3}}) {
            for (std::size_t j = 0; j < i; ++j) {
                for (std::size_t k = j + 1; k < i; ++k) {
                    const auto rep = structure::are_adjusted(pe, i, j, k, 120);
                    std::vector<ExactReal> union_vals;
                    std::vector<std::size_t> idx;
                    for (std::size_t pos = j; pos < pe.size(); pos += i) idx.push_back(pos);
                    for (std::size_t pos = k; pos < pe.size(); pos += i) idx.push_back(pos);
                    std::sort(idx.begin(), idx.end());
                    for (std::size_t pos : idx) union_vals.push_back(pe.value(pos));
                    const PermutationPrefix reindexed(union_vals);
                    REQUIRE(rep.adjusted);
                    const std::size_t reindexed_period = 2 * (rep.period / i);
                    const auto found =
                        perms::detect_permutation_period(reindexed, 0, reindexed_period);
                    REQUIRE(found.has_value());
                    CHECK(found->first == 0);
                    CHECK(reindexed_period % found->second == 0);
                }
            }
        }
    }
}

TEST_CASE("periodicity criterion cross-check") {
    for (long long nparam : {2, 3, 4}) {
        for (std::size_t i : {std::size_t{2}, std::size_t{3}}) {
            const auto pe = perms::periodic_example(nparam, 400);
            const auto r = structure::lemma2_check(pe, i, 80);
            CHECK(r.all_adjusted);
            CHECK(r.whole_periodic);
            CHECK(r.combined_period % i == 0);
            CHECK(r.sides_agree);
        }
    }

    const auto lc = perms::low_complexity_example(perms::default_gaps(200), 400);
    for (std::size_t i : {std::size_t{2}, std::size_t{3}}) {
        const auto r = structure::lemma2_check(lc, i, 80);
        CHECK_FALSE(r.all_adjusted);
        CHECK_FALSE(r.whole_periodic);
        CHECK(r.sides_agree);
    }

    std::vector<ExactReal> mono;
    for (int i = 0; i < 300; ++i) mono.emplace_back(i);
    const auto r4 = structure::lemma2_check(PermutationPrefix(mono), 3, 60);
    CHECK(r4.all_adjusted);
    CHECK(r4.whole_periodic);
    CHECK(r4.combined_period == 3);
    CHECK(r4.sides_agree);
}

TEST_CASE("lemma 4 witness window") {
    const auto lc = perms::low_complexity_example(perms::default_gaps(1500), 3000);
    const auto witness = structure::find_lemma4_window(lc, 2, 1, 10000);
    REQUIRE(witness.has_value());
    CHECK(witness->window.size() == 4);
    CHECK(witness->distinct_at_anchors >= 5);
    CHECK(perms::pattern_complexity(lc, witness->window) >= 5);

    // adjusted inputs: both subpermutations increase but never cross back
    const auto pe = perms::periodic_example(2, 400);
    CHECK_FALSE(structure::find_lemma4_window(pe, 2, 1, 5000).has_value());

    // decreasing subpermutation: precondition fails
    std::vector<ExactReal> desc;
    for (int i = 0; i < 200; ++i) desc.emplace_back(-i);
    CHECK_THROWS_AS(structure::find_lemma4_window(PermutationPrefix(desc), 2, 1, 100),
                    PreconditionFailedError);
}

TEST_CASE("theorem suite: sturmian permutation") {
    const Word w = fib_word(1499);
    const auto a = perms::build_from_word(w, kSigmaWord, ExactReal(1) - kSigmaWord, kSigmaWord);
    structure::SturmianContext ctx{w, kSigmaWord, kSigmaWord, ExactReal(1) - kSigmaWord};
    const auto report = structure::theorem_suite(a, {}, &ctx);
    CHECK(report.all_pass());
    CHECK_FALSE(report.period.has_value());
    for (const auto& [k, v] : report.pstar) CHECK(v == k);
    REQUIRE(report.reconstruction.has_value());
    CHECK(report.reconstruction->isomorphic);
}

TEST_CASE("theorem suite: periodic example") {
    const auto pe = perms::periodic_example(2, 400);
    const auto report = structure::theorem_suite(pe, {});
    CHECK(report.all_pass());
    REQUIRE(report.period.has_value());
    CHECK(report.period->second == 2);
    for (const auto& [k, v] : report.pstar) CHECK(v <= 2);
    REQUIRE(report.periodic_diagnostics.has_value());
    CHECK(report.periodic_diagnostics->gamma1_period == 2);
    CHECK(report.periodic_diagnostics->all_rows_periodic);
    CHECK(report.periodic_diagnostics->monotone_residue.has_value());
    CHECK(report.periodic_diagnostics->all_monotone_t == 2);
}

TEST_CASE("theorem suite: low complexity example") {
    structure::SuiteConfig cfg;
    cfg.max_preperiod = 10; // below this prefix's crossing horizon
    cfg.k_max = 4;
    const auto lc = perms::low_complexity_example(perms::default_gaps(500), 1000);
    const auto report = structure::theorem_suite(lc, cfg);
    CHECK(report.all_pass());
    CHECK_FALSE(report.period.has_value());
    CHECK(report.pstar.back().second >= 5); // k = 4 exceeds the window size
}
