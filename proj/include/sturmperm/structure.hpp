#pragma once

// Structural analysis of permutation prefixes built on the gamma relation
// table: classification of the arithmetic subsequences gamma_i^j, the S/M
// partition of differences with its admissible threshold interval, closure
// and ordering checks, reconstruction of a permutation from its first gamma
// row, adjustedness of arithmetic subpermutations, and an orchestrating
// theorem suite.
//
// Every verdict here is evidence-bounded: it is a statement about the given
// finite prefix under the configured scan bounds, never about an infinite
// object.

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sturmperm/errors.hpp"
#include "sturmperm/exact.hpp"
#include "sturmperm/perms.hpp"
#include "sturmperm/window.hpp"
#include "sturmperm/words.hpp"

namespace sturmperm::structure {

using exact::BigInt;
using exact::ExactReal;
using perms::GammaRelation;
using perms::PermutationPrefix;
using words::Word;

// ---------------------------------------------------------------------------
// gamma classification

enum class RowKind { sturmian_like, monotone_inc, monotone_dec, periodic, inconclusive };

inline const char* row_kind_name(RowKind k) {
    switch (k) {
        case RowKind::sturmian_like: return "sturmian_like";
        case RowKind::monotone_inc: return "monotone_inc";
        case RowKind::monotone_dec: return "monotone_dec";
        case RowKind::periodic: return "periodic";
        case RowKind::inconclusive: return "inconclusive";
    }
    return "?";
}

struct ResidueVerdict {
    RowKind kind = RowKind::inconclusive;
    std::size_t period = 0;    // for periodic / ultimately-monotone rows
    std::size_t preperiod = 0; // 0 means the property holds from the start
};

struct GammaClassification {
    std::size_t i = 0;
    std::vector<ResidueVerdict> residues; // indexed by j = 0..i-1
    RowKind aggregate = RowKind::inconclusive;
    std::vector<std::string> diagnostics; // THEOREM-VIOLATION notes for mixtures
};

struct EvidenceConfig {
    std::size_t min_row_length = 64;
    words::ClassifyConfig word_config{};
};

namespace detail {

inline ResidueVerdict classify_relation_word(const Word& row, const words::ClassifyConfig& cfg) {
    words::ClassifyConfig row_cfg = cfg;
    row_cfg.min_length = std::min(row_cfg.min_length, row.size());
    const words::WordClassification wc = words::classify_word(row, row_cfg);
    switch (wc.kind) {
        case words::WordClassification::Kind::constant:
            return {row[0] == words::kLess ? RowKind::monotone_inc : RowKind::monotone_dec, 1, 0};
        case words::WordClassification::Kind::periodic:
            if (wc.period == 1) {
                // ultimately constant = ultimately monotone; direction from the tail
                return {row[row.size() - 1] == words::kLess ? RowKind::monotone_inc
                                                            : RowKind::monotone_dec,
                        1, wc.preperiod};
            }
            return {RowKind::periodic, wc.period, wc.preperiod};
        case words::WordClassification::Kind::sturmian_like:
            return {RowKind::sturmian_like, 0, 0};
        case words::WordClassification::Kind::other:
            return {RowKind::inconclusive, 0, 0};
    }
    return {RowKind::inconclusive, 0, 0};
}

} // namespace detail

/// Classifies every arithmetic subsequence gamma_i^j (j = 0..i-1) of the
/// relation table and aggregates: a difference is Sturmian-like only when all
/// residues are, monotone only when all residues agree in direction.  Forbidden
/// mixtures are reported as THEOREM-VIOLATION diagnostics rather than errors,
/// so non-examples can still be analyzed.
inline GammaClassification classify_gamma(const PermutationPrefix& a, std::size_t i,
                                          const EvidenceConfig& cfg = {}) {
    if (i == 0 || i >= a.size()) throw IndexOutOfRangeError("classify_gamma difference out of range");
    if ((a.size() - 1) / i < cfg.min_row_length)
        throw InsufficientEvidenceError("gamma_" + std::to_string(i) +
                                        " rows shorter than evidence minimum");
    GammaClassification out;
    out.i = i;
    for (std::size_t j = 0; j < i; ++j)
        out.residues.push_back(
            detail::classify_relation_word(perms::gamma_ap(a, i, j), cfg.word_config));

    const auto all_of_kind = [&](RowKind k) {
        return std::all_of(out.residues.begin(), out.residues.end(),
                           [&](const ResidueVerdict& v) { return v.kind == k; });
    };
    if (all_of_kind(RowKind::sturmian_like)) {
        out.aggregate = RowKind::sturmian_like;
    } else if (all_of_kind(RowKind::monotone_inc)) {
        out.aggregate = RowKind::monotone_inc;
    } else if (all_of_kind(RowKind::monotone_dec)) {
        out.aggregate = RowKind::monotone_dec;
    } else if (all_of_kind(RowKind::periodic)) {
        out.aggregate = RowKind::periodic;
    } else {
        out.aggregate = RowKind::inconclusive;
        const bool any_sturmian = std::any_of(out.residues.begin(), out.residues.end(),
                                              [](const auto& v) { return v.kind == RowKind::sturmian_like; });
        const bool any_inc = std::any_of(out.residues.begin(), out.residues.end(),
                                         [](const auto& v) { return v.kind == RowKind::monotone_inc; });
        const bool any_dec = std::any_of(out.residues.begin(), out.residues.end(),
                                         [](const auto& v) { return v.kind == RowKind::monotone_dec; });
        if (any_sturmian && (any_inc || any_dec))
            out.diagnostics.push_back("THEOREM-VIOLATION: gamma_" + std::to_string(i) +
                                      " mixes Sturmian-like and monotone residues");
        if (any_inc && any_dec)
            out.diagnostics.push_back("THEOREM-VIOLATION: gamma_" + std::to_string(i) +
                                      " mixes increasing and decreasing residues");
        if (out.diagnostics.empty())
            out.diagnostics.push_back("gamma_" + std::to_string(i) +
                                      " residues inconclusive or mixed-periodic");
    }
    return out;
}

// ---------------------------------------------------------------------------
// S/M partition

struct SMPartition {
    std::set<std::size_t> S;
    std::set<std::size_t> M;
    std::size_t max_i = 0;
    // admissible threshold interval (open); degenerates to [0,0] when M is
    // empty, in which case only d = 0 is consistent with every difference
    // being Sturmian.
    ExactReal d_lower{0};
    ExactReal d_upper{0};
    bool m_rows_decreasing = true; // direction of the monotone class (true if M empty)

    bool in_S(std::size_t i) const { return S.count(i) != 0; }
};

/// (1 - frac(i*sigma)) / i, the quantity the threshold d separates
inline ExactReal sm_ratio(const ExactReal& sigma, std::size_t i) {
    return (ExactReal(1) - (sigma * ExactReal(static_cast<long long>(i))).frac()) /
           ExactReal(static_cast<long long>(i));
}

/// Splits differences 1..max_i into S (all gamma_i^j Sturmian-like) and M
/// (gamma_i monotone), computes the admissible threshold interval from sigma
/// (the frequency parameter of '<' in gamma_1), and certifies the separation
/// ordering: every M-ratio strictly below every S-ratio.
inline SMPartition sm_partition(const PermutationPrefix& a, const ExactReal& sigma,
                                std::size_t max_i, const EvidenceConfig& cfg = {}) {
    if (max_i == 0) throw PreconditionFailedError("sm_partition needs max_i >= 1");
    if (sigma.is_rational() || !(sigma > ExactReal(0) && sigma < ExactReal(1)))
        throw PreconditionFailedError("sigma must be an irrational in (0,1)");

    SMPartition out;
    out.max_i = max_i;
    bool any_inc = false, any_dec = false;
    for (std::size_t i = 1; i <= max_i; ++i) {
        const GammaClassification cls = classify_gamma(a, i, cfg);
        switch (cls.aggregate) {
            case RowKind::sturmian_like:
                out.S.insert(i);
                break;
            case RowKind::monotone_inc:
                out.M.insert(i);
                any_inc = true;
                break;
            case RowKind::monotone_dec:
                out.M.insert(i);
                any_dec = true;
                break;
            default:
                throw InconclusiveError("gamma_" + std::to_string(i) +
                                        " is neither Sturmian-like nor monotone (" +
                                        row_kind_name(cls.aggregate) + ")");
        }
    }
    if (!out.in_S(1))
        throw InconclusiveError("gamma_1 is not Sturmian-like; S/M analysis does not apply");
    if (any_inc && any_dec)
        throw ThresholdViolationError("monotone rows disagree in direction");
    out.m_rows_decreasing = !any_inc;

    if (out.M.empty()) {
        out.d_lower = ExactReal(0);
        out.d_upper = ExactReal(0);
    } else {
        bool first = true;
        for (std::size_t m : out.M) {
            const ExactReal r = sm_ratio(sigma, m);
            if (first || r > out.d_lower) out.d_lower = r;
            first = false;
        }
        first = true;
        for (std::size_t s : out.S) {
            const ExactReal r = sm_ratio(sigma, s);
            if (first || r < out.d_upper) out.d_upper = r;
            first = false;
        }
        // the separation ordering (every M-ratio < every S-ratio) collapses
        // to one exact comparison of the extremes
        if (!(out.d_lower < out.d_upper))
            throw ThresholdViolationError(
                "S/M ratios are not separated: max over M = " + out.d_lower.str() +
                " vs min over S = " + out.d_upper.str());
    }
    return out;
}

// ---------------------------------------------------------------------------
// closure conditions and q-identity

struct ClosureViolation {
    int condition = 0; // 3, 4 or 5
    std::size_t i = 0;
    std::size_t j = 0;
};

struct ClosureReport {
    std::vector<ClosureViolation> violations;
    std::size_t pairs_checked = 0;
    bool ok() const { return violations.empty(); }
};

/// Checks, for every pair with i + j <= max_i:
///   (3) i, j in M                            =>  i+j in M
///   (4) i, j in S and {i s} + {j s} > 1      =>  i+j in S
///   (5) i+j in S and {i s} + {j s} < 1       =>  i in S (and j in S)
inline ClosureReport verify_closure(const SMPartition& part, const ExactReal& sigma) {
    ClosureReport report;
    const ExactReal one(1);
    std::vector<ExactReal> fr(part.max_i + 1, ExactReal(0));
    for (std::size_t i = 1; i <= part.max_i; ++i)
        fr[i] = (sigma * ExactReal(static_cast<long long>(i))).frac();
    for (std::size_t i = 1; i <= part.max_i; ++i) {
        for (std::size_t j = i; i + j <= part.max_i; ++j) {
            ++report.pairs_checked;
            const bool sum_in_S = part.in_S(i + j);
            const ExactReal fsum = fr[i] + fr[j];
            if (!part.in_S(i) && !part.in_S(j) && sum_in_S)
                report.violations.push_back({3, i, j});
            if (part.in_S(i) && part.in_S(j) && fsum > one && !sum_in_S)
                report.violations.push_back({4, i, j});
            if (sum_in_S && fsum < one) {
                if (!part.in_S(i)) report.violations.push_back({5, i, j});
                if (!part.in_S(j)) report.violations.push_back({5, j, i});
            }
        }
    }
    return report;
}

struct QIdentityReport {
    std::size_t max_i = 0;
    std::size_t pairs_checked = 0;
    std::vector<std::pair<std::size_t, std::size_t>> violations;
    bool ok() const { return violations.empty(); }
};

/// q_{i+j} = q_i + q_j + 1  <=>  {i sigma} + {j sigma} > 1, with q_i = floor(i*sigma),
/// checked exhaustively for all 1 <= i <= j <= max_i.
inline QIdentityReport verify_q_identity(const ExactReal& sigma, std::size_t max_i) {
    if (sigma.is_rational()) throw PreconditionFailedError("sigma must be irrational");
    QIdentityReport report;
    report.max_i = max_i;
    std::vector<BigInt> q(2 * max_i + 1);
    std::vector<ExactReal> fr(2 * max_i + 1, ExactReal(0));
    for (std::size_t i = 1; i <= 2 * max_i; ++i) {
        const ExactReal v = sigma * ExactReal(static_cast<long long>(i));
        q[i] = v.floor();
        fr[i] = v.frac();
    }
    const ExactReal one(1);
    for (std::size_t i = 1; i <= max_i; ++i) {
        for (std::size_t j = i; j <= max_i; ++j) {
            ++report.pairs_checked;
            const bool lhs = q[i + j] == q[i] + q[j] + 1;
            const bool rhs = fr[i] + fr[j] > one;
            if (lhs != rhs) report.violations.push_back({i, j});
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// claim 6: the S-row coding identity

struct Claim6Report {
    std::size_t i = 0;
    std::size_t positions_checked = 0;
    std::vector<std::size_t> frac_mismatches;   // gamma vs fractional-part test
    std::vector<std::size_t> weight_mismatches; // gamma vs '<'-count test
    bool ok() const { return frac_mismatches.empty() && weight_mismatches.empty(); }
};

/// For i in S: gamma_{m,m+i} = '<'  <=>  {sigma(m+i)+rho} < {sigma m + rho}
///                            <=>  the factor gamma_{[m..m+i)} of gamma_1 has
///                                 floor(i*sigma)+1 symbols '<'.
/// sigma and rho are the parameters of gamma_1 in its own coding.
inline Claim6Report verify_claim6(const PermutationPrefix& a, const SMPartition& part,
                                  const ExactReal& sigma, const ExactReal& rho, std::size_t i) {
    if (!part.in_S(i))
        throw PreconditionFailedError("verify_claim6 applies to differences in S only");
    Claim6Report report;
    report.i = i;
    const Word g1 = perms::gamma_row(a, 1);
    const BigInt qi = (sigma * ExactReal(static_cast<long long>(i))).floor();

    // orbit of {sigma m + rho}
    const ExactReal one(1);
    const ExactReal step = sigma.frac();
    ExactReal cur = rho.frac();
    std::vector<ExactReal> orbit;
    orbit.reserve(a.size());
    for (std::size_t m = 0; m < a.size(); ++m) {
        orbit.push_back(cur);
        cur += step;
        if (cur >= one) cur -= one;
    }

    std::size_t less_count = 0; // '<' symbols among g1[m..m+i)
    for (std::size_t t = 0; t < i && t < g1.size(); ++t) less_count += g1[t] == words::kLess;
    for (std::size_t m = 0; m + i < a.size(); ++m) {
        ++report.positions_checked;
        const bool actual_less = perms::gamma(a, m, m + i) == GammaRelation::LT;
        if (actual_less != (orbit[m + i] < orbit[m])) report.frac_mismatches.push_back(m);
        if (actual_less != (BigInt(less_count) == qi + 1)) report.weight_mismatches.push_back(m);
        if (m + i < g1.size()) { // slide the '<' counter
            less_count += g1[m + i] == words::kLess;
            less_count -= g1[m] == words::kLess;
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// reconstruction

struct ReconstructionReport {
    bool isomorphic = false;
    bool mirrored = false; // analysis ran on the order-reversed prefix
    std::size_t n = 0;
    ExactReal d_star{0};
    SMPartition partition;
};

struct ReconstructionConfig {
    // Differences examined for the S/M split.  Small by default: each extra i
    // shortens the gamma rows by a factor of i, and short rotation rows start
    // shadowing phantom periods; any interior threshold reproduces the same
    // order type once every realizable ratio is on the correct side.
    std::size_t max_i = 4;
    EvidenceConfig evidence{};
};

namespace detail {

inline PermutationPrefix mirror(const PermutationPrefix& a) {
    std::vector<ExactReal> vals;
    vals.reserve(a.size());
    for (const ExactReal& v : a.values()) vals.push_back(-v);
    return PermutationPrefix(std::move(vals), a.origin() + " | mirrored");
}

inline Word gamma1_as_binary(const PermutationPrefix& a) {
    const Word g1 = perms::gamma_row(a, 1);
    std::string bits;
    bits.reserve(g1.size());
    for (std::size_t i = 0; i < g1.size(); ++i)
        bits.push_back(g1[i] == words::kLess ? '0' : '1');
    return Word::binary(std::move(bits));
}

} // namespace detail

/// Builds alpha(w,x,y) of length n, extracts gamma_1, computes the S/M
/// partition and its threshold interval, picks d* as the exact midpoint, and
/// rebuilds beta = alpha(gamma_1, 1 - sigma - d*, sigma + d*) ('<' read as 0).
/// The report states whether alpha and beta are order-isomorphic (identical
/// full rank vectors).  sigma_word is the slope of w; the '<'-frequency of
/// gamma_1 is then 1 - sigma_word.  When the monotone rows turn out to be
/// increasing, the identity is verified on the order-reversed prefix.
inline ReconstructionReport verify_reconstruction(const Word& w, const ExactReal& sigma_word,
                                                  const ExactReal& x, const ExactReal& y,
                                                  std::size_t n,
                                                  const ReconstructionConfig& cfg = {}) {
    if (n < 2) throw PreconditionFailedError("reconstruction needs n >= 2");
    if (w.size() < n - 1) throw PreconditionFailedError("word too short to build n values");
    const PermutationPrefix alpha = perms::build_from_word(w.prefix(n - 1), x, y, ExactReal(0));
    const ExactReal sigma = ExactReal(1) - sigma_word;
    if (sigma.is_rational() || !(sigma > ExactReal(0) && sigma < ExactReal(1)))
        throw PreconditionFailedError("gamma_1 slope must be an irrational in (0,1)");

    ReconstructionReport report;
    report.n = n;
    const PermutationPrefix* subject = &alpha;
    std::optional<PermutationPrefix> mirrored_storage;
    ExactReal sigma_struct = sigma;

    SMPartition part = sm_partition(alpha, sigma, cfg.max_i, cfg.evidence);
    if (!part.M.empty() && !part.m_rows_decreasing) {
        // mirror: reverse the order, complement gamma_1, mirror the slope
        report.mirrored = true;
        mirrored_storage = detail::mirror(alpha);
        subject = &*mirrored_storage;
        sigma_struct = ExactReal(1) - sigma;
        part = sm_partition(*subject, sigma_struct, cfg.max_i, cfg.evidence);
    }
    report.partition = part;

    if (part.M.empty()) {
        report.d_star = ExactReal(0);
    } else {
        // Differences beyond max_i are invisible to the partition but their
        // ratios all lie below 1/(max_i+1), so any threshold at or above that
        // floor keeps them on the monotone side.  Take the midpoint of the
        // interval clamped to the floor when possible; a midpoint below the
        // floor could flip an unseen difference.
        const ExactReal floor_ratio =
            ExactReal(1) / ExactReal(static_cast<long long>(cfg.max_i + 1));
        const ExactReal lo = part.d_lower < floor_ratio && floor_ratio < part.d_upper
                                 ? floor_ratio
                                 : part.d_lower;
        report.d_star = (lo + part.d_upper) / ExactReal(2);
        if (!(part.d_lower < report.d_star && report.d_star < part.d_upper))
            throw EmptyIntervalError("threshold interval is empty");
    }

    const ExactReal bx = ExactReal(1) - sigma_struct - report.d_star;
    const ExactReal by = sigma_struct + report.d_star;
    if (!(bx > ExactReal(0)))
        throw EmptyIntervalError("reconstructed step 1 - sigma - d* is not positive");
    const PermutationPrefix beta =
        perms::build_from_word(detail::gamma1_as_binary(*subject), bx, by, ExactReal(0));

    report.isomorphic = subject->ranks() == beta.ranks();
    return report;
}

// ---------------------------------------------------------------------------
// adjusted subpermutations and the periodicity criterion built on them

struct AdjustReport {
    std::size_t i = 0, j = 0, k = 0;
    bool adjusted = false;
    std::size_t period = 0; // the witnessing multiple of i when adjusted
};

/// Tests whether the subpermutations alpha_i^j and alpha_i^k are adjusted:
/// their union restriction is t'-periodic for some multiple t' of i up to
/// max_period.  Periodicity is tested on original indices, so the original
/// spacing of the two progressions is preserved.
inline AdjustReport are_adjusted(const PermutationPrefix& a, std::size_t i, std::size_t j,
                                 std::size_t k, std::size_t max_period) {
    if (i == 0 || j >= i || k >= i || j == k)
        throw PreconditionFailedError("are_adjusted needs distinct residues j != k < i");
    if (max_period < i || a.size() < 3 * max_period)
        throw InsufficientEvidenceError("prefix too short for the requested period bound");

    std::vector<std::size_t> idx;
    for (std::size_t pos = std::min(j, k); pos < a.size(); pos += i) idx.push_back(pos);
    for (std::size_t pos = std::max(j, k); pos < a.size(); pos += i) idx.push_back(pos);
    std::sort(idx.begin(), idx.end());

    AdjustReport report{i, j, k, false, 0};
    for (std::size_t t = i; t <= max_period; t += i) {
        bool ok = true;
        for (std::size_t ai = 0; ai < idx.size() && ok; ++ai) {
            if (idx[ai] + t >= a.size()) break;
            for (std::size_t bi = ai + 1; bi < idx.size(); ++bi) {
                if (idx[bi] + t >= a.size()) break;
                const std::size_t p = idx[ai], q = idx[bi];
                if ((a.rank(p) < a.rank(q)) != (a.rank(p + t) < a.rank(q + t))) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) {
            report.adjusted = true;
            report.period = t;
            break;
        }
    }
    return report;
}

struct Lemma2Report {
    std::size_t i = 0;
    std::vector<AdjustReport> pairs;
    bool all_adjusted = false;
    std::size_t combined_period = 0; // i * lcm(t_{j,k}) when all adjusted
    bool combined_period_holds = false;
    bool whole_periodic = false; // any period <= max_period, preperiod 0
    bool sides_agree = false;
};

/// Cross-checks the periodicity criterion: the whole prefix is periodic iff
/// every pair of arithmetic subpermutations of difference i is adjusted; when
/// they are, the period i * lcm(t_{j,k}) is verified directly.
inline Lemma2Report lemma2_check(const PermutationPrefix& a, std::size_t i,
                                 std::size_t max_period) {
    if (i < 2) throw PreconditionFailedError("lemma2_check needs i >= 2");
    Lemma2Report report;
    report.i = i;
    report.all_adjusted = true;
    std::size_t lcm_t = 1;
    for (std::size_t j = 0; j < i; ++j) {
        for (std::size_t k = j + 1; k < i; ++k) {
            AdjustReport r = are_adjusted(a, i, j, k, max_period);
            report.all_adjusted = report.all_adjusted && r.adjusted;
            if (r.adjusted) lcm_t = std::lcm(lcm_t, r.period / i);
            report.pairs.push_back(std::move(r));
        }
    }
    if (report.all_adjusted) {
        report.combined_period = i * lcm_t;
        report.combined_period_holds = report.combined_period < a.size() &&
                                       perms::is_t_periodic(a, report.combined_period);
    }
    const auto whole = perms::detect_permutation_period(a, 0, max_period);
    report.whole_periodic = whole.has_value();
    report.sides_agree = report.all_adjusted == report.whole_periodic &&
                         (!report.all_adjusted || report.combined_period_holds);
    return report;
}

// ---------------------------------------------------------------------------
// search for a size-4 window showing at least five patterns

struct Lemma4Witness {
    Window window{std::vector<std::size_t>{0}};
    std::vector<std::size_t> anchors;       // five positions realizing distinct patterns
    std::size_t distinct_at_anchors = 0;    // always >= 5 when returned
};

namespace detail {

// One orientation of the search: A lives on residue base_a, B on base_b, both
// strictly increasing along steps of t.  Follows the crossing construction:
// pick l with A_1 < B_l, find minimal k1/k2 where B overtakes A shifted by
// one/zero, push l to m, repeat for k3/k4; the window (0, t, l t + delta,
// m t + delta) then shows five distinct patterns at anchors t*k + base_a.
inline std::optional<Lemma4Witness> lemma4_search_oriented(const PermutationPrefix& a,
                                                           std::size_t t, std::size_t base_a,
                                                           std::size_t base_b,
                                                           std::size_t max_search) {
    const std::size_t n = a.size();
    const auto a_idx = [&](std::size_t i) { return base_a + i * t; };
    const auto b_idx = [&](std::size_t i) { return base_b + i * t; };
    const std::size_t len_a = base_a < n ? (n - base_a + t - 1) / t : 0;
    const std::size_t len_b = base_b < n ? (n - base_b + t - 1) / t : 0;
    if (len_a < 3 || len_b < 3) return std::nullopt;
    const auto less = [&](std::size_t p, std::size_t q) { return a.rank(p) < a.rank(q); };

    const bool delta_negative = base_b < base_a;
    const std::size_t delta_mag = delta_negative ? base_a - base_b : base_b - base_a;
    const std::size_t l_min = delta_negative ? 2 : 1;

    // minimal l >= l_min with A_1 < B_l
    std::size_t l = l_min;
    while (l < len_b && l <= max_search && !less(a_idx(1), b_idx(l))) ++l;
    if (l >= len_b || l > max_search) return std::nullopt;

    // minimal k with B_{base+k} < A_{shift+k}
    const auto overtake = [&](std::size_t base, std::size_t shift) -> std::optional<std::size_t> {
        for (std::size_t k = 0; k <= max_search; ++k) {
            if (base + k >= len_b || shift + k >= len_a) return std::nullopt;
            if (less(b_idx(base + k), a_idx(shift + k))) return k;
        }
        return std::nullopt;
    };
    const auto k1 = overtake(l, 1);
    const auto k2 = overtake(l, 0);
    if (!k1 || !k2) return std::nullopt;

    // minimal m > l with A_{1+k1} < B_{m+k1} and A_{1+k2} < B_{m+k2}
    std::size_t m = l + 1;
    while (m <= max_search && m + std::max(*k1, *k2) < len_b &&
           !(less(a_idx(1 + *k1), b_idx(m + *k1)) && less(a_idx(1 + *k2), b_idx(m + *k2))))
        ++m;
    if (m > max_search || m + std::max(*k1, *k2) >= len_b) return std::nullopt;

    const auto k3 = overtake(m, 1);
    const auto k4 = overtake(m, 0);
    if (!k3 || !k4) return std::nullopt;

    const auto offset_of = [&](std::size_t steps) {
        return delta_negative ? steps * t - delta_mag : steps * t + delta_mag;
    };
    std::vector<std::size_t> offs{0, t, offset_of(l), offset_of(m)};
    if (!(offs[1] < offs[2] && offs[2] < offs[3])) return std::nullopt;
    Lemma4Witness witness;
    witness.window = Window(std::move(offs));

    const std::array<std::size_t, 5> ks{0, *k1, *k2, *k3, *k4};
    std::set<perms::PatternId> patterns;
    for (std::size_t k : ks) {
        const std::size_t anchor = base_a + k * t;
        if (anchor + witness.window.max() >= n) return std::nullopt;
        witness.anchors.push_back(anchor);
        patterns.insert(perms::t_factor(a, witness.window, anchor));
    }
    witness.distinct_at_anchors = patterns.size();
    if (witness.distinct_at_anchors < 5) return std::nullopt;
    return witness;
}

} // namespace detail

/// Searches for a 4-window T = (0, t, ...) whose pattern complexity is at
/// least 5, built from the crossings of the increasing subpermutations
/// alpha_t^0 and alpha_t^r.  Both orientations of the crossing construction
/// are tried; the scan is bounded by max_search indices.
inline std::optional<Lemma4Witness> find_lemma4_window(const PermutationPrefix& a, std::size_t t,
                                                       std::size_t r, std::size_t max_search) {
    if (t < 1 || r == 0 || r >= t)
        throw PreconditionFailedError("find_lemma4_window needs 0 < r < t");
    for (std::size_t base : {std::size_t{0}, r}) {
        for (std::size_t pos = base; pos + t < a.size(); pos += t)
            if (perms::gamma(a, pos, pos + t) != GammaRelation::LT)
                throw PreconditionFailedError("subpermutation on residue " + std::to_string(base) +
                                              " is not increasing");
    }
    if (auto w = detail::lemma4_search_oriented(a, t, 0, r, max_search)) return w;
    return detail::lemma4_search_oriented(a, t, r, 0, max_search);
}

// ---------------------------------------------------------------------------
// diagnostics for the periodic-gamma_1 regime

struct PeriodicDiagnostics {
    std::size_t gamma1_period = 0;
    bool all_rows_periodic = true;              // every gamma_i^j periodic/monotone (i <= max_i)
    std::optional<std::size_t> monotone_residue; // some i' with alpha_p^{i'} monotone
    std::optional<std::size_t> all_monotone_t;   // some t with every alpha_t^i monotone
};

/// When gamma_1 is periodic with period p, a lowest-complexity permutation
/// must have every relation row periodic, some alpha_p^{i'} monotone, and some
/// difference t all of whose subpermutations are monotone.  Reports how far
/// the prefix complies.
inline PeriodicDiagnostics periodic_gamma_diagnostics(const PermutationPrefix& a,
                                                      std::size_t gamma1_period,
                                                      std::size_t max_i, std::size_t max_t,
                                                      const EvidenceConfig& cfg = {}) {
    PeriodicDiagnostics out;
    out.gamma1_period = gamma1_period;
    for (std::size_t i = 1; i <= max_i && (a.size() - 1) / i >= cfg.min_row_length; ++i) {
        const GammaClassification cls = classify_gamma(a, i, cfg);
        for (const ResidueVerdict& v : cls.residues) {
            const bool periodic_like = v.kind == RowKind::periodic ||
                                       v.kind == RowKind::monotone_inc ||
                                       v.kind == RowKind::monotone_dec;
            out.all_rows_periodic = out.all_rows_periodic && periodic_like;
        }
    }
    const auto row_constant = [&](std::size_t t, std::size_t j) {
        const Word row = perms::gamma_ap(a, t, j);
        return row.occurring().size() == 1;
    };
    const std::size_t p = gamma1_period;
    if (p >= 1 && p < a.size()) {
        for (std::size_t j = 0; j < p && j + p < a.size(); ++j) {
            if (row_constant(p, j)) {
                out.monotone_residue = j;
                break;
            }
        }
    }
    for (std::size_t t = 1; t <= max_t && t < a.size(); ++t) {
        bool all = true;
        for (std::size_t j = 0; j < t && all; ++j) {
            if (j + t >= a.size()) {
                all = false;
                break;
            }
            all = row_constant(t, j);
        }
        if (all) {
            out.all_monotone_t = t;
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// theorem suite

struct SuiteConfig {
    std::size_t k_max = 5;
    std::size_t max_offset = 30;
    std::size_t max_preperiod = 50;
    std::size_t max_period = 80;
    std::size_t max_i = 7;    // gamma classification sweep (reporting)
    std::size_t sm_max_i = 4; // S/M + reconstruction (must stay conclusive)
    std::size_t reconstruction_n = 500;
    EvidenceConfig evidence{};
};

/// Construction parameters, when the caller has them: they unlock the S/M,
/// threshold and reconstruction checks.
struct SturmianContext {
    Word word;            // the generating binary word
    ExactReal sigma_word; // its slope
    ExactReal x;
    ExactReal y;
};

struct TheoremVerdict {
    std::string id;
    std::string status; // "pass" | "fail" | "skipped"
    std::string note;
};

struct SuiteReport {
    std::size_t n = 0;
    SuiteConfig config;
    std::optional<std::pair<std::size_t, std::size_t>> period; // (preperiod, period)
    std::vector<std::pair<std::size_t, std::size_t>> pstar;    // (k, bounded p*)
    std::vector<Window> pstar_witnesses;
    std::vector<GammaClassification> gamma_sweep;
    std::optional<SMPartition> sm;
    std::optional<ClosureReport> closure;
    std::optional<ReconstructionReport> reconstruction;
    std::optional<PeriodicDiagnostics> periodic_diagnostics;
    std::vector<TheoremVerdict> verdicts;

    bool all_pass() const {
        return std::all_of(verdicts.begin(), verdicts.end(),
                           [](const TheoremVerdict& v) { return v.status != "fail"; });
    }
};

/// Runs the full battery on one prefix: periodicity scan, bounded maximal
/// pattern complexity, gamma classification sweep, and (with construction
/// context) the S/M partition, closure conditions and reconstruction.  Every
/// verdict records the bounds it was computed under.
inline SuiteReport theorem_suite(const PermutationPrefix& a, const SuiteConfig& cfg = {},
                                 const SturmianContext* ctx = nullptr) {
    SuiteReport report;
    report.n = a.size();
    report.config = cfg;

    report.period = perms::detect_permutation_period(a, cfg.max_preperiod, cfg.max_period);
    const bool periodic = report.period.has_value();

    const std::size_t usable_offset = std::min(cfg.max_offset, a.size() - 2);
    for (std::size_t k = 1; k <= cfg.k_max; ++k) {
        auto [value, witness] = perms::max_pattern_complexity_bounded(a, k, usable_offset);
        report.pstar.emplace_back(k, value);
        report.pstar_witnesses.push_back(witness);
    }

    // theorem: aperiodic  <=>  p*(k) >= k for every k
    {
        bool ok;
        std::string note;
        if (periodic) {
            const std::size_t bound = report.period->first + report.period->second;
            ok = std::all_of(report.pstar.begin(), report.pstar.end(),
                             [&](const auto& kv) { return kv.second <= bound; });
            note = "periodic (pre=" + std::to_string(report.period->first) + ", t=" +
                   std::to_string(report.period->second) + "); bounded p* stays <= pre+t";
        } else {
            ok = std::all_of(report.pstar.begin(), report.pstar.end(),
                             [&](const auto& kv) { return kv.second >= kv.first; });
            note = "aperiodic within bounds; bounded p*(k) >= k for k <= " +
                   std::to_string(cfg.k_max);
        }
        report.verdicts.push_back({"aperiodicity-pstar-bound", ok ? "pass" : "fail", note});
    }

    // gamma classification sweep (skipped per-i when evidence runs short)
    for (std::size_t i = 1; i <= cfg.max_i; ++i) {
        if ((a.size() - 1) / i < cfg.evidence.min_row_length) break;
        report.gamma_sweep.push_back(classify_gamma(a, i, cfg.evidence));
    }

    const bool gamma1_sturmian =
        !report.gamma_sweep.empty() && report.gamma_sweep[0].aggregate == RowKind::sturmian_like;

    if (ctx != nullptr) {
        // lowest-complexity check: p*(k) must equal k exactly
        const bool exact = std::all_of(report.pstar.begin(), report.pstar.end(),
                                       [](const auto& kv) { return kv.second == kv.first; });
        report.verdicts.push_back({"lowest-pstar-identity", exact ? "pass" : "fail",
                                   "bounded p*(k) == k for k <= " + std::to_string(cfg.k_max)});

        if (gamma1_sturmian) {
            const ExactReal sigma = ExactReal(1) - ctx->sigma_word;
            try {
                SMPartition part = sm_partition(a, sigma, cfg.sm_max_i, cfg.evidence);
                report.sm = part;
                report.closure = verify_closure(part, sigma);
                report.verdicts.push_back({"sm-closure", report.closure->ok() ? "pass" : "fail",
                                           std::to_string(report.closure->violations.size()) +
                                               " closure violations"});
                const std::size_t recon_n = std::min(cfg.reconstruction_n, a.size());
                report.reconstruction = verify_reconstruction(
                    ctx->word, ctx->sigma_word, ctx->x, ctx->y, recon_n,
                    ReconstructionConfig{cfg.sm_max_i, cfg.evidence});
                report.verdicts.push_back({"reconstruction",
                                           report.reconstruction->isomorphic ? "pass" : "fail",
                                           "order isomorphism at n=" + std::to_string(recon_n)});
            } catch (const Error& e) {
                report.verdicts.push_back({"sm-closure", "fail", e.what()});
            }
        } else {
            report.verdicts.push_back(
                {"sm-closure", "skipped", "gamma_1 not Sturmian-like on this prefix"});
        }
    } else if (!periodic) {
        // without construction context: an aperiodic non-Sturmian prefix must
        // exceed k somewhere (otherwise it would be a lowest-complexity one)
        if (!gamma1_sturmian) {
            const bool exceeds = std::any_of(report.pstar.begin(), report.pstar.end(),
                                             [](const auto& kv) { return kv.second > kv.first; });
            report.verdicts.push_back({"non-sturmian-pstar-excess", exceeds ? "pass" : "fail",
                                       "aperiodic with non-Sturmian gamma_1 must show p*(k) > k"});
        }
    }

    if (!report.gamma_sweep.empty() && report.gamma_sweep[0].aggregate == RowKind::periodic) {
        const std::size_t p = report.gamma_sweep[0].residues[0].period;
        report.periodic_diagnostics =
            periodic_gamma_diagnostics(a, p, cfg.max_i, cfg.max_period, cfg.evidence);
    }

    return report;
}

} // namespace sturmperm::structure
