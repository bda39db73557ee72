#pragma once

// Serialization: words as ASCII strings, permutation prefixes as one exact
// value per line with an origin header, circle partitions as
// "start<TAB>label" lines, CSV tables for the complexity reports, and JSON
// rendering of theorem-suite reports (schema 1).
//
// All output is deterministic: identical inputs produce byte-identical bytes.

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sturmperm/errors.hpp"
#include "sturmperm/exact.hpp"
#include "sturmperm/perms.hpp"
#include "sturmperm/structure.hpp"
#include "sturmperm/words.hpp"

namespace sturmperm::io {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// permutation prefixes

inline void write_prefix(std::ostream& os, const perms::PermutationPrefix& a) {
    if (!a.origin().empty()) os << "# origin: " << a.origin() << "\n";
    for (const exact::ExactReal& v : a.values()) os << v.str() << "\n";
}

inline perms::PermutationPrefix read_prefix(std::istream& is) {
    std::vector<exact::ExactReal> values;
    std::string origin;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string tag = "# origin: ";
            if (line.rfind(tag, 0) == 0) origin = line.substr(tag.size());
            continue;
        }
        values.push_back(exact::ExactReal::parse(line));
    }
    if (values.empty()) throw ParseError("no values in prefix stream");
    return perms::PermutationPrefix(std::move(values), std::move(origin));
}

// ---------------------------------------------------------------------------
// circle partitions: one line per interval, "start_exact<TAB>label"

inline words::CirclePartition read_partition(
    std::istream& is,
    words::IntervalConvention convention = words::IntervalConvention::left_closed) {
    std::vector<std::pair<exact::ExactReal, char>> cuts;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos || tab + 1 >= line.size())
            throw ParseError("partition line needs \"start<TAB>label\": " + line);
        if (line.size() != tab + 2)
            throw ParseError("partition labels must be single characters: " + line);
        cuts.emplace_back(exact::ExactReal::parse(line.substr(0, tab)), line[tab + 1]);
    }
    return words::CirclePartition(std::move(cuts), convention);
}

inline void write_partition(std::ostream& os, const words::CirclePartition& part) {
    for (std::size_t i = 0; i < part.interval_count(); ++i)
        os << part.cut(i).str() << "\t" << part.label(i) << "\n";
}

// ---------------------------------------------------------------------------
// CSV tables

/// fa.csv: n,f_alpha
inline std::string fa_csv(const std::vector<std::pair<std::size_t, std::size_t>>& rows) {
    std::string out = "n,f_alpha\n";
    for (const auto& [n, f] : rows) out += std::to_string(n) + "," + std::to_string(f) + "\n";
    return out;
}

/// pstar.csv: k,max_offset,p_star_bounded,witness_window
struct PStarRow {
    std::size_t k = 0;
    std::size_t max_offset = 0;
    std::size_t p_star = 0;
    Window witness{std::vector<std::size_t>{0}};
};

inline std::string pstar_csv(const std::vector<PStarRow>& rows) {
    std::string out = "k,max_offset,p_star_bounded,witness_window\n";
    for (const auto& r : rows)
        out += std::to_string(r.k) + "," + std::to_string(r.max_offset) + "," +
               std::to_string(r.p_star) + "," + r.witness.str() + "\n";
    return out;
}

/// sm.csv: i,class,ratio_exact,ratio_decimal_hint
inline std::string sm_csv(const structure::SMPartition& part, const exact::ExactReal& sigma) {
    std::string out = "i,class,ratio_exact,ratio_decimal_hint\n";
    for (std::size_t i = 1; i <= part.max_i; ++i) {
        const exact::ExactReal ratio = structure::sm_ratio(sigma, i);
        out += std::to_string(i) + "," + (part.in_S(i) ? "S" : "M") + "," + ratio.str() + "," +
               ratio.decimal_hint() + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON reports (schema 1)

inline json to_json(const structure::GammaClassification& cls) {
    json residues = json::array();
    for (std::size_t j = 0; j < cls.residues.size(); ++j) {
        const auto& v = cls.residues[j];
        json entry{{"j", j}, {"kind", structure::row_kind_name(v.kind)}};
        if (v.kind == structure::RowKind::periodic || v.period > 0) {
            entry["period"] = v.period;
            entry["preperiod"] = v.preperiod;
        }
        residues.push_back(std::move(entry));
    }
    json out{{"i", cls.i},
             {"aggregate", structure::row_kind_name(cls.aggregate)},
             {"residues", std::move(residues)}};
    if (!cls.diagnostics.empty()) out["diagnostics"] = cls.diagnostics;
    return out;
}

inline json to_json(const structure::SMPartition& part) {
    return json{{"max_i", part.max_i},
                {"S", std::vector<std::size_t>(part.S.begin(), part.S.end())},
                {"M", std::vector<std::size_t>(part.M.begin(), part.M.end())},
                {"d_interval", {part.d_lower.str(), part.d_upper.str()}},
                {"m_rows_decreasing", part.m_rows_decreasing}};
}

inline json to_json(const structure::ClosureReport& report) {
    json violations = json::array();
    for (const auto& v : report.violations)
        violations.push_back(json{{"condition", v.condition}, {"i", v.i}, {"j", v.j}});
    return json{{"pairs_checked", report.pairs_checked}, {"violations", std::move(violations)}};
}

inline json to_json(const structure::ReconstructionReport& report) {
    return json{{"isomorphic", report.isomorphic},
                {"mirrored", report.mirrored},
                {"n", report.n},
                {"d_star", report.d_star.str()},
                {"d_interval", {report.partition.d_lower.str(), report.partition.d_upper.str()}},
                {"S", std::vector<std::size_t>(report.partition.S.begin(), report.partition.S.end())},
                {"M", std::vector<std::size_t>(report.partition.M.begin(), report.partition.M.end())}};
}

inline json to_json(const structure::SuiteReport& report) {
    json verdicts = json::array();
    for (const auto& v : report.verdicts)
        verdicts.push_back(json{{"id", v.id}, {"status", v.status}, {"note", v.note}});

    json pstar = json::array();
    for (std::size_t idx = 0; idx < report.pstar.size(); ++idx)
        pstar.push_back(json{{"k", report.pstar[idx].first},
                             {"p_star_bounded", report.pstar[idx].second},
                             {"witness", report.pstar_witnesses[idx].str()}});

    json gamma = json::array();
    for (const auto& cls : report.gamma_sweep) gamma.push_back(to_json(cls));

    json out{{"schema", 1},
             {"n", report.n},
             {"bounds",
              {{"k_max", report.config.k_max},
               {"max_offset", report.config.max_offset},
               {"max_preperiod", report.config.max_preperiod},
               {"max_period", report.config.max_period},
               {"max_i", report.config.max_i}}},
             {"periodic", report.period.has_value()},
             {"pstar", std::move(pstar)},
             {"gamma", std::move(gamma)},
             {"verdicts", std::move(verdicts)},
             {"all_pass", report.all_pass()}};
    if (report.period) {
        out["preperiod"] = report.period->first;
        out["period"] = report.period->second;
    }
    if (report.sm) out["sm"] = to_json(*report.sm);
    if (report.closure) out["closure"] = to_json(*report.closure);
    if (report.reconstruction) out["reconstruction"] = to_json(*report.reconstruction);
    if (report.periodic_diagnostics) {
        const auto& d = *report.periodic_diagnostics;
        json pd{{"gamma1_period", d.gamma1_period}, {"all_rows_periodic", d.all_rows_periodic}};
        if (d.monotone_residue) pd["monotone_residue"] = *d.monotone_residue;
        if (d.all_monotone_t) pd["all_monotone_t"] = *d.all_monotone_t;
        out["periodic_diagnostics"] = std::move(pd);
    }
    return out;
}

// ---------------------------------------------------------------------------
// atomic file output

inline void atomic_write_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("cannot open " + tmp + " for writing");
        os << content;
        if (!os) throw Error("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error("cannot rename " + tmp + " to " + path);
}

} // namespace sturmperm::io
