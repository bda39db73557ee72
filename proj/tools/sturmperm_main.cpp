// Command-line front end: generate words and permutation prefixes, compute
// complexity tables, classify gamma structure, and run the theorem suite.
// All numeric parameters decision-critical to the math are exact text forms
// ("p/r" or "(p+q*sqrt(d))/r"); no decimals are accepted there.
//
// Exit codes: 0 ok, 1 theorem-check failure, 2 parse/usage error,
// 3 precondition or insufficient-evidence error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sturmperm/errors.hpp"
#include "sturmperm/exact.hpp"
#include "sturmperm/io.hpp"
#include "sturmperm/perms.hpp"
#include "sturmperm/structure.hpp"
#include "sturmperm/words.hpp"

namespace {

using namespace sturmperm;
using exact::BigInt;
using exact::ExactReal;

constexpr int kExitOk = 0;
constexpr int kExitTheoremFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;

ExactReal parse_exact_flag(const std::string& text, const std::string& flag) {
    try {
        return ExactReal::parse(text);
    } catch (const ParseError& e) {
        throw CLI::ValidationError(flag, e.what());
    }
}

void emit(const std::string& content, const std::string& path) {
    if (path.empty())
        std::cout << content;
    else
        io::atomic_write_file(path, content);
}

// ---------------------------------------------------------------------------
// shared family options for permutation-producing subcommands

struct FamilyOptions {
    std::string family;
    std::string input_path; // alternative to a generated family
    std::size_t length = 0;
    std::string sigma_text, rho_text = "0", x_text, y_text, a0_text = "0";
    std::string variant = "lower";
    long long nparam = 2;
    std::string gaps_text; // comma-separated; empty = 2^k + k

    void add_to(CLI::App* cmd, bool with_input) {
        cmd->add_option("--family", family,
                        "sturmian | fractional-orbit | periodic-example | low-complexity");
        if (with_input)
            cmd->add_option("--input", input_path, "read a serialized prefix instead");
        cmd->add_option("--length", length, "prefix length N");
        cmd->add_option("--sigma", sigma_text, "slope (exact text form)");
        cmd->add_option("--rho", rho_text, "intercept (exact text form)");
        cmd->add_option("--variant", variant, "lower | upper (mechanical word variant)");
        cmd->add_option("--x", x_text, "up-step of the walk (exact text form)");
        cmd->add_option("--y", y_text, "down-step of the walk (exact text form)");
        cmd->add_option("--a0", a0_text, "starting value (exact text form)");
        cmd->add_option("--nparam", nparam, "parameter of the periodic example");
        cmd->add_option("--gaps", gaps_text, "comma-separated gap sequence n_k (default 2^k+k)");
    }
};

words::MechanicalVariant parse_variant(const std::string& v) {
    if (v == "lower") return words::MechanicalVariant::lower;
    if (v == "upper") return words::MechanicalVariant::upper;
    throw CLI::ValidationError("--variant", "must be lower or upper");
}

std::vector<BigInt> parse_gaps(const std::string& text) {
    std::vector<BigInt> gaps;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        gaps.emplace_back(item);
    }
    return gaps;
}

struct BuiltPrefix {
    perms::PermutationPrefix prefix;
    std::optional<structure::SturmianContext> context; // when the family provides one
};

BuiltPrefix build_prefix(const FamilyOptions& opt) {
    if (!opt.input_path.empty()) {
        std::ifstream is(opt.input_path);
        if (!is) throw Error("cannot open " + opt.input_path);
        return {io::read_prefix(is), std::nullopt};
    }
    if (opt.length == 0) throw CLI::ValidationError("--length", "a positive length is required");
    if (opt.family == "sturmian" || opt.family == "fractional-orbit") {
        if (opt.sigma_text.empty())
            throw CLI::ValidationError("--sigma", "required for this family");
        const ExactReal sigma = parse_exact_flag(opt.sigma_text, "--sigma");
        const ExactReal rho = parse_exact_flag(opt.rho_text, "--rho");
        const auto mech =
            words::mechanical_word(sigma, rho, opt.length - 1, parse_variant(opt.variant));
        for (std::size_t hit : mech.lattice_hits)
            std::cerr << "notice: lattice hit at i=" << hit << "\n";
        if (mech.rational_slope) std::cerr << "notice: rational slope\n";
        ExactReal x = opt.family == "sturmian" && !opt.x_text.empty()
                          ? parse_exact_flag(opt.x_text, "--x")
                          : sigma;
        ExactReal y = opt.family == "sturmian" && !opt.y_text.empty()
                          ? parse_exact_flag(opt.y_text, "--y")
                          : ExactReal(1) - sigma;
        ExactReal a0 = opt.family == "sturmian" ? parse_exact_flag(opt.a0_text, "--a0") : rho;
        perms::PermutationPrefix prefix = perms::build_from_word(mech.word, x, y, a0);
        structure::SturmianContext ctx{mech.word, sigma, x, y};
        return {std::move(prefix), std::move(ctx)};
    }
    if (opt.family == "periodic-example")
        return {perms::periodic_example(opt.nparam, opt.length), std::nullopt};
    if (opt.family == "low-complexity") {
        const std::size_t need = (opt.length + 1) / 2;
        std::vector<BigInt> gaps =
            opt.gaps_text.empty() ? perms::default_gaps(need) : parse_gaps(opt.gaps_text);
        return {perms::low_complexity_example(gaps, opt.length), std::nullopt};
    }
    throw CLI::ValidationError("--family", "unknown family \"" + opt.family + "\"");
}

// ---------------------------------------------------------------------------
// subcommand payloads

struct GenWordOptions {
    std::string family = "mechanical";
    std::string sigma_text, rho_text = "0", variant = "lower";
    std::string partition_path, xi_text, x0_text = "0";
    std::size_t length = 0;
    std::string out_path;
};

int run_gen_word(const GenWordOptions& opt) {
    words::Word word;
    if (opt.family == "mechanical") {
        if (opt.sigma_text.empty())
            throw CLI::ValidationError("--sigma", "required for mechanical words");
        const auto mech = words::mechanical_word(parse_exact_flag(opt.sigma_text, "--sigma"),
                                                 parse_exact_flag(opt.rho_text, "--rho"),
                                                 opt.length, parse_variant(opt.variant));
        for (std::size_t hit : mech.lattice_hits)
            std::cerr << "notice: lattice hit at i=" << hit << "\n";
        if (mech.rational_slope) std::cerr << "notice: rational slope\n";
        word = mech.word;
    } else if (opt.family == "rotation") {
        if (opt.partition_path.empty() || opt.xi_text.empty())
            throw CLI::ValidationError("--partition", "rotation words need --partition and --xi");
        std::ifstream is(opt.partition_path);
        if (!is) throw Error("cannot open " + opt.partition_path);
        const auto part = io::read_partition(is);
        word = words::rotation_word(part, parse_exact_flag(opt.xi_text, "--xi"),
                                    parse_exact_flag(opt.x0_text, "--x0"), opt.length);
    } else {
        throw CLI::ValidationError("--family", "must be mechanical or rotation");
    }
    emit(word.str() + "\n", opt.out_path);
    return kExitOk;
}

struct ComplexityOptions {
    FamilyOptions family;
    std::size_t fa_max = 20;
    std::size_t k_max = 3;
    std::size_t max_offset = 20;
    std::string fa_out, pstar_out;
};

int run_complexity(const ComplexityOptions& opt) {
    const BuiltPrefix built = build_prefix(opt.family);
    const auto& a = built.prefix;

    std::vector<std::pair<std::size_t, std::size_t>> fa_rows;
    for (std::size_t n = 1; n <= opt.fa_max && n <= a.size(); ++n)
        fa_rows.emplace_back(n, perms::factor_complexity(a, n));
    emit(io::fa_csv(fa_rows), opt.fa_out);

    std::vector<io::PStarRow> pstar_rows;
    for (std::size_t k = 1; k <= opt.k_max; ++k) {
        auto [value, witness] = perms::max_pattern_complexity_bounded(a, k, opt.max_offset);
        pstar_rows.push_back({k, opt.max_offset, value, witness});
    }
    emit(io::pstar_csv(pstar_rows), opt.pstar_out);
    return kExitOk;
}

struct ClassifyOptions {
    FamilyOptions family;
    std::string sigma_struct_text;
    std::size_t max_i = 7;
    std::string sm_out, gamma_out;
};

int run_classify(const ClassifyOptions& opt) {
    const BuiltPrefix built = build_prefix(opt.family);
    const auto& a = built.prefix;

    ExactReal sigma_struct(0);
    if (!opt.sigma_struct_text.empty())
        sigma_struct = parse_exact_flag(opt.sigma_struct_text, "--sigma-struct");
    else if (built.context)
        sigma_struct = ExactReal(1) - built.context->sigma_word;
    else
        throw CLI::ValidationError("--sigma-struct",
                                   "required when the input carries no slope");

    io::json sweep = io::json::array();
    for (std::size_t i = 1; i <= opt.max_i; ++i)
        sweep.push_back(io::to_json(structure::classify_gamma(a, i)));

    const structure::SMPartition part = structure::sm_partition(a, sigma_struct, opt.max_i);
    emit(io::sm_csv(part, sigma_struct), opt.sm_out);

    io::json gamma_report{{"schema", 1},
                          {"n", a.size()},
                          {"sigma_struct", sigma_struct.str()},
                          {"gamma", std::move(sweep)},
                          {"sm", io::to_json(part)}};
    emit(gamma_report.dump(2) + "\n", opt.gamma_out);
    return kExitOk;
}

struct VerifyOptions {
    FamilyOptions family;
    structure::SuiteConfig config;
    std::string json_out;
};

structure::SuiteConfig clamp_to_evidence(structure::SuiteConfig cfg, std::size_t n) {
    // shrink scan bounds so the prefix affords the evidence they need
    cfg.max_preperiod = std::min(cfg.max_preperiod, n / 4);
    if (cfg.max_preperiod + 3 * cfg.max_period > n)
        cfg.max_period = (n - cfg.max_preperiod) / 3;
    cfg.max_offset = std::min(cfg.max_offset, n - 2);
    cfg.reconstruction_n = std::min(cfg.reconstruction_n, n);
    return cfg;
}

int run_verify(const VerifyOptions& opt) {
    const BuiltPrefix built = build_prefix(opt.family);
    const auto cfg = clamp_to_evidence(opt.config, built.prefix.size());
    const structure::SuiteReport report = structure::theorem_suite(
        built.prefix, cfg, built.context ? &*built.context : nullptr);
    emit(io::to_json(report).dump(2) + "\n", opt.json_out);
    return report.all_pass() ? kExitOk : kExitTheoremFailure;
}

struct ReportOptions {
    FamilyOptions family;
    ComplexityOptions complexity;
    VerifyOptions verify;
    std::string out_dir;
    std::string sigma_struct_text;
    std::size_t max_i = 4; // kept small so the S/M table stays conclusive
};

int run_report(const ReportOptions& opt) {
    ComplexityOptions complexity = opt.complexity;
    complexity.family = opt.family;
    complexity.fa_out = opt.out_dir + "/fa.csv";
    complexity.pstar_out = opt.out_dir + "/pstar.csv";
    run_complexity(complexity);

    const BuiltPrefix built = build_prefix(opt.family);
    if (built.context || !opt.sigma_struct_text.empty()) {
        ClassifyOptions classify;
        classify.family = opt.family;
        classify.sigma_struct_text = opt.sigma_struct_text;
        classify.max_i = opt.max_i;
        classify.sm_out = opt.out_dir + "/sm.csv";
        classify.gamma_out = opt.out_dir + "/gamma.json";
        try {
            run_classify(classify);
        } catch (const InconclusiveError& e) {
            std::cerr << "notice: S/M classification skipped: " << e.what() << "\n";
        }
    }

    VerifyOptions verify = opt.verify;
    verify.family = opt.family;
    verify.json_out = opt.out_dir + "/verify.json";
    return run_verify(verify);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for Sturmian words and infinite permutations"};
    app.require_subcommand(1);

    GenWordOptions gen_word;
    auto* cmd_gen_word = app.add_subcommand("gen-word", "generate a mechanical or rotation word");
    cmd_gen_word->add_option("--family", gen_word.family, "mechanical | rotation");
    cmd_gen_word->add_option("--sigma", gen_word.sigma_text, "slope (exact text form)");
    cmd_gen_word->add_option("--rho", gen_word.rho_text, "intercept (exact text form)");
    cmd_gen_word->add_option("--variant", gen_word.variant, "lower | upper");
    cmd_gen_word->add_option("--partition", gen_word.partition_path, "partition file");
    cmd_gen_word->add_option("--xi", gen_word.xi_text, "rotation step (exact text form)");
    cmd_gen_word->add_option("--x0", gen_word.x0_text, "initial point (exact text form)");
    cmd_gen_word->add_option("--length", gen_word.length, "word length")->required();
    cmd_gen_word->add_option("--out", gen_word.out_path, "output file (default stdout)");

    FamilyOptions gen_perm_family;
    std::string gen_perm_out;
    auto* cmd_gen_perm = app.add_subcommand("gen-perm", "generate a permutation prefix");
    gen_perm_family.add_to(cmd_gen_perm, false);
    cmd_gen_perm->add_option("--out", gen_perm_out, "output file (default stdout)");

    ComplexityOptions complexity;
    auto* cmd_complexity =
        app.add_subcommand("complexity", "factor and bounded maximal pattern complexity");
    complexity.family.add_to(cmd_complexity, true);
    cmd_complexity->add_option("--fa-max", complexity.fa_max, "factor complexity up to this n");
    cmd_complexity->add_option("--kmax", complexity.k_max, "window sizes up to this k");
    cmd_complexity->add_option("--max-offset", complexity.max_offset, "window offset bound");
    cmd_complexity->add_option("--fa-out", complexity.fa_out, "fa.csv path (default stdout)");
    cmd_complexity->add_option("--pstar-out", complexity.pstar_out,
                               "pstar.csv path (default stdout)");

    ClassifyOptions classify;
    auto* cmd_classify = app.add_subcommand("classify", "gamma sweep and S/M partition");
    classify.family.add_to(cmd_classify, true);
    cmd_classify->add_option("--sigma-struct", classify.sigma_struct_text,
                             "'<'-frequency parameter of gamma_1 (exact text form)");
    cmd_classify->add_option("--max-i", classify.max_i, "differences up to this i");
    cmd_classify->add_option("--sm-out", classify.sm_out, "sm.csv path (default stdout)");
    cmd_classify->add_option("--gamma-out", classify.gamma_out,
                             "gamma sweep JSON path (default stdout)");

    VerifyOptions verify;
    auto* cmd_verify = app.add_subcommand("verify", "run the theorem suite");
    verify.family.add_to(cmd_verify, true);
    cmd_verify->add_option("--kmax", verify.config.k_max, "window sizes up to this k");
    cmd_verify->add_option("--max-offset", verify.config.max_offset, "window offset bound");
    cmd_verify->add_option("--max-preperiod", verify.config.max_preperiod, "preperiod bound");
    cmd_verify->add_option("--max-period", verify.config.max_period, "period bound");
    cmd_verify->add_option("--max-i", verify.config.max_i, "gamma sweep bound");
    cmd_verify->add_option("--sm-max-i", verify.config.sm_max_i, "S/M analysis bound");
    cmd_verify->add_option("--recon-n", verify.config.reconstruction_n,
                           "reconstruction prefix length");
    cmd_verify->add_option("--json-out", verify.json_out, "report path (default stdout)");

    ReportOptions report;
    auto* cmd_report = app.add_subcommand("report", "write the full artifact bundle");
    report.family.add_to(cmd_report, true);
    cmd_report->add_option("--out-dir", report.out_dir, "output directory")->required();
    cmd_report->add_option("--sigma-struct", report.sigma_struct_text,
                           "'<'-frequency parameter of gamma_1 (exact text form)");
    cmd_report->add_option("--max-i", report.max_i, "gamma sweep bound");
    cmd_report->add_option("--fa-max", report.complexity.fa_max, "factor complexity bound");
    cmd_report->add_option("--kmax", report.complexity.k_max, "window sizes up to this k");
    cmd_report->add_option("--max-offset", report.complexity.max_offset, "window offset bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (cmd_gen_word->parsed()) return run_gen_word(gen_word);
        if (cmd_gen_perm->parsed()) {
            const BuiltPrefix built = build_prefix(gen_perm_family);
            std::ostringstream os;
            io::write_prefix(os, built.prefix);
            emit(os.str(), gen_perm_out);
            return kExitOk;
        }
        if (cmd_complexity->parsed()) return run_complexity(complexity);
        if (cmd_classify->parsed()) return run_classify(classify);
        if (cmd_verify->parsed()) return run_verify(verify);
        if (cmd_report->parsed()) {
            report.verify.config.k_max = report.complexity.k_max;
            report.verify.config.max_offset = report.complexity.max_offset;
            return run_report(report);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const InsufficientEvidenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const InconclusiveError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const PreconditionFailedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    }
    return kExitOk;
}
