// diagsq: batch front end for the diagonal-form decomposition library.
//
// Subcommands: decide, residue-check, decompose, verify, commutator,
// selftest, fuzz, table1.  Every run prints a single JSON document on
// stdout; integers ride as decimal strings so arbitrary precision survives
// round-trips.  Exit codes are frozen for CI use: 0 success/decided,
// 1 bad input, 2 internal assertion (a bug), 3 condition violated or
// target infeasible, 4 search budget exhausted.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "diagsq/commutator.hpp"
#include "diagsq/decompose2.hpp"
#include "diagsq/dispatch.hpp"
#include "diagsq/harness.hpp"
#include "diagsq/json_io.hpp"
#include "diagsq/universality2.hpp"

namespace {

using diagsq::BigInt;
using diagsq::Error;
using diagsq::ErrorKind;
using diagsq::Json;

void emit(const Json& doc) { std::cout << doc.dump() << "\n"; }

// "--n 4" or "--n 3..8" for the batch commands.
void parse_dim_range(const std::string& text, std::size_t& lo,
                     std::size_t& hi) {
    const std::size_t dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            lo = hi = std::stoul(text);
        } else {
            lo = std::stoul(text.substr(0, dots));
            hi = std::stoul(text.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw Error(ErrorKind::bad_input,
                    "invalid dimension range: " + text);
    }
    diagsq::require(lo >= 2 && lo <= hi, ErrorKind::bad_input,
                    "dimension range must satisfy 2 <= lo <= hi");
}

struct Options {
    std::string coeffs;
    std::string target;
    std::string input = "-";
    std::string dims;
    std::string format = "json";
    std::size_t n = 0;
    unsigned modulus = 0;
    unsigned limit = 16;
    unsigned trials = 0;
    unsigned jobs = 0;
    std::uint64_t seed = 1;
    std::uint64_t budget = 4096;
    std::int64_t coeff_bound = 0;
    std::int64_t entry_bound = 0;
    bool explain = false;
    bool precondition = false;
    bool with_timing = false;
};

void check_format(const Options& o) {
    diagsq::require(o.format == "json", ErrorKind::bad_input,
                    "unsupported output format: " + o.format);
}

diagsq::CommutatorOptions commutator_options(const Options& o) {
    diagsq::CommutatorOptions c;
    c.seed = o.seed;
    c.budget = o.budget;
    c.precondition = o.precondition;
    return c;
}

diagsq::HarnessConfig harness_config(const Options& o) {
    diagsq::HarnessConfig cfg;
    cfg.seed = o.seed;
    cfg.trials = o.trials;
    parse_dim_range(o.dims, cfg.n_min, cfg.n_max);
    cfg.coeff_bound = o.coeff_bound;
    cfg.entry_bound = o.entry_bound;
    cfg.budget = o.budget;
    cfg.precondition = o.precondition;
    cfg.with_timing = o.with_timing;
    cfg.jobs = o.jobs;
    return cfg;
}

int run_decide(const Options& o) {
    check_format(o);
    const auto verdict =
        diagsq::decide_universal_m2(diagsq::parse_coeff_list(o.coeffs));
    emit(diagsq::verdict_to_json(verdict, o.explain));
    return 0;
}

int run_residue_check(const Options& o) {
    check_format(o);
    const auto report = diagsq::residue_universal_check(
        diagsq::parse_coeff_list(o.coeffs), o.modulus, o.limit);
    emit(diagsq::residue_report_to_json(report));
    return 0;
}

int run_decompose(const Options& o) {
    check_format(o);
    const std::vector<BigInt> coeffs = diagsq::parse_coeff_list(o.coeffs);
    const diagsq::IntMat target =
        diagsq::matrix_from_json(diagsq::load_json_arg(o.target));
    diagsq::require(o.n == 0 || o.n == target.dim(),
                    ErrorKind::dimension_mismatch,
                    "--n does not match the target's dimension");
    diagsq::ExplainSink sink;
    const diagsq::Decomposition d = diagsq::decompose_any(
        coeffs, target, commutator_options(o), o.explain ? &sink : nullptr);
    Json doc = diagsq::decomposition_to_json(d);
    if (o.explain) doc["explain"] = std::move(sink);
    emit(doc);
    return 0;
}

int run_verify(const Options& o) {
    check_format(o);
    const diagsq::Decomposition d =
        diagsq::decomposition_from_json(diagsq::load_json_arg(o.input));
    const diagsq::VerifyResult vr = diagsq::verify_decomposition(d);
    Json doc;
    doc["verified"] = vr.ok;
    if (!vr.ok) {
        Json m;
        m["row"] = vr.row;
        m["col"] = vr.col;
        m["expected"] = diagsq::to_string(vr.expected);
        m["actual"] = diagsq::to_string(vr.actual);
        doc["first_mismatch"] = std::move(m);
    }
    emit(doc);
    return vr.ok ? 0 : 3;
}

int run_commutator(const Options& o) {
    check_format(o);
    const diagsq::IntMat z =
        diagsq::matrix_from_json(diagsq::load_json_arg(o.target));
    diagsq::ExplainSink sink;
    const diagsq::CommutatorPair pair = diagsq::commutator_decompose(
        z, commutator_options(o), o.explain ? &sink : nullptr);
    Json doc;
    doc["x"] = diagsq::matrix_to_json(pair.x);
    doc["y"] = diagsq::matrix_to_json(pair.y);
    if (o.explain) doc["explain"] = std::move(sink);
    emit(doc);
    return 0;
}

int run_selftest(const Options& o) {
    check_format(o);
    const Json report = diagsq::run_selftest(o.seed);
    emit(report);
    return report["all_passed"].get<bool>() ? 0 : 2;
}

int run_batch(const Options& o, bool table) {
    check_format(o);
    const diagsq::HarnessConfig cfg = harness_config(o);
    const Json report =
        table ? diagsq::run_table1(cfg) : diagsq::run_fuzz(cfg);
    emit(report);
    return report["failures"].empty() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact decompositions of integer matrices as weighted sums of "
        "squares, with universality deciders and residue enumeration."};
    app.require_subcommand(1);
    Options o;

    CLI::App* decide =
        app.add_subcommand("decide", "Decide universality over the 2x2 ring");
    decide->add_option("--coeffs", o.coeffs, "Coefficients, e.g. 1,1,4")
        ->required();
    decide->add_flag("--explain", o.explain,
                     "Include the failed condition and witness prime");
    decide->add_option("--format", o.format, "Output format (json)");

    CLI::App* residue = app.add_subcommand(
        "residue-check", "Enumerate reachable matrices over Z_r");
    residue->add_option("--coeffs", o.coeffs, "Coefficients")->required();
    residue->add_option("--modulus", o.modulus, "Residue ring modulus r >= 2")
        ->required();
    residue->add_option("--limit", o.limit,
                        "Largest modulus the enumerator accepts");
    residue->add_option("--format", o.format, "Output format (json)");

    CLI::App* decompose = app.add_subcommand(
        "decompose", "Write a target as a weighted sum of matrix squares");
    decompose->add_option("--coeffs", o.coeffs, "Coefficients")->required();
    decompose->add_option("--target", o.target,
                          "Target matrix: inline JSON, @file, or -")
        ->required();
    decompose->add_option("--n", o.n, "Expected dimension (cross-checked)");
    decompose->add_option("--seed", o.seed, "Commutator search seed");
    decompose->add_option("--budget", o.budget, "Commutator search budget");
    decompose->add_flag("--precondition", o.precondition,
                        "Shrink entries by conjugation before searching");
    decompose->add_flag("--explain", o.explain, "Attach an audit trail");
    decompose->add_option("--format", o.format, "Output format (json)");

    CLI::App* verify = app.add_subcommand(
        "verify", "Check a decomposition document exactly");
    verify->add_option("--input", o.input,
                       "Decomposition: inline JSON, @file, or - (stdin)");
    verify->add_option("--format", o.format, "Output format (json)");

    CLI::App* commutator = app.add_subcommand(
        "commutator", "Write a trace-zero matrix as XY - YX");
    commutator
        ->add_option("--target", o.target,
                     "Trace-zero matrix: inline JSON, @file, or -")
        ->required();
    commutator->add_option("--seed", o.seed, "Search seed");
    commutator->add_option("--budget", o.budget, "Search budget");
    commutator->add_flag("--precondition", o.precondition,
                         "Shrink entries by conjugation before searching");
    commutator->add_flag("--explain", o.explain, "Attach an audit trail");
    commutator->add_option("--format", o.format, "Output format (json)");

    CLI::App* selftest = app.add_subcommand(
        "selftest", "Run the deterministic library property battery");
    selftest->add_option("--seed", o.seed, "Battery seed");
    selftest->add_option("--format", o.format, "Output format (json)");

    CLI::App* fuzz = app.add_subcommand(
        "fuzz", "Randomized decompose+verify trials with a seeded report");
    o.trials = 10;
    o.dims = "2";
    o.coeff_bound = 50;
    o.entry_bound = 100;
    fuzz->add_option("--seed", o.seed, "Base seed");
    fuzz->add_option("--trials", o.trials, "Total number of trials");
    fuzz->add_option("--n", o.dims, "Dimension or range, e.g. 2 or 2..4");
    fuzz->add_option("--coeff-bound", o.coeff_bound,
                     "Coefficient magnitude bound (>= 1)");
    fuzz->add_option("--entry-bound", o.entry_bound,
                     "Target entry magnitude bound (>= 0)");
    fuzz->add_option("--budget", o.budget, "Commutator search budget");
    fuzz->add_flag("--precondition", o.precondition,
                   "Precondition commutator searches");
    fuzz->add_option("--jobs", o.jobs, "Worker threads (0 = auto)");
    fuzz->add_flag("--with-timing", o.with_timing,
                   "Include wall-clock timing (breaks byte determinism)");
    fuzz->add_option("--format", o.format, "Output format (json)");

    CLI::App* table1 = app.add_subcommand(
        "table1", "Per-dimension bound-table reproduction report");
    table1->add_option("--seed", o.seed, "Base seed");
    table1->add_option("--trials", o.trials, "Trials per dimension");
    table1->add_option("--n", o.dims, "Dimension or range, e.g. 3..8");
    table1->add_option("--coeff-bound", o.coeff_bound,
                       "Coefficient magnitude bound (>= 1)");
    table1->add_option("--entry-bound", o.entry_bound,
                       "Target entry magnitude bound (>= 0)");
    table1->add_option("--budget", o.budget, "Commutator search budget");
    table1->add_option("--jobs", o.jobs, "Worker threads (0 = auto)");
    table1->add_flag("--with-timing", o.with_timing,
                     "Include wall-clock timing (breaks byte determinism)");
    table1->add_option("--format", o.format, "Output format (json)");

    try {
        app.parse(argc, argv);
        if (app.got_subcommand(table1)) {
            // Batch defaults differ between fuzz and table1.
            if (table1->count("--trials") == 0) o.trials = 25;
            if (table1->count("--n") == 0) o.dims = "3..8";
            if (table1->count("--coeff-bound") == 0) o.coeff_bound = 1000;
            if (table1->count("--entry-bound") == 0) o.entry_bound = 1000;
        }
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(decide)) return run_decide(o);
        if (app.got_subcommand(residue)) return run_residue_check(o);
        if (app.got_subcommand(decompose)) return run_decompose(o);
        if (app.got_subcommand(verify)) return run_verify(o);
        if (app.got_subcommand(commutator)) return run_commutator(o);
        if (app.got_subcommand(selftest)) return run_selftest(o);
        if (app.got_subcommand(fuzz)) return run_batch(o, false);
        if (app.got_subcommand(table1)) return run_batch(o, true);
        throw Error(ErrorKind::bad_input, "no subcommand given");
    } catch (const Error& e) {
        emit(diagsq::error_to_json(e));
        return diagsq::to_exit_code(e.kind);
    } catch (const std::exception& e) {
        emit(diagsq::error_to_json(
            Error(ErrorKind::internal_assertion, e.what())));
        return 2;
    }
}
