// Command-line front end.
//
// Commands: check, analyze, enumerate, verify, optimize, probe.
// Exit codes: 0 success / all checks pass; 1 semantic negative (membership
// violation, failed verification); 2 input or usage error.
//
// Output for a fixed invocation is byte-identical across runs: every
// randomized path is seeded, JSON keys are emitted in insertion order, and
// nothing timestamped is printed.

#include "ldpp/ldpp.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using ldpp::Json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + output_path);
    out << text;
}

void emit_json(const Json& j, const std::string& output_path) {
    emit(j.dump(2) + "\n", output_path);
}

struct TFlags {
    std::string t_text;
    std::optional<std::uint64_t> eps_ln2;

    ldpp::PrivacyParameter resolve() const {
        if (eps_ln2) {
            ldpp::Rational t = 1;
            for (std::uint64_t i = 0; i < *eps_ln2; ++i) t *= 2;
            return ldpp::PrivacyParameter(t);
        }
        if (t_text.empty()) throw std::invalid_argument("--t (or --eps-ln2-multiple) is required");
        return ldpp::PrivacyParameter(ldpp::parse_rational(t_text));
    }
};

// Exactly one of --t / --eps-ln2-multiple must be given; resolve() enforces
// the "at least one" half so the flags can stay individually optional.
void add_t_flags(CLI::App* cmd, TFlags& flags) {
    auto* t_opt = cmd->add_option("--t", flags.t_text,
                                  "privacy parameter t = e^eps as an exact rational, e.g. 2 or 3/2");
    auto* e_opt = cmd->add_option("--eps-ln2-multiple", flags.eps_ln2,
                                  "set t = 2^k, i.e. eps = k*ln 2, for integer k >= 0");
    t_opt->excludes(e_opt);
    e_opt->excludes(t_opt);
}

int report_violations(const ldpp::MembershipResult& res, const ldpp::ConstraintSystem& sys) {
    std::cout << "Violation: " << res.violated.size() << " constraint(s)\n";
    for (std::size_t idx : res.violated)
        std::cout << "  [" << idx << "] " << sys[idx].describe() << "\n";
    return 1;
}

int cmd_check(const std::string& input) {
    const ldpp::MatrixFile f = ldpp::parse_matrix_file(read_file(input));
    const ldpp::ConstraintSystem sys(f.n, ldpp::PrivacyParameter(f.t));
    const auto res = ldpp::membership(f.matrix, sys);
    if (res.in_d) {
        std::cout << "InD\n";
        return 0;
    }
    return report_violations(res, sys);
}

int cmd_analyze(const std::string& input, const std::string& output) {
    const ldpp::MatrixFile f = ldpp::parse_matrix_file(read_file(input));
    const ldpp::ConstraintSystem sys(f.n, ldpp::PrivacyParameter(f.t));
    const auto res = ldpp::membership(f.matrix, sys);
    if (!res.in_d) return report_violations(res, sys);
    const ldpp::AnalysisReport rep = ldpp::analyze(ldpp::Mechanism(f.matrix), sys);
    emit_json(ldpp::analysis_to_json(rep, f.n, f.t), output);
    return 0;
}

std::string vertex_set_to_csv(const ldpp::VertexSet& v) {
    std::ostringstream os;
    os << "provenance";
    for (std::size_t i = 0; i < v.n(); ++i)
        for (std::size_t j = 0; j < v.n(); ++j) os << ",a" << i + 1 << j + 1;
    os << "\n";
    for (std::size_t k = 0; k < v.size(); ++k) {
        os << (v.provenance(k) == ldpp::Provenance::Generator ? "Generator" : "Oracle");
        for (std::size_t i = 0; i < v.n(); ++i)
            for (std::size_t j = 0; j < v.n(); ++j) os << "," << ldpp::to_string(v[k].mat()(i, j));
        os << "\n";
    }
    return os.str();
}

int cmd_enumerate(std::size_t n, const ldpp::PrivacyParameter& t, const std::string& mode,
                  bool canonical, std::optional<std::uint64_t> budget, const std::string& format,
                  const std::string& output) {
    ldpp::VertexSet verts(n, t.t());
    bool complete = true;
    std::uint64_t bases = 0;
    if (mode == "generator") {
        verts = ldpp::generated_extreme_points(n, t);
    } else if (mode == "oracle") {
        ldpp::OracleResult res = ldpp::vertex_oracle(n, t, budget);
        verts = std::move(res.vertices);
        complete = res.complete;
        bases = res.bases_examined;
    } else {
        throw std::invalid_argument("--mode must be 'generator' or 'oracle'");
    }

    if (canonical) {
        ldpp::VertexSet reduced(n, t.t());
        for (std::size_t i = 0; i < verts.size(); ++i)
            reduced.insert(ldpp::canonical_form(verts[i]), verts.provenance(i));
        verts = std::move(reduced);
    }

    if (format == "csv")
        emit(vertex_set_to_csv(verts), output);
    else
        emit_json(ldpp::vertex_set_to_json(verts, mode, canonical, complete, bases), output);
    return 0;
}

int cmd_verify(std::size_t n, const ldpp::PrivacyParameter& t, const std::string& witness_path,
               std::uint64_t seed, const std::string& output) {
    ldpp::VerifyOptions opts;
    opts.seed = seed;
    if (!witness_path.empty()) {
        const ldpp::MatrixFile f = ldpp::parse_matrix_file(read_file(witness_path));
        if (f.n != n) throw std::invalid_argument("witness n does not match --n");
        if (f.t != t.t()) throw std::invalid_argument("witness t does not match --t");
        opts.witness = f.matrix;
    }

    std::vector<ldpp::CheckResult> results;
    if (n <= 4) {
        results = ldpp::run_verification_suite(n, t, opts);
    } else if (opts.witness) {
        const ldpp::ConstraintSystem sys(n, t);
        results = ldpp::check_witness_outside_families(*opts.witness, sys);
    } else {
        throw std::invalid_argument("verify: n > 4 requires a witness --input");
    }

    bool all = true;
    for (const auto& r : results) {
        all = all && r.pass;
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " (checked " << r.checked
                  << ")";
        if (!r.detail.empty()) std::cout << ": " << r.detail;
        std::cout << "\n";
    }
    std::cout << (all ? "all checks passed" : "some checks FAILED") << "\n";
    if (!output.empty()) emit_json(ldpp::check_results_to_json(results, n, t.t()), output);
    return all ? 0 : 1;
}

int cmd_optimize(std::size_t n, const ldpp::PrivacyParameter& t, const std::string& input,
                 const std::string& mode, const std::string& output) {
    const auto [un, utility] = ldpp::parse_utility_file(read_file(input));
    if (un != n) throw std::invalid_argument("utility n does not match --n");
    const ldpp::ConstraintSystem sys(n, t);

    ldpp::OptimizationResult res = [&] {
        if (mode == "simplex") return ldpp::simplex_optimize(utility, sys);
        if (mode != "scan") throw std::invalid_argument("--mode must be 'simplex' or 'scan'");
        if (n <= 3) {
            ldpp::OracleResult oracle = ldpp::vertex_oracle(n, t);
            return ldpp::optimize_over_vertices(utility, oracle.vertices);
        }
        return ldpp::optimize_over_vertices(utility, ldpp::generated_extreme_points(n, t));
    }();

    Json j = ldpp::optimization_to_json(res, n, t.t());
    if (mode == "scan")
        j["vertexSource"] = n <= 3 ? "oracle (complete)"
                                   : "generators (complete for n = 4 only if the tight-family "
                                     "conjecture holds; a lower bound for n >= 5)";
    emit_json(j, output);
    return 0;
}

int cmd_probe(std::size_t n, const ldpp::PrivacyParameter& t, std::uint64_t trials,
              std::uint64_t seed, const std::string& output) {
    const ldpp::ProbeReport rep = ldpp::conjecture_probe(n, t, trials, seed);
    emit_json(ldpp::probe_to_json(rep), output);
    const std::filesystem::path base =
        output.empty() ? std::filesystem::path("probe") : std::filesystem::path(output);
    for (const auto& p : ldpp::write_probe_counter_files(rep, base))
        std::cerr << "counterexample candidate written to " << p.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic toolkit for the local differential privacy polytope"};
    app.require_subcommand(1);

    std::string input, output, enum_mode = "generator", opt_mode = "simplex",
        format = "json";
    std::size_t n = 0;
    std::uint64_t seed = 1, trials = 100;
    std::optional<std::uint64_t> budget;
    bool canonical = false;
    TFlags tflags;

    auto* check = app.add_subcommand("check", "test membership of a matrix file in the polytope");
    check->add_option("--input", input, "matrix file (ldpp-matrix/1)")->required();

    auto* analyze = app.add_subcommand("analyze", "structural report for a member matrix");
    analyze->add_option("--input", input, "matrix file (ldpp-matrix/1)")->required();
    analyze->add_option("--output", output, "write the JSON report here instead of stdout");

    auto* enumerate = app.add_subcommand("enumerate", "list extreme points");
    enumerate->add_option("--n", n, "matrix dimension")->required();
    add_t_flags(enumerate, tflags);
    enumerate->add_option("--mode", enum_mode,
                          "'generator' (families) or 'oracle' (brute force)")
        ->capture_default_str();
    enumerate->add_flag("--canonical", canonical, "emit one representative per permutation orbit");
    enumerate->add_option("--budget", budget, "basis budget for the n = 4 oracle");
    enumerate->add_option("--format", format, "'json' or 'csv'")->capture_default_str();
    enumerate->add_option("--output", output, "write here instead of stdout");

    auto* verify = app.add_subcommand("verify", "run the structural check suite");
    verify->add_option("--n", n, "matrix dimension")->required();
    add_t_flags(verify, tflags);
    verify->add_option("--input", input, "witness matrix file (required for n > 4)");
    verify->add_option("--seed", seed, "seed for sampled permutations and midpoints")
        ->capture_default_str();
    verify->add_option("--output", output, "also write a JSON report here");

    auto* optimize = app.add_subcommand("optimize", "maximize a linear utility over the polytope");
    optimize->add_option("--n", n, "matrix dimension")->required();
    add_t_flags(optimize, tflags);
    optimize->add_option("--input", input, "utility file (ldpp-utility/1)")->required();
    optimize->add_option("--mode", opt_mode, "'simplex' (exact LP) or 'scan' (vertex scan)")
        ->capture_default_str();
    optimize->add_option("--output", output, "write here instead of stdout");

    auto* probe = app.add_subcommand("probe", "random-objective probe for family coverage");
    probe->add_option("--n", n, "matrix dimension")->required();
    add_t_flags(probe, tflags);
    probe->add_option("--trials", trials, "number of seeded trials")->capture_default_str();
    probe->add_option("--seed", seed, "base seed")->capture_default_str();
    probe->add_option("--output", output, "write the report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the usage message; flag misuse is an input error
        return 2;
    }

    try {
        if (app.got_subcommand(check)) return cmd_check(input);
        if (app.got_subcommand(analyze)) return cmd_analyze(input, output);
        if (app.got_subcommand(enumerate))
            return cmd_enumerate(n, tflags.resolve(), enum_mode, canonical, budget, format, output);
        if (app.got_subcommand(verify)) return cmd_verify(n, tflags.resolve(), input, seed, output);
        if (app.got_subcommand(optimize))
            return cmd_optimize(n, tflags.resolve(), input, opt_mode, output);
        if (app.got_subcommand(probe))
            return cmd_probe(n, tflags.resolve(), trials, seed, output);
    } catch (const Json::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
