#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "orthoinv/form.hpp"
#include "orthoinv/invariants.hpp"
#include "orthoinv/oracle.hpp"
#include "orthoinv/reports.hpp"
#include "orthoinv/slice.hpp"

namespace orthoinv::cli {

// Exit codes: 0 success (possibly with warnings), 2 usage/parse errors,
// 3 guard violations, 4 oracle violations.
constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kGuard = 3;
constexpr int kOracle = 4;

struct RunConfig {
    std::string mode = "auto";      // auto | exact | float
    std::string variant = "default"; // default | paper-literal
    double atol = 1e-9;
    double rtol = 1e-6;
    uint64_t seed = 42;
    std::string out;                // empty: stdout
    int trials = 100;

    InvariantVariant invariant_variant() const { return InvariantVariant::from_name(variant); }
};

namespace detail {

inline ParsedForm load_form(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return parse_form(in);
}

inline ParsedForm apply_mode(ParsedForm form, const std::string& mode) {
    if (mode == "auto") return form;
    if (mode == "float") {
        if (std::holds_alternative<Form<Rational>>(form))
            return to_float(std::get<Form<Rational>>(form));
        return form;
    }
    if (mode == "exact") {
        if (std::holds_alternative<Form<double>>(form))
            throw ParseError("--mode exact requested but the input has float coefficients");
        return form;
    }
    throw ParseError("unknown mode '" + mode + "' (expected auto | exact | float)");
}

inline int form_vars(const ParsedForm& f) {
    return std::visit([](auto& form) { return form.n(); }, f);
}
inline int form_degree(const ParsedForm& f) {
    return std::visit([](auto& form) { return form.degree(); }, f);
}

inline void check_form_domain(const ParsedForm& f) {
    int degree = form_degree(f);
    if (degree % 2 != 0) throw ParseError("even degree required");
    require_slice_domain(form_vars(f), degree, "input form");
}

/// One form through the pipeline: exact slice elements get the exact
/// fingerprint, everything else goes through the floating move-to-slice.
struct PipelineResult {
    bool exact = false;
    Fingerprint<Rational> exact_fp; // valid when exact
    Fingerprint<double> float_fp;   // always valid (exact is converted down)
    GenericityReport genericity;

    bool non_generic() const {
        return genericity.degenerate || (exact ? !exact_fp.flags.empty() : !float_fp.flags.empty());
    }
    const std::vector<GenericityFlag>& flags() const {
        return exact ? exact_fp.flags : float_fp.flags;
    }
};

inline GenericityReport gap_report_from_eigenvalues(std::vector<double> values) {
    std::sort(values.begin(), values.end(), std::greater<double>());
    GenericityReport report;
    report.eigen_gap = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < values.size(); ++i)
        report.eigen_gap = std::min(report.eigen_gap, values[i] - values[i + 1]);
    if (report.eigen_gap < kEigenGapTol) {
        report.degenerate = true;
        report.warning = "non-generic: repeated eigenvalues; invariants may not separate";
    }
    return report;
}

inline PipelineResult run_pipeline(const ParsedForm& parsed, const InvariantVariant& variant) {
    PipelineResult out;
    if (std::holds_alternative<Form<Rational>>(parsed)) {
        const auto& f = std::get<Form<Rational>>(parsed);
        if (is_in_slice(f).in_slice) {
            SliceCoordinates<Rational> c = coordinates(f);
            out.exact = true;
            out.exact_fp = fingerprint(c, variant);
            out.float_fp = to_float(out.exact_fp);
            std::vector<double> eigenvalues;
            for (auto& v : c.c_point) eigenvalues.push_back(to_double(v));
            out.genericity = gap_report_from_eigenvalues(std::move(eigenvalues));
            return out;
        }
        SliceMove move = move_to_slice(to_float(f));
        out.float_fp = fingerprint(coordinates(move.slice_form), variant);
        out.genericity = move.genericity;
        return out;
    }
    SliceMove move = move_to_slice(std::get<Form<double>>(parsed));
    out.float_fp = fingerprint(coordinates(move.slice_form), variant);
    out.genericity = move.genericity;
    return out;
}

inline Json pipeline_json(const PipelineResult& r) {
    Json doc = r.exact ? fingerprint_json(r.exact_fp) : fingerprint_json(r.float_fp);
    Json gen;
    gen["eigen_gap"] = r.genericity.eigen_gap;
    gen["non_generic"] = r.non_generic();
    if (!r.genericity.warning.empty()) gen["warning"] = r.genericity.warning;
    doc["genericity"] = std::move(gen);
    return doc;
}

inline void emit(const Json& doc, const std::string& out_path, std::ostream& out) {
    std::string text = doc.dump(2);
    text += "\n";
    if (out_path.empty()) {
        out << text;
    } else {
        std::ofstream file(out_path);
        if (!file) throw ParseError("cannot write '" + out_path + "'");
        file << text;
    }
}

template <class S>
void write_labeled_form(std::ostream& out, const std::string& label, const Form<S>& f) {
    out << "# " << label << "\n";
    write_form(out, f);
    out << "\n";
}

} // namespace detail

inline int cmd_fingerprint(const std::string& path, const RunConfig& config, std::ostream& out) {
    ParsedForm form = detail::apply_mode(detail::load_form(path), config.mode);
    detail::check_form_domain(form);
    detail::PipelineResult result = detail::run_pipeline(form, config.invariant_variant());
    Json doc;
    doc["command"] = "fingerprint";
    doc["input"] = path;
    doc["fingerprint"] = detail::pipeline_json(result);
    detail::emit(doc, config.out, out);
    return kOk;
}

inline int cmd_equivalent(const std::string& path_a, const std::string& path_b,
                          const RunConfig& config, std::ostream& out) {
    ParsedForm a = detail::apply_mode(detail::load_form(path_a), config.mode);
    ParsedForm b = detail::apply_mode(detail::load_form(path_b), config.mode);
    if (detail::form_vars(a) != detail::form_vars(b) ||
        detail::form_degree(a) != detail::form_degree(b))
        throw ParseError("shape mismatch: (" + std::to_string(detail::form_vars(a)) + ", " +
                         std::to_string(detail::form_degree(a)) + ") vs (" +
                         std::to_string(detail::form_vars(b)) + ", " +
                         std::to_string(detail::form_degree(b)) + ")");
    detail::check_form_domain(a);

    InvariantVariant variant = config.invariant_variant();
    detail::PipelineResult ra = detail::run_pipeline(a, variant);
    detail::PipelineResult rb = detail::run_pipeline(b, variant);

    FingerprintComparison cmp =
        compare_fingerprints(ra.float_fp, rb.float_fp, config.atol, config.rtol);
    std::string verdict;
    if (ra.non_generic() || rb.non_generic())
        verdict = "inconclusive(non-generic)";
    else if (cmp.equal)
        verdict = "equivalent(generic)";
    else
        verdict = "distinct";

    Json doc;
    doc["command"] = "equivalent";
    doc["input_a"] = path_a;
    doc["input_b"] = path_b;
    doc["verdict"] = verdict;
    doc["max_abs_discrepancy"] = cmp.max_abs;
    doc["max_rel_discrepancy"] = cmp.max_rel;
    doc["atol"] = config.atol;
    doc["rtol"] = config.rtol;
    doc["fingerprint_a"] = detail::pipeline_json(ra);
    doc["fingerprint_b"] = detail::pipeline_json(rb);
    detail::emit(doc, config.out, out);
    return kOk;
}

inline int cmd_basis(int n, int two_d, const RunConfig& config, std::ostream& out) {
    auto basis = basis_cache(n, two_d);
    std::ostringstream text;
    text << "# orthoinv basis for n=" << n << " degree=" << two_d << "\n";
    text << "# blocks: point (m_i), pair (m_ij, i<j), W2 (m_mu)\n\n";
    for (int i = 0; i < n; ++i)
        detail::write_labeled_form(text, "m_" + std::to_string(i + 1),
                                   basis->m_point[static_cast<size_t>(i)]);
    for (int p = 0; p < basis->index->pair_count(); ++p) {
        auto [i, j] = basis->index->pair_at(p);
        detail::write_labeled_form(
            text, "m_" + std::to_string(i + 1) + "," + std::to_string(j + 1),
            basis->m_pair[static_cast<size_t>(p)]);
    }
    for (int k = 0; k < basis->index->w2_count(); ++k)
        detail::write_labeled_form(text, "m_mu mu=" + basis->index->w2()[static_cast<size_t>(k)].to_string(),
                                   basis->m_mu[static_cast<size_t>(k)]);

    if (config.out.empty()) {
        out << text.str();
    } else {
        std::ofstream file(config.out);
        if (!file) throw ParseError("cannot write '" + config.out + "'");
        file << text.str();
        Json summary;
        summary["command"] = "basis";
        summary["n"] = n;
        summary["degree"] = two_d;
        summary["count"] = basis->dimension();
        summary["out"] = config.out;
        out << summary.dump(2) << "\n";
    }
    return kOk;
}

inline int cmd_generators(int n, int two_d, const RunConfig& config, std::ostream& out) {
    GeneratorSet set = emit_generators(n, two_d, config.invariant_variant());
    std::ostringstream text;
    text << "# orthoinv generators for n=" << n << " degree=" << two_d
         << " variant=" << set.variant.name() << "\n";
    text << "# polynomials in the dual coordinates, variable layout:\n";
    int var = 0;
    for (int i = 0; i < n; ++i) text << "#   var " << ++var << ": c_" << i + 1 << "\n";
    for (int p = 0; p < set.index->pair_count(); ++p) {
        auto [i, j] = set.index->pair_at(p);
        text << "#   var " << ++var << ": c_" << i + 1 << "," << j + 1 << "\n";
    }
    for (auto& mu : set.index->w2()) text << "#   var " << ++var << ": c_mu mu=" << mu.to_string() << "\n";
    text << "\n";
    for (auto& g : set.generators) detail::write_labeled_form(text, g.name, g.poly);

    Json summary;
    summary["command"] = "generators";
    summary["n"] = n;
    summary["degree"] = two_d;
    summary["variant"] = set.variant.name();
    summary["count"] = set.generators.size();
    summary["closed_form_count"] = set.closed_form_count();
    summary["note"] = "the closed-form count binom(n+2d-1,2d) - binom(n-1,2) undercounts the "
                      "enumerated generating set by one; see README";

    if (config.out.empty()) {
        out << text.str();
        out << summary.dump(2) << "\n";
    } else {
        std::ofstream file(config.out);
        if (!file) throw ParseError("cannot write '" + config.out + "'");
        file << text.str();
        summary["out"] = config.out;
        out << summary.dump(2) << "\n";
    }
    return kOk;
}

inline int cmd_oracle(int n, int two_d, bool with_graph_demo, const RunConfig& config,
                      std::ostream& out) {
    InvariantVariant variant = config.invariant_variant();
    Json doc;
    doc["command"] = "oracle";
    doc["n"] = n;
    doc["degree"] = two_d;
    doc["variant"] = variant.name();
    doc["seed"] = config.seed;
    doc["trials"] = config.trials;

    long long violations = 0;
    if (n > kMaxExactSweep && !with_graph_demo)
        throw GuardError("oracle: full sweeps limited to n <= " + std::to_string(kMaxExactSweep) +
                         " (use --graph-demo for the 6-vertex W1 demonstration)");
    if (n <= kMaxExactSweep) {
        require_slice_domain(n, two_d, "oracle");
        InvarianceReport inv =
            invariance_sweep(n, two_d, std::max(0, config.trials / 2), config.seed, variant);
        SeparationReport sep = separation_experiment(n, two_d, config.trials, config.seed, variant);
        doc["invariance"] = invariance_json(inv);
        doc["separation"] = separation_json(sep);
        violations += static_cast<long long>(inv.violations.size());
        violations += static_cast<long long>(sep.failures.size());
    }
    if (with_graph_demo) {
        GraphDemoReport demo = graph_demo();
        doc["graph_demo"] = graph_demo_json(demo);
        if (!demo.w1_values_equal || demo.isomorphic) ++violations;
    }
    doc["violations"] = violations;
    detail::emit(doc, config.out, out);
    return violations == 0 ? kOk : kOracle;
}

/// Front end; args exclude the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"rational invariants of even-degree forms under the orthogonal group"};
    app.name("orthoinv");
    app.require_subcommand(1);

    RunConfig config;
    auto add_common = [&](CLI::App* cmd, bool tolerances) {
        cmd->add_option("--variant", config.variant, "invariant variant")
            ->check(CLI::IsMember({"default", "paper-literal"}))
            ->capture_default_str();
        cmd->add_option("--out", config.out, "output file (default: stdout)");
        if (tolerances) {
            cmd->add_option("--atol", config.atol, "absolute tolerance")
                ->envname("ORTHOINV_ATOL")
                ->capture_default_str();
            cmd->add_option("--rtol", config.rtol, "relative tolerance")
                ->envname("ORTHOINV_RTOL")
                ->capture_default_str();
        }
    };

    std::string path_a, path_b;
    int n = 0, two_d = 0;
    bool graph_demo_flag = false;

    CLI::App* fp = app.add_subcommand("fingerprint", "evaluate the invariant fingerprint of a form");
    fp->add_option("form", path_a, "form file")->required();
    fp->add_option("--mode", config.mode, "coefficient mode")
        ->check(CLI::IsMember({"auto", "exact", "float"}))
        ->capture_default_str();
    add_common(fp, true);

    CLI::App* eq = app.add_subcommand("equivalent", "decide generic O(n)-equivalence of two forms");
    eq->add_option("form_a", path_a, "first form file")->required();
    eq->add_option("form_b", path_b, "second form file")->required();
    eq->add_option("--mode", config.mode, "coefficient mode")
        ->check(CLI::IsMember({"auto", "exact", "float"}))
        ->capture_default_str();
    add_common(eq, true);

    CLI::App* ba = app.add_subcommand("basis", "emit the equivariant slice basis");
    ba->add_option("n", n, "number of variables")->required();
    ba->add_option("degree", two_d, "form degree (even, >= 4)")->required();
    add_common(ba, false);

    CLI::App* ge = app.add_subcommand("generators", "emit the generating invariants as polynomials");
    ge->add_option("n", n, "number of variables")->required();
    ge->add_option("degree", two_d, "form degree (even, >= 4)")->required();
    add_common(ge, false);

    CLI::App* orc = app.add_subcommand("oracle", "run brute-force verification sweeps");
    orc->add_option("n", n, "number of variables")->required();
    orc->add_option("degree", two_d, "form degree (even, >= 4)")->required();
    orc->add_option("--trials", config.trials, "separation trials")->capture_default_str();
    orc->add_option("--seed", config.seed, "PRNG seed")->capture_default_str();
    orc->add_flag("--graph-demo", graph_demo_flag, "include the K_3,3 vs prism demonstration");
    add_common(orc, false);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (fp->parsed()) return cmd_fingerprint(path_a, config, out);
        if (eq->parsed()) return cmd_equivalent(path_a, path_b, config, out);
        if (ba->parsed()) return cmd_basis(n, two_d, config, out);
        if (ge->parsed()) return cmd_generators(n, two_d, config, out);
        if (orc->parsed()) return cmd_oracle(n, two_d, graph_demo_flag, config, out);
    } catch (const GuardError& e) {
        err << "guard violation: " << e.what() << "\n";
        return kGuard;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    err << "error: no subcommand\n";
    return kUsage;
}

} // namespace orthoinv::cli
