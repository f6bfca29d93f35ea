#include "qtcs/commands.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "qtcs/brute.hpp"
#include "qtcs/facts.hpp"
#include "qtcs/normal_form.hpp"
#include "qtcs/poly.hpp"
#include "qtcs/qcsp.hpp"

namespace qtcs {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string tuple_text(const std::vector<Rational>& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ", ";
        s += t[i].str();
    }
    return s + ")";
}

std::string order_text(const WeakOrder& w) {
    std::string s = "(";
    for (int i = 0; i < w.arity(); ++i) {
        if (i) s += ",";
        s += std::to_string(w.rank(i));
    }
    return s + ")";
}

struct NamedRelation {
    TemporalRelation rel;
    std::vector<std::string> params;
};

NamedRelation load_relation(const std::string& path, const std::string& rel_name) {
    const ParsedFile file = parse_file(read_file(path));
    const RelDecl* decl = file.find(rel_name);
    if (!decl) throw std::runtime_error("relation '" + rel_name + "' not declared in " + path);
    return {decl->rel, decl->params};
}

}  // namespace

int cmd_check_poly(const std::string& path, const std::string& rel_name,
                   const std::string& op_name, const OutputOpts& opts, std::ostream& out,
                   std::ostream& err) {
    try {
        const auto op = binop_from_name(op_name);
        if (!op) {
            err << "unknown operation '" << op_name
                << "' (expected min, max, mx, dual-mx, pp, dual-pp)\n";
            return kExitError;
        }
        const NamedRelation named = load_relation(path, rel_name);
        const PreservationReport report = preserves(*op, named.rel);
        if (report.closed) {
            if (opts.structured)
                out << "relation=" << rel_name << "\nop=" << op_name << "\nclosed=yes\n";
            else
                out << "CLOSED\n";
            return kExitOk;
        }
        const auto& ce = *report.counterexample;
        const auto [t1, t2] = pattern_tuples(ce.pattern);
        if (opts.structured) {
            out << "relation=" << rel_name << "\nop=" << op_name << "\nclosed=no\n"
                << "t1=" << tuple_text(t1) << "\nt2=" << tuple_text(t2)
                << "\nimage=" << order_text(ce.image) << "\n";
        } else {
            out << "NOT CLOSED\n";
            out << "t1    = " << tuple_text(t1) << "  (orbit " << order_text(ce.p) << ")\n";
            out << "t2    = " << tuple_text(t2) << "  (orbit " << order_text(ce.q) << ")\n";
            out << "image = orbit " << order_text(ce.image) << ", not in " << rel_name << "\n";
        }
        return kExitNegative;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

int cmd_normalize(const std::string& path, const std::string& rel_name,
                  const std::string& form, const OutputOpts& opts, std::ostream& out,
                  std::ostream& err) {
    try {
        const NamedRelation named = load_relation(path, rel_name);
        std::string printed;
        bool closed = false;
        if (form == "min") {
            if (const auto clauses = min_clause_form(named.rel)) {
                closed = true;
                printed = print_clauses(std::span<const MinClause>(*clauses), named.params);
            }
        } else if (form == "pp") {
            if (const auto clauses = pp_clause_form(named.rel)) {
                closed = true;
                printed = print_clauses(std::span<const PPClause>(*clauses), named.params);
            }
        } else if (form == "mxaffine") {
            if (const auto forms = min_affine_form(named.rel)) {
                closed = true;
                for (const MinAffineForm& f : *forms)
                    printed += "# " + scope_summary(f, named.params) + "\n";
                printed += print_forms(std::span<const MinAffineForm>(*forms), named.params);
            }
        } else {
            err << "unknown form '" << form << "' (expected min, pp, mxaffine)\n";
            return kExitError;
        }
        if (!closed) {
            if (opts.structured)
                out << "relation=" << rel_name << "\nform=" << form << "\nclosed=no\n";
            else
                out << "NOT CLOSED\n";
            return kExitNegative;
        }
        if (opts.structured) {
            out << "relation=" << rel_name << "\nform=" << form << "\nclosed=yes\n";
            std::istringstream lines(printed);
            std::string line;
            while (std::getline(lines, line)) {
                if (!line.empty() && line.front() != '#') out << "formula=" << line << "\n";
            }
        } else {
            out << printed << "\n";
        }
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

namespace {

int solve_csp_command(const Instance& inst, Engine engine, const OutputOpts& opts,
                      std::ostream& out) {
    std::optional<LayeredSolution> solution;
    if (engine == Engine::Brute) {
        const auto order = brute_csp(static_cast<int>(inst.vars.size()), inst.constraints);
        if (order) {
            LayeredSolution sol;
            sol.values.reserve(order->ranks().size());
            sol.layers.resize(static_cast<std::size_t>(order->levels()));
            for (int v = 0; v < order->arity(); ++v) {
                sol.values.emplace_back(order->rank(v));
                sol.layers[static_cast<std::size_t>(order->rank(v))].push_back(v);
            }
            solution = std::move(sol);
        }
    } else {
        if (engine == Engine::Auto) engine = pick_engine(inst.constraints);
        const int n = static_cast<int>(inst.vars.size());
        if (engine == Engine::Min) {
            auto csp = to_min_csp(n, inst.constraints);
            if (!csp) throw UnsupportedLanguage("some constraint relation is not min-closed");
            solution = solve_min_csp(*csp);
        } else {
            auto csp = to_mx_csp(n, inst.constraints);
            if (!csp) throw UnsupportedLanguage("some constraint relation is not mx-closed");
            solution = solve_mx_csp(*csp);
        }
    }
    if (!solution) {
        out << (opts.structured ? "verdict=UNSAT" : "UNSAT") << "\n";
        return kExitNegative;
    }
    if (opts.structured) {
        out << "verdict=SAT\n";
        for (const auto& [name, value] : assignment_of(*solution, inst.vars))
            out << "assign." << name << "=" << value.str() << "\n";
    } else {
        out << "SAT\n";
        for (const auto& [name, value] : assignment_of(*solution, inst.vars))
            out << name << " = " << value.str() << "\n";
    }
    return kExitOk;
}

int solve_qcsp_command(const Instance& inst, Engine engine, const OutputOpts& opts,
                       std::ostream& out) {
    const QcspResult result = solve_qcsp(inst, engine);
    if (opts.structured) {
        out << "verdict=" << (result.value ? "TRUE" : "FALSE") << "\n";
        if (opts.trace) {
            for (const LevelTrace& t : result.trace) {
                out << "trace.level=" << t.level << " sat=" << (t.sat ? "YES" : "NO")
                    << " w=" << t.witness_levels << " regions=" << t.regions
                    << " forall=" << (t.forall_ok ? "OK" : "FAIL")
                    << " failing_region=" << t.failing_region << "\n";
            }
        }
    } else {
        if (opts.trace) {
            for (const LevelTrace& t : result.trace) out << trace_line(t) << "\n";
        }
        out << (result.value ? "TRUE" : "FALSE") << "\n";
    }
    return result.value ? kExitOk : kExitNegative;
}

}  // namespace

int cmd_solve(const std::string& path, Engine engine, const OutputOpts& opts,
              std::ostream& out, std::ostream& err) {
    try {
        const Instance inst = parse_instance(read_file(path));
        if (inst.kind == InstanceKind::Csp)
            return solve_csp_command(inst, engine, opts, out);
        return solve_qcsp_command(inst, engine, opts, out);
    } catch (const UnsupportedLanguage& e) {
        err << "unsupported constraint language: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

int cmd_fuzz(const FuzzConfig& config, const OutputOpts& opts, std::ostream& out,
             std::ostream& err) {
    try {
        const FuzzReport report = run_fuzz(config);
        if (opts.structured) {
            out << "mode=" << fuzz_mode_name(config.mode) << "\nseed=" << config.seed
                << "\ntrials=" << report.trials << "\nagree=" << report.agree << "\n";
            for (const FuzzMismatch& m : report.mismatches)
                out << "mismatch.trial=" << m.trial << " seed=" << m.seed << " detail="
                    << m.detail << "\n";
        } else {
            for (const FuzzMismatch& m : report.mismatches)
                out << "mismatch at trial " << m.trial << " (replay with --seed " << m.seed
                    << " --trials 1): " << m.detail << "\n";
            out << report.agree << "/" << report.trials << " agree\n";
        }
        return report.mismatches.empty() ? kExitOk : kExitNegative;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

int cmd_paper_facts(const std::string& filter, const std::string& corrupt,
                    const OutputOpts& opts, std::ostream& out, std::ostream& err) {
    try {
        FactOptions options;
        options.filter = filter;
        options.corrupt = corrupt;
        const std::vector<FactResult> results = run_fact_suite(options);
        int passed = 0;
        for (const FactResult& r : results) {
            if (r.pass) ++passed;
            if (opts.structured) {
                out << "fact=" << r.name << " pass=" << (r.pass ? "yes" : "no") << "\n";
            } else {
                out << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
                if (!r.pass && !r.detail.empty()) out << "  (" << r.detail << ")";
                out << "\n";
            }
        }
        if (opts.structured)
            out << "total=" << results.size() << " passed=" << passed << "\n";
        else
            out << passed << "/" << results.size() << " facts pass\n";
        return passed == static_cast<int>(results.size()) ? kExitOk : kExitNegative;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace qtcs
