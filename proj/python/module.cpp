#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qtcs/brute.hpp"
#include "qtcs/formula.hpp"
#include "qtcs/fuzz.hpp"
#include "qtcs/normal_form.hpp"
#include "qtcs/poly.hpp"
#include "qtcs/qcsp.hpp"

namespace py = pybind11;
using namespace qtcs;

namespace {

std::vector<int> order_ranks(const WeakOrder& w) { return w.ranks(); }

TemporalRelation relation_from_formula(const std::string& text,
                                       const std::optional<std::vector<std::string>>& vars) {
    const Formula f = parse_formula(text);
    return vars ? relation_of_formula(f, *vars) : relation_of_formula(f);
}

BinOp op_or_throw(const std::string& name) {
    const auto op = binop_from_name(name);
    if (!op) throw std::invalid_argument("unknown operation '" + name + "'");
    return *op;
}

Engine engine_or_throw(const std::string& name) {
    const auto e = engine_from_name(name);
    if (!e) throw std::invalid_argument("unknown engine '" + name + "'");
    return *e;
}

py::dict solve_text(const std::string& text, const std::string& engine) {
    const Instance inst = parse_instance(text);
    const Engine e = engine_or_throw(engine);
    py::dict out;
    if (inst.kind == InstanceKind::Qcsp) {
        out["kind"] = "qcsp";
        const QcspResult r = solve_qcsp(inst, e);
        out["value"] = r.value;
        py::list trace;
        for (const LevelTrace& t : r.trace) trace.append(trace_line(t));
        out["trace"] = trace;
        return out;
    }
    out["kind"] = "csp";
    std::optional<LayeredSolution> sol;
    if (e == Engine::Brute) {
        if (const auto w = brute_csp(static_cast<int>(inst.vars.size()), inst.constraints)) {
            LayeredSolution s;
            for (int v = 0; v < w->arity(); ++v) s.values.emplace_back(w->rank(v));
            sol = std::move(s);
        }
    } else {
        Engine picked = e == Engine::Auto ? pick_engine(inst.constraints) : e;
        const int n = static_cast<int>(inst.vars.size());
        if (picked == Engine::Min) {
            const auto csp = to_min_csp(n, inst.constraints);
            if (!csp) throw UnsupportedLanguage("not a min-closed instance");
            sol = solve_min_csp(*csp);
        } else {
            const auto csp = to_mx_csp(n, inst.constraints);
            if (!csp) throw UnsupportedLanguage("not an mx-closed instance");
            sol = solve_mx_csp(*csp);
        }
    }
    out["value"] = sol.has_value();
    if (sol) {
        py::dict assign;
        for (std::size_t i = 0; i < inst.vars.size(); ++i)
            assign[py::str(inst.vars[i])] = sol->values[i].str();
        out["assignment"] = assign;
    }
    return out;
}

std::optional<std::string> normal_form_text(const TemporalRelation& rel,
                                            const std::string& form,
                                            const std::vector<std::string>& vars) {
    if (form == "min") {
        const auto clauses = min_clause_form(rel);
        if (!clauses) return std::nullopt;
        return print_clauses(std::span<const MinClause>(*clauses), vars);
    }
    if (form == "pp") {
        const auto clauses = pp_clause_form(rel);
        if (!clauses) return std::nullopt;
        return print_clauses(std::span<const PPClause>(*clauses), vars);
    }
    if (form == "mxaffine") {
        const auto forms = min_affine_form(rel);
        if (!forms) return std::nullopt;
        return print_forms(std::span<const MinAffineForm>(*forms), vars);
    }
    throw std::invalid_argument("unknown form '" + form + "' (min, pp, mxaffine)");
}

}  // namespace

PYBIND11_MODULE(qtcs, m) {
    m.doc() = "Temporal constraint solving over the dense linear order";

    py::class_<WeakOrder>(m, "WeakOrder")
        .def(py::init<std::vector<int>>())
        .def_property_readonly("ranks", &order_ranks)
        .def_property_readonly("arity", &WeakOrder::arity)
        .def_property_readonly("levels", &WeakOrder::levels)
        .def("__eq__", [](const WeakOrder& a, const WeakOrder& b) { return a == b; })
        .def("__repr__", [](const WeakOrder& w) {
            std::ostringstream s;
            s << "WeakOrder([";
            for (int i = 0; i < w.arity(); ++i) s << (i ? "," : "") << w.rank(i);
            s << "])";
            return s.str();
        });

    py::class_<TemporalRelation>(m, "Relation")
        .def_property_readonly("arity", &TemporalRelation::arity)
        .def_property_readonly("orbits",
                               [](const TemporalRelation& r) {
                                   std::vector<std::vector<int>> out;
                                   for (const WeakOrder& w : r.orbits()) out.push_back(w.ranks());
                                   return out;
                               })
        .def("contains", [](const TemporalRelation& r, const std::vector<int>& ranks) {
            return r.contains(WeakOrder(ranks));
        })
        .def("dualized", &TemporalRelation::dualized)
        .def("__eq__", [](const TemporalRelation& a, const TemporalRelation& b) { return a == b; })
        .def("__len__", &TemporalRelation::size);

    m.def("orbit_of", [](const std::vector<long long>& t) {
        std::vector<Rational> vals(t.begin(), t.end());
        return orbit_of_tuple(vals).ranks();
    });
    m.def("weak_orders", [](int k) {
        std::vector<std::vector<int>> out;
        for (const WeakOrder& w : all_weak_orders(k)) out.push_back(w.ranks());
        return out;
    });
    m.def("ordered_bell", &ordered_bell);
    m.def("relation_of", &relation_from_formula, py::arg("formula"),
          py::arg("vars") = std::nullopt);
    m.def("preserves", [](const std::string& op, const TemporalRelation& rel) {
        const PreservationReport r = preserves(op_or_throw(op), rel);
        py::dict out;
        out["closed"] = r.closed;
        if (r.counterexample) {
            const auto [t1, t2] = pattern_tuples(r.counterexample->pattern);
            auto tup = [](const std::vector<Rational>& t) {
                py::list l;
                for (const Rational& v : t) l.append(v.str());
                return l;
            };
            out["t1"] = tup(t1);
            out["t2"] = tup(t2);
            out["image"] = r.counterexample->image.ranks();
        }
        return out;
    });
    m.def("entails", [](const TemporalRelation& rel, const std::string& formula,
                        const std::vector<std::string>& vars) {
        return entails(rel, parse_formula(formula), vars);
    });
    m.def("normal_form", &normal_form_text, py::arg("relation"), py::arg("form"),
          py::arg("vars"));
    m.def("solve", &solve_text, py::arg("text"), py::arg("engine") = "auto");
    m.def("fuzz", [](const std::string& mode, std::uint64_t seed, int trials,
                     const std::string& engine) {
        FuzzConfig cfg;
        const auto m_ = fuzz_mode_from_name(mode);
        if (!m_) throw std::invalid_argument("unknown fuzz mode '" + mode + "'");
        cfg.mode = *m_;
        cfg.seed = seed;
        cfg.trials = trials;
        cfg.engine = engine_or_throw(engine);
        const FuzzReport r = run_fuzz(cfg);
        py::dict out;
        out["trials"] = r.trials;
        out["agree"] = r.agree;
        return out;
    }, py::arg("mode"), py::arg("seed") = 1, py::arg("trials") = 100,
       py::arg("engine") = "min");
}
