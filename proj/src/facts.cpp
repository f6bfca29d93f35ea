#include "qtcs/facts.hpp"

#include <algorithm>
#include <functional>

#include "qtcs/formula.hpp"
#include "qtcs/normal_form.hpp"
#include "qtcs/poly.hpp"

namespace qtcs {

namespace {

TemporalRelation rel_of(const std::string& text) {
    return relation_of_formula(parse_formula(text));
}

// Drop the first orbit. For the fixtures here that removes the constant
// orbit, which the closure facts depend on.
TemporalRelation corrupted(const TemporalRelation& r) {
    std::vector<WeakOrder> orbits = r.orbits();
    if (!orbits.empty()) orbits.erase(orbits.begin());
    return TemporalRelation(r.arity(), std::move(orbits));
}

struct Suite {
    explicit Suite(const FactOptions& options) : opts(options) {}

    void fact(const std::string& name, const std::function<bool(std::string&)>& check) {
        if (!opts.filter.empty() && name.find(opts.filter) == std::string::npos) return;
        FactResult r;
        r.name = name;
        r.pass = check(r.detail);
        results.push_back(std::move(r));
    }

    void closed(const std::string& name, BinOp op, const TemporalRelation& rel,
                bool expect_closed) {
        fact(name, [&, op, rel, expect_closed](std::string& detail) {
            const PreservationReport report = preserves(op, rel);
            if (report.closed == expect_closed) return true;
            detail = report.closed ? "unexpectedly closed" : "unexpectedly not closed";
            return false;
        });
    }

    const FactOptions& opts;
    std::vector<FactResult> results;
};

}  // namespace

std::vector<FactResult> run_fact_suite(const FactOptions& options) {
    Suite suite(options);

    const TemporalRelation leq = rel_of("x <= y");
    const TemporalRelation lt = rel_of("x < y");
    const TemporalRelation neq = rel_of("x != y");
    TemporalRelation U = rel_of("(x = y & y < z) | (x = z & z < y) | (x = y & y = z)");
    TemporalRelation X = rel_of("(x = y & y < z) | (x = z & z < y) | (y = z & y < x)");
    const TemporalRelation shuffle3 = rel_of("x1 > x2 | x1 > x3");
    TemporalRelation mixed = rel_of("(x = y & y < z) | (x > y & y = z)");
    if (options.corrupt == "U") U = corrupted(U);
    if (options.corrupt == "X") X = corrupted(X);
    if (options.corrupt == "mixed") mixed = corrupted(mixed);

    suite.closed("min-preserves-leq", BinOp::Min, leq, true);
    suite.closed("min-preserves-lt", BinOp::Min, lt, true);
    suite.closed("min-preserves-U", BinOp::Min, U, true);
    suite.closed("min-preserves-one-greater", BinOp::Min, shuffle3, true);

    suite.fact("min-rejects-neq-with-counterexample", [&](std::string& detail) {
        const PreservationReport report = preserves(BinOp::Min, neq);
        if (report.closed) {
            detail = "min unexpectedly preserves the disequality relation";
            return false;
        }
        const auto& ce = *report.counterexample;
        const auto [t1, t2] = pattern_tuples(ce.pattern);
        const WeakOrder expect_image = orbit_of_tuple({Rational(0), Rational(0)});
        const bool tuples_match =
            (orbit_of_tuple(t1) == WeakOrder({0, 1}) && orbit_of_tuple(t2) == WeakOrder({1, 0})) ||
            (orbit_of_tuple(t1) == WeakOrder({1, 0}) && orbit_of_tuple(t2) == WeakOrder({0, 1}));
        if (tuples_match && ce.image == expect_image) return true;
        detail = "counterexample is not the crossing pair mapping to a constant tuple";
        return false;
    });

    suite.closed("mx-rejects-leq", BinOp::Mx, leq, false);
    suite.closed("mx-rejects-U", BinOp::Mx, U, false);
    suite.closed("mx-preserves-X", BinOp::Mx, X, true);
    suite.closed("mx-preserves-lt", BinOp::Mx, lt, true);

    suite.closed("pp-preserves-mixed-projection", BinOp::Pp, mixed, true);
    suite.closed("min-rejects-mixed-projection", BinOp::Min, mixed, false);
    suite.closed("mx-rejects-mixed-projection", BinOp::Mx, mixed, false);

    suite.fact("U-min-clause-form-defines-U", [&](std::string& detail) {
        const auto form = min_clause_form(U);
        if (!form) {
            detail = "synthesis reported the relation as not min-closed";
            return false;
        }
        if (relation_of(std::span<const MinClause>(*form), U.arity()) != U) {
            detail = "synthesized conjunction defines a different relation";
            return false;
        }
        return true;
    });

    return suite.results;
}

}  // namespace qtcs
