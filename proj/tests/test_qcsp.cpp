#include "doctest.h"

#include <algorithm>

#include "qtcs/generate.hpp"
#include "qtcs/qcsp.hpp"

using namespace qtcs;

namespace {

Instance qcsp_of(const std::string& text) { return parse_instance(text); }

}  // namespace

TEST_CASE("prefix normalization inserts vacuous quantifiers") {
    {
        const Instance n = normalize_prefix(qcsp_of("qcsp exists x : x = x"));
        REQUIRE(n.vars.size() == 2);
        CHECK(n.quants == std::vector<Quant>{Quant::ForAll, Quant::Exists});
        CHECK(n.vars[1] == "x");
    }
    {
        const Instance n = normalize_prefix(qcsp_of("qcsp forall y : y = y"));
        REQUIRE(n.vars.size() == 2);
        CHECK(n.vars[0] == "y");
        CHECK(n.quants == std::vector<Quant>{Quant::ForAll, Quant::Exists});
    }
    {
        const Instance n =
            normalize_prefix(qcsp_of("qcsp forall y1 forall y2 exists x : x > y1"));
        REQUIRE(n.vars.size() == 4);
        CHECK(n.quants == std::vector<Quant>{Quant::ForAll, Quant::Exists, Quant::ForAll,
                                             Quant::Exists});
        CHECK(n.vars[0] == "y1");
        CHECK(n.vars[2] == "y2");
        CHECK(n.vars[3] == "x");
        // Dummies occur in no constraint.
        for (const InstanceConstraint& c : n.constraints) {
            for (int a : c.args) CHECK((a == 0 || a == 3));
        }
    }
    {
        // Fresh dummies dodge existing names.
        const Instance n = normalize_prefix(qcsp_of("qcsp exists _d1 : _d1 = _d1"));
        REQUIRE(n.vars.size() == 2);
        CHECK(n.vars[0] != "_d1");
        CHECK(n.vars[1] == "_d1");
    }
}

TEST_CASE("phi-prime adds the accumulated strict-order constraints") {
    // Prefix forall y1 exists x1 forall y2 exists x2: universals {0, 2},
    // existentials {1, 3}.
    const std::vector<int> universals{0, 2};
    const std::vector<int> existentials{1, 3};
    {
        MinCsp kernel;
        kernel.num_vars = 4;
        add_min_clause(kernel, {1, {{0, true}}});  // x1 > y1
        add_phi_prime_constraints(kernel, 1, universals, existentials);
        CHECK(kernel.clauses.size() == 1);  // level 1 adds nothing
        add_phi_prime_constraints(kernel, 2, universals, existentials);
        REQUIRE(kernel.clauses.size() == 3);  // x1 < y2 and y1 < y2
        CHECK(kernel.clauses[1].head == 2);
        CHECK(kernel.clauses[1].literals[0].body == 1);
        CHECK(kernel.clauses[1].literals[0].strict);
        CHECK(kernel.clauses[2].head == 2);
        CHECK(kernel.clauses[2].literals[0].body == 0);
    }
    {
        MxCsp kernel;
        kernel.num_vars = 4;
        add_phi_prime_constraints(kernel, 2, universals, existentials);
        REQUIRE(kernel.conjuncts.size() == 2);
        CHECK(kernel.conjuncts[0].scope == std::vector<int>{1, 2});
        CHECK(kernel.conjuncts[0].T == BoolRelation(2, {0b10}));
        // The added conjuncts mean strictly-less: only orders with x1 < y2
        // survive.
        for (const WeakOrder& w : all_weak_orders(4)) {
            CHECK(satisfies_conjuncts(w, kernel.conjuncts) ==
                  (w.rank(1) < w.rank(2) && w.rank(0) < w.rank(2)));
        }
    }
}

TEST_CASE("region representatives cover every extension orbit once") {
    PinnedOrder base;
    base.levels = {{0}};
    const auto one = region_representatives(base, 9);
    REQUIRE(one.size() == 3);
    CHECK(one[0].levels == std::vector<std::vector<int>>{{9}, {0}});
    CHECK(one[1].levels == std::vector<std::vector<int>>{{0, 9}});
    CHECK(one[2].levels == std::vector<std::vector<int>>{{0}, {9}});

    PinnedOrder two;
    two.levels = {{0}, {1}};
    CHECK(region_representatives(two, 9).size() == 5);

    PinnedOrder empty;
    const auto none = region_representatives(empty, 9);
    REQUIRE(none.size() == 1);
    CHECK(none[0].levels == std::vector<std::vector<int>>{{9}});
}

TEST_CASE("universal check on the worked examples") {
    // Kernel {z<x, x<y} over z=0, x=1, y=2; w = {z}: region y<z fails.
    {
        MinCsp kernel;
        kernel.num_vars = 3;
        add_min_clause(kernel, {1, {{0, true}}});  // x > z
        add_min_clause(kernel, {2, {{1, true}}});  // y > x
        PinnedOrder w;
        w.levels = {{0}};
        const UniversalCheck check = universal_check(kernel, w, 2);
        CHECK_FALSE(check.ok);
        CHECK(check.regions == 3);
        CHECK(check.failing_region == 0);  // y below z
    }
    // Kernel {x>y} with empty w: a single region, satisfiable.
    {
        MinCsp kernel;
        kernel.num_vars = 2;
        add_min_clause(kernel, {0, {{1, true}}});  // x > y
        const UniversalCheck check = universal_check(kernel, PinnedOrder{}, 1);
        CHECK(check.ok);
        CHECK(check.regions == 1);
    }
    // Kernel {x >= y} with w = {x}: region y > x fails.
    {
        MinCsp kernel;
        kernel.num_vars = 2;
        add_min_clause(kernel, {0, {{1, false}}});
        PinnedOrder w;
        w.levels = {{0}};
        const UniversalCheck check = universal_check(kernel, w, 1);
        CHECK_FALSE(check.ok);
        CHECK(check.failing_region == 2);  // y above x
    }
}

TEST_CASE("solve_qcsp on the reference sentences") {
    CHECK(solve_qcsp(qcsp_of("qcsp forall y exists x : x > y"), Engine::Min).value);
    CHECK_FALSE(solve_qcsp(qcsp_of("qcsp exists x forall y : x >= y"), Engine::Min).value);
    CHECK(solve_qcsp(
              qcsp_of("qcsp forall y1 exists x1 forall y2 exists x2 : x1 > y1 & x2 > x1 & x2 > y2"),
              Engine::Min)
              .value);
    // The same sentences through the mx engine.
    CHECK(solve_qcsp(qcsp_of("qcsp forall y exists x : x > y"), Engine::Mx).value);
    CHECK_FALSE(solve_qcsp(qcsp_of("qcsp exists x forall y : x > y"), Engine::Mx).value);
    // Auto picks an engine; brute routes to the oracle.
    CHECK(solve_qcsp(qcsp_of("qcsp forall y exists x : x > y"), Engine::Auto).value);
    CHECK(solve_qcsp(qcsp_of("qcsp forall y exists x : x > y"), Engine::Brute).value);
}

TEST_CASE("brute oracle on the reference sentences") {
    CHECK(brute_qcsp(qcsp_of("qcsp forall y exists x : x > y")));
    CHECK_FALSE(brute_qcsp(qcsp_of("qcsp exists x forall y : x >= y")));
    CHECK(brute_qcsp(qcsp_of("qcsp forall y exists x : x = x")));
    CHECK(brute_qcsp(
        qcsp_of("qcsp forall y1 exists x1 forall y2 exists x2 : x1 > y1 & x2 > x1 & x2 > y2")));
}

TEST_CASE("mixed languages are rejected") {
    // <= is min-closed but not mx-closed; X is mx-closed but not min-closed.
    const Instance inst = qcsp_of(
        "rel X(x,y,z) := (x = y & y < z) | (x = z & z < y) | (y = z & y < x)\n"
        "qcsp exists a exists b exists c : X(a,b,c) & a <= b\n");
    CHECK_THROWS_AS(solve_qcsp(inst, Engine::Auto), UnsupportedLanguage);
    CHECK_THROWS_AS(solve_qcsp(inst, Engine::Min), UnsupportedLanguage);
    CHECK_THROWS_AS(solve_qcsp(inst, Engine::Mx), UnsupportedLanguage);
}

TEST_CASE("trace records levels and regions") {
    const QcspResult r =
        solve_qcsp(qcsp_of("qcsp forall y1 exists x1 forall y2 exists x2 : x1 > y1 & x2 > y2"),
                   Engine::Min);
    CHECK(r.value);
    REQUIRE(r.trace.size() == 2);
    CHECK(r.trace[0].level == 2);
    CHECK(r.trace[1].level == 1);
    for (const LevelTrace& t : r.trace) {
        CHECK(t.sat);
        CHECK(t.forall_ok);
        CHECK(t.regions == 2 * t.witness_levels + 1);
        CHECK(trace_line(t).find("forall=OK") != std::string::npos);
    }
    // A False verdict carries the failing level.
    const QcspResult f = solve_qcsp(qcsp_of("qcsp exists x forall y : x >= y"), Engine::Min);
    CHECK_FALSE(f.value);
    REQUIRE_FALSE(f.trace.empty());
    const LevelTrace& last = f.trace.back();
    CHECK((!last.sat || !last.forall_ok));
    if (last.sat) CHECK(last.failing_region >= 0);
}

TEST_CASE("solver agrees with the oracle on random instances") {
    Rng rng(101);
    auto check_trace = [](const QcspResult& r) {
        // A False verdict always carries either an unsatisfiable level or a
        // failing region.
        if (r.value) return;
        REQUIRE_FALSE(r.trace.empty());
        const LevelTrace& last = r.trace.back();
        CHECK((!last.sat || (!last.forall_ok && last.failing_region >= 0)));
    };
    for (int trial = 0; trial < 120; ++trial) {
        const Instance inst = random_qcsp(rng, Engine::Min, 5, 4);
        CAPTURE(trial);
        const QcspResult got = solve_qcsp(inst, Engine::Min);
        CHECK(got.value == brute_qcsp(inst));
        check_trace(got);
    }
    for (int trial = 0; trial < 120; ++trial) {
        const Instance inst = random_qcsp(rng, Engine::Mx, 5, 4);
        CAPTURE(trial);
        const QcspResult got = solve_qcsp(inst, Engine::Mx);
        CHECK(got.value == brute_qcsp(inst));
        check_trace(got);
    }
}

TEST_CASE("universal elimination keeps satisfying assignments") {
    // Satisfiable Phi = forall y exists x (z < x & x < y & ...) style kernels:
    // the satisfying z-orbits of Phi and Phi' coincide.
    Rng rng(113);
    int satisfiable_seen = 0;
    for (int trial = 0; trial < 80 && satisfiable_seen < 25; ++trial) {
        const int frees = rng.in_range(1, 3);
        const int exists = rng.in_range(1, 2);
        const int num_vars = frees + 1 + exists;
        const int y = frees;
        // Random min-closed kernel over (z..., y, x...).
        MinCsp kernel = random_min_csp(rng, num_vars, 5);
        kernel.num_vars = num_vars;
        std::vector<InstanceConstraint> cons;
        for (const MinClause& c : kernel.clauses) {
            InstanceConstraint con;
            std::vector<MinClause> one{c};
            std::vector<int> scope;
            scope.push_back(c.head);
            for (const MinLiteral& l : c.literals) scope.push_back(l.body);
            std::sort(scope.begin(), scope.end());
            scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
            // Re-index the clause into the scope.
            MinClause local;
            auto slot = [&](int v) {
                return static_cast<int>(std::lower_bound(scope.begin(), scope.end(), v) -
                                        scope.begin());
            };
            local.head = slot(c.head);
            for (const MinLiteral& l : c.literals) local.literals.push_back({slot(l.body), l.strict});
            std::vector<MinClause> clauses{local};
            con.rel = relation_of(std::span<const MinClause>(clauses),
                                  static_cast<int>(scope.size()));
            con.args = scope;
            cons.push_back(std::move(con));
        }
        // Phi: prefix (forall y, exists x...), frees fixed per orbit.
        std::vector<std::pair<int, Quant>> phi_prefix{{y, Quant::ForAll}};
        std::vector<std::pair<int, Quant>> phi_prime_prefix{{y, Quant::Exists}};
        for (int x = frees + 1; x < num_vars; ++x) {
            phi_prefix.emplace_back(x, Quant::Exists);
            phi_prime_prefix.emplace_back(x, Quant::Exists);
        }
        // Phi' adds z_i < y.
        std::vector<InstanceConstraint> cons_prime = cons;
        for (int z = 0; z < frees; ++z) {
            InstanceConstraint lt;
            lt.rel = TemporalRelation(2, {WeakOrder({0, 1})});
            lt.args = {z, y};
            cons_prime.push_back(std::move(lt));
        }
        bool phi_satisfiable = false;
        std::vector<char> phi_orbit, prime_orbit;
        for_each_weak_order(frees, [&](const WeakOrder& w) {
            std::vector<std::pair<int, Rational>> fixed;
            for (int z = 0; z < frees; ++z) fixed.emplace_back(z, Rational(w.rank(z)));
            const bool phi = brute_quantified(num_vars, cons, phi_prefix, fixed);
            const bool prime = brute_quantified(num_vars, cons_prime, phi_prime_prefix, fixed);
            phi_orbit.push_back(phi ? 1 : 0);
            prime_orbit.push_back(prime ? 1 : 0);
            phi_satisfiable = phi_satisfiable || phi;
        });
        if (!phi_satisfiable) continue;
        ++satisfiable_seen;
        CHECK(phi_orbit == prime_orbit);
    }
    CHECK(satisfiable_seen > 0);

    // The unsatisfiable kernel {z<x, x<y}: Phi' is satisfiable, Phi is not.
    {
        std::vector<InstanceConstraint> cons;
        InstanceConstraint zx;
        zx.rel = TemporalRelation(2, {WeakOrder({0, 1})});
        zx.args = {0, 2};  // z < x
        cons.push_back(zx);
        InstanceConstraint xy;
        xy.rel = TemporalRelation(2, {WeakOrder({0, 1})});
        xy.args = {2, 1};  // x < y
        cons.push_back(xy);
        std::vector<InstanceConstraint> cons_prime = cons;
        InstanceConstraint zy;
        zy.rel = TemporalRelation(2, {WeakOrder({0, 1})});
        zy.args = {0, 1};
        cons_prime.push_back(zy);
        const std::vector<std::pair<int, Quant>> phi_prefix{{1, Quant::ForAll},
                                                            {2, Quant::Exists}};
        const std::vector<std::pair<int, Quant>> prime_prefix{{1, Quant::Exists},
                                                              {2, Quant::Exists}};
        const std::vector<std::pair<int, Rational>> fixed{{0, Rational(0)}};
        CHECK_FALSE(brute_quantified(3, cons, phi_prefix, fixed));
        CHECK(brute_quantified(3, cons_prime, prime_prefix, fixed));
    }
}

TEST_CASE("oracle cap is enforced") {
    Instance big;
    big.kind = InstanceKind::Qcsp;
    for (int i = 0; i < kBruteQcspMaxVars + 1; ++i) {
        big.vars.push_back("v" + std::to_string(i));
        big.quants.push_back(Quant::Exists);
    }
    CHECK_THROWS_AS(brute_qcsp(big), std::invalid_argument);
}
