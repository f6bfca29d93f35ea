#include "doctest.h"

#include "qtcs/brute.hpp"
#include "qtcs/csp.hpp"
#include "qtcs/generate.hpp"

using namespace qtcs;

namespace {

// x=0, y=1, z=2 throughout.
MinCsp csp_of(std::initializer_list<MinClause> clauses, int num_vars) {
    MinCsp csp;
    csp.num_vars = num_vars;
    for (const MinClause& c : clauses) add_min_clause(csp, c);
    return csp;
}

}  // namespace

TEST_CASE("max_free_set fixpoints") {
    {
        const MinCsp csp = csp_of({{0, {{1, true}}}, {1, {{0, true}}}}, 2);  // x>y, y>x
        const std::vector<int> allowed{0, 1};
        CHECK(max_free_set(csp, allowed).empty());
    }
    {
        const MinCsp csp = csp_of({{0, {{1, false}}}, {1, {{0, false}}}}, 2);  // x>=y, y>=x
        const std::vector<int> allowed{0, 1};
        CHECK(max_free_set(csp, allowed) == std::vector<int>{0, 1});
    }
    {
        // (x>=y | x>=z), y>=x, z>=x, y>z
        const MinCsp csp = csp_of({{0, {{1, false}, {2, false}}},
                                   {1, {{0, false}}},
                                   {2, {{0, false}}},
                                   {1, {{2, true}}}},
                                  3);
        const std::vector<int> allowed{0, 1, 2};
        CHECK(max_free_set(csp, allowed) == std::vector<int>{0, 2});
        // Cross-check maximality by brute force over all subsets.
        std::vector<int> best;
        for (unsigned mask = 0; mask < 8; ++mask) {
            std::vector<int> s;
            for (int v = 0; v < 3; ++v) {
                if ((mask >> v) & 1) s.push_back(v);
            }
            bool valid = true;
            for (const MinClause& c : csp.clauses) {
                if (std::find(s.begin(), s.end(), c.head) == s.end()) continue;
                bool supported = false;
                for (const MinLiteral& l : c.literals)
                    supported = supported ||
                                (!l.strict && std::find(s.begin(), s.end(), l.body) != s.end());
                valid = valid && supported;
            }
            if (valid && s.size() > best.size()) best = s;
        }
        CHECK(best == std::vector<int>{0, 2});
    }
}

TEST_CASE("solve_min_csp on the worked examples") {
    CHECK_FALSE(solve_min_csp(csp_of({{0, {{1, true}}}, {1, {{0, true}}}}, 2)).has_value());

    const MinCsp csp = csp_of({{0, {{1, false}, {2, false}}},
                               {1, {{0, false}}},
                               {2, {{0, false}}},
                               {1, {{2, true}}}},
                              3);
    const auto sol = solve_min_csp(csp);
    REQUIRE(sol);
    CHECK(sol->layers == std::vector<std::vector<int>>{{0, 2}, {1}});
    CHECK(sol->values == std::vector<Rational>{Rational(0), Rational(1), Rational(0)});
    CHECK(satisfies_clauses(sol->order(), csp.clauses));
    // Brute force confirms satisfiability and this order type.
    const auto oracle = brute_min_csp(csp);
    REQUIRE(oracle);
    CHECK(*oracle == sol->order());

    // Pin forcing x and y together contradicts y > x.
    const MinCsp two = csp_of({{1, {{0, true}}}}, 2);
    PinnedOrder pin;
    pin.levels = {{0, 1}};
    CHECK_FALSE(solve_min_csp(two, pin).has_value());
    CHECK(solve_min_csp(two).has_value());
}

TEST_CASE("clause normalization drops tautologies and self-literals") {
    MinCsp csp;
    csp.num_vars = 2;
    add_min_clause(csp, {0, {{0, false}}});  // x >= x: tautology, dropped
    CHECK(csp.clauses.empty());
    add_min_clause(csp, {0, {{0, true}, {1, false}}});  // x > x literal dropped
    REQUIRE(csp.clauses.size() == 1);
    CHECK(csp.clauses[0].literals.size() == 1);
    CHECK_FALSE(csp.clauses[0].literals[0].strict);
    add_min_clause(csp, {0, {{1, true}, {1, false}}});  // duplicate body keeps >=
    CHECK(csp.clauses[1].literals.size() == 1);
    CHECK_FALSE(csp.clauses[1].literals[0].strict);
    add_min_clause(csp, {1, {{0, true}, {0, true}}});
    CHECK(csp.clauses[2].literals.size() == 1);
}

TEST_CASE("layer_system encodes conjuncts as parity rows") {
    MxCsp csp;
    csp.num_vars = 3;
    REQUIRE(add_mx_conjunct(csp, std::vector<int>{0, 1, 2},
                            BoolRelation(3, {0b001, 0b010, 0b100})));
    const std::vector<int> remaining{0, 1, 2};
    const Gf2System sys = layer_system(csp, remaining, {}, {});
    REQUIRE(sys.rows().size() == 1);
    CHECK(sys.rows()[0] == 0b111);

    MxCsp contradictory;
    contradictory.num_vars = 2;
    REQUIRE(add_mx_conjunct(contradictory, std::vector<int>{0, 1}, BoolRelation(2, {0b10})));
    REQUIRE(add_mx_conjunct(contradictory, std::vector<int>{1, 0}, BoolRelation(2, {0b10})));
    const std::vector<int> both{0, 1};
    const Gf2System sys2 = layer_system(contradictory, both, {}, {});
    // Two rows, each killing one indicator bit.
    const auto sol = solve_gf2(sys2);
    REQUIRE(sol);
    CHECK(sol->kernel.empty());
    CHECK(sol->particular == 0);

    MxCsp empty;
    empty.num_vars = 2;
    CHECK(layer_system(empty, both, {}, {}).rows().empty());
}

TEST_CASE("solve_mx_csp on the worked examples") {
    // X(x,y,z) alone.
    MxCsp x_only;
    x_only.num_vars = 3;
    REQUIRE(add_mx_conjunct(x_only, std::vector<int>{0, 1, 2},
                            BoolRelation(3, {0b001, 0b010, 0b100})));
    const auto sol = solve_mx_csp(x_only);
    REQUIRE(sol);
    CHECK(sol->layers == std::vector<std::vector<int>>{{0, 1}, {2}});
    CHECK(satisfies_conjuncts(sol->order(), x_only.conjuncts));
    CHECK(brute_mx_csp(x_only).has_value());

    // x<y together with y<x.
    MxCsp contradictory;
    contradictory.num_vars = 2;
    REQUIRE(add_mx_conjunct(contradictory, std::vector<int>{0, 1}, BoolRelation(2, {0b10})));
    REQUIRE(add_mx_conjunct(contradictory, std::vector<int>{1, 0}, BoolRelation(2, {0b10})));
    CHECK_FALSE(solve_mx_csp(contradictory).has_value());
    CHECK_FALSE(brute_mx_csp(contradictory).has_value());

    // X(x,y,z) & x<z & y<z.
    MxCsp combined = x_only;
    REQUIRE(add_mx_conjunct(combined, std::vector<int>{0, 2}, BoolRelation(2, {0b10})));
    REQUIRE(add_mx_conjunct(combined, std::vector<int>{1, 2}, BoolRelation(2, {0b10})));
    const auto sol2 = solve_mx_csp(combined);
    REQUIRE(sol2);
    CHECK(sol2->layers == std::vector<std::vector<int>>{{0, 1}, {2}});
    CHECK(satisfies_conjuncts(sol2->order(), combined.conjuncts));
}

TEST_CASE("conjunct collapse validates near-affinity") {
    MxCsp csp;
    csp.num_vars = 2;
    // X with its first two arguments identified collapses to x < y.
    REQUIRE(add_mx_conjunct(csp, std::vector<int>{0, 0, 1},
                            BoolRelation(3, {0b001, 0b010, 0b100})));
    REQUIRE(csp.conjuncts.size() == 1);
    CHECK(csp.conjuncts[0].scope == std::vector<int>{0, 1});
    CHECK(csp.conjuncts[0].T == BoolRelation(2, {0b10}));

    // A relation whose collapse is not near-affine is rejected.
    // T = {00, 01, 10} over (a,a): collapse keeps {0, 1}... both tuples with
    // tied bits: {00 -> 0, 11 absent}; 01/10 inconsistent. Result {0}.
    MxCsp ok;
    ok.num_vars = 1;
    CHECK(add_mx_conjunct(ok, std::vector<int>{0, 0}, BoolRelation(2, {0b00, 0b01, 0b10})));

    // Width-2 counterexample: T = {01, 10} collapses on (a,a) to the empty
    // relation, which is near-affine; use an explicit bad T at width 3:
    // {001, 110} stays width-3 with distinct vars and is not near-affine.
    MxCsp bad;
    bad.num_vars = 3;
    CHECK_FALSE(add_mx_conjunct(bad, std::vector<int>{0, 1, 2}, BoolRelation(3, {0b001, 0b110})));
}

TEST_CASE("pinned solving matches the pinned oracle") {
    Rng rng(77);
    for (int trial = 0; trial < 250; ++trial) {
        const MinCsp csp = random_min_csp(rng, 5, 8);
        const auto pin = random_pin(rng, csp.num_vars);
        const auto got = solve_min_csp(csp, pin);
        const auto expect = brute_min_csp(csp, pin);
        REQUIRE(got.has_value() == expect.has_value());
        if (got) {
            CHECK(satisfies_clauses(got->order(), csp.clauses));
            if (pin) CHECK(realizes(got->order(), *pin));
        }
    }
    for (int trial = 0; trial < 250; ++trial) {
        const MxCsp csp = random_mx_csp(rng, 5, 6);
        const auto pin = random_pin(rng, csp.num_vars);
        const auto got = solve_mx_csp(csp, pin);
        const auto expect = brute_mx_csp(csp, pin);
        REQUIRE(got.has_value() == expect.has_value());
        if (got) {
            CHECK(satisfies_conjuncts(got->order(), csp.conjuncts));
            if (pin) CHECK(realizes(got->order(), *pin));
        }
    }
}

TEST_CASE("every emitted layer is self-supporting") {
    // Replay the layer deletions and check the per-step invariants: a
    // min-layer supports each active clause headed inside it with a
    // non-strict body inside it; an mx-layer's indicator restricted to each
    // deleted conjunct's scope passes that conjunct's parity checks.
    Rng rng(83);
    for (int trial = 0; trial < 150; ++trial) {
        const MinCsp csp = random_min_csp(rng, 6, 10);
        const auto sol = solve_min_csp(csp);
        if (!sol) continue;
        std::vector<char> alive(static_cast<std::size_t>(csp.num_vars), 1);
        std::vector<MinClause> active = csp.clauses;
        for (const auto& layer : sol->layers) {
            auto in_layer = [&](int v) {
                return std::find(layer.begin(), layer.end(), v) != layer.end();
            };
            for (const MinClause& c : active) {
                if (!in_layer(c.head)) continue;
                bool supported = false;
                for (const MinLiteral& l : c.literals)
                    supported = supported || (!l.strict && in_layer(l.body));
                CHECK(supported);
            }
            for (int v : layer) alive[static_cast<std::size_t>(v)] = 0;
            std::erase_if(active, [&](const MinClause& c) {
                if (!alive[static_cast<std::size_t>(c.head)]) return true;
                return std::any_of(c.literals.begin(), c.literals.end(), [&](const MinLiteral& l) {
                    return !alive[static_cast<std::size_t>(l.body)];
                });
            });
        }
        CHECK(active.empty());
    }
    for (int trial = 0; trial < 150; ++trial) {
        const MxCsp csp = random_mx_csp(rng, 6, 8);
        const auto sol = solve_mx_csp(csp);
        if (!sol) continue;
        std::vector<MinAffineForm> active = csp.conjuncts;
        for (const auto& layer : sol->layers) {
            auto in_layer = [&](int v) {
                return std::find(layer.begin(), layer.end(), v) != layer.end();
            };
            std::vector<MinAffineForm> still;
            for (const MinAffineForm& f : active) {
                const bool touched = std::any_of(f.scope.begin(), f.scope.end(), in_layer);
                if (!touched) {
                    still.push_back(f);
                    continue;
                }
                std::uint64_t indicator = 0;
                for (std::size_t i = 0; i < f.scope.size(); ++i) {
                    if (in_layer(f.scope[i])) indicator |= std::uint64_t{1} << i;
                }
                // indicator in L iff indicator ^ ones in T u {ones}.
                const std::uint64_t ones = all_ones(f.T.width());
                const std::uint64_t tup = indicator ^ ones;
                CHECK((tup == ones || f.T.contains(tup)));
            }
            active = std::move(still);
        }
        CHECK(active.empty());
    }
}

TEST_CASE("instance conversion to engine form") {
    const Instance sat = parse_instance(
        "rel X(x,y,z) := (x = y & y < z) | (x = z & z < y) | (y = z & y < x)\n"
        "csp X(a,b,c) & a < c & b < c\n");
    CHECK_FALSE(to_min_csp(3, sat.constraints).has_value());  // X is not min-closed
    const auto mx = to_mx_csp(3, sat.constraints);
    REQUIRE(mx);
    const auto sol = solve_mx_csp(*mx);
    REQUIRE(sol);
    CHECK(satisfies(*sol, sat.constraints));

    // Fully collapsed arguments: X(a,a,a) has no constant orbit, so the
    // conjunct collapses to FALSE on a.
    const Instance collapsed = parse_instance(
        "rel X(x,y,z) := (x = y & y < z) | (x = z & z < y) | (y = z & y < x)\n"
        "csp X(a,a,a)\n");
    const auto mx2 = to_mx_csp(1, collapsed.constraints);
    REQUIRE(mx2);
    CHECK_FALSE(solve_mx_csp(*mx2).has_value());
    CHECK_FALSE(brute_csp(1, collapsed.constraints).has_value());

    const Instance u_sat = parse_instance(
        "rel U(x,y,z) := (x = y & y < z) | (x = z & z < y) | (x = y & y = z)\n"
        "csp U(a,b,a) & a < b\n");
    const auto min_csp = to_min_csp(2, u_sat.constraints);
    REQUIRE(min_csp);
    const auto min_sol = solve_min_csp(*min_csp);
    REQUIRE(min_sol);
    CHECK(satisfies(*min_sol, u_sat.constraints));
    CHECK_FALSE(to_mx_csp(2, u_sat.constraints).has_value());  // U is not mx-closed

    CHECK(pick_engine(sat.constraints) == Engine::Mx);
    CHECK(pick_engine(u_sat.constraints) == Engine::Min);
}

TEST_CASE("assignment helper") {
    LayeredSolution sol;
    sol.layers = {{0, 2}, {1}};
    sol.values = {Rational(0), Rational(1), Rational(0)};
    const std::vector<std::string> names{"x", "y", "z"};
    const auto assign = assignment_of(sol, names);
    REQUIRE(assign.size() == 3);
    CHECK(assign[0] == std::pair<std::string, Rational>{"x", Rational(0)});
    CHECK(assign[1] == std::pair<std::string, Rational>{"y", Rational(1)});
    CHECK(assign[2] == std::pair<std::string, Rational>{"z", Rational(0)});
}
