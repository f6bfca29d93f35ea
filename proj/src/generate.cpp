#include "qtcs/generate.hpp"

#include <algorithm>

namespace qtcs {

WeakOrder random_weak_order(Rng& rng, int arity) {
    std::vector<int> keys(static_cast<std::size_t>(arity));
    for (int& k : keys) k = rng.below(std::max(1, arity));
    return WeakOrder::of_keys(std::span<const int>(keys));
}

TemporalRelation random_relation(Rng& rng, int arity) {
    std::vector<WeakOrder> orbits;
    for_each_weak_order(arity, [&](const WeakOrder& w) {
        if (rng.coin()) orbits.push_back(w);
    });
    return TemporalRelation(arity, std::move(orbits));
}

BoolRelation random_near_affine(Rng& rng, int width) {
    const std::uint64_t ones = all_ones(width);
    const int generators = rng.in_range(0, width);
    std::vector<std::uint64_t> span{0};
    for (int g = 0; g < generators; ++g) {
        const std::uint64_t v = rng.next() & ones;
        const std::size_t n = span.size();
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint64_t m = span[i] ^ v;
            if (std::find(span.begin(), span.end(), m) == span.end()) span.push_back(m);
        }
    }
    std::vector<std::uint64_t> members;
    for (std::uint64_t v : span) {
        if ((v ^ ones) != ones) members.push_back(v ^ ones);
    }
    return BoolRelation(width, std::move(members));
}

MinCsp random_min_csp(Rng& rng, int max_vars, int max_clauses) {
    MinCsp csp;
    csp.num_vars = rng.in_range(1, max_vars);
    const int clauses = rng.in_range(0, max_clauses);
    for (int c = 0; c < clauses; ++c) {
        MinClause raw;
        raw.head = rng.below(csp.num_vars);
        // At least one raw literal; normalization may still strip them all
        // (head > head), so the occasional FALSE clause shows up anyway.
        const int literals = rng.in_range(1, std::min(3, csp.num_vars));
        for (int l = 0; l < literals; ++l)
            raw.literals.push_back({rng.below(csp.num_vars), rng.coin()});
        add_min_clause(csp, raw);
    }
    return csp;
}

MxCsp random_mx_csp(Rng& rng, int max_vars, int max_conjuncts) {
    MxCsp csp;
    csp.num_vars = rng.in_range(1, max_vars);
    const int conjuncts = rng.in_range(0, max_conjuncts);
    for (int c = 0; c < conjuncts; ++c) {
        const int width = rng.in_range(1, std::min(4, csp.num_vars));
        std::vector<int> scope;
        for (int i = 0; i < width; ++i) scope.push_back(rng.below(csp.num_vars));
        (void)add_mx_conjunct(csp, scope, random_near_affine(rng, width));
    }
    return csp;
}

std::optional<PinnedOrder> random_pin(Rng& rng, int num_vars) {
    std::vector<int> picked;
    for (int v = 0; v < num_vars; ++v) {
        if (rng.coin()) picked.push_back(v);
    }
    if (picked.empty()) return std::nullopt;
    const WeakOrder shape = random_weak_order(rng, static_cast<int>(picked.size()));
    PinnedOrder pin;
    pin.levels.resize(static_cast<std::size_t>(shape.levels()));
    for (std::size_t i = 0; i < picked.size(); ++i)
        pin.levels[static_cast<std::size_t>(shape.rank(static_cast<int>(i)))].push_back(picked[i]);
    return pin;
}

namespace {

TemporalRelation random_min_closed_relation(Rng& rng, int arity) {
    std::vector<MinClause> clauses;
    const int count = rng.in_range(1, 2);
    for (int c = 0; c < count; ++c) {
        MinClause raw;
        raw.head = rng.below(arity);
        std::vector<MinLiteral> literals;
        for (int v = 0; v < arity; ++v) {
            if (v == raw.head) continue;
            const int op = rng.below(3);
            if (op) literals.push_back({v, op == 1});
        }
        raw.literals = std::move(literals);
        if (!raw.literals.empty()) clauses.push_back(std::move(raw));
    }
    return relation_of(std::span<const MinClause>(clauses), arity);
}

TemporalRelation random_mx_closed_relation(Rng& rng, int arity) {
    std::vector<MinAffineForm> forms;
    MinAffineForm f;
    for (int v = 0; v < arity; ++v) f.scope.push_back(v);
    BoolRelation T = random_near_affine(rng, arity);
    if (T.is_empty()) T = BoolRelation(arity, {0});  // avoid the always-false constraint
    f.T = std::move(T);
    forms.push_back(std::move(f));
    return relation_of(std::span<const MinAffineForm>(forms), arity);
}

}  // namespace

Instance random_qcsp(Rng& rng, Engine engine, int max_vars, int max_constraints) {
    Instance inst;
    inst.kind = InstanceKind::Qcsp;
    const int num_vars = rng.in_range(2, max_vars);
    for (int v = 0; v < num_vars; ++v) {
        inst.vars.push_back("v" + std::to_string(v));
        inst.quants.push_back(rng.coin() ? Quant::ForAll : Quant::Exists);
    }
    const int constraints = rng.in_range(1, max_constraints);
    for (int c = 0; c < constraints; ++c) {
        const int arity = rng.in_range(2, std::min(3, num_vars));
        InstanceConstraint con;
        con.rel = engine == Engine::Mx ? random_mx_closed_relation(rng, arity)
                                       : random_min_closed_relation(rng, arity);
        for (int i = 0; i < arity; ++i) con.args.push_back(rng.below(num_vars));
        con.display = "r" + std::to_string(c);
        inst.constraints.push_back(std::move(con));
    }
    return inst;
}

}  // namespace qtcs
