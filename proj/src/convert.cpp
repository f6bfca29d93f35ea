#include "qtcs/convert.hpp"

#include <map>

#include "qtcs/poly.hpp"

namespace qtcs {

std::optional<Engine> engine_from_name(std::string_view name) {
    if (name == "min") return Engine::Min;
    if (name == "mx") return Engine::Mx;
    if (name == "auto") return Engine::Auto;
    if (name == "brute") return Engine::Brute;
    return std::nullopt;
}

const char* engine_name(Engine e) {
    switch (e) {
        case Engine::Min: return "min";
        case Engine::Mx: return "mx";
        case Engine::Auto: return "auto";
        case Engine::Brute: return "brute";
    }
    return "?";
}

std::optional<MinCsp> to_min_csp(int num_vars,
                                 std::span<const InstanceConstraint> constraints) {
    MinCsp csp;
    csp.num_vars = num_vars;
    std::map<TemporalRelation, std::optional<std::vector<MinClause>>> cache;
    for (const InstanceConstraint& con : constraints) {
        auto it = cache.find(con.rel);
        if (it == cache.end()) it = cache.emplace(con.rel, min_clause_form(con.rel)).first;
        if (!it->second) return std::nullopt;
        for (const MinClause& tpl : *it->second) {
            MinClause instantiated;
            instantiated.head = con.args[static_cast<std::size_t>(tpl.head)];
            for (const MinLiteral& lit : tpl.literals) {
                instantiated.literals.push_back(
                    {con.args[static_cast<std::size_t>(lit.body)], lit.strict});
            }
            add_min_clause(csp, instantiated);
        }
    }
    return csp;
}

std::optional<MxCsp> to_mx_csp(int num_vars,
                               std::span<const InstanceConstraint> constraints) {
    MxCsp csp;
    csp.num_vars = num_vars;
    std::map<TemporalRelation, std::optional<std::vector<MinAffineForm>>> cache;
    for (const InstanceConstraint& con : constraints) {
        auto it = cache.find(con.rel);
        if (it == cache.end()) it = cache.emplace(con.rel, min_affine_form(con.rel)).first;
        if (!it->second) return std::nullopt;
        for (const MinAffineForm& tpl : *it->second) {
            std::vector<int> scope_vars;
            scope_vars.reserve(tpl.scope.size());
            for (int coord : tpl.scope)
                scope_vars.push_back(con.args[static_cast<std::size_t>(coord)]);
            if (!add_mx_conjunct(csp, scope_vars, tpl.T)) {
                // Cannot happen for an mx-closed relation; reject loudly
                // rather than mis-solve.
                throw UnsupportedLanguage("constraint '" + con.display +
                                          "' collapses to a non-near-affine conjunct");
            }
        }
    }
    return csp;
}

Engine pick_engine(std::span<const InstanceConstraint> constraints) {
    std::map<TemporalRelation, char> cache;  // 1 = min-closed, 2 = mx-closed only, 0 = neither
    bool all_min = true;
    bool all_mx = true;
    for (const InstanceConstraint& con : constraints) {
        auto it = cache.find(con.rel);
        if (it == cache.end()) {
            char cls = 0;
            if (preserves(BinOp::Min, con.rel).closed) cls |= 1;
            if (preserves(BinOp::Mx, con.rel).closed) cls |= 2;
            it = cache.emplace(con.rel, cls).first;
        }
        all_min = all_min && (it->second & 1);
        all_mx = all_mx && (it->second & 2);
    }
    if (all_min) return Engine::Min;
    if (all_mx) return Engine::Mx;
    throw UnsupportedLanguage(
        "constraint relations are neither all min-closed nor all mx-closed");
}

}  // namespace qtcs
