#include "qtcs/csp.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace qtcs {

WeakOrder LayeredSolution::order() const {
    return WeakOrder::of_keys(std::span<const Rational>(values));
}

std::vector<std::pair<std::string, Rational>> assignment_of(
    const LayeredSolution& sol, std::span<const std::string> names) {
    std::vector<std::pair<std::string, Rational>> out;
    out.reserve(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) out.emplace_back(names[i], sol.values[i]);
    return out;
}

void add_min_clause(MinCsp& csp, const MinClause& raw) {
    MinClause c;
    c.head = raw.head;
    std::map<int, bool> body_ops;  // body -> strict; keep the weaker literal
    for (const MinLiteral& lit : raw.literals) {
        if (lit.body == c.head) {
            if (!lit.strict) return;  // head >= head: tautology, drop the clause
            continue;                 // head > head: drop the literal
        }
        auto it = body_ops.find(lit.body);
        if (it == body_ops.end()) {
            body_ops.emplace(lit.body, lit.strict);
        } else {
            it->second = it->second && lit.strict;
        }
    }
    for (const auto& [body, strict] : body_ops) c.literals.push_back({body, strict});
    csp.clauses.push_back(std::move(c));
}

bool add_mx_conjunct(MxCsp& csp, std::span<const int> scope_vars, const BoolRelation& T) {
    // Collapse repeated scope variables: keep tuples whose tied coordinates
    // agree, read bits off the first occurrence.
    std::vector<int> distinct;
    std::vector<int> coord_of(scope_vars.size());
    for (std::size_t i = 0; i < scope_vars.size(); ++i) {
        auto it = std::find(distinct.begin(), distinct.end(), scope_vars[i]);
        if (it == distinct.end()) {
            coord_of[i] = static_cast<int>(distinct.size());
            distinct.push_back(scope_vars[i]);
        } else {
            coord_of[i] = static_cast<int>(it - distinct.begin());
        }
    }
    const int width = static_cast<int>(distinct.size());
    std::vector<std::uint64_t> members;
    for (std::uint64_t t : T.members()) {
        std::uint64_t collapsed = 0;
        bool consistent = true;
        std::vector<int> seen(static_cast<std::size_t>(width), -1);
        for (std::size_t i = 0; i < scope_vars.size() && consistent; ++i) {
            const int bit = static_cast<int>((t >> i) & 1);
            int& s = seen[static_cast<std::size_t>(coord_of[i])];
            if (s == -1) {
                s = bit;
                if (bit) collapsed |= std::uint64_t{1} << coord_of[i];
            } else {
                consistent = s == bit;
            }
        }
        if (consistent) members.push_back(collapsed);
    }
    BoolRelation collapsed(width, std::move(members));
    // The all-ones tuple can appear after collapsing; it is never a
    // min-tuple, so it cannot constrain anything and is dropped.
    if (collapsed.contains(all_ones(width))) {
        std::vector<std::uint64_t> trimmed;
        for (std::uint64_t t : collapsed.members()) {
            if (t != all_ones(width)) trimmed.push_back(t);
        }
        collapsed = BoolRelation(width, std::move(trimmed));
    }
    if (!is_near_affine(collapsed).near_affine) return false;
    if (collapsed.size() == (std::uint64_t{1} << width) - 1) return true;  // tautology
    MinAffineForm f;
    f.scope = std::move(distinct);
    f.T = std::move(collapsed);
    csp.conjuncts.push_back(std::move(f));
    return true;
}

std::vector<int> max_free_set(const MinCsp& csp, std::span<const int> allowed) {
    std::vector<char> in_set(static_cast<std::size_t>(csp.num_vars), 0);
    for (int v : allowed) in_set[static_cast<std::size_t>(v)] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const MinClause& c : csp.clauses) {
            if (!in_set[static_cast<std::size_t>(c.head)]) continue;
            bool supported = false;
            for (const MinLiteral& lit : c.literals) {
                if (!lit.strict && in_set[static_cast<std::size_t>(lit.body)]) {
                    supported = true;
                    break;
                }
            }
            if (!supported) {
                in_set[static_cast<std::size_t>(c.head)] = 0;
                changed = true;
            }
        }
    }
    std::vector<int> out;
    for (int v : allowed) {
        if (in_set[static_cast<std::size_t>(v)]) out.push_back(v);
    }
    return out;
}

namespace {

LayeredSolution finish_layers(int num_vars, std::vector<std::vector<int>> layers) {
    LayeredSolution sol;
    sol.values.assign(static_cast<std::size_t>(num_vars), Rational(0));
    for (std::size_t j = 0; j < layers.size(); ++j) {
        std::sort(layers[j].begin(), layers[j].end());
        for (int v : layers[j]) sol.values[static_cast<std::size_t>(v)] = Rational(static_cast<long long>(j));
    }
    sol.layers = std::move(layers);
    return sol;
}

void check_pin(const PinnedOrder& pin, int num_vars) {
    std::vector<char> seen(static_cast<std::size_t>(num_vars), 0);
    for (const auto& level : pin.levels) {
        if (level.empty()) throw std::invalid_argument("empty pin level");
        for (int v : level) {
            if (v < 0 || v >= num_vars) throw std::invalid_argument("pin variable out of range");
            if (seen[static_cast<std::size_t>(v)])
                throw std::invalid_argument("pin variable repeated");
            seen[static_cast<std::size_t>(v)] = 1;
        }
    }
}

}  // namespace

std::optional<LayeredSolution> solve_min_csp(const MinCsp& csp,
                                             const std::optional<PinnedOrder>& pin) {
    if (pin) check_pin(*pin, csp.num_vars);
    std::vector<char> alive(static_cast<std::size_t>(csp.num_vars), 1);
    std::vector<int> pin_level(static_cast<std::size_t>(csp.num_vars), -1);
    if (pin) {
        for (std::size_t j = 0; j < pin->levels.size(); ++j) {
            for (int v : pin->levels[j]) pin_level[static_cast<std::size_t>(v)] = static_cast<int>(j);
        }
    }
    MinCsp active = csp;
    int remaining = csp.num_vars;
    std::size_t next_pin = 0;  // lowest pinned level not yet emitted
    std::vector<std::vector<int>> layers;

    while (remaining > 0) {
        std::vector<int> unpinned;
        for (int v = 0; v < csp.num_vars; ++v) {
            if (alive[static_cast<std::size_t>(v)] && pin_level[static_cast<std::size_t>(v)] < 0)
                unpinned.push_back(v);
        }
        std::vector<int> layer = max_free_set(active, unpinned);
        if (layer.empty() && pin && next_pin < pin->levels.size()) {
            std::vector<int> allowed = unpinned;
            for (int v : pin->levels[next_pin]) allowed.push_back(v);
            std::sort(allowed.begin(), allowed.end());
            std::vector<int> candidate = max_free_set(active, allowed);
            const bool covers_pin = std::all_of(
                pin->levels[next_pin].begin(), pin->levels[next_pin].end(), [&](int v) {
                    return std::binary_search(candidate.begin(), candidate.end(), v);
                });
            if (covers_pin) {
                layer = std::move(candidate);
                ++next_pin;
            }
        }
        if (layer.empty()) return std::nullopt;
        for (int v : layer) {
            alive[static_cast<std::size_t>(v)] = 0;
            --remaining;
        }
        std::erase_if(active.clauses, [&](const MinClause& c) {
            if (!alive[static_cast<std::size_t>(c.head)]) return true;
            return std::any_of(c.literals.begin(), c.literals.end(), [&](const MinLiteral& l) {
                return !alive[static_cast<std::size_t>(l.body)];
            });
        });
        layers.push_back(std::move(layer));
    }
    return finish_layers(csp.num_vars, std::move(layers));
}

Gf2System layer_system(const MxCsp& csp, std::span<const int> remaining,
                       std::span<const int> force_zero, std::span<const int> force_one) {
    std::vector<int> slot(static_cast<std::size_t>(csp.num_vars), -1);
    for (std::size_t i = 0; i < remaining.size(); ++i)
        slot[static_cast<std::size_t>(remaining[i])] = static_cast<int>(i);
    Gf2System sys(static_cast<int>(remaining.size()));
    for (const MinAffineForm& f : csp.conjuncts) {
        const Gf2System checks = parity_check(f.T);
        for (std::size_t r = 0; r < checks.rows().size(); ++r) {
            std::uint64_t row = 0;
            for (std::size_t i = 0; i < f.scope.size(); ++i) {
                if ((checks.rows()[r] >> i) & 1u) {
                    const int s = slot[static_cast<std::size_t>(f.scope[i])];
                    assert(s >= 0);
                    row ^= std::uint64_t{1} << s;
                }
            }
            sys.add_row(row, 0);
        }
    }
    for (int v : force_zero) sys.force(slot[static_cast<std::size_t>(v)], 0);
    for (int v : force_one) sys.force(slot[static_cast<std::size_t>(v)], 1);
    return sys;
}

std::optional<LayeredSolution> solve_mx_csp(const MxCsp& csp,
                                            const std::optional<PinnedOrder>& pin) {
    if (pin) check_pin(*pin, csp.num_vars);
    std::vector<char> alive(static_cast<std::size_t>(csp.num_vars), 1);
    std::vector<int> pin_level(static_cast<std::size_t>(csp.num_vars), -1);
    if (pin) {
        for (std::size_t j = 0; j < pin->levels.size(); ++j) {
            for (int v : pin->levels[j]) pin_level[static_cast<std::size_t>(v)] = static_cast<int>(j);
        }
    }
    MxCsp active = csp;
    if (std::any_of(active.conjuncts.begin(), active.conjuncts.end(),
                    [](const MinAffineForm& f) { return f.scope.empty(); })) {
        return std::nullopt;  // empty-scope conjunct is FALSE
    }
    int remaining_count = csp.num_vars;
    std::size_t next_pin = 0;
    std::vector<std::vector<int>> layers;

    while (remaining_count > 0) {
        std::vector<int> remaining;
        std::vector<int> pinned_remaining;
        for (int v = 0; v < csp.num_vars; ++v) {
            if (!alive[static_cast<std::size_t>(v)]) continue;
            remaining.push_back(v);
            if (pin_level[static_cast<std::size_t>(v)] >= 0) pinned_remaining.push_back(v);
        }
        std::vector<int> layer;
        {
            // Free-only case: pinned bits forced to 0, take the first
            // nonzero kernel vector.
            const Gf2System sys = layer_system(active, remaining, pinned_remaining, {});
            if (auto sol = solve_gf2(sys)) {
                std::uint64_t pick = sol->particular;  // zero for homogeneous systems
                if (!pick && !sol->kernel.empty()) pick = sol->kernel.front();
                for (std::size_t i = 0; i < remaining.size(); ++i) {
                    if ((pick >> i) & 1u) layer.push_back(remaining[i]);
                }
            }
        }
        if (layer.empty() && pin && next_pin < pin->levels.size()) {
            std::vector<int> zeros;
            for (int v : pinned_remaining) {
                if (pin_level[static_cast<std::size_t>(v)] != static_cast<int>(next_pin))
                    zeros.push_back(v);
            }
            const Gf2System sys =
                layer_system(active, remaining, zeros, pin->levels[next_pin]);
            if (auto sol = solve_gf2(sys)) {
                for (std::size_t i = 0; i < remaining.size(); ++i) {
                    if ((sol->particular >> i) & 1u) layer.push_back(remaining[i]);
                }
                ++next_pin;
            }
        }
        if (layer.empty()) return std::nullopt;
        for (int v : layer) {
            alive[static_cast<std::size_t>(v)] = 0;
            --remaining_count;
        }
        std::erase_if(active.conjuncts, [&](const MinAffineForm& f) {
            return std::any_of(f.scope.begin(), f.scope.end(),
                               [&](int v) { return !alive[static_cast<std::size_t>(v)]; });
        });
        layers.push_back(std::move(layer));
    }
    return finish_layers(csp.num_vars, std::move(layers));
}

bool satisfies(const LayeredSolution& sol, std::span<const InstanceConstraint> constraints) {
    for (const InstanceConstraint& con : constraints) {
        std::vector<Rational> args;
        args.reserve(con.args.size());
        for (int v : con.args) args.push_back(sol.values[static_cast<std::size_t>(v)]);
        if (!con.rel.contains(orbit_of_tuple(args))) return false;
    }
    return true;
}

bool satisfies_clauses(const WeakOrder& w, std::span<const MinClause> clauses) {
    return std::all_of(clauses.begin(), clauses.end(),
                       [&](const MinClause& c) { return clause_holds(c, w.ranks()); });
}

bool satisfies_conjuncts(const WeakOrder& w, std::span<const MinAffineForm> conjuncts) {
    return std::all_of(conjuncts.begin(), conjuncts.end(),
                       [&](const MinAffineForm& f) { return form_holds(f, w); });
}

bool realizes(const WeakOrder& w, const PinnedOrder& pin) {
    for (std::size_t j = 0; j < pin.levels.size(); ++j) {
        for (std::size_t l = 0; l < pin.levels[j].size(); ++l) {
            const int a = pin.levels[j][l];
            const int b = pin.levels[j].front();
            if (w.rank(a) != w.rank(b)) return false;
        }
        if (j + 1 < pin.levels.size() &&
            w.rank(pin.levels[j].front()) >= w.rank(pin.levels[j + 1].front()))
            return false;
    }
    return true;
}

}  // namespace qtcs
