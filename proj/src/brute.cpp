#include "qtcs/brute.hpp"

#include <algorithm>
#include <stdexcept>

namespace qtcs {

namespace {

template <typename Pred>
std::optional<WeakOrder> brute_search(int num_vars, const std::optional<PinnedOrder>& pin,
                                      Pred&& satisfied) {
    if (num_vars > kBruteCspMaxVars)
        throw std::invalid_argument("brute-force cap exceeded");
    std::optional<WeakOrder> found;
    for_each_weak_order(num_vars, [&](const WeakOrder& w) {
        if (found) return;
        if (pin && !realizes(w, *pin)) return;
        if (satisfied(w)) found = w;
    });
    return found;
}

}  // namespace

std::optional<WeakOrder> brute_min_csp(const MinCsp& csp,
                                       const std::optional<PinnedOrder>& pin) {
    return brute_search(csp.num_vars, pin,
                        [&](const WeakOrder& w) { return satisfies_clauses(w, csp.clauses); });
}

std::optional<WeakOrder> brute_mx_csp(const MxCsp& csp,
                                      const std::optional<PinnedOrder>& pin) {
    return brute_search(csp.num_vars, pin, [&](const WeakOrder& w) {
        return satisfies_conjuncts(w, csp.conjuncts);
    });
}

std::optional<WeakOrder> brute_csp(int num_vars,
                                   std::span<const InstanceConstraint> constraints,
                                   const std::optional<PinnedOrder>& pin) {
    std::vector<int> sub;
    return brute_search(num_vars, pin, [&](const WeakOrder& w) {
        for (const InstanceConstraint& con : constraints) {
            sub.assign(con.args.begin(), con.args.end());
            if (!con.rel.contains(w.restricted(sub))) return false;
        }
        return true;
    });
}

namespace {

bool game_rec(std::span<const InstanceConstraint> constraints,
              std::span<const std::pair<int, Quant>> prefix,
              std::vector<std::optional<Rational>>& values) {
    if (prefix.empty()) {
        std::vector<Rational> args;
        for (const InstanceConstraint& con : constraints) {
            args.clear();
            for (int v : con.args) args.push_back(*values[static_cast<std::size_t>(v)]);
            if (!con.rel.contains(orbit_of_tuple(args))) return false;
        }
        return true;
    }
    const auto [var, quant] = prefix.front();
    // One representative per region: each existing value, each gap between
    // neighbours, below the minimum, above the maximum.
    std::vector<Rational> present;
    for (const auto& v : values) {
        if (v) present.push_back(*v);
    }
    std::sort(present.begin(), present.end());
    present.erase(std::unique(present.begin(), present.end()), present.end());
    std::vector<Rational> candidates;
    if (present.empty()) {
        candidates.emplace_back(0);
    } else {
        candidates.push_back(present.front() - Rational(1));
        for (std::size_t i = 0; i < present.size(); ++i) {
            candidates.push_back(present[i]);
            if (i + 1 < present.size())
                candidates.push_back(Rational::midpoint(present[i], present[i + 1]));
        }
        candidates.push_back(present.back() + Rational(1));
    }
    for (const Rational& c : candidates) {
        values[static_cast<std::size_t>(var)] = c;
        const bool sub = game_rec(constraints, prefix.subspan(1), values);
        values[static_cast<std::size_t>(var)] = std::nullopt;
        if (quant == Quant::Exists && sub) return true;
        if (quant == Quant::ForAll && !sub) return false;
    }
    return quant == Quant::ForAll;
}

}  // namespace

bool brute_quantified(int num_vars, std::span<const InstanceConstraint> constraints,
                      std::span<const std::pair<int, Quant>> prefix,
                      std::span<const std::pair<int, Rational>> fixed) {
    if (num_vars > kBruteQcspMaxVars)
        throw std::invalid_argument("brute-force cap exceeded");
    std::vector<std::optional<Rational>> values(static_cast<std::size_t>(num_vars));
    for (const auto& [var, val] : fixed) values[static_cast<std::size_t>(var)] = val;
    return game_rec(constraints, prefix, values);
}

bool brute_qcsp(const Instance& inst) {
    if (inst.kind != InstanceKind::Qcsp)
        throw std::invalid_argument("brute_qcsp expects a quantified instance");
    std::vector<std::pair<int, Quant>> prefix;
    prefix.reserve(inst.vars.size());
    for (std::size_t i = 0; i < inst.vars.size(); ++i)
        prefix.emplace_back(static_cast<int>(i), inst.quants[i]);
    return brute_quantified(static_cast<int>(inst.vars.size()), inst.constraints, prefix, {});
}

}  // namespace qtcs
