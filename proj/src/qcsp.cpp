#include "qtcs/qcsp.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

namespace qtcs {

Instance normalize_prefix(const Instance& inst) {
    if (inst.kind != InstanceKind::Qcsp)
        throw std::invalid_argument("prefix normalization expects a quantified instance");
    std::set<std::string> used(inst.vars.begin(), inst.vars.end());
    int counter = 0;
    auto fresh = [&]() {
        std::string name;
        do {
            name = "_d" + std::to_string(++counter);
        } while (used.count(name));
        used.insert(name);
        return name;
    };

    Instance out;
    out.kind = InstanceKind::Qcsp;
    std::vector<int> remap(inst.vars.size());
    Quant expect = Quant::ForAll;
    std::size_t i = 0;
    while (i < inst.vars.size()) {
        if (inst.quants[i] == expect) {
            remap[i] = static_cast<int>(out.vars.size());
            out.vars.push_back(inst.vars[i]);
            out.quants.push_back(inst.quants[i]);
            ++i;
        } else {
            out.vars.push_back(fresh());
            out.quants.push_back(expect);
        }
        expect = expect == Quant::ForAll ? Quant::Exists : Quant::ForAll;
    }
    if (expect == Quant::Exists) {
        out.vars.push_back(fresh());
        out.quants.push_back(Quant::Exists);
    }
    out.constraints = inst.constraints;
    for (InstanceConstraint& con : out.constraints) {
        for (int& arg : con.args) arg = remap[static_cast<std::size_t>(arg)];
    }
    return out;
}

std::vector<PinnedOrder> region_representatives(const PinnedOrder& base, int y_var) {
    std::vector<PinnedOrder> out;
    const std::size_t d = base.levels.size();
    out.reserve(2 * d + 1);
    for (std::size_t slot = 0; slot <= 2 * d; ++slot) {
        PinnedOrder region;
        for (std::size_t j = 0; j < d; ++j) {
            if (slot == 2 * j) region.levels.push_back({y_var});  // gap below level j
            if (slot == 2 * j + 1) {
                auto level = base.levels[j];
                level.push_back(y_var);
                region.levels.push_back(std::move(level));
                continue;
            }
            region.levels.push_back(base.levels[j]);
        }
        if (slot == 2 * d) region.levels.push_back({y_var});  // above everything
        out.push_back(std::move(region));
    }
    return out;
}

namespace {

template <typename Csp, typename Solve>
UniversalCheck universal_check_impl(const Csp& kernel, const PinnedOrder& witness, int y_var,
                                    Solve&& solve) {
    UniversalCheck result;
    const std::vector<PinnedOrder> regions = region_representatives(witness, y_var);
    result.regions = static_cast<int>(regions.size());
    for (std::size_t r = 0; r < regions.size(); ++r) {
        if (!solve(kernel, regions[r])) {
            if (result.ok) {
                result.ok = false;
                result.failing_region = static_cast<int>(r);
            }
        }
    }
    return result;
}

}  // namespace

UniversalCheck universal_check(const MinCsp& kernel, const PinnedOrder& witness, int y_var) {
    return universal_check_impl(kernel, witness, y_var,
                                [](const MinCsp& c, const PinnedOrder& pin) {
                                    return solve_min_csp(c, pin).has_value();
                                });
}

UniversalCheck universal_check(const MxCsp& kernel, const PinnedOrder& witness, int y_var) {
    return universal_check_impl(kernel, witness, y_var,
                                [](const MxCsp& c, const PinnedOrder& pin) {
                                    return solve_mx_csp(c, pin).has_value();
                                });
}

void add_phi_prime_constraints(MinCsp& kernel, int level, std::span<const int> universals,
                               std::span<const int> existentials) {
    const int y = universals[static_cast<std::size_t>(level - 1)];
    for (int j = 0; j + 1 < level; ++j) {
        add_min_clause(kernel,
                       MinClause{y, {{existentials[static_cast<std::size_t>(j)], true}}});
        add_min_clause(kernel, MinClause{y, {{universals[static_cast<std::size_t>(j)], true}}});
    }
}

void add_phi_prime_constraints(MxCsp& kernel, int level, std::span<const int> universals,
                               std::span<const int> existentials) {
    const int y = universals[static_cast<std::size_t>(level - 1)];
    const BoolRelation less(2, {0b10});  // min-tuple of (a, b) is (0,1) iff a < b
    for (int j = 0; j + 1 < level; ++j) {
        bool ok = add_mx_conjunct(
            kernel, std::vector<int>{existentials[static_cast<std::size_t>(j)], y}, less);
        ok = ok && add_mx_conjunct(
                       kernel, std::vector<int>{universals[static_cast<std::size_t>(j)], y},
                       less);
        assert(ok);
        (void)ok;
    }
}

namespace {

// Witness levels restricted to the given variables, empties dropped.
PinnedOrder restrict_levels(const LayeredSolution& sol, const std::vector<char>& keep) {
    PinnedOrder out;
    for (const auto& layer : sol.layers) {
        std::vector<int> level;
        for (int v : layer) {
            if (keep[static_cast<std::size_t>(v)]) level.push_back(v);
        }
        if (!level.empty()) out.levels.push_back(std::move(level));
    }
    return out;
}

std::size_t constraint_count(const MinCsp& c) { return c.clauses.size(); }
std::size_t constraint_count(const MxCsp& c) { return c.conjuncts.size(); }

template <typename Csp, typename Solve>
QcspResult run_levels(Csp kernel, int n, const std::vector<int>& universals,
                      const std::vector<int>& existentials, Solve&& solve) {
    QcspResult result;
    // The constraint set grows downward: level i adds x_j < y_i and
    // y_j < y_i for all j < i. The universal check at level i runs on the
    // set *before* the level-i additions.
    for (int i = n; i >= 1; --i) {
        const Csp psi = kernel;  // Psi_i
        const int y = universals[static_cast<std::size_t>(i - 1)];
        add_phi_prime_constraints(kernel, i, universals, existentials);
        LevelTrace t;
        t.level = i;
        t.constraint_count = static_cast<int>(constraint_count(kernel));
        const auto witness = solve(kernel, std::optional<PinnedOrder>{});
        t.sat = witness.has_value();
        if (!t.sat) {
            result.trace.push_back(t);
            result.value = false;
            return result;
        }
        std::vector<char> keep(static_cast<std::size_t>(kernel.num_vars), 0);
        for (int j = 0; j + 1 < i; ++j) {
            keep[static_cast<std::size_t>(existentials[static_cast<std::size_t>(j)])] = 1;
            keep[static_cast<std::size_t>(universals[static_cast<std::size_t>(j)])] = 1;
        }
        const PinnedOrder w = restrict_levels(*witness, keep);
        t.witness_levels = static_cast<int>(w.levels.size());
        const UniversalCheck check = universal_check(psi, w, y);
        t.regions = check.regions;
        assert(check.regions == 2 * t.witness_levels + 1);
        t.forall_ok = check.ok;
        t.failing_region = check.failing_region;
        result.trace.push_back(t);
        if (!check.ok) {
            result.value = false;
            return result;
        }
    }
    result.value = true;
    return result;
}

}  // namespace

QcspResult solve_qcsp(const Instance& inst, Engine engine) {
    if (inst.kind != InstanceKind::Qcsp)
        throw std::invalid_argument("solve_qcsp expects a quantified instance");
    if (engine == Engine::Brute) {
        QcspResult r;
        r.value = brute_qcsp(inst);
        return r;
    }
    if (engine == Engine::Auto) engine = pick_engine(inst.constraints);

    const Instance norm = normalize_prefix(inst);
    const int num_vars = static_cast<int>(norm.vars.size());
    const int n = num_vars / 2;
    std::vector<int> universals, existentials;
    for (int v = 0; v < num_vars; ++v) {
        (norm.quants[static_cast<std::size_t>(v)] == Quant::ForAll ? universals : existentials)
            .push_back(v);
    }
    assert(static_cast<int>(universals.size()) == n);
    assert(static_cast<int>(existentials.size()) == n);

    if (engine == Engine::Min) {
        auto csp = to_min_csp(num_vars, norm.constraints);
        if (!csp)
            throw UnsupportedLanguage("some constraint relation is not min-closed");
        return run_levels(std::move(*csp), n, universals, existentials,
                          [](const MinCsp& c, const std::optional<PinnedOrder>& pin) {
                              return solve_min_csp(c, pin);
                          });
    }
    auto csp = to_mx_csp(num_vars, norm.constraints);
    if (!csp) throw UnsupportedLanguage("some constraint relation is not mx-closed");
    return run_levels(std::move(*csp), n, universals, existentials,
                      [](const MxCsp& c, const std::optional<PinnedOrder>& pin) {
                          return solve_mx_csp(c, pin);
                      });
}

std::string trace_line(const LevelTrace& t) {
    std::string line = "level " + std::to_string(t.level) +
                       ": sat=" + (t.sat ? "YES" : "NO");
    if (!t.sat) return line;
    line += ", |w|=" + std::to_string(t.witness_levels);
    line += ", forall=";
    line += t.forall_ok ? "OK" : "FAIL[region " + std::to_string(t.failing_region) + "]";
    return line;
}

}  // namespace qtcs
