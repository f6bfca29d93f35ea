#include "qtcs/normal_form.hpp"

#include <algorithm>
#include <stdexcept>

namespace qtcs {

bool clause_holds(const MinClause& c, std::span<const int> ranks) {
    const int h = ranks[static_cast<std::size_t>(c.head)];
    for (const MinLiteral& lit : c.literals) {
        const int b = ranks[static_cast<std::size_t>(lit.body)];
        if (lit.strict ? h > b : h >= b) return true;
    }
    return false;
}

bool clause_holds(const PPClause& c, std::span<const int> ranks) {
    const int h = ranks[static_cast<std::size_t>(c.head)];
    for (int y : c.diseq) {
        if (h != ranks[static_cast<std::size_t>(y)]) return true;
    }
    for (int z : c.geq) {
        if (h >= ranks[static_cast<std::size_t>(z)]) return true;
    }
    return false;
}

bool form_holds(const MinAffineForm& f, const WeakOrder& w) {
    if (f.scope.empty()) return !f.T.is_empty();
    const WeakOrder sub = w.restricted(f.scope);
    return f.T.contains(sub.min_bits());
}

namespace {

template <typename Clause>
TemporalRelation relation_of_clauses(std::span<const Clause> clauses, int arity) {
    std::vector<WeakOrder> orbits;
    for_each_weak_order(arity, [&](const WeakOrder& w) {
        for (const Clause& c : clauses) {
            if (!clause_holds(c, w.ranks())) return;
        }
        orbits.push_back(w);
    });
    return TemporalRelation(arity, std::move(orbits));
}

}  // namespace

TemporalRelation relation_of(std::span<const MinClause> clauses, int arity) {
    return relation_of_clauses(clauses, arity);
}

TemporalRelation relation_of(std::span<const PPClause> clauses, int arity) {
    return relation_of_clauses(clauses, arity);
}

TemporalRelation relation_of(std::span<const MinAffineForm> forms, int arity) {
    std::vector<WeakOrder> orbits;
    for_each_weak_order(arity, [&](const WeakOrder& w) {
        for (const MinAffineForm& f : forms) {
            if (!form_holds(f, w)) return;
        }
        orbits.push_back(w);
    });
    return TemporalRelation(arity, std::move(orbits));
}

namespace {

// Dynamic bitsets over the orbit universe of one arity carry the synthesis:
// a candidate's set of satisfied orbits, the relation's orbit set, and the
// conjunction of kept candidates are all plain word vectors.
using Mask = std::vector<std::uint64_t>;

struct Universe {
    explicit Universe(int arity) : orbits(all_weak_orders(arity)) {
        words = (orbits.size() + 63) / 64;
    }
    std::vector<WeakOrder> orbits;
    std::size_t words = 0;

    Mask empty_mask() const { return Mask(words, 0); }

    template <typename Pred>
    Mask mask_of(Pred&& pred) const {
        Mask m(words, 0);
        for (std::size_t i = 0; i < orbits.size(); ++i) {
            if (pred(orbits[i])) m[i / 64] |= std::uint64_t{1} << (i % 64);
        }
        return m;
    }
};

bool subset(const Mask& a, const Mask& b) {  // a subset of b
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] & ~b[i]) return false;
    }
    return true;
}

// Greedy minimization: scan candidates from the last enumerated to the
// first, dropping any whose removal keeps the conjunction equal to the
// target. The survivors are the strongest entailed shapes.
std::vector<std::size_t> prune_to_minimal(const std::vector<Mask>& masks, const Mask& target,
                                          const Mask& full) {
    const std::size_t n = masks.size();
    std::vector<char> kept(n, 1);
    for (std::size_t idx = n; idx-- > 0;) {
        Mask conj = full;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == idx || !kept[j]) continue;
            for (std::size_t wd = 0; wd < conj.size(); ++wd) conj[wd] &= masks[j][wd];
        }
        if (conj == target) kept[idx] = 0;
    }
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < n; ++j) {
        if (kept[j]) out.push_back(j);
    }
    return out;
}

}  // namespace

std::optional<std::vector<MinClause>> min_clause_form(const TemporalRelation& R) {
    const int k = R.arity();
    if (k == 0) throw std::invalid_argument("clause synthesis needs arity >= 1");
    const Universe u(k);
    const Mask target = u.mask_of([&](const WeakOrder& w) { return R.contains(w); });

    std::vector<MinClause> entailed;
    std::vector<Mask> entailed_masks;
    // Candidates: every head, every assignment of {absent, >, >=} to the
    // other variables (odometer order; all-absent first is the FALSE clause).
    for (int head = 0; head < k; ++head) {
        std::vector<int> others;
        for (int v = 0; v < k; ++v) {
            if (v != head) others.push_back(v);
        }
        std::vector<int> ops(others.size(), 0);
        while (true) {
            MinClause c;
            c.head = head;
            for (std::size_t i = 0; i < others.size(); ++i) {
                if (ops[i] == 1) c.literals.push_back({others[i], true});
                if (ops[i] == 2) c.literals.push_back({others[i], false});
            }
            Mask m = u.mask_of([&](const WeakOrder& w) { return clause_holds(c, w.ranks()); });
            if (subset(target, m)) {
                entailed.push_back(std::move(c));
                entailed_masks.push_back(std::move(m));
            }
            std::size_t pos = 0;
            while (pos < ops.size() && ops[pos] == 2) ops[pos++] = 0;
            if (pos == ops.size()) break;
            ++ops[pos];
        }
    }

    const Mask full = u.mask_of([](const WeakOrder&) { return true; });
    Mask conj = full;
    for (const Mask& m : entailed_masks) {
        for (std::size_t wd = 0; wd < u.words; ++wd) conj[wd] &= m[wd];
    }
    if (conj != target) return std::nullopt;

    std::vector<MinClause> out;
    for (std::size_t idx : prune_to_minimal(entailed_masks, target, full))
        out.push_back(entailed[idx]);
    return out;
}

std::optional<std::vector<PPClause>> pp_clause_form(const TemporalRelation& R) {
    const int k = R.arity();
    if (k == 0) throw std::invalid_argument("clause synthesis needs arity >= 1");
    const Universe u(k);
    const Mask target = u.mask_of([&](const WeakOrder& w) { return R.contains(w); });

    std::vector<PPClause> entailed;
    std::vector<Mask> entailed_masks;
    for (int head = 0; head < k; ++head) {
        std::vector<int> others;
        for (int v = 0; v < k; ++v) {
            if (v != head) others.push_back(v);
        }
        const std::size_t subsets = std::size_t{1} << others.size();
        for (std::size_t dmask = 0; dmask < subsets; ++dmask) {
            for (std::size_t gmask = 0; gmask < subsets; ++gmask) {
                if (dmask & gmask) continue;  // shared body makes the clause a tautology
                PPClause c;
                c.head = head;
                for (std::size_t i = 0; i < others.size(); ++i) {
                    if ((dmask >> i) & 1) c.diseq.push_back(others[i]);
                    if ((gmask >> i) & 1) c.geq.push_back(others[i]);
                }
                Mask m =
                    u.mask_of([&](const WeakOrder& w) { return clause_holds(c, w.ranks()); });
                if (subset(target, m)) {
                    entailed.push_back(std::move(c));
                    entailed_masks.push_back(std::move(m));
                }
            }
        }
    }

    const Mask full = u.mask_of([](const WeakOrder&) { return true; });
    Mask conj = full;
    for (const Mask& m : entailed_masks) {
        for (std::size_t wd = 0; wd < u.words; ++wd) conj[wd] &= m[wd];
    }
    if (conj != target) return std::nullopt;

    std::vector<PPClause> out;
    for (std::size_t idx : prune_to_minimal(entailed_masks, target, full))
        out.push_back(entailed[idx]);
    return out;
}

std::optional<std::vector<MinAffineForm>> min_affine_form(const TemporalRelation& R) {
    const int k = R.arity();
    if (k == 0) {
        // Induction base: the non-empty 0-ary relation is the empty
        // conjunction, the empty one a single empty-scope FALSE form.
        if (!R.is_empty()) return std::vector<MinAffineForm>{};
        return std::vector<MinAffineForm>{MinAffineForm{{}, BoolRelation(0)}};
    }
    const Universe u(k);
    const Mask target = u.mask_of([&](const WeakOrder& w) { return R.contains(w); });

    std::vector<MinAffineForm> entailed;
    std::vector<Mask> entailed_masks;
    for (std::uint64_t smask = 1; smask < (std::uint64_t{1} << k); ++smask) {
        std::vector<int> scope;
        for (int v = 0; v < k; ++v) {
            if ((smask >> v) & 1) scope.push_back(v);
        }
        const int width = static_cast<int>(scope.size());
        // Min-tuples of R's orbits restricted to the scope; their closure is
        // the strongest entailed near-affine relation on this scope.
        std::vector<std::uint64_t> tuples;
        for (const WeakOrder& w : R.orbits()) tuples.push_back(w.restricted(scope).min_bits());
        const BoolRelation closure = near_affine_closure(BoolRelation(width, std::move(tuples)));
        if (closure.size() == (std::uint64_t{1} << width) - 1) continue;  // tautology
        MinAffineForm f{scope, closure};
        Mask m = u.mask_of([&](const WeakOrder& w) { return form_holds(f, w); });
        entailed.push_back(std::move(f));
        entailed_masks.push_back(std::move(m));
    }

    const Mask full = u.mask_of([](const WeakOrder&) { return true; });
    Mask conj = full;
    for (const Mask& m : entailed_masks) {
        for (std::size_t wd = 0; wd < u.words; ++wd) conj[wd] &= m[wd];
    }
    if (conj != target) return std::nullopt;

    std::vector<MinAffineForm> out;
    for (std::size_t idx : prune_to_minimal(entailed_masks, target, full))
        out.push_back(entailed[idx]);
    return out;
}

namespace {

std::string var_at(std::span<const std::string> vars, int i) {
    return vars[static_cast<std::size_t>(i)];
}

}  // namespace

std::string print_clauses(std::span<const MinClause> clauses,
                          std::span<const std::string> vars) {
    std::string out;
    for (const MinClause& c : clauses) {
        if (!out.empty()) out += " & ";
        std::string body;
        if (c.literals.empty()) {
            // FALSE clause: no grammar literal for it, so print an
            // unsatisfiable comparison on the head.
            body = var_at(vars, c.head) + " > " + var_at(vars, c.head);
        } else {
            for (const MinLiteral& lit : c.literals) {
                if (!body.empty()) body += " | ";
                body += var_at(vars, c.head) + (lit.strict ? " > " : " >= ") +
                        var_at(vars, lit.body);
            }
        }
        out += "(" + body + ")";
    }
    if (out.empty()) out = "(" + var_at(vars, 0) + " = " + var_at(vars, 0) + ")";
    return out;
}

std::string print_clauses(std::span<const PPClause> clauses,
                          std::span<const std::string> vars) {
    std::string out;
    for (const PPClause& c : clauses) {
        if (!out.empty()) out += " & ";
        std::string body;
        for (int y : c.diseq) {
            if (!body.empty()) body += " | ";
            body += var_at(vars, c.head) + " != " + var_at(vars, y);
        }
        for (int z : c.geq) {
            if (!body.empty()) body += " | ";
            body += var_at(vars, c.head) + " >= " + var_at(vars, z);
        }
        if (body.empty()) body = var_at(vars, c.head) + " > " + var_at(vars, c.head);
        out += "(" + body + ")";
    }
    if (out.empty()) out = "(" + var_at(vars, 0) + " = " + var_at(vars, 0) + ")";
    return out;
}

std::string print_forms(std::span<const MinAffineForm> forms,
                        std::span<const std::string> vars) {
    std::string out;
    for (const MinAffineForm& f : forms) {
        if (!out.empty()) out += " & ";
        std::string body;
        const int w = static_cast<int>(f.scope.size());
        for (std::uint64_t t : f.T.members()) {
            if (!body.empty()) body += " | ";
            // Zeros share the minimum; chain them with '=' and put each
            // one-position strictly above the first zero.
            int first_zero = -1;
            std::string conj;
            for (int i = 0; i < w; ++i) {
                if ((t >> i) & 1) continue;
                if (first_zero < 0) {
                    first_zero = i;
                } else {
                    if (!conj.empty()) conj += " & ";
                    conj += var_at(vars, f.scope[static_cast<std::size_t>(first_zero)]) + " = " +
                            var_at(vars, f.scope[static_cast<std::size_t>(i)]);
                }
            }
            for (int i = 0; i < w; ++i) {
                if (!((t >> i) & 1)) continue;
                if (!conj.empty()) conj += " & ";
                conj += var_at(vars, f.scope[static_cast<std::size_t>(first_zero)]) + " < " +
                        var_at(vars, f.scope[static_cast<std::size_t>(i)]);
            }
            if (conj.empty())
                conj = var_at(vars, f.scope.front()) + " = " + var_at(vars, f.scope.front());
            body += "(" + conj + ")";
        }
        if (body.empty())
            body = var_at(vars, f.scope.front()) + " < " + var_at(vars, f.scope.front());
        out += "(" + body + ")";
    }
    if (out.empty()) out = "(" + var_at(vars, 0) + " = " + var_at(vars, 0) + ")";
    return out;
}

std::string scope_summary(const MinAffineForm& f, std::span<const std::string> vars) {
    std::string scope;
    for (int v : f.scope) {
        if (!scope.empty()) scope += ",";
        scope += var_at(vars, v);
    }
    // Tuple strings read in coordinate order, so sort the display strings.
    std::vector<std::string> texts;
    for (std::uint64_t t : f.T.members()) texts.push_back(bits_text(t, f.T.width()));
    std::sort(texts.begin(), texts.end());
    std::string tuples;
    for (const std::string& t : texts) {
        if (!tuples.empty()) tuples += ",";
        tuples += t;
    }
    return "scope (" + scope + "), T = {" + tuples + "}";
}

}  // namespace qtcs
