#include "qtcs/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace qtcs {

std::optional<BinOp> binop_from_name(std::string_view name) {
    if (name == "min") return BinOp::Min;
    if (name == "max") return BinOp::Max;
    if (name == "mx") return BinOp::Mx;
    if (name == "dual-mx") return BinOp::DualMx;
    if (name == "pp") return BinOp::Pp;
    if (name == "dual-pp") return BinOp::DualPp;
    return std::nullopt;
}

const char* binop_name(BinOp op) {
    switch (op) {
        case BinOp::Min: return "min";
        case BinOp::Max: return "max";
        case BinOp::Mx: return "mx";
        case BinOp::DualMx: return "dual-mx";
        case BinOp::Pp: return "pp";
        case BinOp::DualPp: return "dual-pp";
    }
    return "?";
}

bool binop_signed(BinOp op) { return op == BinOp::Pp || op == BinOp::DualPp; }

namespace {

// Recursively merge the level chains of p and q into combined levels; each
// step either advances one chain or ties both.
void merge_levels(int lp, int lq, int up, int uq, std::vector<int>& map_p,
                  std::vector<int>& map_q, int next, std::vector<std::pair<std::vector<int>, std::vector<int>>>& out) {
    if (up == lp && uq == lq) {
        out.emplace_back(map_p, map_q);
        return;
    }
    if (up < lp && uq < lq) {
        map_p[static_cast<std::size_t>(up)] = next;
        map_q[static_cast<std::size_t>(uq)] = next;
        merge_levels(lp, lq, up + 1, uq + 1, map_p, map_q, next + 1, out);
    }
    if (up < lp) {
        map_p[static_cast<std::size_t>(up)] = next;
        merge_levels(lp, lq, up + 1, uq, map_p, map_q, next + 1, out);
    }
    if (uq < lq) {
        map_q[static_cast<std::size_t>(uq)] = next;
        merge_levels(lp, lq, up, uq + 1, map_p, map_q, next + 1, out);
    }
}

WeakOrder first_orbit(const CombinedPattern& c) {
    std::vector<int> coords(static_cast<std::size_t>(c.arity));
    for (int i = 0; i < c.arity; ++i) coords[static_cast<std::size_t>(i)] = i;
    return c.combined.restricted(coords);
}

}  // namespace

std::vector<CombinedPattern> shuffles(const WeakOrder& p, const WeakOrder& q, bool with_zero) {
    if (p.arity() != q.arity()) throw std::invalid_argument("orbit arities must agree");
    const int k = p.arity();
    std::vector<std::pair<std::vector<int>, std::vector<int>>> merges;
    std::vector<int> map_p(static_cast<std::size_t>(p.levels()));
    std::vector<int> map_q(static_cast<std::size_t>(q.levels()));
    merge_levels(p.levels(), q.levels(), 0, 0, map_p, map_q, 0, merges);

    std::vector<CombinedPattern> out;
    out.reserve(merges.size());
    for (const auto& [mp, mq] : merges) {
        std::vector<int> ranks(static_cast<std::size_t>(2 * k));
        for (int i = 0; i < k; ++i) {
            ranks[static_cast<std::size_t>(i)] = mp[static_cast<std::size_t>(p.rank(i))];
            ranks[static_cast<std::size_t>(k + i)] = mq[static_cast<std::size_t>(q.rank(i))];
        }
        CombinedPattern c;
        c.arity = k;
        c.combined = WeakOrder(std::move(ranks));
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const CombinedPattern& a, const CombinedPattern& b) {
        return a.combined < b.combined;
    });
    if (with_zero) {
        std::vector<CombinedPattern> expanded;
        expanded.reserve(out.size() * static_cast<std::size_t>(2 * p.levels() + 1));
        for (const CombinedPattern& c : out) {
            for (int z = 0; z <= 2 * p.levels(); ++z) {
                CombinedPattern cz = c;
                cz.zero_pos = z;
                expanded.push_back(std::move(cz));
            }
        }
        return expanded;
    }
    return out;
}

WeakOrder apply_min_pattern(const CombinedPattern& c) {
    const int k = c.arity;
    std::vector<int> keys(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        keys[static_cast<std::size_t>(i)] = std::min(c.combined.rank(i), c.combined.rank(k + i));
    return WeakOrder::of_keys(std::span<const int>(keys));
}

WeakOrder apply_mx_pattern(const CombinedPattern& c) {
    // Key (m, s): m = combined rank of the minimum, s = 1 on ties. The
    // lexicographic key order is exactly alpha(m) < beta(m) < alpha(m+1).
    const int k = c.arity;
    std::vector<std::pair<int, int>> keys(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const int a = c.combined.rank(i);
        const int b = c.combined.rank(k + i);
        keys[static_cast<std::size_t>(i)] = {std::min(a, b), a == b ? 1 : 0};
    }
    return WeakOrder::of_keys(std::span<const std::pair<int, int>>(keys));
}

WeakOrder apply_pp_pattern(const CombinedPattern& c) {
    if (c.zero_pos < 0) throw std::invalid_argument("pp pattern needs a zero placement");
    const int k = c.arity;
    const WeakOrder p = first_orbit(c);
    // First-argument level j is non-positive iff it lies at or below the
    // zero placement.
    auto non_positive = [&](int level) {
        return c.zero_pos % 2 == 1 ? level <= c.zero_pos / 2 : level < c.zero_pos / 2;
    };
    std::vector<std::pair<int, int>> keys(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        if (non_positive(p.rank(i))) {
            keys[static_cast<std::size_t>(i)] = {0, c.combined.rank(i)};
        } else {
            keys[static_cast<std::size_t>(i)] = {1, c.combined.rank(k + i)};
        }
    }
    return WeakOrder::of_keys(std::span<const std::pair<int, int>>(keys));
}

namespace {

CombinedPattern reversed_pattern(const CombinedPattern& c) {
    CombinedPattern r;
    r.arity = c.arity;
    r.combined = c.combined.reversed();
    if (c.zero_pos >= 0) {
        const int lp = first_orbit(c).levels();
        r.zero_pos = 2 * lp - c.zero_pos;
    }
    return r;
}

}  // namespace

WeakOrder apply_pattern(BinOp op, const CombinedPattern& c) {
    switch (op) {
        case BinOp::Min: return apply_min_pattern(c);
        case BinOp::Mx: return apply_mx_pattern(c);
        case BinOp::Pp: return apply_pp_pattern(c);
        case BinOp::Max: return apply_min_pattern(reversed_pattern(c)).reversed();
        case BinOp::DualMx: return apply_mx_pattern(reversed_pattern(c)).reversed();
        case BinOp::DualPp: return apply_pp_pattern(reversed_pattern(c)).reversed();
    }
    throw std::logic_error("unreachable");
}

std::pair<std::vector<Rational>, std::vector<Rational>> pattern_tuples(const CombinedPattern& c) {
    const int k = c.arity;
    Rational shift(0);
    if (c.zero_pos >= 0) {
        // Pick combined-rank values for the first tuple's levels, then shift
        // everything so 0 lands where the placement says.
        const WeakOrder p = first_orbit(c);
        std::vector<int> level_value(static_cast<std::size_t>(p.levels()), 0);
        for (int i = 0; i < k; ++i)
            level_value[static_cast<std::size_t>(p.rank(i))] = c.combined.rank(i);
        if (c.zero_pos % 2 == 1) {
            shift = Rational(level_value[static_cast<std::size_t>(c.zero_pos / 2)]);
        } else if (c.zero_pos / 2 == 0) {
            shift = Rational(level_value.front()) - Rational(1, 2);
        } else if (c.zero_pos / 2 == p.levels()) {
            shift = Rational(level_value.back()) + Rational(1, 2);
        } else {
            shift = Rational(level_value[static_cast<std::size_t>(c.zero_pos / 2)]) - Rational(1, 2);
        }
    }
    std::vector<Rational> a, b;
    a.reserve(static_cast<std::size_t>(k));
    b.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) a.push_back(Rational(c.combined.rank(i)) - shift);
    for (int i = 0; i < k; ++i) b.push_back(Rational(c.combined.rank(k + i)) - shift);
    return {std::move(a), std::move(b)};
}

std::vector<Rational> apply_numeric(BinOp op, std::span<const Rational> a,
                                    std::span<const Rational> b) {
    if (a.size() != b.size()) throw std::invalid_argument("tuple sizes must agree");
    std::vector<Rational> out;
    out.reserve(a.size());
    switch (op) {
        case BinOp::Min:
            for (std::size_t i = 0; i < a.size(); ++i) out.push_back(std::min(a[i], b[i]));
            break;
        case BinOp::Max:
            for (std::size_t i = 0; i < a.size(); ++i) out.push_back(std::max(a[i], b[i]));
            break;
        case BinOp::Mx:
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (a[i] == b[i])
                    out.push_back(Rational(2) * a[i] + Rational(1, 2));
                else
                    out.push_back(Rational(2) * std::min(a[i], b[i]));
            }
            break;
        case BinOp::Pp: {
            // Second-branch values must clear every first-branch value; an
            // offset beyond the magnitude bound does it.
            Rational bound(0);
            for (const Rational& v : a) bound = std::max(bound, std::max(v, -v));
            for (const Rational& v : b) bound = std::max(bound, std::max(v, -v));
            const Rational offset = Rational(2) * bound + Rational(1);
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (a[i] <= Rational(0))
                    out.push_back(a[i]);
                else
                    out.push_back(offset + b[i]);
            }
            break;
        }
        case BinOp::DualMx:
        case BinOp::DualPp: {
            std::vector<Rational> na(a.begin(), a.end()), nb(b.begin(), b.end());
            for (Rational& v : na) v = -v;
            for (Rational& v : nb) v = -v;
            out = apply_numeric(op == BinOp::DualMx ? BinOp::Mx : BinOp::Pp, na, nb);
            for (Rational& v : out) v = -v;
            break;
        }
    }
    return out;
}

PreservationReport preserves(BinOp op, const TemporalRelation& R) {
    const bool with_zero = binop_signed(op);
    for (const WeakOrder& p : R.orbits()) {
        for (const WeakOrder& q : R.orbits()) {
            for (const CombinedPattern& c : shuffles(p, q, with_zero)) {
                const WeakOrder image = apply_pattern(op, c);
                if (!R.contains(image)) {
                    PreservationReport report;
                    report.closed = false;
                    report.counterexample = PreservationCounterexample{p, q, c, image};
                    return report;
                }
            }
        }
    }
    return PreservationReport{};
}

}  // namespace qtcs
