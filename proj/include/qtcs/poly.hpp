#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qtcs/relation.hpp"

namespace qtcs {

// The six binary operations under study. max, dual-mx and dual-pp are the
// negation conjugates of min, mx and pp.
enum class BinOp { Min, Max, Mx, DualMx, Pp, DualPp };

std::optional<BinOp> binop_from_name(std::string_view name);
const char* binop_name(BinOp op);

// pp reads the sign of its first argument, so its patterns carry a zero
// placement; the order-invariant operations do not.
bool binop_signed(BinOp op);

// A weak order on 2k coordinates whose first k restrict to orbit p and last
// k to orbit q. For sign-reading operations, zero_pos places the constant 0
// against the FIRST tuple's levels: even 2g = strictly inside gap g (g = 0
// is below all levels), odd 2j+1 = equal to level j. zero_pos is -1 for the
// order-invariant operations.
struct CombinedPattern {
    int arity = 0;
    WeakOrder combined;
    int zero_pos = -1;
};

// Every interleaving of p's levels with q's levels, in lexicographic order
// of the combined rank array; with_zero additionally expands each pattern by
// all 2*levels(p)+1 zero placements (ascending).
std::vector<CombinedPattern> shuffles(const WeakOrder& p, const WeakOrder& q, bool with_zero);

WeakOrder apply_min_pattern(const CombinedPattern& c);
WeakOrder apply_mx_pattern(const CombinedPattern& c);
WeakOrder apply_pp_pattern(const CombinedPattern& c);

// Applies any of the six operations; duals run their base operation on the
// reversed pattern and reverse the result.
WeakOrder apply_pattern(BinOp op, const CombinedPattern& c);

// Concrete rational tuples (t, t') realizing the pattern, shifted so the
// zero placement holds when present.
std::pair<std::vector<Rational>, std::vector<Rational>> pattern_tuples(const CombinedPattern& c);

// Componentwise numeric evaluation on concrete tuples; the independent route
// used to cross-check apply_pattern. For Mx/DualMx the inputs must lie on an
// integer grid so that alpha(x) = 2x, beta(x) = 2x + 1/2 witness the
// alpha(x) < beta(x) < alpha(x + eps) ordering.
std::vector<Rational> apply_numeric(BinOp op, std::span<const Rational> a,
                                    std::span<const Rational> b);

struct PreservationCounterexample {
    WeakOrder p;
    WeakOrder q;
    CombinedPattern pattern;
    WeakOrder image;
};

struct PreservationReport {
    bool closed = true;
    std::optional<PreservationCounterexample> counterexample;
};

// Exact preservation test: closed iff for every ordered orbit pair of R and
// every combined pattern the image orbit stays in R. The first failure in
// scan order (orbit pairs, then patterns, then zero placements) is reported.
PreservationReport preserves(BinOp op, const TemporalRelation& R);

}  // namespace qtcs
