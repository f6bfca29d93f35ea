#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qtcs/gf2.hpp"
#include "qtcs/instance.hpp"
#include "qtcs/normal_form.hpp"

namespace qtcs {

// A prescribed weak order on a subset of the variables: sets are disjoint
// and non-empty, listed from lowest to highest. A solution realizes the pin
// exactly (same set = equal values, lower set = strictly smaller values).
struct PinnedOrder {
    std::vector<std::vector<int>> levels;
};

// Ordered layers of variables realizing a satisfying weak order; layer j is
// assigned the value j.
struct LayeredSolution {
    std::vector<std::vector<int>> layers;
    std::vector<Rational> values;  // indexed by variable

    WeakOrder order() const;
};

std::vector<std::pair<std::string, Rational>> assignment_of(
    const LayeredSolution& sol, std::span<const std::string> names);

// Clause instances over instance variables, normalized: head = body literals
// are resolved (>= makes the clause a tautology and drops it, > drops the
// literal) and duplicate bodies keep the weaker comparison.
struct MinCsp {
    int num_vars = 0;
    std::vector<MinClause> clauses;
};

// Adds a raw clause, normalizing repeated-variable literals.
void add_min_clause(MinCsp& csp, const MinClause& raw);

// Min-affine conjunct instances. Repeated scope variables are collapsed on
// add; collapse of an mx-closed relation's T is near-affine again, anything
// else is rejected (returns false).
struct MxCsp {
    int num_vars = 0;
    std::vector<MinAffineForm> conjuncts;
};

[[nodiscard]] bool add_mx_conjunct(MxCsp& csp, std::span<const int> scope_vars,
                                   const BoolRelation& T);

// The unique maximal S inside `allowed` such that every clause whose head
// lies in S has a non-strict literal with body in S; computed as a shrinking
// fixpoint. Valid sets are closed under union, so the fixpoint is maximal.
std::vector<int> max_free_set(const MinCsp& csp, std::span<const int> allowed);

std::optional<LayeredSolution> solve_min_csp(const MinCsp& csp,
                                             const std::optional<PinnedOrder>& pin = {});

// GF(2) system over indicator bits (position i = remaining[i]) whose
// solutions are the valid bottom layers: each conjunct contributes its
// parity checks, forced coordinates pin the indicator bits.
Gf2System layer_system(const MxCsp& csp, std::span<const int> remaining,
                       std::span<const int> force_zero, std::span<const int> force_one);

std::optional<LayeredSolution> solve_mx_csp(const MxCsp& csp,
                                            const std::optional<PinnedOrder>& pin = {});

// Direct checks used by the oracles and witness verification.
bool satisfies(const LayeredSolution& sol, std::span<const InstanceConstraint> constraints);
bool satisfies_clauses(const WeakOrder& w, std::span<const MinClause> clauses);
bool satisfies_conjuncts(const WeakOrder& w, std::span<const MinAffineForm> conjuncts);
bool realizes(const WeakOrder& w, const PinnedOrder& pin);

}  // namespace qtcs
