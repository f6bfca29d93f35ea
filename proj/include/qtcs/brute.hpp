#pragma once

#include <optional>
#include <span>

#include "qtcs/csp.hpp"
#include "qtcs/instance.hpp"

namespace qtcs {

// Enumeration caps for the reference oracles; enforced here regardless of
// what a caller asks for.
inline constexpr int kBruteCspMaxVars = 8;
inline constexpr int kBruteQcspMaxVars = 7;

// Reference CSP solvers by exhaustive weak-order enumeration. They share
// nothing with the layered engines beyond the constraint evaluation helpers.
std::optional<WeakOrder> brute_min_csp(const MinCsp& csp,
                                       const std::optional<PinnedOrder>& pin = {});
std::optional<WeakOrder> brute_mx_csp(const MxCsp& csp,
                                      const std::optional<PinnedOrder>& pin = {});
std::optional<WeakOrder> brute_csp(int num_vars,
                                   std::span<const InstanceConstraint> constraints,
                                   const std::optional<PinnedOrder>& pin = {});

// Game-tree evaluation of a quantified conjunction: quantifiers are
// processed left to right, each ranging over one representative per orbit of
// extensions of the current partial assignment (2d+1 regions for d distinct
// values). `fixed` pre-assigns free variables.
bool brute_quantified(int num_vars, std::span<const InstanceConstraint> constraints,
                      std::span<const std::pair<int, Quant>> prefix,
                      std::span<const std::pair<int, Rational>> fixed);

// The QCSP reference oracle; total variable count capped.
bool brute_qcsp(const Instance& inst);

}  // namespace qtcs
