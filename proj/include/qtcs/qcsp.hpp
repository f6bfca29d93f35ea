#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qtcs/brute.hpp"
#include "qtcs/convert.hpp"

namespace qtcs {

// Per-level record of the decision procedure, from the innermost level n
// down to 1 (or to the first False).
struct LevelTrace {
    int level = 0;
    int constraint_count = 0;  // constraints solved for the existential step
    bool sat = false;
    int witness_levels = 0;  // d: distinct levels of the witness on the free variables
    int regions = 0;         // pinned solves performed (2d+1 when the check ran)
    bool forall_ok = false;
    int failing_region = -1;
};

struct QcspResult {
    bool value = false;
    std::vector<LevelTrace> trace;
};

// Inserts fresh dummy variables so the prefix strictly alternates
// forall/exists; dummies occur in no constraint, so the value is unchanged.
Instance normalize_prefix(const Instance& inst);

// Extends the kernel to Phi'_level: adds x_j < y_level and y_j < y_level for
// every j < level, in the engine's native form. level is 1-based; level 1
// adds nothing.
void add_phi_prime_constraints(MinCsp& kernel, int level, std::span<const int> universals,
                               std::span<const int> existentials);
void add_phi_prime_constraints(MxCsp& kernel, int level, std::span<const int> universals,
                               std::span<const int> existentials);

// One pinned order per orbit of extensions of the given weak order by the
// variable y: y below everything, on each level, in each gap, above
// everything (2d+1 orders for d levels).
std::vector<PinnedOrder> region_representatives(const PinnedOrder& base, int y_var);

// True iff the purely existential kernel stays satisfiable for every region
// placement of y against the witness order. Reports how many regions were
// checked and the first failing one.
struct UniversalCheck {
    bool ok = true;
    int regions = 0;
    int failing_region = -1;
};
UniversalCheck universal_check(const MinCsp& kernel, const PinnedOrder& witness, int y_var);
UniversalCheck universal_check(const MxCsp& kernel, const PinnedOrder& witness, int y_var);

// The level-by-level decision procedure. engine Auto picks per the
// constraint language; Brute routes to the game-tree oracle (no trace).
QcspResult solve_qcsp(const Instance& inst, Engine engine = Engine::Auto);

std::string trace_line(const LevelTrace& t);

}  // namespace qtcs
