#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qtcs/gf2.hpp"
#include "qtcs/relation.hpp"

namespace qtcs {

// head >= body / head > body disjuncts. An empty literal list is the FALSE
// clause (only the empty relation entails it).
struct MinLiteral {
    int body = -1;
    bool strict = false;
};

struct MinClause {
    int head = -1;
    std::vector<MinLiteral> literals;  // bodies distinct, never equal to head
};

// head != y_1 | ... | head != y_k | head >= z_1 | ... | head >= z_l; either
// list may be empty.
struct PPClause {
    int head = -1;
    std::vector<int> diseq;
    std::vector<int> geq;
};

// Asserts that the min-tuple of the scope's values lies in T. T is
// near-affine and never contains the all-ones tuple.
struct MinAffineForm {
    std::vector<int> scope;  // ascending coordinate indices
    BoolRelation T{0};
};

bool clause_holds(const MinClause& c, std::span<const int> ranks);
bool clause_holds(const PPClause& c, std::span<const int> ranks);
bool form_holds(const MinAffineForm& f, const WeakOrder& w);

TemporalRelation relation_of(std::span<const MinClause> clauses, int arity);
TemporalRelation relation_of(std::span<const PPClause> clauses, int arity);
TemporalRelation relation_of(std::span<const MinAffineForm> forms, int arity);

// Synthesis by entailed-conjunction: collect every restricted-form formula
// entailed by R; if their conjunction defines R, prune it greedily and
// return it, otherwise report that R is not closed under the operation
// (nullopt). Succeeds exactly for the min- / pp- / mx-closed relations.
std::optional<std::vector<MinClause>> min_clause_form(const TemporalRelation& R);
std::optional<std::vector<PPClause>> pp_clause_form(const TemporalRelation& R);
std::optional<std::vector<MinAffineForm>> min_affine_form(const TemporalRelation& R);

// Formula-syntax printing; outputs re-parse to the same relation.
std::string print_clauses(std::span<const MinClause> clauses, std::span<const std::string> vars);
std::string print_clauses(std::span<const PPClause> clauses, std::span<const std::string> vars);
std::string print_forms(std::span<const MinAffineForm> forms, std::span<const std::string> vars);
std::string scope_summary(const MinAffineForm& f, std::span<const std::string> vars);

}  // namespace qtcs
