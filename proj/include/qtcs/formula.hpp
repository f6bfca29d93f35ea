#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qtcs/relation.hpp"

namespace qtcs {

enum class Cmp { Lt, Le, Eq, Ne, Gt, Ge };

const char* cmp_text(Cmp c);

template <typename T>
bool cmp_holds(Cmp c, const T& lhs, const T& rhs) {
    switch (c) {
        case Cmp::Lt: return lhs < rhs;
        case Cmp::Le: return lhs <= rhs;
        case Cmp::Eq: return lhs == rhs;
        case Cmp::Ne: return lhs != rhs;
        case Cmp::Gt: return lhs > rhs;
        case Cmp::Ge: return lhs >= rhs;
    }
    return false;
}

struct ParseError : std::runtime_error {
    ParseError(std::size_t position, const std::string& message)
        : std::runtime_error("at offset " + std::to_string(position) + ": " + message),
          pos(position) {}
    std::size_t pos;
};

// Quantifier-free formula over variable comparisons; connectives are n-ary
// AND/OR plus NOT. Atom variables are indices into the owning variable list.
struct FormulaNode {
    enum class Kind { Atom, And, Or, Not };
    Kind kind = Kind::Atom;
    int lhs = -1;
    int rhs = -1;
    Cmp cmp = Cmp::Lt;
    std::vector<FormulaNode> children;

    static FormulaNode atom(int lhs, Cmp cmp, int rhs) {
        FormulaNode n;
        n.lhs = lhs;
        n.rhs = rhs;
        n.cmp = cmp;
        return n;
    }
};

struct Formula {
    std::vector<std::string> vars;
    FormulaNode root;
};

// Grammar: disjunction of conjunctions of (possibly negated, parenthesized)
// atoms VAR CMP VAR, with precedence ! > & > |. Variables are collected in
// first-appearance order; the declared-variable overload instead requires
// every variable to come from the given list (which fixes coordinate order).
Formula parse_formula(std::string_view text);
Formula parse_formula(std::string_view text, const std::vector<std::string>& declared);

bool eval_node(const FormulaNode& n, std::span<const int> ranks);
bool eval_node_values(const FormulaNode& n, std::span<const Rational> values);

// Truth of f on the orbit w; depends only on the orbit.
bool eval_formula(const Formula& f, const WeakOrder& w);

// The relation defined by f over its own variable list (or an explicit list
// containing all of f's variables).
TemporalRelation relation_of_formula(const Formula& f);
TemporalRelation relation_of_formula(const Formula& f, const std::vector<std::string>& vars);

// True iff every orbit of R satisfies f; coord_names gives R's coordinates
// in order and must cover f's variables.
bool entails(const TemporalRelation& R, const Formula& f,
             const std::vector<std::string>& coord_names);

// Prints R as a disjunction of orbit descriptions (re-parses to R).
std::string print_dnf(const TemporalRelation& R, std::span<const std::string> vars);

}  // namespace qtcs
