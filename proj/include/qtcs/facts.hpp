#pragma once

#include <string>
#include <vector>

namespace qtcs {

struct FactResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct FactOptions {
    std::string filter;   // run only facts whose name contains this substring
    std::string corrupt;  // test hook: damage the named fixture relation
};

// Fixed regression suite over the documented behaviour of min, mx and pp on
// the reference relations (the orderings, U, X, and the mixed projection
// relation) plus U's clausal definition.
std::vector<FactResult> run_fact_suite(const FactOptions& options = {});

}  // namespace qtcs
