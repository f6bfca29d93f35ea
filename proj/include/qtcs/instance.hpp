#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qtcs/formula.hpp"
#include "qtcs/relation.hpp"

namespace qtcs {

enum class Quant { ForAll, Exists };

struct InstanceConstraint {
    std::string rel_name;  // empty for an inline comparison
    TemporalRelation rel;
    std::vector<int> args;  // variable indices; repeats allowed
    std::string display;
};

enum class InstanceKind { Csp, Qcsp };

struct Instance {
    InstanceKind kind = InstanceKind::Csp;
    std::vector<std::string> vars;
    std::vector<Quant> quants;  // parallel to vars when kind == Qcsp
    std::vector<InstanceConstraint> constraints;
};

struct RelDecl {
    std::vector<std::string> params;
    TemporalRelation rel;
};

// One parsed instance file: `rel` declarations plus at most one csp/qcsp
// line. Lines are independent; '#' starts a comment.
struct ParsedFile {
    std::vector<std::pair<std::string, RelDecl>> relations;  // declaration order
    std::optional<Instance> instance;

    const RelDecl* find(const std::string& name) const;
};

ParsedFile parse_file(const std::string& text);

// Convenience: parse and require the instance line.
Instance parse_instance(const std::string& text);

}  // namespace qtcs
