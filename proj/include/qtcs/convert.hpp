#pragma once

#include <optional>
#include <span>
#include <stdexcept>

#include "qtcs/csp.hpp"
#include "qtcs/instance.hpp"

namespace qtcs {

enum class Engine { Min, Mx, Auto, Brute };

std::optional<Engine> engine_from_name(std::string_view name);
const char* engine_name(Engine e);

// Raised when no supported operation preserves every constraint relation of
// an instance (or a forced engine does not fit the language).
struct UnsupportedLanguage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rewrites every constraint into the engine's normal form, instantiated with
// the constraint arguments (repeats collapsed). nullopt when some relation
// is not closed under the engine's operation.
std::optional<MinCsp> to_min_csp(int num_vars, std::span<const InstanceConstraint> constraints);
std::optional<MxCsp> to_mx_csp(int num_vars, std::span<const InstanceConstraint> constraints);

// Auto selection: min when every relation is min-closed, else mx when every
// relation is mx-closed; otherwise UnsupportedLanguage.
Engine pick_engine(std::span<const InstanceConstraint> constraints);

}  // namespace qtcs
