#pragma once

// Derivation documents: JSON objects with fields `rule`, `ctx` (variable name
// to type), `term`, `type`, `subst` (instance type of the ∀E rules),
// `eigenvar` (the variable a ∀I generalizes, which the Nat0/Nat1 spelling of
// its type would hide) and `kids`. Every node carries its full context; on
// reading, each node's context must agree with the one implied by its parent.

#include <string>
#include <string_view>

#include "elemf/typing.hpp"

namespace elemf {

std::string print_derivation(const Derivation& d);
/// Throws Error("derivation-format") with the node path on malformed input.
Derivation parse_derivation(std::string_view text);

}  // namespace elemf
