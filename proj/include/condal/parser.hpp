#pragma once

#include <string_view>

#include "condal/formula.hpp"

namespace condal {

// Grammar (loosest to tightest): <->  ->  \/  /\  ~. `->` is
// right-associative. T and F are the constants; identifiers are
// [A-Za-z_][A-Za-z0-9_]* and resolve against an algebra later.
PropPtr parse_prop(std::string_view src);

// Conditional terms: basic conditionals `(phi | psi)` combined with the
// same connectives, e.g. `~(a|b) \/ (c /\ d | e)`. The bar appears only
// as the conditional separator; nesting it is a syntax error. A term
// with no bar at all is read as the conditional (phi | T).
CondPtr parse_cond(std::string_view src);

}  // namespace condal
