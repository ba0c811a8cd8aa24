#pragma once

#include <map>
#include <string>

#include "wildquot/poly.hpp"

namespace wq {

using Constants = std::map<std::string, FieldElement>;

// Grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' INT)*          (applied left to right)
//   primary := INT | IDENT | '(' expr ')' | '(' INT (',' INT)+ ')'
// Integers are reduced mod p. A parenthesised tuple of k integers is a field
// element in the power basis, which is how extension coefficients print.
// Identifiers resolve to ring variables first, then to named constants.
Poly parse_poly(const std::string& text, const RingPtr& ring,
                const Constants& constants = {});

// a, b and alpha = a^3 - a
Constants parameter_constants(const FieldElement& a, const FieldElement& b);

}  // namespace wq
