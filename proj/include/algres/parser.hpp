#pragma once
#include "algres/polynomial.hpp"

#include <map>
#include <string>
#include <vector>

namespace algres {

// Grammar (whitespace ignored, "−" accepted for "-"):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*      divisor must be a nonzero constant
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := integer | identifier | '(' expr ')'
// Identifiers are variables (by position in vars) or named constants.
Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& vars,
                            const std::map<std::string, Q>& constants = {});

} // namespace algres
