#pragma once
#include <gmpxx.h>
#include <string>
#include <vector>

namespace algres {

using Q = mpq_class;
using Z = mpz_class;

// "p" for integers, "p/q" otherwise.
std::string to_string(const Q& q);

// Accepts "p", "-p", "p/q"; throws InputError.
Q parse_rational(const std::string& s);

// num/den in lowest terms; den ≠ 0.
Q make_q(long num, long den = 1);

inline int sgn(const Q& q) { return ::sgn(q); }

} // namespace algres
