#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>
#include <json.hpp>

namespace lift {

// Exact scalar field for every computation in the library. mpq_class keeps
// numerator/denominator canonical after each arithmetic operation.
using Rational = mpq_class;
using BigInt = mpz_class;

Rational make_rational(long num, long den = 1);
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

// [num, den]; components that do not fit in int64 are written as decimal strings.
nlohmann::ordered_json rational_to_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace lift
