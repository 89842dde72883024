//
// Copyright 2026 The topics-qif Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef QIF_NUMERIC_HPP_
#define QIF_NUMERIC_HPP_

// Dual numeric lanes: exact rationals (GMP) for closed-form and oracle work,
// plain doubles for large floating sweeps. Operations are templated on the
// scalar type and pick their tolerances through NumTraits.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>

#include "qif/error.hpp"

namespace qif {

using Rational = mpq_class;
using BigInt = mpz_class;

// num/den reduced to canonical form. den must be nonzero.
Rational make_rational(long num, unsigned long den);
Rational make_rational(const BigInt& num, const BigInt& den);

// Accepts exact fractions ("3/4", "-1/2") and decimal literals with an
// optional exponent ("0.25", "1e-3"). Decimal strings convert exactly.
Rational rational_from_string(const std::string& text);

// Parses the same grammar into a double ("a/b" becomes a/b in binary64).
double double_from_string(const std::string& text);

// log10 of arbitrary-precision values; arguments must be positive.
double log10_value(const BigInt& value);
double log10_value(const Rational& value);
inline double log10_value(double value) { return std::log10(value); }

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.get_d(); }

// "a/b" (or "a" for integers) for rationals; shortest round-trip for doubles.
std::string format_exact(const Rational& v);
std::string format_exact(double v);

std::string format_sig6(double v);              // 6 significant digits
inline std::string format_sig6(const Rational& v) { return format_sig6(v.get_d()); }
std::string format_fixed6(double v);            // 6 decimal places, for log10 fields

template <typename T>
struct NumTraits;

template <>
struct NumTraits<double> {
  static constexpr bool kExact = false;
  static constexpr const char* kModeName = "float";
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double fraction(long num, unsigned long den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double parse(const std::string& text) { return double_from_string(text); }
  static std::string render(double v) { return format_exact(v); }
};

template <>
struct NumTraits<Rational> {
  static constexpr bool kExact = true;
  static constexpr const char* kModeName = "rational";
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational fraction(long num, unsigned long den) { return make_rational(num, den); }
  static Rational parse(const std::string& text) { return rational_from_string(text); }
  static std::string render(const Rational& v) { return format_exact(v); }
};

}  // namespace qif

#endif  // QIF_NUMERIC_HPP_
