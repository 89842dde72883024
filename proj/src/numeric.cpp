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

#include "qif/numeric.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <string_view>

namespace qif {

Rational make_rational(long num, unsigned long den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

namespace {

struct DecimalParts {
  bool negative = false;
  std::string digits;   // integer and fractional digits concatenated
  long exponent = 0;    // power of ten applied to `digits`
};

// Grammar: [+-] digits [ "." digits ] [ (e|E) [+-] digits ], at least one
// digit overall.
bool split_decimal(const std::string& text, DecimalParts* out) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  if (i < n && (text[i] == '+' || text[i] == '-')) {
    out->negative = text[i] == '-';
    ++i;
  }
  std::size_t digit_count = 0;
  while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
    out->digits.push_back(text[i]);
    ++digit_count;
    ++i;
  }
  if (i < n && text[i] == '.') {
    ++i;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
      out->digits.push_back(text[i]);
      --out->exponent;
      ++digit_count;
      ++i;
    }
  }
  if (digit_count == 0) return false;
  if (i < n && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_neg = false;
    if (i < n && (text[i] == '+' || text[i] == '-')) {
      exp_neg = text[i] == '-';
      ++i;
    }
    if (i == n) return false;
    long exp = 0;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
      exp = exp * 10 + (text[i] - '0');
      if (exp > 1000000) return false;
      ++i;
    }
    out->exponent += exp_neg ? -exp : exp;
  }
  return i == n;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Rational rational_from_string(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw InvalidArgument("empty numeric field");

  const std::size_t slash = s.find('/');
  if (slash != std::string::npos) {
    const std::string num_s = trim(s.substr(0, slash));
    const std::string den_s = trim(s.substr(slash + 1));
    BigInt num, den;
    if (num_s.empty() || den_s.empty() || num.set_str(num_s, 10) != 0 ||
        den.set_str(den_s, 10) != 0) {
      throw InvalidArgument("malformed fraction: '" + text + "'");
    }
    if (den == 0) throw InvalidArgument("zero denominator: '" + text + "'");
    return make_rational(num, den);
  }

  DecimalParts parts;
  if (!split_decimal(s, &parts)) {
    throw InvalidArgument("malformed number: '" + text + "'");
  }
  BigInt digits;
  if (parts.digits.empty()) {
    digits = 0;
  } else if (digits.set_str(parts.digits, 10) != 0) {
    throw InvalidArgument("malformed number: '" + text + "'");
  }
  if (parts.negative) digits = -digits;

  BigInt pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10,
                static_cast<unsigned long>(parts.exponent < 0 ? -parts.exponent
                                                              : parts.exponent));
  if (parts.exponent < 0) return make_rational(digits, pow10);
  return Rational(digits * pow10);
}

double double_from_string(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw InvalidArgument("empty numeric field");
  const std::size_t slash = s.find('/');
  if (slash != std::string::npos) {
    // Route fractions through the exact parser so "1/3" means the rational.
    return rational_from_string(s).get_d();
  }
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == nullptr || *end != '\0' || end == s.c_str()) {
    throw InvalidArgument("malformed number: '" + text + "'");
  }
  return v;
}

double log10_value(const BigInt& value) {
  if (value <= 0) throw InvalidArgument("log10 of non-positive value");
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, value.get_mpz_t());
  // value = mant * 2^exp2 with mant in [0.5, 1).
  return std::log10(mant) + static_cast<double>(exp2) * std::log10(2.0);
}

double log10_value(const Rational& value) {
  if (value <= 0) throw InvalidArgument("log10 of non-positive value");
  return log10_value(BigInt(value.get_num())) - log10_value(BigInt(value.get_den()));
}

std::string format_exact(const Rational& v) { return v.get_str(); }

std::string format_exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string format_fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  if (std::string_view(buf) == "-0.000000") return "0.000000";
  return buf;
}

}  // namespace qif
