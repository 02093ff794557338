// Copyright 2026 The bibce Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bibce/rational.h"

#include <cctype>
#include <cstdlib>

namespace bibce {
namespace {

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Rational ParseInteger(std::string_view s) {
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
    digits.remove_prefix(1);
  }
  if (!AllDigits(digits)) {
    throw BibceError("malformed rational '" + std::string(s) + "'");
  }
  std::string owned(s.front() == '+' ? s.substr(1) : s);
  return Rational(mpz_class(owned, 10));
}

Rational ParseDecimal(std::string_view s) {
  int exponent = 0;
  if (std::size_t e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    std::string_view exp_digits = exp_part;
    if (!exp_digits.empty() &&
        (exp_digits.front() == '-' || exp_digits.front() == '+')) {
      exp_digits.remove_prefix(1);
    }
    if (!AllDigits(exp_digits) || exp_digits.size() > 6) {
      throw BibceError("malformed exponent in '" + std::string(s) + "'");
    }
    exponent = std::atoi(std::string(exp_part).c_str());
    s = s.substr(0, e);
  }
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string mantissa;
  std::size_t dot = s.find('.');
  std::string_view int_part = s.substr(0, dot);
  std::string_view frac_part =
      dot == std::string_view::npos ? std::string_view() : s.substr(dot + 1);
  if ((int_part.empty() && frac_part.empty()) ||
      (!int_part.empty() && !AllDigits(int_part)) ||
      (!frac_part.empty() && !AllDigits(frac_part))) {
    throw BibceError("malformed decimal '" + std::string(s) + "'");
  }
  mantissa.append(int_part);
  mantissa.append(frac_part);
  exponent -= static_cast<int>(frac_part.size());
  Rational value{mpz_class(mantissa, 10)};
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, std::abs(exponent));
  if (exponent >= 0) {
    value *= scale;
  } else {
    value /= scale;
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational ParseRational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) throw BibceError("empty rational");
  if (std::size_t slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = ParseInteger(text.substr(0, slash));
    Rational den = ParseInteger(text.substr(slash + 1));
    if (den == 0) throw BibceError("zero denominator in '" + std::string(text) + "'");
    Rational out = num / den;
    out.canonicalize();
    return out;
  }
  if (text.find_first_of(".eE") != std::string_view::npos) {
    return ParseDecimal(text);
  }
  return ParseInteger(text);
}

std::string ToString(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational Pow(const Rational& base, unsigned exponent) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  out.canonicalize();
  return out;
}

}  // namespace bibce
