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

#ifndef BIBCE_RATIONAL_H_
#define BIBCE_RATIONAL_H_

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace bibce {

// Every probability, payoff and LP coefficient in the library is an exact
// rational in canonical form (lowest terms, positive denominator).
using Rational = mpq_class;

class BibceError : public std::runtime_error {
 public:
  explicit BibceError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a result the theory guarantees (nonempty BIBCE set, feasible
// obedience stage, ...) fails to materialize. Never expected to fire.
class TheoryViolation : public BibceError {
 public:
  explicit TheoryViolation(const std::string& what)
      : BibceError("theory violation: " + what) {}
};

// Accepts "p/q", integers and decimal strings ("0.25", "-1.5", "2e-3").
// Decimals are read as exact fractions over powers of ten.
Rational ParseRational(std::string_view text);

// Always "num/den", including integers ("3/1") and zero ("0/1").
std::string ToString(const Rational& value);

inline Rational MakeRational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Integer power with a nonnegative exponent.
Rational Pow(const Rational& base, unsigned exponent);

inline int Sign(const Rational& value) { return sgn(value); }

}  // namespace bibce

#endif  // BIBCE_RATIONAL_H_
