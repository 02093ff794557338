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

#ifndef BIBCE_LP_H_
#define BIBCE_LP_H_

#include <string>
#include <utility>
#include <vector>

#include "bibce/rational.h"

namespace bibce {

using LinearTerm = std::vector<std::pair<int, Rational>>;

enum class Relation { kLe, kEq, kGe };
enum class Sense { kMaximize, kMinimize };

struct Objective {
  LinearTerm terms;
  Sense sense = Sense::kMaximize;
};

struct Constraint {
  LinearTerm row;
  Relation relation;
  Rational rhs;
  std::string name;
};

// Variables are either nonnegative or free. Without an objective the program
// is a feasibility problem.
class LinearProgram {
 public:
  int AddVariable(std::string name, bool free = false);
  void AddConstraint(LinearTerm row, Relation relation, Rational rhs,
                     std::string name = "");
  void SetObjective(Objective objective);
  void ClearObjective() { objective_ = Objective{}; }

  int NumVariables() const { return static_cast<int>(names_.size()); }
  int NumConstraints() const { return static_cast<int>(constraints_.size()); }
  const std::string& VariableName(int j) const { return names_[j]; }
  bool IsFree(int j) const { return free_[j]; }
  const std::vector<Constraint>& Constraints() const { return constraints_; }
  const Objective& GetObjective() const { return objective_; }

  // Plain-text dump, one relation per line ("c3: 2 x0 - 1/2 x4 >= 1/3").
  std::string Dump() const;

 private:
  std::vector<std::string> names_;
  std::vector<bool> free_;
  std::vector<Constraint> constraints_;
  Objective objective_;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* StatusName(LpStatus status);

struct LpOutcome {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<Rational> point;  // when kOptimal
  Rational value;               // when kOptimal
  // When kInfeasible: one multiplier per constraint, y <= 0 on <= rows,
  // y >= 0 on >= rows, y'A <= 0 on nonnegative columns, y'A = 0 on free
  // columns and y'b > 0.
  std::vector<Rational> certificate;
};

// Two-phase primal simplex with Bland's rule over an exact tableau.
LpOutcome Solve(const LinearProgram& lp);

// Optimizes the program's own objective, pins it at its optimum and then
// optimizes `second` over that face. Throws when stage 1 is unbounded.
LpOutcome MaximizeThenRestrict(const LinearProgram& lp, const Objective& second);

bool IsFeasiblePoint(const LinearProgram& lp, const std::vector<Rational>& x);
bool VerifyFarkas(const LinearProgram& lp, const std::vector<Rational>& y);
Rational Evaluate(const LinearTerm& terms, const std::vector<Rational>& x);

// Dense equality system A x = b over free variables.
struct LinearSystemResult {
  bool feasible = false;
  std::vector<Rational> solution;     // free variables set to zero
  std::vector<Rational> certificate;  // y with y'A = 0 and y'b != 0
};

LinearSystemResult SolveLinearSystem(const std::vector<std::vector<Rational>>& a,
                                     const std::vector<Rational>& b);

}  // namespace bibce

#endif  // BIBCE_LP_H_
