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

#include "bibce/lp.h"

#include <sstream>

namespace bibce {
namespace {

void AppendTerms(std::ostringstream& out, const LinearProgram& lp,
                 const LinearTerm& terms) {
  if (terms.empty()) {
    out << "0";
    return;
  }
  bool first = true;
  for (const auto& [j, c] : terms) {
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    first = false;
    out << ToString(abs(c)) << " " << lp.VariableName(j);
  }
}

// Dense exact tableau. Rows are sign-normalized so that rhs >= 0.
class Tableau {
 public:
  Tableau(const LinearProgram& lp) : lp_(lp) {
    const int n = lp.NumVariables();
    plus_col_.resize(n);
    minus_col_.assign(n, -1);
    for (int j = 0; j < n; ++j) {
      plus_col_[j] = num_cols_++;
      if (lp.IsFree(j)) minus_col_[j] = num_cols_++;
    }
    structural_cols_ = num_cols_;
    const auto& cons = lp.Constraints();
    const int m = static_cast<int>(cons.size());
    flipped_.assign(m, false);
    relation_.resize(m);
    for (int k = 0; k < m; ++k) {
      Relation rel = cons[k].relation;
      if (cons[k].rhs < 0) {
        flipped_[k] = true;
        if (rel == Relation::kLe) rel = Relation::kGe;
        else if (rel == Relation::kGe) rel = Relation::kLe;
      }
      relation_[k] = rel;
    }
    slack_col_.assign(m, -1);
    art_col_.assign(m, -1);
    for (int k = 0; k < m; ++k) {
      if (relation_[k] != Relation::kEq) slack_col_[k] = num_cols_++;
    }
    first_art_ = num_cols_;
    for (int k = 0; k < m; ++k) {
      if (relation_[k] != Relation::kLe) art_col_[k] = num_cols_++;
    }
    rows_.assign(m, std::vector<Rational>(num_cols_));
    rhs_.resize(m);
    basis_.resize(m);
    origin_.resize(m);
    for (int k = 0; k < m; ++k) {
      origin_[k] = k;
      start_col_.push_back(relation_[k] == Relation::kLe ? slack_col_[k] : art_col_[k]);
      Rational sign = flipped_[k] ? -1 : 1;
      for (const auto& [j, c] : cons[k].row) {
        if (j < 0 || j >= n) throw BibceError("constraint references unknown variable");
        rows_[k][plus_col_[j]] += sign * c;
        if (minus_col_[j] >= 0) rows_[k][minus_col_[j]] -= sign * c;
      }
      rhs_[k] = sign * cons[k].rhs;
      if (relation_[k] == Relation::kLe) {
        rows_[k][slack_col_[k]] = 1;
        basis_[k] = slack_col_[k];
      } else {
        if (relation_[k] == Relation::kGe) rows_[k][slack_col_[k]] = -1;
        rows_[k][art_col_[k]] = 1;
        basis_[k] = art_col_[k];
      }
    }
  }

  // Returns false when the program is infeasible; the Farkas row is stored.
  bool PhaseOne() {
    std::vector<Rational> cost(num_cols_);
    for (int j = first_art_; j < num_cols_; ++j) cost[j] = 1;
    LoadObjective(cost);
    if (first_art_ < num_cols_) {
      if (Iterate(num_cols_) != LpStatus::kOptimal) {
        throw BibceError("phase one cannot be unbounded");
      }
    }
    if (-objective_rhs_ > 0) {
      const int m = lp_.NumConstraints();
      certificate_.assign(m, Rational(0));
      for (int k = 0; k < m; ++k) {
        Rational y = art_col_[k] >= 0 ? Rational(1 - reduced_[art_col_[k]])
                                      : Rational(-reduced_[slack_col_[k]]);
        certificate_[k] = flipped_[k] ? Rational(-y) : y;
      }
      return false;
    }
    DriveOutArtificials();
    return true;
  }

  LpStatus PhaseTwo(const Objective& objective) {
    std::vector<Rational> cost(num_cols_);
    Rational sign = objective.sense == Sense::kMaximize ? -1 : 1;
    for (const auto& [j, c] : objective.terms) {
      cost[plus_col_[j]] += sign * c;
      if (minus_col_[j] >= 0) cost[minus_col_[j]] -= sign * c;
    }
    LoadObjective(cost);
    return Iterate(first_art_);
  }

  std::vector<Rational> Point() const {
    std::vector<Rational> col_value(num_cols_);
    for (std::size_t k = 0; k < rows_.size(); ++k) col_value[basis_[k]] = rhs_[k];
    std::vector<Rational> x(lp_.NumVariables());
    for (int j = 0; j < lp_.NumVariables(); ++j) {
      x[j] = col_value[plus_col_[j]];
      if (minus_col_[j] >= 0) x[j] -= col_value[minus_col_[j]];
    }
    return x;
  }

  const std::vector<Rational>& Certificate() const { return certificate_; }

 private:
  void LoadObjective(const std::vector<Rational>& cost) {
    reduced_ = cost;
    objective_rhs_ = 0;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Rational cb = cost[basis_[k]];
      if (cb == 0) continue;
      for (int j = 0; j < num_cols_; ++j) {
        if (sgn(rows_[k][j]) != 0) reduced_[j] -= cb * rows_[k][j];
      }
      objective_rhs_ -= cb * rhs_[k];
    }
  }

  // Dantzig pricing with a lexicographic ratio test over the columns of the
  // starting basis. Driving out artificials can spoil lexicographic
  // positivity, so a long degenerate run switches to Bland for good.
  // Columns >= limit never enter.
  LpStatus Iterate(int limit) {
    const int patience = 10 * static_cast<int>(rows_.size()) + 100;
    bool bland = false;
    int degenerate = 0;
    while (true) {
      int enter = -1;
      for (int j = 0; j < limit; ++j) {
        if (sgn(reduced_[j]) >= 0) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (enter < 0 || reduced_[j] < reduced_[enter]) enter = j;
      }
      if (enter < 0) return LpStatus::kOptimal;
      int leave = -1;
      for (std::size_t k = 0; k < rows_.size(); ++k) {
        const Rational& a = rows_[k][enter];
        if (sgn(a) <= 0) continue;
        if (leave < 0) {
          leave = static_cast<int>(k);
        } else if (bland) {
          int c = cmp_ratio(rhs_[k], a, rhs_[leave], rows_[leave][enter]);
          if (c < 0 || (c == 0 && basis_[k] < basis_[leave])) leave = static_cast<int>(k);
        } else if (LexLess(static_cast<int>(k), leave, enter)) {
          leave = static_cast<int>(k);
        }
      }
      if (leave < 0) return LpStatus::kUnbounded;
      degenerate = sgn(rhs_[leave]) == 0 ? degenerate + 1 : 0;
      if (degenerate > patience) bland = true;
      Pivot(leave, enter);
    }
  }

  // (rhs_k, B^-1 row k) / a_k against the same for row l.
  bool LexLess(int k, int l, int enter) const {
    const Rational& ak = rows_[k][enter];
    const Rational& al = rows_[l][enter];
    int c = cmp_ratio(rhs_[k], ak, rhs_[l], al);
    if (c != 0) return c < 0;
    for (int col : start_col_) {
      c = cmp_ratio(rows_[k][col], ak, rows_[l][col], al);
      if (c != 0) return c < 0;
    }
    return false;
  }

  static int cmp_ratio(const Rational& n1, const Rational& d1,
                       const Rational& n2, const Rational& d2) {
    Rational lhs = n1 * d2;
    Rational rhs = n2 * d1;
    return cmp(lhs, rhs);
  }

  void Pivot(int r, int c) {
    std::vector<Rational>& prow = rows_[r];
    const Rational inv = 1 / prow[c];
    std::vector<int> nz;
    for (int j = 0; j < num_cols_; ++j) {
      if (sgn(prow[j]) != 0) {
        prow[j] *= inv;
        nz.push_back(j);
      }
    }
    rhs_[r] *= inv;
    Rational tmp;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (static_cast<int>(k) == r || sgn(rows_[k][c]) == 0) continue;
      const Rational f = rows_[k][c];
      std::vector<Rational>& row = rows_[k];
      for (int j : nz) {
        tmp = f * prow[j];
        row[j] -= tmp;
      }
      tmp = f * rhs_[r];
      rhs_[k] -= tmp;
    }
    if (sgn(reduced_[c]) != 0) {
      const Rational f = reduced_[c];
      for (int j : nz) {
        tmp = f * prow[j];
        reduced_[j] -= tmp;
      }
      tmp = f * rhs_[r];
      objective_rhs_ -= tmp;
    }
    basis_[r] = c;
  }

  void DriveOutArtificials() {
    for (std::size_t k = 0; k < rows_.size();) {
      if (basis_[k] < first_art_) {
        ++k;
        continue;
      }
      int col = -1;
      for (int j = 0; j < first_art_; ++j) {
        if (sgn(rows_[k][j]) != 0) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        Pivot(static_cast<int>(k), col);
        ++k;
      } else {
        rows_.erase(rows_.begin() + k);
        rhs_.erase(rhs_.begin() + k);
        basis_.erase(basis_.begin() + k);
        origin_.erase(origin_.begin() + k);
      }
    }
  }

  const LinearProgram& lp_;
  int num_cols_ = 0;
  int structural_cols_ = 0;
  int first_art_ = 0;
  std::vector<int> plus_col_, minus_col_, slack_col_, art_col_;
  std::vector<bool> flipped_;
  std::vector<Relation> relation_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> rhs_;
  std::vector<int> basis_;
  std::vector<int> origin_;
  std::vector<int> start_col_;
  std::vector<Rational> reduced_;
  Rational objective_rhs_;
  std::vector<Rational> certificate_;
};

}  // namespace

int LinearProgram::AddVariable(std::string name, bool free) {
  names_.push_back(std::move(name));
  free_.push_back(free);
  return static_cast<int>(names_.size()) - 1;
}

void LinearProgram::AddConstraint(LinearTerm row, Relation relation,
                                  Rational rhs, std::string name) {
  for (const auto& [j, c] : row) {
    if (j < 0 || j >= NumVariables()) {
      throw BibceError("constraint references undeclared variable " +
                       std::to_string(j));
    }
  }
  constraints_.push_back(
      {std::move(row), relation, std::move(rhs), std::move(name)});
}

void LinearProgram::SetObjective(Objective objective) {
  for (const auto& [j, c] : objective.terms) {
    if (j < 0 || j >= NumVariables()) {
      throw BibceError("objective references undeclared variable");
    }
  }
  objective_ = std::move(objective);
}

std::string LinearProgram::Dump() const {
  std::ostringstream out;
  out << (objective_.sense == Sense::kMaximize ? "max: " : "min: ");
  AppendTerms(out, *this, objective_.terms);
  out << "\n";
  for (std::size_t k = 0; k < constraints_.size(); ++k) {
    const Constraint& c = constraints_[k];
    out << (c.name.empty() ? "c" + std::to_string(k) : c.name) << ": ";
    AppendTerms(out, *this, c.row);
    out << (c.relation == Relation::kLe   ? " <= "
            : c.relation == Relation::kGe ? " >= "
                                          : " = ")
        << ToString(c.rhs) << "\n";
  }
  for (int j = 0; j < NumVariables(); ++j) {
    if (free_[j]) out << "free " << names_[j] << "\n";
  }
  return out.str();
}

const char* StatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "OPTIMAL";
    case LpStatus::kInfeasible:
      return "INFEASIBLE";
    case LpStatus::kUnbounded:
      return "UNBOUNDED";
  }
  return "?";
}

Rational Evaluate(const LinearTerm& terms, const std::vector<Rational>& x) {
  Rational total = 0;
  for (const auto& [j, c] : terms) total += c * x[j];
  return total;
}

bool IsFeasiblePoint(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != lp.NumVariables()) return false;
  for (int j = 0; j < lp.NumVariables(); ++j) {
    if (!lp.IsFree(j) && x[j] < 0) return false;
  }
  for (const Constraint& c : lp.Constraints()) {
    Rational lhs = Evaluate(c.row, x);
    switch (c.relation) {
      case Relation::kLe:
        if (lhs > c.rhs) return false;
        break;
      case Relation::kGe:
        if (lhs < c.rhs) return false;
        break;
      case Relation::kEq:
        if (lhs != c.rhs) return false;
        break;
    }
  }
  return true;
}

bool VerifyFarkas(const LinearProgram& lp, const std::vector<Rational>& y) {
  const auto& cons = lp.Constraints();
  if (y.size() != cons.size()) return false;
  std::vector<Rational> combo(lp.NumVariables());
  Rational rhs = 0;
  for (std::size_t k = 0; k < cons.size(); ++k) {
    if (cons[k].relation == Relation::kLe && y[k] > 0) return false;
    if (cons[k].relation == Relation::kGe && y[k] < 0) return false;
    if (y[k] == 0) continue;
    for (const auto& [j, c] : cons[k].row) combo[j] += y[k] * c;
    rhs += y[k] * cons[k].rhs;
  }
  for (int j = 0; j < lp.NumVariables(); ++j) {
    if (lp.IsFree(j) ? combo[j] != 0 : combo[j] > 0) return false;
  }
  return rhs > 0;
}

LpOutcome Solve(const LinearProgram& lp) {
  Tableau tableau(lp);
  LpOutcome out;
  if (!tableau.PhaseOne()) {
    out.status = LpStatus::kInfeasible;
    out.certificate = tableau.Certificate();
    if (!VerifyFarkas(lp, out.certificate)) {
      throw BibceError("simplex produced an invalid infeasibility certificate");
    }
    return out;
  }
  out.status = tableau.PhaseTwo(lp.GetObjective());
  if (out.status == LpStatus::kUnbounded) return out;
  out.point = tableau.Point();
  if (!IsFeasiblePoint(lp, out.point)) {
    throw BibceError("simplex produced a point violating a constraint");
  }
  out.value = Evaluate(lp.GetObjective().terms, out.point);
  return out;
}

LpOutcome MaximizeThenRestrict(const LinearProgram& lp,
                               const Objective& second) {
  LpOutcome first = Solve(lp);
  if (first.status == LpStatus::kUnbounded) {
    throw BibceError("first stage is unbounded");
  }
  if (first.status == LpStatus::kInfeasible) return first;
  LinearProgram restricted = lp;
  if (!lp.GetObjective().terms.empty()) {
    restricted.AddConstraint(lp.GetObjective().terms, Relation::kEq,
                             first.value, "stage1");
  }
  restricted.SetObjective(second);
  return Solve(restricted);
}

LinearSystemResult SolveLinearSystem(
    const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b) {
  const std::size_t m = a.size();
  const std::size_t n = m == 0 ? 0 : a[0].size();
  std::vector<std::vector<Rational>> r = a;
  std::vector<Rational> rhs = b;
  // e tracks the row combinations so that e * a = r.
  std::vector<std::vector<Rational>> e(m, std::vector<Rational>(m));
  for (std::size_t k = 0; k < m; ++k) e[k][k] = 1;
  std::vector<int> pivot_col(m, -1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t p = row;
    while (p < m && r[p][col] == 0) ++p;
    if (p == m) continue;
    std::swap(r[p], r[row]);
    std::swap(rhs[p], rhs[row]);
    std::swap(e[p], e[row]);
    const Rational inv = 1 / r[row][col];
    for (auto& v : r[row]) v *= inv;
    for (auto& v : e[row]) v *= inv;
    rhs[row] *= inv;
    for (std::size_t k = 0; k < m; ++k) {
      if (k == row || r[k][col] == 0) continue;
      const Rational f = r[k][col];
      for (std::size_t j = col; j < n; ++j) {
        if (r[row][j] != 0) r[k][j] -= f * r[row][j];
      }
      for (std::size_t j = 0; j < m; ++j) {
        if (e[row][j] != 0) e[k][j] -= f * e[row][j];
      }
      rhs[k] -= f * rhs[row];
    }
    pivot_col[row] = static_cast<int>(col);
    ++row;
  }
  LinearSystemResult out;
  for (std::size_t k = row; k < m; ++k) {
    if (rhs[k] != 0) {
      out.certificate = e[k];
      return out;
    }
  }
  out.feasible = true;
  out.solution.assign(n, Rational(0));
  for (std::size_t k = 0; k < row; ++k) out.solution[pivot_col[k]] = rhs[k];
  return out;
}

}  // namespace bibce
