// Copyright 2026 The ptolemaic-deletion Authors
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

// Small dense LP solver: two-phase primal simplex on a full tableau.
//
// Problems are of the form
//
//   minimize c·x  subject to  a_i·x {≤,≥,=} b_i,  0 ≤ x ≤ u.
//
// Entering columns follow Dantzig's rule until a run of degenerate pivots is
// seen, after which Bland's rule takes over, so the method terminates.

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptolemaic::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct Term {
  int var;
  double coef;
};

struct Constraint {
  std::vector<Term> terms;
  Sense sense;
  double rhs;
};

struct LinearProgram {
  std::vector<double> cost;   // minimized
  std::vector<double> upper;  // lower bounds are all zero
  std::vector<Constraint> constraints;

  int add_variable(double c, double ub = kInfinity) {
    cost.push_back(c);
    upper.push_back(ub);
    return static_cast<int>(cost.size()) - 1;
  }
  void add_constraint(std::vector<Term> terms, Sense sense, double rhs) {
    constraints.push_back({std::move(terms), sense, rhs});
  }
  int num_variables() const { return static_cast<int>(cost.size()); }
  std::size_t count(Sense s) const {
    std::size_t k = 0;
    for (const auto& c : constraints) k += c.sense == s;
    return k;
  }
};

class LpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Solution {
  std::vector<double> x;
  double objective = 0.0;
  int iterations = 0;
};

struct SolverOptions {
  double pivot_tolerance = 1e-9;
  double cost_tolerance = 1e-10;
  double feasibility_tolerance = 1e-9;
  int max_iterations = 200000;
  int degenerate_switch = 50;  // degenerate pivots before Bland's rule
};

inline double activity(const Constraint& c, std::span<const double> x) {
  double s = 0.0;
  for (const Term& t : c.terms) s += t.coef * x[t.var];
  return s;
}

/// Largest violation of any constraint or bound by x.
inline double max_violation(const LinearProgram& lp, std::span<const double> x) {
  double worst = 0.0;
  for (int j = 0; j < lp.num_variables(); ++j) {
    worst = std::max(worst, -x[j]);
    if (std::isfinite(lp.upper[j])) worst = std::max(worst, x[j] - lp.upper[j]);
  }
  for (const Constraint& c : lp.constraints) {
    const double a = activity(c, x);
    switch (c.sense) {
      case Sense::kLessEqual: worst = std::max(worst, a - c.rhs); break;
      case Sense::kGreaterEqual: worst = std::max(worst, c.rhs - a); break;
      case Sense::kEqual: worst = std::max(worst, std::abs(a - c.rhs)); break;
    }
  }
  return worst;
}

inline double objective_value(const LinearProgram& lp, std::span<const double> x) {
  double s = 0.0;
  for (int j = 0; j < lp.num_variables(); ++j) s += lp.cost[j] * x[j];
  return s;
}

namespace detail {

// An upper bound is dropped when a ≤ row with nonnegative data already
// implies it.
inline bool upper_bound_implied(const LinearProgram& lp, int j) {
  for (const Constraint& c : lp.constraints) {
    if (c.sense != Sense::kLessEqual || c.rhs < 0) continue;
    double coef = 0.0;
    bool nonneg = true;
    for (const Term& t : c.terms) {
      if (t.coef < 0) nonneg = false;
      if (t.var == j) coef += t.coef;
    }
    if (nonneg && coef > 0 && c.rhs / coef <= lp.upper[j]) return true;
  }
  return false;
}

class Tableau {
 public:
  Tableau(const LinearProgram& lp, const SolverOptions& opts) : opts_(opts), n_(lp.num_variables()) {
    std::vector<Constraint> rows = lp.constraints;
    for (int j = 0; j < n_; ++j)
      if (std::isfinite(lp.upper[j]) && !upper_bound_implied(lp, j))
        rows.push_back({{{j, 1.0}}, Sense::kLessEqual, lp.upper[j]});
    m_ = static_cast<int>(rows.size());

    // Column layout: structural | slack/surplus (one per inequality) | artificial.
    std::vector<int> slack_col(m_, -1), art_col(m_, -1);
    std::vector<double> sign(m_, 1.0);
    int cols = n_;
    for (int i = 0; i < m_; ++i) {
      Sense s = rows[i].sense;
      if (rows[i].rhs < 0) {
        sign[i] = -1.0;
        if (s == Sense::kLessEqual) s = Sense::kGreaterEqual;
        else if (s == Sense::kGreaterEqual) s = Sense::kLessEqual;
      }
      rows[i].sense = s;
      if (s != Sense::kEqual) slack_col[i] = cols++;
    }
    first_artificial_ = cols;
    for (int i = 0; i < m_; ++i)
      if (rows[i].sense != Sense::kLessEqual) art_col[i] = cols++;
    cols_ = cols;
    width_ = cols_ + 1;
    t_.assign(static_cast<std::size_t>(m_) * width_, 0.0);
    basis_.assign(m_, -1);
    for (int i = 0; i < m_; ++i) {
      for (const Term& term : rows[i].terms) at(i, term.var) += sign[i] * term.coef;
      at(i, cols_) = sign[i] * rows[i].rhs;
      if (slack_col[i] >= 0) at(i, slack_col[i]) = rows[i].sense == Sense::kLessEqual ? 1.0 : -1.0;
      if (art_col[i] >= 0) {
        at(i, art_col[i]) = 1.0;
        basis_[i] = art_col[i];
      } else {
        basis_[i] = slack_col[i];
      }
    }
  }

  Solution solve(const std::vector<double>& cost) {
    if (first_artificial_ < cols_) {
      std::vector<double> phase1(cols_, 0.0);
      for (int j = first_artificial_; j < cols_; ++j) phase1[j] = 1.0;
      run(phase1, cols_);
      double infeasibility = 0.0;
      for (int i = 0; i < m_; ++i)
        if (basis_[i] >= first_artificial_) infeasibility += at(i, cols_);
      if (infeasibility > opts_.feasibility_tolerance) throw LpError("linear program is infeasible");
      drive_out_artificials();
    }
    std::vector<double> phase2(cols_, 0.0);
    for (int j = 0; j < n_; ++j) phase2[j] = cost[j];
    run(phase2, first_artificial_);

    Solution sol;
    sol.x.assign(n_, 0.0);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_) sol.x[basis_[i]] = at(i, cols_);
    sol.iterations = iterations_;
    return sol;
  }

 private:
  double& at(int i, int j) { return t_[static_cast<std::size_t>(i) * width_ + j]; }

  // Minimizes cost over the current basis; only columns < allowed may enter.
  void run(const std::vector<double>& cost, int allowed) {
    std::vector<double> reduced(cols_);
    int degenerate_run = 0;
    while (true) {
      for (int j = 0; j < cols_; ++j) {
        double d = cost[j];
        for (int i = 0; i < m_; ++i) d -= cost[basis_[i]] * at(i, j);
        reduced[j] = d;
      }
      const bool bland = degenerate_run >= opts_.degenerate_switch;
      int enter = -1;
      for (int j = 0; j < allowed; ++j) {
        if (reduced[j] >= -opts_.cost_tolerance) continue;
        if (enter < 0 || (!bland && reduced[j] < reduced[enter])) enter = j;
        if (bland) break;
      }
      if (enter < 0) return;

      int leave = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (a <= opts_.pivot_tolerance) continue;
        const double ratio = at(i, cols_) / a;
        if (leave < 0 || ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-12 && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) throw LpError("linear program is unbounded");
      degenerate_run = best_ratio <= 1e-12 ? degenerate_run + 1 : 0;
      pivot(leave, enter);
      if (++iterations_ > opts_.max_iterations) throw LpError("simplex iteration limit reached");
    }
  }

  void pivot(int r, int c) {
    const double p = at(r, c);
    for (int j = 0; j < width_; ++j) at(r, j) /= p;
    at(r, c) = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (int j = 0; j < width_; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
      if (std::abs(at(i, cols_)) < 1e-13) at(i, cols_) = 0.0;
    }
    basis_[r] = c;
  }

  // Zero-valued artificials left in the basis after phase one are swapped for
  // any structural or slack column with a usable pivot; rows with none are
  // redundant and keep their artificial at zero.
  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < first_artificial_) continue;
      for (int j = 0; j < first_artificial_; ++j) {
        if (std::abs(at(i, j)) > opts_.pivot_tolerance) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  const SolverOptions& opts_;
  int n_ = 0, m_ = 0, cols_ = 0, width_ = 0, first_artificial_ = 0;
  int iterations_ = 0;
  std::vector<double> t_;
  std::vector<int> basis_;
};

}  // namespace detail

/// Optimal solution of `lp`. Throws LpError when the program is infeasible,
/// unbounded, or the iteration cap is hit. Values within 1e-11 of a bound are
/// snapped onto it.
inline Solution solve(const LinearProgram& lp, const SolverOptions& opts = {}) {
  if (static_cast<int>(lp.upper.size()) != lp.num_variables())
    throw std::invalid_argument("upper bound vector length differs from variable count");
  for (const Constraint& c : lp.constraints)
    for (const Term& t : c.terms)
      if (t.var < 0 || t.var >= lp.num_variables()) throw std::out_of_range("constraint references unknown variable");
  detail::Tableau tableau(lp, opts);
  Solution sol = tableau.solve(lp.cost);
  for (int j = 0; j < lp.num_variables(); ++j) {
    double& v = sol.x[j];
    if (std::abs(v) < 1e-11) v = 0.0;
    if (std::isfinite(lp.upper[j]) && std::abs(v - lp.upper[j]) < 1e-11) v = lp.upper[j];
  }
  sol.objective = objective_value(lp, sol.x);
  return sol;
}

}  // namespace ptolemaic::lp
