// Copyright 2026 The farekit Authors
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

#include "farekit/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace farekit::lp {

std::size_t LinearProgram::add_variable(double cost, std::optional<double> lo,
                                        std::optional<double> hi) {
  objective.push_back(cost);
  lower.push_back(lo);
  upper.push_back(hi);
  for (auto& c : constraints) c.coefficients.push_back(0.0);
  return objective.size() - 1;
}

void LinearProgram::add_constraint(
    const std::vector<std::pair<std::size_t, double>>& terms,
    Relation relation, double rhs) {
  Constraint c;
  c.coefficients.assign(num_variables(), 0.0);
  for (auto [j, a] : terms) {
    if (j >= num_variables()) throw std::invalid_argument("term index");
    c.coefficients[j] += a;
  }
  c.relation = relation;
  c.rhs = rhs;
  constraints.push_back(std::move(c));
}

std::string_view to_string(Status status) {
  switch (status) {
    case Status::Optimal:
      return "optimal";
    case Status::Infeasible:
      return "infeasible";
    case Status::Unbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

// How an original variable is expressed in nonnegative standard columns:
// x = offset + sum sign * column.
struct VariableMap {
  double offset = 0.0;
  std::vector<std::pair<std::size_t, double>> columns;
};

struct Row {
  std::vector<double> a;
  Relation relation;
  double rhs;
};

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const {
    return data_[r * (cols_ + 1) + c];
  }
  double& rhs(std::size_t r) { return at(r, cols_); }
  // Row `rows_` holds reduced costs; its rhs entry is -objective.
  double& cost(std::size_t c) { return at(rows_, c); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double inv = 1.0 / at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double factor = at(r, pc);
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) {
        at(r, c) -= factor * at(pr, c);
      }
      at(r, pc) = 0.0;
    }
  }

  void drop_row(std::size_t r) {
    const std::size_t width = cols_ + 1;
    data_.erase(data_.begin() + static_cast<std::ptrdiff_t>(r * width),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * width));
    --rows_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

enum class RunResult { Optimal, Unbounded };

// Bland's rule: lowest-index improving column, ratio ties broken by the
// lowest basic variable index.
RunResult run_simplex(Tableau& t, std::vector<std::size_t>& basis,
                      const std::vector<char>& allowed) {
  while (true) {
    std::size_t enter = t.cols();
    for (std::size_t c = 0; c < t.cols(); ++c) {
      if (allowed[c] && t.cost(c) < -kPivotTolerance) {
        enter = c;
        break;
      }
    }
    if (enter == t.cols()) return RunResult::Optimal;

    std::size_t leave = t.rows();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, enter);
      if (a <= kPivotTolerance) continue;
      const double ratio = t.rhs(r) / a;
      if (leave == t.rows() || ratio < best - kPivotTolerance) {
        best = ratio;
        leave = r;
      } else if (ratio <= best + kPivotTolerance && basis[r] < basis[leave]) {
        best = std::min(best, ratio);
        leave = r;
      }
    }
    if (leave == t.rows()) return RunResult::Unbounded;
    t.pivot(leave, enter);
    basis[leave] = enter;
  }
}

void check_program(const LinearProgram& program) {
  const std::size_t n = program.num_variables();
  if (program.lower.size() != n || program.upper.size() != n) {
    throw std::invalid_argument("bound vectors do not match variable count");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(program.objective[j])) {
      throw std::invalid_argument("non-finite objective coefficient");
    }
    if (program.lower[j] && program.upper[j] &&
        *program.lower[j] > *program.upper[j]) {
      throw std::invalid_argument("lower bound exceeds upper bound");
    }
  }
  for (const auto& c : program.constraints) {
    if (c.coefficients.size() != n) {
      throw std::invalid_argument("constraint row length mismatch");
    }
    if (!std::isfinite(c.rhs)) throw std::invalid_argument("non-finite rhs");
    for (double a : c.coefficients) {
      if (!std::isfinite(a)) {
        throw std::invalid_argument("non-finite coefficient");
      }
    }
  }
}

}  // namespace

Solution solve(const LinearProgram& program) {
  check_program(program);
  const std::size_t n = program.num_variables();

  // Map variables onto nonnegative columns.
  std::vector<VariableMap> maps(n);
  std::size_t num_std = 0;
  std::vector<Row> rows;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& lo = program.lower[j];
    const auto& hi = program.upper[j];
    if (lo) {
      maps[j].offset = *lo;
      maps[j].columns.push_back({num_std++, 1.0});
    } else if (hi) {
      maps[j].offset = *hi;
      maps[j].columns.push_back({num_std++, -1.0});
    } else {
      maps[j].columns.push_back({num_std++, 1.0});
      maps[j].columns.push_back({num_std++, -1.0});
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (program.lower[j] && program.upper[j]) {
      Row row{std::vector<double>(num_std, 0.0), Relation::LessEqual,
              *program.upper[j] - *program.lower[j]};
      row.a[maps[j].columns.front().first] = 1.0;
      rows.push_back(std::move(row));
    }
  }
  for (const auto& c : program.constraints) {
    Row row{std::vector<double>(num_std, 0.0), c.relation, c.rhs};
    for (std::size_t j = 0; j < n; ++j) {
      const double a = c.coefficients[j];
      if (a == 0.0) continue;
      row.rhs -= a * maps[j].offset;
      for (auto [col, sign] : maps[j].columns) row.a[col] += a * sign;
    }
    // Equalities become a pair of inequalities.
    if (row.relation == Relation::Equal) {
      Row ge = row;
      ge.relation = Relation::GreaterEqual;
      row.relation = Relation::LessEqual;
      rows.push_back(std::move(row));
      rows.push_back(std::move(ge));
    } else {
      rows.push_back(std::move(row));
    }
  }
  for (auto& row : rows) {
    if (row.rhs < 0.0) {
      for (double& a : row.a) a = -a;
      row.rhs = -row.rhs;
      row.relation = row.relation == Relation::LessEqual
                         ? Relation::GreaterEqual
                         : Relation::LessEqual;
    }
  }

  const std::size_t m = rows.size();
  std::size_t num_ge = 0;
  for (const auto& row : rows) {
    if (row.relation == Relation::GreaterEqual) ++num_ge;
  }
  // Columns: standard | slack or surplus (one per row) | artificial (per >=).
  const std::size_t slack0 = num_std;
  const std::size_t art0 = slack0 + m;
  const std::size_t cols = art0 + num_ge;
  Tableau t(m, cols);
  std::vector<std::size_t> basis(m);
  std::vector<char> is_artificial(cols, 0);
  {
    std::size_t art = art0;
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < num_std; ++c) t.at(r, c) = rows[r].a[c];
      t.rhs(r) = rows[r].rhs;
      if (rows[r].relation == Relation::LessEqual) {
        t.at(r, slack0 + r) = 1.0;
        basis[r] = slack0 + r;
      } else {
        t.at(r, slack0 + r) = -1.0;
        t.at(r, art) = 1.0;
        is_artificial[art] = 1;
        basis[r] = art++;
      }
    }
  }

  Solution solution;
  std::vector<char> allowed(cols, 1);

  if (num_ge > 0) {
    // Phase 1: minimize the sum of artificials.
    for (std::size_t c = art0; c < cols; ++c) t.cost(c) = 1.0;
    for (std::size_t r = 0; r < m; ++r) {
      if (!is_artificial[basis[r]]) continue;
      for (std::size_t c = 0; c <= cols; ++c) t.at(m, c) -= t.at(r, c);
    }
    run_simplex(t, basis, allowed);
    const double infeasibility = -t.rhs(t.rows());
    if (infeasibility > kReportTolerance) {
      solution.status = Status::Infeasible;
      return solution;
    }
    // Drive remaining artificials out of the basis.
    for (std::size_t r = 0; r < t.rows();) {
      if (!is_artificial[basis[r]]) {
        ++r;
        continue;
      }
      std::size_t pc = cols;
      for (std::size_t c = 0; c < art0; ++c) {
        if (std::abs(t.at(r, c)) > kPivotTolerance) {
          pc = c;
          break;
        }
      }
      if (pc == cols) {
        t.drop_row(r);
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(r));
        continue;
      }
      t.pivot(r, pc);
      basis[r] = pc;
      ++r;
    }
    for (std::size_t c = art0; c < cols; ++c) allowed[c] = 0;
  }

  // Phase 2 reduced costs.
  std::vector<double> cost(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (auto [col, sign] : maps[j].columns) {
      cost[col] += program.objective[j] * sign;
    }
  }
  const std::size_t mr = t.rows();
  for (std::size_t c = 0; c <= cols; ++c) {
    t.at(mr, c) = c < cols ? cost[c] : 0.0;
  }
  for (std::size_t r = 0; r < mr; ++r) {
    const double cb = cost[basis[r]];
    if (cb == 0.0) continue;
    for (std::size_t c = 0; c <= cols; ++c) t.at(mr, c) -= cb * t.at(r, c);
  }
  if (run_simplex(t, basis, allowed) == RunResult::Unbounded) {
    solution.status = Status::Unbounded;
    return solution;
  }

  std::vector<double> x(cols, 0.0);
  for (std::size_t r = 0; r < mr; ++r) x[basis[r]] = t.rhs(r);
  solution.status = Status::Optimal;
  solution.values.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double v = maps[j].offset;
    for (auto [col, sign] : maps[j].columns) v += sign * x[col];
    solution.values[j] = v;
  }
  solution.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    solution.objective += program.objective[j] * solution.values[j];
  }
  return solution;
}

double max_violation(const LinearProgram& program,
                     const std::vector<double>& values) {
  double worst = 0.0;
  for (const auto& c : program.constraints) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) {
      lhs += c.coefficients[j] * values[j];
    }
    double v = 0.0;
    switch (c.relation) {
      case Relation::LessEqual:
        v = lhs - c.rhs;
        break;
      case Relation::GreaterEqual:
        v = c.rhs - lhs;
        break;
      case Relation::Equal:
        v = std::abs(lhs - c.rhs);
        break;
    }
    worst = std::max(worst, v);
  }
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (program.lower[j]) worst = std::max(worst, *program.lower[j] - values[j]);
    if (program.upper[j]) worst = std::max(worst, values[j] - *program.upper[j]);
  }
  return worst;
}

}  // namespace farekit::lp
