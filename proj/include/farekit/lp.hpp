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

// Small dense two-phase simplex solver. Intended for the desk-scale pricing
// programs in this library (a few hundred variables at most).

#ifndef FAREKIT_LP_HPP_
#define FAREKIT_LP_HPP_

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace farekit::lp {

inline constexpr double kPivotTolerance = 1e-9;
inline constexpr double kReportTolerance = 1e-7;

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Constraint {
  std::vector<double> coefficients;  // one per variable
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
};

// minimize objective . x  subject to constraints and per-variable bounds.
// A missing bound is infinite.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<Constraint> constraints;
  std::vector<std::optional<double>> lower;
  std::vector<std::optional<double>> upper;

  std::size_t num_variables() const { return objective.size(); }

  // Adds a variable with the given cost and bounds and returns its index.
  // Existing constraint rows get a zero coefficient.
  std::size_t add_variable(double cost, std::optional<double> lo = 0.0,
                           std::optional<double> hi = std::nullopt);
  void add_constraint(const std::vector<std::pair<std::size_t, double>>& terms,
                      Relation relation, double rhs);
};

enum class Status { Optimal, Infeasible, Unbounded };

std::string_view to_string(Status status);

struct Solution {
  Status status = Status::Infeasible;
  std::vector<double> values;
  double objective = 0.0;
};

// Deterministic. Throws std::invalid_argument for malformed programs
// (row length mismatch, non-finite data, lower > upper).
Solution solve(const LinearProgram& program);

// Largest violation of any constraint or bound by `values`.
double max_violation(const LinearProgram& program,
                     const std::vector<double>& values);

}  // namespace farekit::lp

#endif  // FAREKIT_LP_HPP_
