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

#include "farekit/distance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "farekit/lp.hpp"

namespace farekit {

namespace {

void check_points(std::span<const DistancePoint> points) {
  if (points.empty()) throw InvalidInput("affine design needs demand");
  for (const auto& pt : points) {
    if (!(pt.l >= 0.0) || !(pt.r >= 0.0) || pt.t < 1 ||
        !std::isfinite(pt.l) || !std::isfinite(pt.r)) {
      throw InvalidInput("distance points need l >= 0, r >= 0, t >= 1");
    }
  }
}

// Same (l, r) points collapse into one with accumulated weight.
std::vector<DistancePoint> deduplicate(std::span<const DistancePoint> points) {
  std::map<std::pair<double, double>, std::int64_t> merged;
  for (const auto& pt : points) merged[{pt.l, pt.r}] += pt.t;
  std::vector<DistancePoint> out;
  out.reserve(merged.size());
  for (const auto& [key, t] : merged) out.push_back({key.first, key.second, t});
  return out;
}

bool better(double obj, double p, double f, const AffineSolution& best) {
  const double tol = kPriceTolerance * std::max(1.0, std::abs(best.objective));
  if (obj < best.objective - tol) return true;
  if (obj > best.objective + tol) return false;
  return std::pair(p, f) < std::pair(best.p, best.f);
}

}  // namespace

std::vector<DistancePoint> distance_points(const Ptn& ptn,
                                           std::span<const OdPair> demand,
                                           DistanceMetric metric) {
  std::vector<DistancePoint> points;
  points.reserve(demand.size());
  for (const auto& od : demand) {
    points.push_back({path_distance(ptn, od.path, metric), od.reference_price,
                      od.passengers});
  }
  return points;
}

double affine_objective(std::span<const DistancePoint> points, double p,
                        double f) {
  double sum = 0.0;
  for (const auto& pt : points) {
    sum += static_cast<double>(pt.t) * std::abs(pt.r - (p * pt.l + f));
  }
  return sum;
}

AffineSolution affine_design(std::span<const DistancePoint> input) {
  check_points(input);
  const auto points = deduplicate(input);

  AffineSolution best{0.0, 0.0, affine_objective(points, 0.0, 0.0)};
  auto consider = [&](double p, double f) {
    if (p < 0.0 || f < 0.0) return;
    const double obj = affine_objective(points, p, f);
    if (better(obj, p, f, best)) best = {p, f, obj};
  };

  for (const auto& pt : points) {
    consider(0.0, pt.r);
    if (pt.l > 0.0) consider(pt.r / pt.l, 0.0);
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const auto& a = points[i];
      const auto& b = points[j];
      if (a.l == b.l) continue;
      const double p = (b.r - a.r) / (b.l - a.l);
      consider(p, a.r - p * a.l);
    }
  }
  return best;
}

AffineSolution affine_design_lp(std::span<const DistancePoint> input) {
  check_points(input);
  lp::LinearProgram program;
  const std::size_t p = program.add_variable(0.0);
  const std::size_t f = program.add_variable(0.0);
  std::vector<std::size_t> y;
  y.reserve(input.size());
  for (const auto& pt : input) {
    y.push_back(program.add_variable(static_cast<double>(pt.t)));
  }
  for (std::size_t d = 0; d < input.size(); ++d) {
    const auto& pt = input[d];
    // r - p l - f <= y  and  p l + f - r <= y
    program.add_constraint({{p, -pt.l}, {f, -1.0}, {y[d], -1.0}},
                           lp::Relation::LessEqual, -pt.r);
    program.add_constraint({{p, pt.l}, {f, 1.0}, {y[d], -1.0}},
                           lp::Relation::LessEqual, pt.r);
  }
  const auto solution = lp::solve(program);
  if (solution.status != lp::Status::Optimal) {
    throw std::runtime_error("affine design LP returned status " +
                             std::string(lp::to_string(solution.status)));
  }
  AffineSolution out;
  out.p = std::max(0.0, solution.values[p]);
  out.f = std::max(0.0, solution.values[f]);
  out.objective = solution.objective;
  return out;
}

}  // namespace farekit
