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

#ifndef FAREKIT_DISTANCE_HPP_
#define FAREKIT_DISTANCE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "farekit/core.hpp"

namespace farekit {

struct DistancePoint {
  double l = 0.0;  // km
  double r = 0.0;  // reference price
  std::int64_t t = 1;
};

struct AffineSolution {
  double p = 0.0;  // per km
  double f = 0.0;
  double objective = 0.0;
};

std::vector<DistancePoint> distance_points(const Ptn& ptn,
                                           std::span<const OdPair> demand,
                                           DistanceMetric metric);

double affine_objective(std::span<const DistancePoint> points, double p,
                        double f);

// Exact optimum over the finite dominating set: lines through two points
// with distinct distances, lines through one point with p = 0 or f = 0, and
// the origin. Candidates with p < 0 or f < 0 are discarded. Ties go to the
// lexicographically smallest (p, f).
AffineSolution affine_design(std::span<const DistancePoint> points);

// Same problem solved as a linear program.
AffineSolution affine_design_lp(std::span<const DistancePoint> points);

}  // namespace farekit

#endif  // FAREKIT_DISTANCE_HPP_
