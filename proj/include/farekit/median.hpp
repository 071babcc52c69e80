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

#ifndef FAREKIT_MEDIAN_HPP_
#define FAREKIT_MEDIAN_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "farekit/core.hpp"

namespace farekit {

struct WeightedValue {
  double value = 0.0;
  std::int64_t weight = 1;
};

// Closed interval of weighted medians: every p with
//   sum_{r < p} t <= T/2  and  sum_{r > p} t <= T/2.
// Both endpoints are sample values.
struct MedianInterval {
  double lower = 0.0;
  double upper = 0.0;
};

enum class MedianPick { Lower, Upper };

// Expected linear time. Throws InvalidInput on an empty sample or a
// nonpositive weight.
MedianInterval weighted_median(std::span<const WeightedValue> sample);
double lower_weighted_median(std::span<const WeightedValue> sample);

// Sum of weight * |value - p|.
double absolute_deviation(std::span<const WeightedValue> sample, double p);

struct FlatSolution {
  double f = 0.0;
  double objective = 0.0;
};

FlatSolution flat_design(std::span<const WeightedValue> sample,
                         MedianPick pick = MedianPick::Lower);
FlatSolution flat_design(std::span<const OdPair> demand,
                         MedianPick pick = MedianPick::Lower);

std::vector<WeightedValue> reference_sample(std::span<const OdPair> demand);

}  // namespace farekit

#endif  // FAREKIT_MEDIAN_HPP_
