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

#include "farekit/median.hpp"

#include <algorithm>
#include <limits>
#include <cmath>

namespace farekit {

namespace {

std::int64_t total_weight(std::span<const WeightedValue> sample) {
  if (sample.empty()) throw InvalidInput("weighted median of empty sample");
  std::int64_t total = 0;
  for (const auto& s : sample) {
    if (s.weight < 1) throw InvalidInput("weights must be >= 1");
    if (!std::isfinite(s.value)) throw InvalidInput("values must be finite");
    total += s.weight;
  }
  return total;
}

// Smallest sample value v with 2 * weight(values <= v) >= total. With
// `negate` the values are mirrored, which yields the largest value v with
// 2 * weight(values >= v) >= total.
//
// Quickselect on the unweighted median as pivot: every round keeps at most
// half of the remaining items.
double select_median(std::vector<WeightedValue> items, std::int64_t total,
                     bool negate) {
  if (negate) {
    for (auto& it : items) it.value = -it.value;
  }
  auto first = items.begin();
  auto last = items.end();
  std::int64_t below = 0;  // weight already known to lie below the range
  while (true) {
    auto mid = first + (last - first) / 2;
    std::nth_element(first, mid, last,
                     [](const WeightedValue& a, const WeightedValue& b) {
                       return a.value < b.value;
                     });
    const double pivot = mid->value;
    auto lt_end = std::partition(
        first, last, [pivot](const WeightedValue& a) { return a.value < pivot; });
    auto eq_end = std::partition(lt_end, last, [pivot](const WeightedValue& a) {
      return a.value == pivot;
    });
    std::int64_t w_lt = 0;
    std::int64_t w_eq = 0;
    for (auto it = first; it != lt_end; ++it) w_lt += it->weight;
    for (auto it = lt_end; it != eq_end; ++it) w_eq += it->weight;

    if (2 * (below + w_lt) >= total) {
      last = lt_end;
    } else if (2 * (below + w_lt + w_eq) >= total) {
      return negate ? -pivot : pivot;
    } else {
      below += w_lt + w_eq;
      first = eq_end;
    }
  }
}

}  // namespace

MedianInterval weighted_median(std::span<const WeightedValue> sample) {
  const std::int64_t total = total_weight(sample);
  MedianInterval interval;
  interval.lower = select_median({sample.begin(), sample.end()}, total, false);
  // The interval is nondegenerate only if exactly half the weight lies at or
  // below the lower end; the upper end is then the next larger value.
  std::int64_t at_most = 0;
  double next = std::numeric_limits<double>::infinity();
  for (const auto& s : sample) {
    if (s.value <= interval.lower) {
      at_most += s.weight;
    } else {
      next = std::min(next, s.value);
    }
  }
  interval.upper = 2 * at_most == total ? next : interval.lower;
  return interval;
}

double lower_weighted_median(std::span<const WeightedValue> sample) {
  const std::int64_t total = total_weight(sample);
  return select_median({sample.begin(), sample.end()}, total, false);
}

double absolute_deviation(std::span<const WeightedValue> sample, double p) {
  double sum = 0.0;
  for (const auto& s : sample) {
    sum += static_cast<double>(s.weight) * std::abs(s.value - p);
  }
  return sum;
}

FlatSolution flat_design(std::span<const WeightedValue> sample,
                         MedianPick pick) {
  const std::int64_t total = total_weight(sample);
  FlatSolution solution;
  solution.f = select_median({sample.begin(), sample.end()}, total,
                             pick == MedianPick::Upper);
  solution.objective = absolute_deviation(sample, solution.f);
  return solution;
}

std::vector<WeightedValue> reference_sample(std::span<const OdPair> demand) {
  std::vector<WeightedValue> sample;
  sample.reserve(demand.size());
  for (const auto& od : demand) {
    sample.push_back({od.reference_price, od.passengers});
  }
  return sample;
}

FlatSolution flat_design(std::span<const OdPair> demand, MedianPick pick) {
  if (demand.empty()) throw InvalidInput("flat design needs demand");
  return flat_design(reference_sample(demand), pick);
}

}  // namespace farekit
