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

// Price setting for a fixed zone partition. Demand is grouped into levels by
// the number of traversed zones; prices are then chosen per level.

#ifndef FAREKIT_ZONE_PRICING_HPP_
#define FAREKIT_ZONE_PRICING_HPP_

#include <span>
#include <vector>

#include "farekit/core.hpp"
#include "farekit/median.hpp"

namespace farekit {

// levels[k - 1] holds the (r, t) pairs of OD pairs traversing k zones.
struct LevelledDemand {
  std::vector<std::vector<WeightedValue>> levels;

  int kappa() const { return static_cast<int>(levels.size()); }
  bool all_empty() const;
};

LevelledDemand build_levels(const ZonePartition& partition, CountingMode mode,
                            std::span<const OdPair> demand);

struct PricingResult {
  PriceList prices;
  double objective = 0.0;
};

// Sum over levels of t * |r - p_k|.
double levelled_objective(const LevelledDemand& levels,
                          const PriceList& prices);

// Each nonempty level at its lower weighted median. Empty levels take the
// price of the nearest lower nonempty level (the first nonempty price if
// there is none below).
PricingResult price_unrestricted(const LevelledDemand& levels);

// One block of consecutive levels sharing a price in the monotone
// price-setting algorithm. Levels are 1-based.
struct MergeBlock {
  int first_level = 0;
  int last_level = 0;
  std::vector<WeightedValue> pooled;
  double price = 0.0;
};

struct MergeEvent {
  int first_level = 0;
  int last_level = 0;
  double price = 0.0;
};

// Optional observer of the monotone algorithm.
struct MonotoneTrace {
  std::vector<MergeBlock> initial;
  std::vector<MergeEvent> merges;
  std::vector<MergeBlock> final;
};

// Optimal nondecreasing price list: start with one block per level at its
// weighted median; while two adjacent block prices decrease, pool the two
// blocks, re-median, and step back one block. Empty levels are pooled into
// the nearest lower nonempty level beforehand (the next higher one if none
// is below).
PricingResult price_monotone(const LevelledDemand& levels,
                             MonotoneTrace* trace = nullptr);

// Linear program with per-level prices, optional monotonicity rows and the
// sufficient no-stopover rows for `mode` over reduced index ranges. Prices
// are bounded by the largest reference price.
PricingResult price_no_stopover(const LevelledDemand& levels,
                                CountingMode mode, bool require_monotone);

// Monotone price setting as a plain LP (no stopover rows); cross-check for
// price_monotone.
PricingResult price_monotone_lp(const LevelledDemand& levels);

}  // namespace farekit

#endif  // FAREKIT_ZONE_PRICING_HPP_
