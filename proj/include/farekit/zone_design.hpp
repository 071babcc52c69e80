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

// Exact zone tariff design by exhaustive partition search. Meant for small
// networks (about ten stations); larger instances should go through the
// MILP export instead.

#ifndef FAREKIT_ZONE_DESIGN_HPP_
#define FAREKIT_ZONE_DESIGN_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "farekit/core.hpp"
#include "farekit/zone_pricing.hpp"

namespace farekit {

struct DesignConfig {
  CountingMode mode = CountingMode::Multiple;
  bool connected = false;
  int max_zones = 1;  // N
  bool require_no_elongation = false;
  bool require_no_stopover = false;
};

void validate_config(const Ptn& ptn, const DesignConfig& config);

// "ZD-MA", "ZD-MC", "ZD-SA" or "ZD-SC".
std::string variant_name(const DesignConfig& config);

struct DesignResult {
  ZonePartition partition;
  PriceList prices;
  double objective = 0.0;
  std::string variant;
};

// Calls `visit` once for every partition of the stations into at most
// `max_zones` nonempty blocks (each block connected if `connected`).
// Partitions are passed in canonical form. Arbitrary partitions come in
// lexicographic order of their label sequence.
void for_each_partition(const Ptn& ptn, int max_zones, bool connected,
                        const std::function<void(const ZonePartition&)>& visit);

std::vector<ZonePartition> enumerate_partitions(const Ptn& ptn, int max_zones,
                                                bool connected);

// Number of partitions of n elements into at most k blocks.
std::uint64_t count_partitions(int n, int k);

// Price subproblem for a fixed partition, dispatched on the property flags.
PricingResult price_partition(const ZonePartition& partition,
                              std::span<const OdPair> demand,
                              const DesignConfig& config);

// Minimum objective over all admissible partitions. Ties go to the smallest
// canonical partition. The result does not depend on `threads`.
DesignResult solve_exact(const Ptn& ptn, std::span<const OdPair> demand,
                         const DesignConfig& config, int threads = 1);

}  // namespace farekit

#endif  // FAREKIT_ZONE_DESIGN_HPP_
