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

// Zone design instances built from hard graph problems. A source instance is
// a yes-instance exactly when the generated instance has optimum <= threshold.

#ifndef FAREKIT_REDUCTIONS_HPP_
#define FAREKIT_REDUCTIONS_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "farekit/core.hpp"
#include "farekit/zone_design.hpp"

namespace farekit {

struct ReductionInstance {
  Ptn ptn;
  std::vector<OdPair> demand;
  DesignConfig config;
  double threshold = 0.0;  // J
};

// Bipartite subgraph: is there an edge set of size >= min_kept whose graph
// is bipartite? Adds two stations x1, x2 joined to each other and to the
// first station, with one OD pair per edge. Edges of the original graph have
// weight 1; the three new ones carry |E| + 1 passengers. Arbitrary zones,
// N = 2, threshold |E| - min_kept. The graph must be connected.
ReductionInstance generate_bipartite_reduction(
    const Ptn& graph, int min_kept, CountingMode mode = CountingMode::Multiple);

// Multicut on a star with unit weights: can at most `budget` edges separate
// every terminal pair? Appends a path x1..x_{budget+1} at the center, adds
// the terminal pairs (reference price 2) and the path edges (price 1) as
// demand. Connected zones, N = budget + 1, threshold 0. The center is
// detected when not given.
ReductionInstance generate_multicut_reduction(
    const Ptn& star, const std::vector<std::pair<StationId, StationId>>& pairs,
    int budget, std::optional<StationId> center = std::nullopt,
    CountingMode mode = CountingMode::Multiple);

}  // namespace farekit

#endif  // FAREKIT_REDUCTIONS_HPP_
