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

#include "farekit/reductions.hpp"

#include <algorithm>

namespace farekit {

namespace {

// `base`, or `base` with a numeric suffix if the name is taken.
std::string fresh_name(const std::vector<std::string>& taken,
                       const std::string& base) {
  auto used = [&](const std::string& s) {
    return std::find(taken.begin(), taken.end(), s) != taken.end();
  };
  if (!used(base)) return base;
  for (int i = 1;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (!used(candidate)) return candidate;
  }
}

OdPair edge_demand(StationId a, StationId b, std::int64_t t, double r) {
  return {a, b, t, r, Path{{a, b}}};
}

}  // namespace

ReductionInstance generate_bipartite_reduction(const Ptn& graph, int min_kept,
                                               CountingMode mode) {
  const auto m = static_cast<int>(graph.num_edges());
  if (m < 1) throw InvalidInput("bipartite reduction needs at least one edge");
  if (min_kept < 1 || min_kept > m) {
    throw InvalidInput("bipartite reduction needs 1 <= Q' <= |E|");
  }

  std::vector<std::string> names = graph.names();
  const StationId u = 0;
  const StationId x1 = names.size();
  names.push_back(fresh_name(names, "x1"));
  const StationId x2 = names.size();
  names.push_back(fresh_name(names, "x2"));

  std::vector<Edge> edges = graph.edges();
  edges.push_back({u, x1, 1.0});
  edges.push_back({u, x2, 1.0});
  edges.push_back({x1, x2, 1.0});

  const std::int64_t heavy = m + 1;
  ReductionInstance out;
  for (const auto& e : graph.edges()) {
    out.demand.push_back(edge_demand(e.u, e.v, 1, 2.0));
  }
  out.demand.push_back(edge_demand(u, x1, heavy, 2.0));
  out.demand.push_back(edge_demand(u, x2, heavy, 2.0));
  out.demand.push_back(edge_demand(x1, x2, heavy, 1.0));

  std::vector<std::optional<Point2>> coords;
  out.ptn = Ptn(std::move(names), std::move(edges), std::move(coords));
  out.config.mode = mode;
  out.config.connected = false;
  out.config.max_zones = 2;
  out.threshold = static_cast<double>(m - min_kept);
  return out;
}

ReductionInstance generate_multicut_reduction(
    const Ptn& star, const std::vector<std::pair<StationId, StationId>>& pairs,
    int budget, std::optional<StationId> center, CountingMode mode) {
  const std::size_t n = star.num_stations();
  if (budget < 1) throw InvalidInput("multicut reduction needs Q >= 1");
  if (n < 2 || !star.is_tree()) throw InvalidInput("multicut input must be a star");
  if (!center) {
    for (StationId v = 0; v < n; ++v) {
      if (star.neighbors(v).size() == n - 1) {
        center = v;
        break;
      }
    }
  }
  if (!center || *center >= n || star.neighbors(*center).size() != n - 1) {
    throw InvalidInput("multicut input must be a star");
  }
  if (pairs.empty()) throw InvalidInput("multicut reduction needs terminal pairs");
  for (const auto& [a, b] : pairs) {
    if (a >= n || b >= n || a == b) {
      throw InvalidInput("terminal pairs need two distinct stations of the star");
    }
  }

  std::vector<std::string> names = star.names();
  std::vector<Edge> edges = star.edges();
  std::vector<StationId> chain{*center};
  for (int j = 1; j <= budget + 1; ++j) {
    const StationId x = names.size();
    names.push_back(fresh_name(names, "x" + std::to_string(j)));
    edges.push_back({chain.back(), x, 1.0});
    chain.push_back(x);
  }

  ReductionInstance out;
  out.ptn = Ptn(std::move(names), std::move(edges));
  for (const auto& [a, b] : pairs) {
    OdPair od{a, b, 1, 2.0, shortest_path(out.ptn, a, b)};
    out.demand.push_back(std::move(od));
  }
  for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
    out.demand.push_back(edge_demand(chain[j], chain[j + 1], 1, 1.0));
  }
  out.config.mode = mode;
  out.config.connected = true;
  out.config.max_zones = budget + 1;
  out.threshold = 0.0;
  return out;
}

}  // namespace farekit
