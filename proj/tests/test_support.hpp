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

// Seeded random instances shared by the unit tests and the acceptance run.

#ifndef FAREKIT_TESTS_TEST_SUPPORT_HPP_
#define FAREKIT_TESTS_TEST_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "farekit/core.hpp"
#include "farekit/distance.hpp"
#include "farekit/median.hpp"
#include "farekit/zone_pricing.hpp"

namespace farekit::testing {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::vector<std::string> station_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i + 1));
  return names;
}

// Random spanning tree plus `extra` random chords; integer lengths 1..3.
inline Ptn random_ptn(Rng& rng, std::size_t n, std::size_t extra,
                      bool unit_lengths = false) {
  std::vector<Edge> edges;
  auto has = [&](StationId a, StationId b) {
    return std::any_of(edges.begin(), edges.end(), [&](const Edge& e) {
      return (e.u == a && e.v == b) || (e.u == b && e.v == a);
    });
  };
  auto length = [&] { return unit_lengths ? 1.0 : double(uniform_int(rng, 1, 3)); };
  for (StationId v = 1; v < n; ++v) {
    const auto parent = static_cast<StationId>(uniform_int(rng, 0, int(v) - 1));
    edges.push_back({parent, v, length()});
  }
  const std::size_t max_edges = n * (n - 1) / 2;
  for (std::size_t i = 0; i < extra && edges.size() < max_edges; ++i) {
    for (int attempt = 0; attempt < 20; ++attempt) {
      const auto a = static_cast<StationId>(uniform_int(rng, 0, int(n) - 1));
      const auto b = static_cast<StationId>(uniform_int(rng, 0, int(n) - 1));
      if (a != b && !has(a, b)) {
        edges.push_back({a, b, length()});
        break;
      }
    }
  }
  return Ptn(station_names(n), std::move(edges));
}

// Random simple path of at most max_nodes nodes starting anywhere.
inline Path random_simple_path(Rng& rng, const Ptn& ptn, std::size_t max_nodes) {
  for (;;) {
    Path path;
    path.nodes.push_back(
        static_cast<StationId>(uniform_int(rng, 0, int(ptn.num_stations()) - 1)));
    const std::size_t target =
        static_cast<std::size_t>(uniform_int(rng, 2, int(max_nodes)));
    while (path.nodes.size() < target) {
      std::vector<StationId> options;
      for (StationId w : ptn.neighbors(path.nodes.back())) {
        if (std::find(path.nodes.begin(), path.nodes.end(), w) == path.nodes.end()) {
          options.push_back(w);
        }
      }
      if (options.empty()) break;
      path.nodes.push_back(options[static_cast<std::size_t>(
          uniform_int(rng, 0, int(options.size()) - 1))]);
    }
    if (path.nodes.size() >= 2) return path;
  }
}

struct DemandOptions {
  int min_od = 1;
  int max_od = 8;
  int max_price = 4;  // reference prices are integers 0..max_price
  int max_passengers = 3;
  std::size_t max_path_nodes = 5;
  bool shortest_paths = false;  // otherwise random simple paths
};

inline std::vector<OdPair> random_demand(Rng& rng, const Ptn& ptn,
                                         const DemandOptions& opt = {}) {
  std::vector<OdPair> demand;
  const int count = uniform_int(rng, opt.min_od, opt.max_od);
  for (int i = 0; i < count; ++i) {
    OdPair od;
    if (opt.shortest_paths) {
      const int n = int(ptn.num_stations());
      od.origin = static_cast<StationId>(uniform_int(rng, 0, n - 1));
      do {
        od.destination = static_cast<StationId>(uniform_int(rng, 0, n - 1));
      } while (od.destination == od.origin);
      od.path = shortest_path(ptn, od.origin, od.destination);
    } else {
      od.path = random_simple_path(rng, ptn, opt.max_path_nodes);
      od.origin = od.path.front();
      od.destination = od.path.back();
    }
    od.passengers = uniform_int(rng, 1, opt.max_passengers);
    od.reference_price = uniform_int(rng, 0, opt.max_price);
    demand.push_back(std::move(od));
  }
  return demand;
}

inline std::vector<WeightedValue> random_sample(Rng& rng, int n, int max_value,
                                                int max_weight) {
  std::vector<WeightedValue> out;
  for (int i = 0; i < n; ++i) {
    out.push_back({double(uniform_int(rng, 0, max_value)),
                   uniform_int(rng, 1, max_weight)});
  }
  return out;
}

// Levels with integer prices; some levels may be empty, the last is not.
inline LevelledDemand random_levels(Rng& rng, int kappa, int max_per_level,
                                    int max_price, int max_weight,
                                    double empty_chance = 0.2) {
  LevelledDemand levels;
  levels.levels.resize(static_cast<std::size_t>(kappa));
  for (int k = 0; k < kappa; ++k) {
    const bool empty = k + 1 < kappa && uniform_real(rng, 0, 1) < empty_chance;
    if (empty) continue;
    const int count = uniform_int(rng, 1, max_per_level);
    levels.levels[static_cast<std::size_t>(k)] =
        random_sample(rng, count, max_price, max_weight);
  }
  return levels;
}

inline std::vector<DistancePoint> random_points(Rng& rng, int n) {
  std::vector<DistancePoint> pts;
  for (int i = 0; i < n; ++i) {
    pts.push_back({double(uniform_int(rng, 0, 20)) / 2.0,
                   double(uniform_int(rng, 0, 40)) / 4.0, uniform_int(rng, 1, 5)});
  }
  return pts;
}

}  // namespace farekit::testing

#endif  // FAREKIT_TESTS_TEST_SUPPORT_HPP_
