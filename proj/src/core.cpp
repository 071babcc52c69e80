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

#include "farekit/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <unordered_map>

namespace farekit {

namespace {

bool connected_subset(const Ptn& ptn, const std::vector<StationId>& members,
                      const std::vector<char>& in_set) {
  if (members.empty()) return true;
  std::vector<char> seen(ptn.num_stations(), 0);
  std::vector<StationId> stack{members.front()};
  seen[members.front()] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    StationId v = stack.back();
    stack.pop_back();
    for (StationId w : ptn.neighbors(v)) {
      if (in_set[w] && !seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == members.size();
}

}  // namespace

Ptn::Ptn(std::vector<std::string> station_names, std::vector<Edge> edges,
         std::vector<std::optional<Point2>> coords)
    : names_(std::move(station_names)),
      edges_(std::move(edges)),
      coords_(std::move(coords)) {
  const std::size_t n = names_.size();
  if (n == 0) throw InvalidInput("network has no stations");
  {
    std::set<std::string_view> seen;
    for (const auto& name : names_) {
      if (name.empty()) throw InvalidInput("empty station name");
      if (!seen.insert(name).second) {
        throw InvalidInput("duplicate station '" + name + "'");
      }
    }
  }
  if (!coords_.empty() && coords_.size() != n) {
    throw InvalidInput("coordinate list does not match station count");
  }
  for (auto& e : edges_) {
    if (e.u >= n || e.v >= n) throw InvalidInput("edge endpoint out of range");
    if (e.u == e.v) throw InvalidInput("loop at station '" + names_[e.u] + "'");
    if (!(e.length > 0.0) || !std::isfinite(e.length)) {
      throw InvalidInput("edge {" + names_[e.u] + "," + names_[e.v] +
                         "} has nonpositive length");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
      throw InvalidInput("parallel edges {" + names_[edges_[i].u] + "," +
                         names_[edges_[i].v] + "}");
    }
  }
  adjacency_.assign(n, {});
  for (const auto& e : edges_) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());

  std::vector<StationId> all(n);
  for (StationId v = 0; v < n; ++v) all[v] = v;
  if (!connected_subset(*this, all, std::vector<char>(n, 1))) {
    throw InvalidInput("network is not connected");
  }
}

std::optional<StationId> Ptn::find(std::string_view name) const {
  for (StationId v = 0; v < names_.size(); ++v) {
    if (names_[v] == name) return v;
  }
  return std::nullopt;
}

std::optional<std::size_t> Ptn::edge_index(StationId a, StationId b) const {
  if (a > b) std::swap(a, b);
  auto it = std::lower_bound(
      edges_.begin(), edges_.end(), std::pair(a, b),
      [](const Edge& e, const std::pair<StationId, StationId>& key) {
        return std::pair(e.u, e.v) < key;
      });
  if (it != edges_.end() && it->u == a && it->v == b) {
    return static_cast<std::size_t>(it - edges_.begin());
  }
  return std::nullopt;
}

double Ptn::edge_length(StationId a, StationId b) const {
  auto idx = edge_index(a, b);
  if (!idx) throw InvalidInput("no edge between stations");
  return edges_[*idx].length;
}

std::optional<Point2> Ptn::coord(StationId v) const {
  if (v >= coords_.size()) return std::nullopt;
  return coords_[v];
}

void validate_path(const Ptn& ptn, const Path& path) {
  if (path.nodes.size() < 2) throw InvalidInput("path needs at least 2 nodes");
  for (std::size_t i = 0; i < path.nodes.size(); ++i) {
    if (path.nodes[i] >= ptn.num_stations()) {
      throw InvalidInput("path node " + std::to_string(i) + " is unknown");
    }
    if (i > 0 && !ptn.adjacent(path.nodes[i - 1], path.nodes[i])) {
      throw InvalidInput("path nodes " + std::to_string(i - 1) + " and " +
                         std::to_string(i) + " (" +
                         ptn.name(path.nodes[i - 1]) + ", " +
                         ptn.name(path.nodes[i]) + ") are not adjacent");
    }
  }
}

void validate_od_pair(const Ptn& ptn, const OdPair& od) {
  if (od.origin >= ptn.num_stations() || od.destination >= ptn.num_stations()) {
    throw InvalidInput("unknown origin or destination");
  }
  if (od.origin == od.destination) {
    throw InvalidInput("origin equals destination");
  }
  if (od.passengers < 1) throw InvalidInput("passengers must be >= 1");
  if (!(od.reference_price >= 0.0) || !std::isfinite(od.reference_price)) {
    throw InvalidInput("reference price must be a finite value >= 0");
  }
  validate_path(ptn, od.path);
  if (od.path.front() != od.origin || od.path.back() != od.destination) {
    throw InvalidInput("path endpoints do not match origin/destination");
  }
}

void validate_demand(const Ptn& ptn, std::span<const OdPair> demand) {
  for (std::size_t i = 0; i < demand.size(); ++i) {
    try {
      validate_od_pair(ptn, demand[i]);
    } catch (const InvalidInput& e) {
      throw InvalidInput("demand[" + std::to_string(i) + "]: " + e.what());
    }
  }
}

double max_reference_price(std::span<const OdPair> demand) {
  double r = 0.0;
  for (const auto& od : demand) r = std::max(r, od.reference_price);
  return r;
}

std::string_view to_string(CountingMode mode) {
  return mode == CountingMode::Multiple ? "multiple" : "single";
}

std::string_view to_string(DistanceMetric metric) {
  return metric == DistanceMetric::Network ? "network" : "beeline";
}

ZonePartition::ZonePartition(std::span<const int> labels)
    : zone_of_(labels.size(), 0) {
  std::unordered_map<int, int> canonical;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (labels[v] < 0) throw InvalidInput("negative zone label");
    if (labels[v] == 0) continue;
    auto [it, inserted] = canonical.emplace(labels[v], num_zones_ + 1);
    if (inserted) ++num_zones_;
    zone_of_[v] = it->second;
  }
}

ZonePartition ZonePartition::from_blocks(
    std::size_t num_stations,
    const std::vector<std::vector<StationId>>& blocks) {
  std::vector<int> labels(num_stations, 0);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (StationId v : blocks[b]) {
      if (v >= num_stations) throw InvalidInput("block station out of range");
      if (labels[v] != 0) throw InvalidInput("station in two blocks");
      labels[v] = static_cast<int>(b) + 1;
    }
  }
  return ZonePartition(labels);
}

bool ZonePartition::is_complete() const {
  return std::none_of(zone_of_.begin(), zone_of_.end(),
                      [](int z) { return z == 0; });
}

std::vector<std::vector<StationId>> ZonePartition::blocks() const {
  std::vector<std::vector<StationId>> out(num_zones_);
  for (StationId v = 0; v < zone_of_.size(); ++v) {
    if (zone_of_[v] != 0) out[zone_of_[v] - 1].push_back(v);
  }
  return out;
}

PriceList::PriceList(std::vector<double> prices) : prices_(std::move(prices)) {
  if (prices_.empty()) throw InvalidInput("price list is empty");
  for (double p : prices_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw InvalidInput("prices must be finite and >= 0");
    }
  }
}

double PriceList::at(std::size_t k) const {
  if (k == 0) throw InvalidInput("price index starts at 1");
  if (prices_.empty()) throw InvalidInput("price list is empty");
  return prices_[std::min(k, prices_.size()) - 1];
}

void validate_tariff(const Tariff& tariff) {
  std::visit(
      [](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, FlatTariff>) {
          if (!(t.f >= 0.0)) throw InvalidInput("flat price must be >= 0");
        } else if constexpr (std::is_same_v<T, AffineTariff>) {
          if (!(t.p >= 0.0) || !(t.f >= 0.0)) {
            throw InvalidInput("affine tariff parameters must be >= 0");
          }
        } else {
          if (t.prices.size() == 0) throw InvalidInput("empty price list");
        }
      },
      tariff);
}

int zone_count(const ZonePartition& partition, CountingMode mode,
               const Path& path) {
  for (StationId v : path.nodes) {
    if (!partition.assigns(v)) {
      throw InvalidInput("station " + std::to_string(v) +
                         " is not assigned to a zone");
    }
  }
  if (mode == CountingMode::Multiple) {
    int crossings = 0;
    for (std::size_t i = 1; i < path.nodes.size(); ++i) {
      if (partition.zone(path.nodes[i - 1]) != partition.zone(path.nodes[i])) {
        ++crossings;
      }
    }
    return 1 + crossings;
  }
  std::vector<int> zones;
  zones.reserve(path.nodes.size());
  for (StationId v : path.nodes) zones.push_back(partition.zone(v));
  std::sort(zones.begin(), zones.end());
  return static_cast<int>(std::unique(zones.begin(), zones.end()) -
                          zones.begin());
}

Path shortest_path(const Ptn& ptn, StationId origin, StationId destination) {
  const std::size_t n = ptn.num_stations();
  if (origin >= n || destination >= n) throw InvalidInput("unknown station");
  if (origin == destination) throw InvalidInput("origin equals destination");

  // Distances to the destination, then a greedy walk that always takes the
  // smallest-id neighbor still on a shortest path.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  using Entry = std::pair<double, StationId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  dist[destination] = 0.0;
  queue.emplace(0.0, destination);
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[v]) continue;
    for (StationId w : ptn.neighbors(v)) {
      double nd = d + ptn.edge_length(v, w);
      if (nd < dist[w]) {
        dist[w] = nd;
        queue.emplace(nd, w);
      }
    }
  }

  Path path{{origin}};
  StationId v = origin;
  while (v != destination) {
    StationId next = n;
    for (StationId w : ptn.neighbors(v)) {
      double via = ptn.edge_length(v, w) + dist[w];
      if (std::abs(via - dist[v]) <= 1e-9 * std::max(1.0, dist[v]) &&
          dist[w] < dist[v]) {
        next = w;
        break;
      }
    }
    if (next == n) throw InvalidInput("destination unreachable");
    path.nodes.push_back(next);
    v = next;
  }
  return path;
}

double network_length(const Ptn& ptn, const Path& path) {
  double total = 0.0;
  for (std::size_t i = 1; i < path.nodes.size(); ++i) {
    total += ptn.edge_length(path.nodes[i - 1], path.nodes[i]);
  }
  return total;
}

double path_distance(const Ptn& ptn, const Path& path, DistanceMetric metric) {
  if (metric == DistanceMetric::Network) return network_length(ptn, path);
  auto a = ptn.coord(path.front());
  auto b = ptn.coord(path.back());
  if (!a || !b) {
    throw InvalidInput("beeline distance needs coordinates for stations '" +
                       ptn.name(path.front()) + "' and '" +
                       ptn.name(path.back()) + "'");
  }
  return std::hypot(a->x - b->x, a->y - b->y);
}

double price(const Ptn& ptn, const Tariff& tariff, const Path& path) {
  return std::visit(
      [&](const auto& t) -> double {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, FlatTariff>) {
          return t.f;
        } else if constexpr (std::is_same_v<T, AffineTariff>) {
          return t.p * path_distance(ptn, path, t.metric) + t.f;
        } else {
          return t.prices.at(
              static_cast<std::size_t>(zone_count(t.partition, t.mode, path)));
        }
      },
      tariff);
}

double objective(const Ptn& ptn, const Tariff& tariff,
                 std::span<const OdPair> demand) {
  double total = 0.0;
  for (const auto& od : demand) {
    total += static_cast<double>(od.passengers) *
             std::abs(od.reference_price - price(ptn, tariff, od.path));
  }
  return total;
}

bool check_monotone(const PriceList& prices) {
  const auto& p = prices.values();
  for (std::size_t k = 1; k < p.size(); ++k) {
    if (p[k - 1] > p[k] + kPriceTolerance) return false;
  }
  return true;
}

bool check_no_stopover_condition(const PriceList& prices, CountingMode mode) {
  const std::size_t K = prices.size();
  auto p = [&](std::size_t k) { return prices.at(k); };
  for (std::size_t k = 1; k <= K; ++k) {
    if (mode == CountingMode::Multiple) {
      for (std::size_t i = 1; i <= k; ++i) {
        if (p(k) > p(i) + p(k - i + 1) + kPriceTolerance) return false;
      }
    } else {
      for (std::size_t i1 = 1; i1 <= k; ++i1) {
        for (std::size_t i2 = k + 1 - i1; i2 <= k; ++i2) {
          if (p(k) > p(i1) + p(i2) + kPriceTolerance) return false;
        }
      }
    }
  }
  return true;
}

bool is_connected_partition(const Ptn& ptn, const ZonePartition& partition) {
  std::vector<char> in_set(ptn.num_stations(), 0);
  for (const auto& block : partition.blocks()) {
    for (StationId v : block) {
      if (v >= ptn.num_stations()) return false;
      in_set[v] = 1;
    }
    bool ok = connected_subset(ptn, block, in_set);
    for (StationId v : block) in_set[v] = 0;
    if (!ok) return false;
  }
  return true;
}

}  // namespace farekit
