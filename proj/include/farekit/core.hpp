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

// Domain model for fare structure design: the network, demand, zone
// partitions, tariffs, and the fairness-property checks on price lists.

#ifndef FAREKIT_CORE_HPP_
#define FAREKIT_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace farekit {

// Absolute tolerance for all price comparisons.
inline constexpr double kPriceTolerance = 1e-9;

// Stations are addressed by their position in the network's station list.
using StationId = std::size_t;

class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Point2 {
  double x = 0.0;  // km
  double y = 0.0;  // km
};

struct Edge {
  StationId u = 0;
  StationId v = 0;
  double length = 0.0;  // km, > 0

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected, simple, connected public transport network. Edges are stored
// canonically with u < v and sorted by (u, v).
class Ptn {
 public:
  Ptn() = default;
  // Throws InvalidInput if the graph has loops, parallel edges, nonpositive
  // lengths, unknown endpoints, duplicate station names or is disconnected.
  // `coords` is either empty or has one (optional) entry per station.
  Ptn(std::vector<std::string> station_names, std::vector<Edge> edges,
      std::vector<std::optional<Point2>> coords = {});

  std::size_t num_stations() const { return names_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const std::string& name(StationId v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<StationId> find(std::string_view name) const;

  const std::vector<Edge>& edges() const { return edges_; }
  // Neighbors of v in increasing id order.
  const std::vector<StationId>& neighbors(StationId v) const {
    return adjacency_.at(v);
  }
  std::optional<std::size_t> edge_index(StationId a, StationId b) const;
  bool adjacent(StationId a, StationId b) const {
    return edge_index(a, b).has_value();
  }
  double edge_length(StationId a, StationId b) const;

  std::optional<Point2> coord(StationId v) const;
  const std::vector<std::optional<Point2>>& coords() const { return coords_; }

  bool is_tree() const { return edges_.size() + 1 == names_.size(); }

 private:
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<std::optional<Point2>> coords_;
  std::vector<std::vector<StationId>> adjacency_;
};

// A path given by its node sequence. Nodes may repeat; consecutive nodes must
// be adjacent in the network (checked by validate_path).
struct Path {
  std::vector<StationId> nodes;

  std::size_t num_edges() const { return nodes.empty() ? 0 : nodes.size() - 1; }
  StationId front() const { return nodes.front(); }
  StationId back() const { return nodes.back(); }
  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;
};

void validate_path(const Ptn& ptn, const Path& path);

struct OdPair {
  StationId origin = 0;
  StationId destination = 0;
  std::int64_t passengers = 1;
  double reference_price = 0.0;
  Path path;
};

void validate_od_pair(const Ptn& ptn, const OdPair& od);
void validate_demand(const Ptn& ptn, std::span<const OdPair> demand);
double max_reference_price(std::span<const OdPair> demand);

enum class CountingMode { Multiple, Single };

std::string_view to_string(CountingMode mode);

// Assignment of stations to zones 1..L. Zone labels are canonicalized by
// first occurrence in station order, so two partitions with the same blocks
// compare equal. A label of 0 in the input marks an unassigned station.
class ZonePartition {
 public:
  ZonePartition() = default;
  explicit ZonePartition(std::span<const int> labels);
  static ZonePartition from_blocks(
      std::size_t num_stations,
      const std::vector<std::vector<StationId>>& blocks);

  std::size_t num_stations() const { return zone_of_.size(); }
  int num_zones() const { return num_zones_; }
  // 0 if unassigned.
  int zone(StationId v) const {
    return v < zone_of_.size() ? zone_of_[v] : 0;
  }
  bool assigns(StationId v) const { return zone(v) != 0; }
  bool is_complete() const;
  const std::vector<int>& labels() const { return zone_of_; }
  std::vector<std::vector<StationId>> blocks() const;

  friend bool operator==(const ZonePartition&, const ZonePartition&) = default;
  friend auto operator<=>(const ZonePartition& a, const ZonePartition& b) {
    return a.zone_of_ <=> b.zone_of_;
  }

 private:
  std::vector<int> zone_of_;
  int num_zones_ = 0;
};

// Prices p_1..p_K by number of traversed zones. P(k) = p_K for k > K.
class PriceList {
 public:
  PriceList() = default;
  explicit PriceList(std::vector<double> prices);

  std::size_t size() const { return prices_.size(); }
  // 1-based.
  double at(std::size_t k) const;
  const std::vector<double>& values() const { return prices_; }

  friend bool operator==(const PriceList&, const PriceList&) = default;

 private:
  std::vector<double> prices_;
};

enum class DistanceMetric { Network, Beeline };

std::string_view to_string(DistanceMetric metric);

struct FlatTariff {
  double f = 0.0;
};

struct AffineTariff {
  double p = 0.0;  // currency per km
  double f = 0.0;
  DistanceMetric metric = DistanceMetric::Network;
};

struct ZoneTariff {
  ZonePartition partition;
  CountingMode mode = CountingMode::Multiple;
  PriceList prices;
};

using Tariff = std::variant<FlatTariff, AffineTariff, ZoneTariff>;

void validate_tariff(const Tariff& tariff);

// Number of zones traversed by `path`. Throws InvalidInput if a path node is
// not assigned by the partition.
int zone_count(const ZonePartition& partition, CountingMode mode,
               const Path& path);

// Shortest path by total edge length; among equally long paths the
// lexicographically smallest node sequence.
Path shortest_path(const Ptn& ptn, StationId origin, StationId destination);

double network_length(const Ptn& ptn, const Path& path);
// Network length or the Euclidean distance between the path endpoints.
double path_distance(const Ptn& ptn, const Path& path, DistanceMetric metric);

double price(const Ptn& ptn, const Tariff& tariff, const Path& path);

// Sum of t_d * |r_d - price(W_d)| over the demand.
double objective(const Ptn& ptn, const Tariff& tariff,
                 std::span<const OdPair> demand);

bool check_monotone(const PriceList& prices);
bool check_no_stopover_condition(const PriceList& prices, CountingMode mode);
bool is_connected_partition(const Ptn& ptn, const ZonePartition& partition);

}  // namespace farekit

#endif  // FAREKIT_CORE_HPP_
