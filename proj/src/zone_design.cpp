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

#include "farekit/zone_design.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <optional>
#include <thread>

namespace farekit {

namespace {

// Bell(12); larger search spaces get a warning.
constexpr std::uint64_t kLargeSearchSpace = 4213597;

class ArbitraryEnumerator {
 public:
  ArbitraryEnumerator(std::size_t n, int max_zones,
                      const std::function<void(const ZonePartition&)>& visit)
      : labels_(n, 0), max_zones_(max_zones), visit_(visit) {}

  void run() { extend(0, 0); }

 private:
  void extend(std::size_t i, int used) {
    if (i == labels_.size()) {
      visit_(ZonePartition(labels_));
      return;
    }
    const int top = std::min(used + 1, max_zones_);
    for (int z = 1; z <= top; ++z) {
      labels_[i] = z;
      extend(i + 1, std::max(used, z));
    }
    labels_[i] = 0;
  }

  std::vector<int> labels_;
  int max_zones_;
  const std::function<void(const ZonePartition&)>& visit_;
};

// Grows one block at a time from the smallest unassigned station. Each block
// is a connected set of unassigned stations containing that station; the
// include/exclude recursion produces every such set exactly once.
class ConnectedEnumerator {
 public:
  ConnectedEnumerator(const Ptn& ptn, int max_zones,
                      const std::function<void(const ZonePartition&)>& visit)
      : ptn_(ptn),
        labels_(ptn.num_stations(), 0),
        max_zones_(max_zones),
        visit_(visit) {}

  void run() { next_block(0); }

 private:
  void next_block(int used) {
    StationId seed = ptn_.num_stations();
    for (StationId v = 0; v < labels_.size(); ++v) {
      if (labels_[v] == 0) {
        seed = v;
        break;
      }
    }
    if (seed == ptn_.num_stations()) {
      visit_(ZonePartition(labels_));
      return;
    }
    if (used == max_zones_) return;

    const int zone = used + 1;
    labels_[seed] = zone;
    std::vector<char> blocked(labels_.size(), 0);
    blocked[seed] = 1;
    std::vector<StationId> candidates;
    for (StationId w : ptn_.neighbors(seed)) {
      if (labels_[w] == 0) {
        candidates.push_back(w);
        blocked[w] = 1;
      }
    }
    grow(zone, candidates, blocked);
    labels_[seed] = 0;
  }

  // `blocked` marks stations that are in the block, already candidates, or
  // excluded from this branch.
  void grow(int zone, std::vector<StationId> candidates,
            std::vector<char> blocked) {
    next_block(zone);
    while (!candidates.empty()) {
      const StationId v = candidates.front();
      candidates.erase(candidates.begin());
      std::vector<StationId> extended = candidates;
      std::vector<char> extended_blocked = blocked;
      for (StationId w : ptn_.neighbors(v)) {
        if (labels_[w] == 0 && !extended_blocked[w]) {
          extended.push_back(w);
          extended_blocked[w] = 1;
        }
      }
      labels_[v] = zone;
      grow(zone, std::move(extended), std::move(extended_blocked));
      labels_[v] = 0;
      // v stays blocked: later branches exclude it.
    }
  }

  const Ptn& ptn_;
  std::vector<int> labels_;
  int max_zones_;
  const std::function<void(const ZonePartition&)>& visit_;
};

struct Candidate {
  ZonePartition partition;
  PricingResult pricing;
};

bool improves(const Candidate& a, const std::optional<Candidate>& best) {
  if (!best) return true;
  const double tol =
      kPriceTolerance * std::max(1.0, std::abs(best->pricing.objective));
  if (a.pricing.objective < best->pricing.objective - tol) return true;
  if (a.pricing.objective > best->pricing.objective + tol) return false;
  if (a.partition != best->partition) return a.partition < best->partition;
  return a.pricing.prices.values() < best->pricing.prices.values();
}

}  // namespace

void validate_config(const Ptn& ptn, const DesignConfig& config) {
  if (config.max_zones < 1) throw InvalidInput("max_zones must be >= 1");
  if (static_cast<std::size_t>(config.max_zones) > ptn.num_stations()) {
    throw InvalidInput("max_zones exceeds the number of stations");
  }
}

std::string variant_name(const DesignConfig& config) {
  std::string name = "ZD-";
  name += config.mode == CountingMode::Multiple ? 'M' : 'S';
  name += config.connected ? 'C' : 'A';
  return name;
}

void for_each_partition(const Ptn& ptn, int max_zones, bool connected,
                        const std::function<void(const ZonePartition&)>& visit) {
  if (max_zones < 1) throw InvalidInput("max_zones must be >= 1");
  if (connected) {
    ConnectedEnumerator(ptn, max_zones, visit).run();
  } else {
    ArbitraryEnumerator(ptn.num_stations(), max_zones, visit).run();
  }
}

std::vector<ZonePartition> enumerate_partitions(const Ptn& ptn, int max_zones,
                                                bool connected) {
  std::vector<ZonePartition> out;
  for_each_partition(ptn, max_zones, connected,
                     [&](const ZonePartition& z) { out.push_back(z); });
  return out;
}

std::uint64_t count_partitions(int n, int k) {
  if (n == 0) return 1;
  // Stirling numbers of the second kind, row by row.
  std::vector<std::uint64_t> s(static_cast<std::size_t>(n) + 1, 0);
  s[0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j >= 1; --j) {
      s[static_cast<std::size_t>(j)] =
          static_cast<std::uint64_t>(j) * s[static_cast<std::size_t>(j)] +
          s[static_cast<std::size_t>(j - 1)];
    }
    s[0] = 0;
  }
  std::uint64_t total = 0;
  for (int j = 1; j <= std::min(n, k); ++j) {
    total += s[static_cast<std::size_t>(j)];
  }
  return total;
}

PricingResult price_partition(const ZonePartition& partition,
                              std::span<const OdPair> demand,
                              const DesignConfig& config) {
  const auto levels = build_levels(partition, config.mode, demand);
  if (config.require_no_stopover) {
    return price_no_stopover(levels, config.mode,
                             config.require_no_elongation);
  }
  if (config.require_no_elongation) return price_monotone(levels);
  return price_unrestricted(levels);
}

DesignResult solve_exact(const Ptn& ptn, std::span<const OdPair> demand,
                         const DesignConfig& config, int threads) {
  validate_config(ptn, config);
  validate_demand(ptn, demand);
  if (demand.empty()) throw InvalidInput("zone design needs demand");
  if (count_partitions(static_cast<int>(ptn.num_stations()),
                       config.max_zones) > kLargeSearchSpace) {
    std::clog << "warning: exhaustive zone search over "
              << count_partitions(static_cast<int>(ptn.num_stations()),
                                  config.max_zones)
              << " partitions; consider the MILP export\n";
  }

  std::optional<Candidate> best;
  auto consider = [&](std::optional<Candidate>& current,
                      const ZonePartition& partition) {
    Candidate candidate{partition, price_partition(partition, demand, config)};
    if (improves(candidate, current)) current = std::move(candidate);
  };

  if (threads <= 1) {
    for_each_partition(ptn, config.max_zones, config.connected,
                       [&](const ZonePartition& z) { consider(best, z); });
  } else {
    const auto partitions =
        enumerate_partitions(ptn, config.max_zones, config.connected);
    const auto workers = static_cast<std::size_t>(threads);
    std::vector<std::optional<Candidate>> local(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < partitions.size(); i += workers) {
          consider(local[w], partitions[i]);
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& c : local) {
      if (c && improves(*c, best)) best = std::move(c);
    }
  }

  DesignResult result;
  result.partition = best->partition;
  result.prices = best->pricing.prices;
  result.objective = best->pricing.objective;
  result.variant = variant_name(config);
  return result;
}

}  // namespace farekit
