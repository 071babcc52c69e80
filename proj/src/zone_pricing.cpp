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

#include "farekit/zone_pricing.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "farekit/lp.hpp"

namespace farekit {

bool LevelledDemand::all_empty() const {
  return std::all_of(levels.begin(), levels.end(),
                     [](const auto& level) { return level.empty(); });
}

LevelledDemand build_levels(const ZonePartition& partition, CountingMode mode,
                            std::span<const OdPair> demand) {
  LevelledDemand out;
  for (const auto& od : demand) {
    const int k = zone_count(partition, mode, od.path);
    if (k > out.kappa()) out.levels.resize(static_cast<std::size_t>(k));
    out.levels[static_cast<std::size_t>(k - 1)].push_back(
        {od.reference_price, od.passengers});
  }
  return out;
}

double levelled_objective(const LevelledDemand& levels,
                          const PriceList& prices) {
  double total = 0.0;
  for (std::size_t k = 0; k < levels.levels.size(); ++k) {
    total += absolute_deviation(levels.levels[k], prices.at(k + 1));
  }
  return total;
}

namespace {

void require_demand(const LevelledDemand& levels) {
  if (levels.all_empty()) throw InvalidInput("all demand levels are empty");
}

double max_level_price(const LevelledDemand& levels) {
  double r = 0.0;
  for (const auto& level : levels.levels) {
    for (const auto& s : level) r = std::max(r, s.value);
  }
  return r;
}

PricingResult price_by_lp(const LevelledDemand& levels,
                          std::optional<CountingMode> stopover_mode,
                          bool require_monotone) {
  require_demand(levels);
  const int kappa = levels.kappa();
  const double r_bar = max_level_price(levels);

  lp::LinearProgram program;
  std::vector<std::size_t> p(static_cast<std::size_t>(kappa) + 1);
  for (int k = 1; k <= kappa; ++k) {
    p[static_cast<std::size_t>(k)] = program.add_variable(0.0, 0.0, r_bar);
  }
  for (int k = 1; k <= kappa; ++k) {
    for (const auto& s : levels.levels[static_cast<std::size_t>(k - 1)]) {
      const std::size_t y =
          program.add_variable(static_cast<double>(s.weight), 0.0);
      const std::size_t pk = p[static_cast<std::size_t>(k)];
      program.add_constraint({{pk, -1.0}, {y, -1.0}}, lp::Relation::LessEqual,
                             -s.value);
      program.add_constraint({{pk, 1.0}, {y, -1.0}}, lp::Relation::LessEqual,
                             s.value);
    }
  }
  auto P = [&](int k) { return p[static_cast<std::size_t>(k)]; };
  if (require_monotone) {
    for (int k = 1; k < kappa; ++k) {
      program.add_constraint({{P(k), 1.0}, {P(k + 1), -1.0}},
                             lp::Relation::LessEqual, 0.0);
    }
  }
  if (stopover_mode == CountingMode::Multiple) {
    for (int k = 3; k <= kappa; ++k) {
      for (int i = 2; i <= (k + 1) / 2; ++i) {
        program.add_constraint({{P(k), 1.0}, {P(i), -1.0}, {P(k - i + 1), -1.0}},
                               lp::Relation::LessEqual, 0.0);
      }
    }
  } else if (stopover_mode == CountingMode::Single) {
    for (int k = 3; k <= kappa; ++k) {
      for (int i1 = (k + 2) / 2; i1 <= k; ++i1) {
        for (int i2 = k + 1 - i1; i2 <= i1; ++i2) {
          program.add_constraint({{P(k), 1.0}, {P(i1), -1.0}, {P(i2), -1.0}},
                                 lp::Relation::LessEqual, 0.0);
        }
      }
    }
  }

  const auto solution = lp::solve(program);
  if (solution.status != lp::Status::Optimal) {
    throw std::runtime_error("price-setting LP returned status " +
                             std::string(lp::to_string(solution.status)));
  }
  std::vector<double> prices(static_cast<std::size_t>(kappa));
  for (int k = 1; k <= kappa; ++k) {
    prices[static_cast<std::size_t>(k - 1)] =
        std::clamp(solution.values[P(k)], 0.0, r_bar);
  }
  PricingResult result{PriceList(std::move(prices)), 0.0};
  result.objective = levelled_objective(levels, result.prices);
  return result;
}

}  // namespace

PricingResult price_unrestricted(const LevelledDemand& levels) {
  require_demand(levels);
  std::vector<double> prices(levels.levels.size(), 0.0);
  std::optional<double> previous;
  for (std::size_t k = 0; k < levels.levels.size(); ++k) {
    if (!levels.levels[k].empty()) {
      prices[k] = lower_weighted_median(levels.levels[k]);
      if (!previous) {
        for (std::size_t j = 0; j < k; ++j) prices[j] = prices[k];
      }
      previous = prices[k];
    } else if (previous) {
      prices[k] = *previous;
    }
  }
  PricingResult result{PriceList(std::move(prices)), 0.0};
  result.objective = levelled_objective(levels, result.prices);
  return result;
}

PricingResult price_monotone(const LevelledDemand& levels,
                             MonotoneTrace* trace) {
  require_demand(levels);
  const int kappa = levels.kappa();

  // Blocks over nonempty levels, with empty levels pooled into a neighbor.
  std::vector<MergeBlock> blocks;
  int leading_empty = 0;
  for (int k = 1; k <= kappa; ++k) {
    const auto& level = levels.levels[static_cast<std::size_t>(k - 1)];
    if (level.empty()) {
      if (blocks.empty()) {
        ++leading_empty;
      } else {
        blocks.back().last_level = k;
      }
      continue;
    }
    MergeBlock block;
    block.first_level = blocks.empty() ? k - leading_empty : k;
    block.last_level = k;
    block.pooled = level;
    block.price = lower_weighted_median(block.pooled);
    blocks.push_back(std::move(block));
  }
  if (trace) trace->initial = blocks;

  std::size_t k = 0;
  while (k + 1 < blocks.size()) {
    if (blocks[k].price > blocks[k + 1].price) {
      auto& merged = blocks[k];
      auto& next = blocks[k + 1];
      merged.last_level = next.last_level;
      merged.pooled.insert(merged.pooled.end(), next.pooled.begin(),
                           next.pooled.end());
      merged.price = lower_weighted_median(merged.pooled);
      if (trace) {
        trace->merges.push_back(
            {merged.first_level, merged.last_level, merged.price});
      }
      blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(k) + 1);
      if (k != 0) --k;
    } else {
      ++k;
    }
  }

  std::vector<double> prices(static_cast<std::size_t>(kappa), 0.0);
  for (const auto& block : blocks) {
    for (int level = block.first_level; level <= block.last_level; ++level) {
      prices[static_cast<std::size_t>(level - 1)] = block.price;
    }
  }
  if (trace) trace->final = blocks;
  PricingResult result{PriceList(std::move(prices)), 0.0};
  result.objective = levelled_objective(levels, result.prices);
  return result;
}

PricingResult price_no_stopover(const LevelledDemand& levels,
                                CountingMode mode, bool require_monotone) {
  return price_by_lp(levels, mode, require_monotone);
}

PricingResult price_monotone_lp(const LevelledDemand& levels) {
  return price_by_lp(levels, std::nullopt, true);
}

}  // namespace farekit
