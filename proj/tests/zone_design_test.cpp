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

#include <gtest/gtest.h>

#include <set>

#include "farekit/io.hpp"
#include "fixture_eval.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace farekit {
namespace {

Ptn line3() { return Ptn({"v1", "v2", "v3"}, {{0, 1, 1.0}, {1, 2, 1.0}}); }

DesignConfig config(CountingMode mode, bool connected, int n, bool mono = false,
                    bool stop = false) {
  return DesignConfig{mode, connected, n, mono, stop};
}

TEST(EnumeratePartitionsTest, LineCounts) {
  EXPECT_EQ(enumerate_partitions(line3(), 3, false).size(), 5u);
  const auto connected = enumerate_partitions(line3(), 3, true);
  EXPECT_EQ(connected.size(), 4u);
  const std::vector<int> split{1, 2, 1};
  for (const auto& z : connected) EXPECT_NE(z, ZonePartition(split));
  EXPECT_EQ(enumerate_partitions(line3(), 1, false).size(), 1u);
  EXPECT_EQ(enumerate_partitions(line3(), 1, true).size(), 1u);
}

TEST(EnumeratePartitionsTest, ArbitraryOrderIsLexicographic) {
  const auto all = enumerate_partitions(line3(), 3, false);
  for (std::size_t i = 1; i < all.size(); ++i) {
    EXPECT_LT(all[i - 1].labels(), all[i].labels());
  }
}

TEST(EnumeratePartitionsTest, MatchesLabelOracle) {
  testing::Rng rng(501);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = static_cast<std::size_t>(testing::uniform_int(rng, 1, 6));
    const Ptn ptn = testing::random_ptn(rng, n, static_cast<std::size_t>(
                                                    testing::uniform_int(rng, 0, 3)));
    const int max_zones = testing::uniform_int(rng, 1, int(n));
    for (bool connected : {false, true}) {
      const auto got = enumerate_partitions(ptn, max_zones, connected);
      const std::set<ZonePartition> unique(got.begin(), got.end());
      EXPECT_EQ(unique.size(), got.size()) << "duplicates";
      EXPECT_EQ(unique, oracle::partitions_by_labels(ptn, max_zones, connected));
      if (!connected) {
        EXPECT_EQ(got.size(), count_partitions(int(n), max_zones));
      }
    }
  }
}

TEST(CountPartitionsTest, StirlingSums) {
  EXPECT_EQ(count_partitions(3, 3), 5u);
  EXPECT_EQ(count_partitions(5, 5), 52u);
  EXPECT_EQ(count_partitions(5, 2), 16u);
  EXPECT_EQ(count_partitions(4, 1), 1u);
}

TEST(ValidateConfigTest, RejectsBadZoneBounds) {
  EXPECT_THROW(validate_config(line3(), config(CountingMode::Multiple, false, 0)),
               InvalidInput);
  EXPECT_THROW(validate_config(line3(), config(CountingMode::Multiple, false, 4)),
               InvalidInput);
  EXPECT_NO_THROW(validate_config(line3(), config(CountingMode::Single, true, 3)));
  EXPECT_EQ(variant_name(config(CountingMode::Single, true, 2)), "ZD-SC");
  EXPECT_EQ(variant_name(config(CountingMode::Multiple, false, 2)), "ZD-MA");
}

TEST(FixtureTest, AllExpectationsReproduce) {
  for (const auto& name : fixture_names()) {
    const auto fixture = load_fixture(name);
    ASSERT_FALSE(fixture.expected.empty()) << name;
    for (const auto& e : fixture.expected) {
      const auto got = testing::run_expectation(fixture, e);
      EXPECT_TRUE(testing::meets(e, got.objective))
          << name << " / " << e.label << ": got " << got.objective;
      if (e.compare == Expectation::Compare::Equal && e.task == "zone-prices") {
        EXPECT_EQ(got.prices, e.prices) << name << " / " << e.label;
      }
      if (e.p) {
        EXPECT_EQ(got.p, e.p) << name << " / " << e.label;
      }
      if (e.f) {
        EXPECT_EQ(got.f, e.f) << name << " / " << e.label;
      }
    }
  }
}

TEST(SolveExactTest, ExampleOneWitness) {
  const auto inst = load_fixture("example1").instance;
  const auto r = solve_exact(inst.ptn, inst.demand, config(CountingMode::Multiple, false, 2));
  EXPECT_EQ(r.objective, 0.0);
  EXPECT_EQ(r.partition.labels(), (std::vector<int>{1, 2, 1}));
  EXPECT_EQ(r.prices.values(), (std::vector<double>{1, 1, 2}));
  EXPECT_EQ(r.variant, "ZD-MA");
}

TEST(SolveExactTest, FewerZonesCanBeBetter) {
  const auto inst = load_fixture("fig2").instance;
  const auto r = solve_exact(inst.ptn, inst.demand, config(CountingMode::Multiple, true, 3));
  EXPECT_EQ(r.objective, 0.0);
  EXPECT_EQ(r.partition.num_zones(), 2);
}

TEST(SolveExactTest, ThreadCountDoesNotChangeResult) {
  testing::Rng rng(502);
  for (int trial = 0; trial < 20; ++trial) {
    const Ptn ptn = testing::random_ptn(rng, 6, 2);
    const auto demand = testing::random_demand(rng, ptn);
    const auto cfg = config(CountingMode::Single, trial % 2 == 0, 3, trial % 3 == 0);
    const auto a = solve_exact(ptn, demand, cfg, 1);
    for (int threads : {2, 4}) {
      const auto b = solve_exact(ptn, demand, cfg, threads);
      EXPECT_EQ(a.partition, b.partition);
      EXPECT_EQ(a.prices.values(), b.prices.values());
      EXPECT_EQ(a.objective, b.objective);
    }
  }
}

TEST(SolveExactTest, MatchesBruteForce) {
  testing::Rng rng(503);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = static_cast<std::size_t>(testing::uniform_int(rng, 2, 5));
    const Ptn ptn = testing::random_ptn(rng, n, 2);
    const auto demand = testing::random_demand(rng, ptn);
    const auto cfg = config(trial % 2 ? CountingMode::Single : CountingMode::Multiple,
                            (trial / 2) % 2 == 1, testing::uniform_int(rng, 1, int(n)),
                            (trial / 4) % 2 == 1);
    const auto got = solve_exact(ptn, demand, cfg);
    EXPECT_NEAR(got.objective, oracle::design_by_enumeration(ptn, demand, cfg), 1e-7)
        << "trial " << trial;
    const ZoneTariff tariff{got.partition, cfg.mode, got.prices};
    EXPECT_NEAR(objective(ptn, tariff, demand), got.objective, 1e-9);
    EXPECT_LE(got.partition.num_zones(), cfg.max_zones);
    if (cfg.connected) {
      EXPECT_TRUE(is_connected_partition(ptn, got.partition));
    }
    if (cfg.require_no_elongation) {
      EXPECT_TRUE(check_monotone(got.prices));
    }
  }
}

TEST(SolveExactTest, NoStopoverResultsObeyTheCondition) {
  testing::Rng rng(504);
  for (int trial = 0; trial < 40; ++trial) {
    const Ptn ptn = testing::random_ptn(rng, 4, 1);
    const auto demand = testing::random_demand(rng, ptn);
    for (auto mode : {CountingMode::Multiple, CountingMode::Single}) {
      const auto base = solve_exact(ptn, demand, config(mode, false, 3, true));
      const auto got = solve_exact(ptn, demand, config(mode, false, 3, true, true));
      EXPECT_GE(got.objective, base.objective - 1e-7);
      // Snap solver noise before the exact check.
      std::vector<double> p;
      for (double x : got.prices.values()) p.push_back(std::round(x * 1e6) / 1e6);
      EXPECT_TRUE(check_no_stopover_condition(PriceList(p), mode));
      EXPECT_TRUE(check_monotone(PriceList(p)));
    }
  }
}

// Smaller relation sweep; the acceptance binary runs the full one.
TEST(SolveExactTest, VariantRelations) {
  testing::Rng rng(505);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = static_cast<std::size_t>(testing::uniform_int(rng, 2, 6));
    const bool tree = trial % 2 == 0;
    const Ptn ptn = testing::random_ptn(rng, n, tree ? 0 : 2);
    testing::DemandOptions opt;
    opt.shortest_paths = tree;
    const auto demand = testing::random_demand(rng, ptn, opt);
    const int N = testing::uniform_int(rng, 1, int(n));
    auto z = [&](CountingMode mode, bool connected, int zones) {
      return solve_exact(ptn, demand, config(mode, connected, zones)).objective;
    };
    const double ma = z(CountingMode::Multiple, false, N);
    const double mc = z(CountingMode::Multiple, true, N);
    const double sa = z(CountingMode::Single, false, N);
    const double sc = z(CountingMode::Single, true, N);
    EXPECT_LE(ma, mc + 1e-9);
    EXPECT_LE(sa, sc + 1e-9);
    if (tree) {
      EXPECT_NEAR(mc, sc, 1e-9);
    }
    const int full = int(n);
    EXPECT_NEAR(z(CountingMode::Multiple, false, full), z(CountingMode::Multiple, true, full),
                1e-9);
    if (N < full) {
      EXPECT_LE(z(CountingMode::Single, false, N + 1), sa + 1e-9);
    }
  }
}

}  // namespace
}  // namespace farekit
