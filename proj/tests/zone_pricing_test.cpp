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

#include <gtest/gtest.h>

#include "farekit/io.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace farekit {
namespace {

LevelledDemand make_levels(std::vector<std::vector<WeightedValue>> levels) {
  LevelledDemand out;
  out.levels = std::move(levels);
  return out;
}

// D_1={(2,1)}, D_2={(1,2)}, D_3={(3,3)}.
LevelledDemand three_levels() { return make_levels({{{2, 1}}, {{1, 2}}, {{3, 3}}}); }

TEST(BuildLevelsTest, ReenteredZoneCountsTwice) {
  const Ptn ptn({"v1", "v2", "v3"}, {{0, 1, 1.0}, {1, 2, 1.0}});
  std::vector<OdPair> demand{{0, 1, 1, 1.0, Path{{0, 1}}},
                             {0, 2, 1, 2.0, Path{{0, 1, 2}}},
                             {1, 2, 1, 1.0, Path{{1, 2}}}};
  const std::vector<int> z{1, 2, 1};
  const auto levels = build_levels(ZonePartition(z), CountingMode::Multiple, demand);
  ASSERT_EQ(levels.kappa(), 3);
  EXPECT_TRUE(levels.levels[0].empty());
  EXPECT_EQ(levels.levels[1].size(), 2u);
  ASSERT_EQ(levels.levels[2].size(), 1u);
  EXPECT_EQ(levels.levels[2][0].value, 2.0);
}

TEST(BuildLevelsTest, SingleZone) {
  const Ptn ptn({"v1", "v2"}, {{0, 1, 1.0}});
  std::vector<OdPair> demand{{0, 1, 2, 1.0, Path{{0, 1}}}, {1, 0, 1, 3.0, Path{{1, 0}}}};
  const std::vector<int> z{1, 1};
  const auto levels = build_levels(ZonePartition(z), CountingMode::Single, demand);
  ASSERT_EQ(levels.kappa(), 1);
  EXPECT_EQ(levels.levels[0].size(), 2u);
}

TEST(PriceUnrestrictedTest, ForcedSingletons) {
  const auto r = price_unrestricted(make_levels({{}, {{1, 1}, {2, 1}}, {{2, 1}}}));
  EXPECT_EQ(r.prices.at(2), 1.0);
  EXPECT_EQ(r.prices.at(3), 2.0);
  EXPECT_EQ(r.objective, 1.0);
}

TEST(PriceUnrestrictedTest, PerLevelMedians) {
  const auto r = price_unrestricted(three_levels());
  EXPECT_EQ(r.prices.values(), (std::vector<double>{2, 1, 3}));
  EXPECT_EQ(r.objective, 0.0);
}

TEST(PriceUnrestrictedTest, OneLevelAndEmptyInput) {
  const auto r = price_unrestricted(make_levels({{{5, 7}}}));
  EXPECT_EQ(r.prices.values(), (std::vector<double>{5}));
  EXPECT_EQ(r.objective, 0.0);
  EXPECT_THROW(price_unrestricted(make_levels({{}, {}})), InvalidInput);
}

TEST(PriceUnrestrictedTest, EmptyLevelsCarryPreviousPrice) {
  const auto r = price_unrestricted(make_levels({{}, {{3, 1}}, {}, {{1, 1}}}));
  EXPECT_EQ(r.prices.values(), (std::vector<double>{3, 3, 3, 1}));
}

TEST(PriceMonotoneTest, WorkedTrace) {
  const auto levels = algorithm_trace_levels();
  MonotoneTrace trace;
  const auto r = price_monotone(levels, &trace);
  EXPECT_EQ(r.prices.values(), (std::vector<double>{1, 3, 3, 4, 4, 4}));
  ASSERT_EQ(trace.merges.size(), 3u);
  EXPECT_EQ(trace.merges[0].first_level, 2);
  EXPECT_EQ(trace.merges[0].last_level, 3);
  EXPECT_EQ(trace.merges[0].price, 3.0);
  EXPECT_EQ(trace.merges[1].first_level, 5);
  EXPECT_EQ(trace.merges[1].last_level, 6);
  EXPECT_EQ(trace.merges[1].price, 4.0);
  EXPECT_EQ(trace.merges[2].first_level, 4);
  EXPECT_EQ(trace.merges[2].last_level, 6);
  EXPECT_EQ(trace.merges[2].price, 4.0);
  EXPECT_EQ(trace.initial.size(), 6u);
  EXPECT_EQ(trace.final.size(), 3u);
}

TEST(PriceMonotoneTest, ThreeLevelExample) {
  const auto r = price_monotone(three_levels());
  EXPECT_EQ(r.prices.values(), (std::vector<double>{1, 1, 3}));
  EXPECT_EQ(r.objective, 1.0);
}

TEST(PriceMonotoneTest, IncreasingMediansAreKept) {
  const auto r = price_monotone(make_levels({{{1, 1}}, {{2, 1}}}));
  EXPECT_EQ(r.prices.values(), (std::vector<double>{1, 2}));
  EXPECT_EQ(r.objective, 0.0);
}

TEST(PriceNoStopoverTest, DoublingBound) {
  const auto levels = make_levels({{{1, 10}}, {{1, 10}}, {{5, 1}}});
  const auto r = price_no_stopover(levels, CountingMode::Multiple, true);
  ASSERT_EQ(r.prices.size(), 3u);
  EXPECT_NEAR(r.prices.at(1), 1.0, 1e-7);
  EXPECT_NEAR(r.prices.at(2), 1.0, 1e-7);
  EXPECT_NEAR(r.prices.at(3), 2.0, 1e-7);
  EXPECT_NEAR(r.objective, 3.0, 1e-7);
}

TEST(PriceNoStopoverTest, SingleLevelIsFlat) {
  const auto levels = make_levels({{{1, 1}, {4, 2}, {2, 1}}});
  for (auto mode : {CountingMode::Multiple, CountingMode::Single}) {
    EXPECT_NEAR(price_no_stopover(levels, mode, false).objective,
                flat_design(levels.levels[0]).objective, 1e-7);
  }
}

TEST(PriceNoStopoverTest, FeasibleMonotoneSolutionIsKept) {
  const auto levels = make_levels({{{2, 1}}, {{3, 1}}, {{4, 1}}});
  const auto mono = price_monotone(levels);
  ASSERT_TRUE(check_no_stopover_condition(mono.prices, CountingMode::Single));
  for (auto mode : {CountingMode::Multiple, CountingMode::Single}) {
    EXPECT_NEAR(price_no_stopover(levels, mode, true).objective, mono.objective, 1e-7);
  }
}

TEST(PricingPropertyTest, NestedObjectivesAndConditions) {
  testing::Rng rng(401);
  for (int trial = 0; trial < 300; ++trial) {
    const auto levels = testing::random_levels(rng, testing::uniform_int(rng, 1, 7), 5, 9, 3);
    const auto free = price_unrestricted(levels);
    const auto mono = price_monotone(levels);
    EXPECT_LE(free.objective, mono.objective + 1e-9);
    EXPECT_TRUE(check_monotone(mono.prices));
    for (auto mode : {CountingMode::Multiple, CountingMode::Single}) {
      const auto stop = price_no_stopover(levels, mode, true);
      EXPECT_LE(mono.objective, stop.objective + 1e-7);
      EXPECT_TRUE(check_monotone(stop.prices));
      EXPECT_NEAR(levelled_objective(levels, stop.prices), stop.objective, 1e-6);
      const auto loose = price_no_stopover(levels, mode, false);
      EXPECT_LE(loose.objective, stop.objective + 1e-7);
      EXPECT_LE(free.objective, loose.objective + 1e-7);
    }
    // The Single rows imply the Multiple ones.
    EXPECT_LE(price_no_stopover(levels, CountingMode::Multiple, true).objective,
              price_no_stopover(levels, CountingMode::Single, true).objective + 1e-7);
  }
}

TEST(PricingPropertyTest, PricesBoundedByLargestReferencePrice) {
  testing::Rng rng(402);
  for (int trial = 0; trial < 200; ++trial) {
    const auto levels = testing::random_levels(rng, testing::uniform_int(rng, 1, 6), 4, 9, 3);
    double r_bar = 0.0;
    for (const auto& level : levels.levels) {
      for (const auto& x : level) r_bar = std::max(r_bar, x.value);
    }
    for (const auto& r : {price_unrestricted(levels), price_monotone(levels),
                          price_no_stopover(levels, CountingMode::Single, false)}) {
      for (double p : r.prices.values()) EXPECT_LE(p, r_bar + 1e-7);
    }
  }
}

TEST(PriceMonotoneTest, MatchesLinearProgram) {
  testing::Rng rng(403);
  for (int trial = 0; trial < 300; ++trial) {
    const auto levels = testing::random_levels(rng, testing::uniform_int(rng, 1, 8), 6, 12, 4);
    EXPECT_NEAR(price_monotone(levels).objective, price_monotone_lp(levels).objective, 1e-7)
        << "trial " << trial;
  }
}

TEST(PriceMonotoneTest, MatchesEnumeration) {
  testing::Rng rng(404);
  for (int trial = 0; trial < 300; ++trial) {
    const auto levels = testing::random_levels(rng, testing::uniform_int(rng, 1, 5), 4, 5, 3);
    EXPECT_NEAR(price_monotone(levels).objective, oracle::monotone_by_enumeration(levels),
                1e-9)
        << "trial " << trial;
  }
}

TEST(PriceMonotoneTest, BlockPricesAreMediansOfPooledDemand) {
  testing::Rng rng(405);
  for (int trial = 0; trial < 200; ++trial) {
    const auto levels = testing::random_levels(rng, testing::uniform_int(rng, 1, 8), 5, 9, 3, 0.0);
    MonotoneTrace trace;
    const auto r = price_monotone(levels, &trace);
    for (const auto& block : trace.final) {
      const auto m = weighted_median(block.pooled);
      EXPECT_GE(block.price, m.lower);
      EXPECT_LE(block.price, m.upper);
      for (int k = block.first_level; k <= block.last_level; ++k) {
        EXPECT_EQ(r.prices.at(k), block.price);
      }
    }
  }
}

TEST(PriceMonotoneTest, UnchangedWhenAlreadyNondecreasing) {
  testing::Rng rng(406);
  int hits = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto levels = testing::random_levels(rng, testing::uniform_int(rng, 1, 4), 3, 9, 2, 0.0);
    const auto free = price_unrestricted(levels);
    if (!check_monotone(free.prices)) continue;
    ++hits;
    EXPECT_EQ(price_monotone(levels).prices.values(), free.prices.values());
  }
  EXPECT_GT(hits, 50);
}

}  // namespace
}  // namespace farekit
