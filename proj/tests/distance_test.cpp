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

#include "farekit/distance.hpp"

#include <gtest/gtest.h>

#include "farekit/median.hpp"
#include "test_support.hpp"

namespace farekit {
namespace {

std::vector<DistancePoint> fig1_points() {
  return {{1, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 2, 1}};
}

TEST(AffineDesignTest, FourPointExample) {
  const auto sol = affine_design(fig1_points());
  EXPECT_EQ(sol.p, 0.0);
  EXPECT_EQ(sol.f, 2.0);
  EXPECT_EQ(sol.objective, 2.0);
  EXPECT_NEAR(affine_design_lp(fig1_points()).objective, 2.0, 1e-7);
}

TEST(AffineDesignTest, CollinearPointsFitExactly) {
  std::vector<DistancePoint> pts{{0, 1, 2}, {1, 3, 1}, {2.5, 6, 4}, {4, 9, 1}};
  const auto sol = affine_design(pts);
  EXPECT_DOUBLE_EQ(sol.p, 2.0);
  EXPECT_DOUBLE_EQ(sol.f, 1.0);
  EXPECT_DOUBLE_EQ(sol.objective, 0.0);
  EXPECT_NEAR(affine_design_lp(pts).objective, 0.0, 1e-7);
}

TEST(AffineDesignTest, SinglePointPrefersZeroSlope) {
  const auto sol = affine_design(std::vector<DistancePoint>{{4, 3, 1}});
  EXPECT_EQ(sol.p, 0.0);
  EXPECT_EQ(sol.f, 3.0);
  EXPECT_EQ(sol.objective, 0.0);
}

TEST(AffineDesignTest, NegativeSlopeIsNotAllowed) {
  std::vector<DistancePoint> pts{{1, 5, 1}, {2, 3, 1}, {3, 1, 1}};
  const auto sol = affine_design(pts);
  EXPECT_GE(sol.p, 0.0);
  EXPECT_GE(sol.f, 0.0);
  EXPECT_NEAR(sol.objective, affine_design_lp(pts).objective, 1e-7);
}

TEST(AffineDesignTest, RejectsBadInput) {
  EXPECT_THROW(affine_design(std::vector<DistancePoint>{}), InvalidInput);
  EXPECT_THROW(affine_design(std::vector<DistancePoint>{{-1, 1, 1}}), InvalidInput);
  EXPECT_THROW(affine_design(std::vector<DistancePoint>{{1, 1, 0}}), InvalidInput);
}

TEST(AffineDesignTest, DuplicatePointsMergeWeights) {
  std::vector<DistancePoint> split{{1, 1, 1}, {1, 1, 2}, {2, 4, 1}};
  std::vector<DistancePoint> merged{{1, 1, 3}, {2, 4, 1}};
  const auto a = affine_design(split);
  const auto b = affine_design(merged);
  EXPECT_EQ(a.p, b.p);
  EXPECT_EQ(a.f, b.f);
  EXPECT_EQ(a.objective, b.objective);
}

TEST(AffineDesignTest, MatchesLinearProgram) {
  testing::Rng rng(301);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pts = testing::random_points(rng, testing::uniform_int(rng, 1, 40));
    const auto sol = affine_design(pts);
    EXPECT_NEAR(sol.objective, affine_design_lp(pts).objective,
                1e-7 * std::max(1.0, sol.objective))
        << "trial " << trial;
    EXPECT_NEAR(affine_objective(pts, sol.p, sol.f), sol.objective, 1e-9);
  }
}

TEST(AffineDesignTest, DistanceScaling) {
  testing::Rng rng(302);
  for (int trial = 0; trial < 100; ++trial) {
    auto pts = testing::random_points(rng, testing::uniform_int(rng, 1, 15));
    const auto base = affine_design(pts);
    for (auto& pt : pts) pt.l *= 4.0;
    const auto scaled = affine_design(pts);
    EXPECT_NEAR(scaled.objective, base.objective, 1e-9);
    EXPECT_NEAR(affine_objective(pts, base.p / 4.0, base.f), base.objective, 1e-9);
  }
}

TEST(AffineDesignTest, EqualDistancesReduceToFlat) {
  testing::Rng rng(303);
  for (int trial = 0; trial < 100; ++trial) {
    auto pts = testing::random_points(rng, testing::uniform_int(rng, 1, 15));
    std::vector<WeightedValue> sample;
    for (auto& pt : pts) {
      pt.l = 2.5;
      sample.push_back({pt.r, pt.t});
    }
    EXPECT_NEAR(affine_design(pts).objective, flat_design(sample).objective, 1e-9);
  }
}

TEST(AffineDesignTest, RaisingReferencePricesNeverHurts) {
  testing::Rng rng(304);
  for (int trial = 0; trial < 100; ++trial) {
    auto pts = testing::random_points(rng, testing::uniform_int(rng, 1, 15));
    const double before = affine_design(pts).objective;
    const double c = testing::uniform_int(rng, 0, 8) / 2.0;
    for (auto& pt : pts) pt.r += c;
    EXPECT_LE(affine_design(pts).objective, before + 1e-9);
  }
}

TEST(DistancePointsTest, UsesPathDistance) {
  Ptn ptn({"a", "b", "c"}, {{0, 1, 2.0}, {1, 2, 3.0}},
          {Point2{0, 0}, Point2{0, 2}, Point2{3, 6}});
  std::vector<OdPair> demand{{0, 2, 2, 7.0, Path{{0, 1, 2}}}};
  auto pts = distance_points(ptn, demand, DistanceMetric::Network);
  EXPECT_EQ(pts[0].l, 5.0);
  EXPECT_EQ(pts[0].r, 7.0);
  EXPECT_EQ(pts[0].t, 2);
  pts = distance_points(ptn, demand, DistanceMetric::Beeline);
  EXPECT_NEAR(pts[0].l, std::sqrt(45.0), 1e-12);
}

}  // namespace
}  // namespace farekit
