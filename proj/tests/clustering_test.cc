// Copyright 2026 The Authors.
//
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

#include "dpkm/clustering.h"

#include <algorithm>
#include <set>
#include <vector>

#include "gtest/gtest.h"

namespace dpkm {
namespace {

TEST(KMeansPlusPlusTest, SingleSupportPointRepeats) {
  Rng rng(1);
  const WeightedDataset data{{{1.0, 2.0}, {1.0, 2.0}}, {1.0, 2.0}};
  const CenterSet c = KMeansPlusPlusSeed(data, 2, rng);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0], (Point{1.0, 2.0}));
  EXPECT_EQ(c[1], (Point{1.0, 2.0}));
}

TEST(KMeansPlusPlusTest, DistinctPointsEachChosenOnce) {
  const std::vector<Point> pts = {{0, 0}, {1, 0}, {0, 3}, {5, 5}, {-2, 1}};
  for (uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const CenterSet c = KMeansPlusPlusSeed(UnitWeights(pts), pts.size(), rng);
    EXPECT_EQ(std::set<Point>(c.begin(), c.end()).size(), pts.size());
  }
}

TEST(KMeansPlusPlusTest, FirstCenterIsWeightProportional) {
  const WeightedDataset data{{{0.0}, {100.0}}, {1000.0, 1.0}};
  int heavy = 0;
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    heavy += KMeansPlusPlusSeed(data, 1, rng)[0] == Point{0.0};
  }
  EXPECT_GE(heavy, 990);
}

TEST(KMeansPlusPlusTest, ZeroWeightPointsNeverChosen) {
  const WeightedDataset data{{{0.0}, {10.0}, {20.0}}, {1.0, 0.0, 1.0}};
  for (uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    for (const Point& c : KMeansPlusPlusSeed(data, 3, rng)) {
      EXPECT_NE(c, Point{10.0});
    }
  }
}

TEST(KMeansPlusPlusTest, Errors) {
  Rng rng(1);
  EXPECT_THROW(KMeansPlusPlusSeed(WeightedDataset{}, 1, rng),
               std::invalid_argument);
  EXPECT_THROW(KMeansPlusPlusSeed(WeightedDataset{{{0.0}}, {0.0}}, 1, rng),
               std::invalid_argument);
  EXPECT_THROW(KMeansPlusPlusSeed(UnitWeights({{0.0}}), 0, rng),
               std::invalid_argument);
}

TEST(LloydTest, FixedPoint) {
  LloydConfig config;
  config.k = 2;
  config.seeding = Seeding::kProvided;
  config.initial_centers = {{0.0, 0.0}, {2.0, 0.0}};
  Rng rng(1);
  const LloydResult r = Lloyd(UnitWeights({{0.0, 0.0}, {2.0, 0.0}}), config, rng);
  EXPECT_EQ(r.centers, config.initial_centers);
  EXPECT_EQ(r.cost, 0.0);
}

TEST(LloydTest, WeightedCentroids) {
  LloydConfig config;
  Rng rng(2);
  const LloydResult a =
      Lloyd(WeightedDataset{{{0.0, 0.0}, {2.0, 0.0}}, {1.0, 1.0}}, config, rng);
  EXPECT_EQ(a.centers[0], (Point{1.0, 0.0}));
  EXPECT_EQ(a.cost, 2.0);
  const LloydResult b =
      Lloyd(WeightedDataset{{{0.0, 0.0}, {4.0, 0.0}}, {3.0, 1.0}}, config, rng);
  EXPECT_EQ(b.centers[0], (Point{1.0, 0.0}));
}

TEST(LloydTest, EmptyClusterIsReseeded) {
  LloydConfig config;
  config.k = 2;
  config.max_iters = 1;
  config.seeding = Seeding::kProvided;
  config.initial_centers = {{0.0}, {100.0}};
  Rng rng(3);
  const LloydResult r =
      Lloyd(UnitWeights({{-1.0}, {0.0}, {1.0}, {9.0}}), config, rng);
  EXPECT_EQ(r.centers[0], (Point{2.25}));
  EXPECT_EQ(r.centers[1], (Point{9.0}));
}

std::vector<Point> RandomDyadic(size_t n, size_t d, Rng& rng) {
  std::vector<Point> pts(n, Point(d));
  for (Point& p : pts) {
    for (double& x : p) x = static_cast<double>(rng.UniformInt(-64, 64)) / 16.0;
  }
  return pts;
}

TEST(LloydTest, CostIsMonotone) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    std::vector<Point> pts(120, Point(3));
    for (Point& p : pts) {
      for (double& x : p) x = rng.StandardNormal() + (rng.Bernoulli(0.5) ? 4 : 0);
    }
    WeightedDataset data = UnitWeights(pts);
    for (double& w : data.weights) w = 0.1 + rng.Uniform();
    LloydConfig config;
    config.k = 5;
    config.max_iters = 30;
    config.relative_tolerance = 0.0;
    const LloydResult r = Lloyd(data, config, rng);
    ASSERT_EQ(r.cost_history.size(), r.iterations + 1);
    for (size_t i = 1; i < r.cost_history.size(); ++i) {
      EXPECT_LE(r.cost_history[i], r.cost_history[i - 1] * (1.0 + 1e-9));
    }
    EXPECT_EQ(r.cost, r.cost_history.back());
    EXPECT_EQ(r.cost, KMeansCost(data, r.centers));
  }
}

TEST(LloydTest, StopsAtMaxIters) {
  Rng rng(4);
  LloydConfig config;
  config.k = 3;
  config.max_iters = 0;
  const LloydResult r = Lloyd(UnitWeights(RandomDyadic(30, 2, rng)), config, rng);
  EXPECT_EQ(r.iterations, 0u);
  EXPECT_EQ(r.cost_history.size(), 1u);
}

TEST(LloydTest, WeightScalingIsBitIdentical) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Rng data_rng(100 + seed);
    WeightedDataset data = UnitWeights(RandomDyadic(60, 2, data_rng));
    for (double& w : data.weights) w = static_cast<double>(data_rng.UniformInt(1, 8));
    WeightedDataset scaled = data;
    for (double& w : scaled.weights) w *= 8.0;
    LloydConfig config;
    config.k = 4;
    Rng r1(seed), r2(seed);
    const LloydResult a = Lloyd(data, config, r1);
    const LloydResult b = Lloyd(scaled, config, r2);
    EXPECT_EQ(a.centers, b.centers);
    EXPECT_EQ(a.iterations, b.iterations);
  }
}

TEST(LloydTest, IntegerWeightsMatchReplication) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Rng data_rng(200 + seed);
    const std::vector<Point> pts = RandomDyadic(25, 2, data_rng);
    WeightedDataset weighted = UnitWeights(pts);
    std::vector<Point> replicated;
    for (size_t i = 0; i < pts.size(); ++i) {
      const int64_t w = data_rng.UniformInt(1, 4);
      weighted.weights[i] = static_cast<double>(w);
      for (int64_t c = 0; c < w; ++c) replicated.push_back(pts[i]);
    }
    LloydConfig config;
    config.k = 3;
    Rng r1(seed), r2(seed);
    const LloydResult a = Lloyd(weighted, config, r1);
    const LloydResult b = Lloyd(UnitWeights(replicated), config, r2);
    EXPECT_EQ(a.centers, b.centers) << "seed " << seed;
  }
}

TEST(LloydTest, Errors) {
  Rng rng(1);
  LloydConfig config;
  config.k = 0;
  EXPECT_THROW(Lloyd(UnitWeights({{0.0}}), config, rng), std::invalid_argument);
  config.k = 2;
  config.seeding = Seeding::kProvided;
  config.initial_centers = {{0.0}};
  EXPECT_THROW(Lloyd(UnitWeights({{0.0}}), config, rng), std::invalid_argument);
  config.initial_centers = {{0.0}, {1.0, 2.0}};
  EXPECT_THROW(Lloyd(UnitWeights({{0.0}}), config, rng), std::invalid_argument);
  config.seeding = Seeding::kKMeansPlusPlus;
  config.relative_tolerance = -1.0;
  EXPECT_THROW(Lloyd(UnitWeights({{0.0}}), config, rng), std::invalid_argument);
}

}  // namespace
}  // namespace dpkm
