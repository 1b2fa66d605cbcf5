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

// Non-private weighted k-means: k-means++ seeding and Lloyd iterations.

#ifndef DPKM_CLUSTERING_H_
#define DPKM_CLUSTERING_H_

#include <cstddef>
#include <vector>

#include "dpkm/core.h"
#include "dpkm/rng.h"

namespace dpkm {

enum class Seeding { kKMeansPlusPlus, kProvided };

struct LloydConfig {
  size_t k = 1;
  size_t max_iters = 10;
  double relative_tolerance = 1e-6;
  Seeding seeding = Seeding::kKMeansPlusPlus;
  CenterSet initial_centers;  // used with Seeding::kProvided
};

struct LloydResult {
  CenterSet centers;
  double cost = 0.0;
  size_t iterations = 0;
  // Cost of the seeds followed by the cost after each iteration.
  std::vector<double> cost_history;
};

// Weighted D^2 sampling. The first center is drawn proportionally to weight.
CenterSet KMeansPlusPlusSeed(const WeightedDataset& data, size_t k, Rng& rng);

// Alternates nearest-center assignment and weighted-centroid updates until
// max_iters or the relative cost decrease falls below the tolerance. An
// empty cluster is moved to the point with the largest weighted distance
// contribution.
LloydResult Lloyd(const WeightedDataset& data, const LloydConfig& config,
                  Rng& rng);

WeightedDataset UnitWeights(const std::vector<Point>& points);

}  // namespace dpkm

#endif  // DPKM_CLUSTERING_H_
