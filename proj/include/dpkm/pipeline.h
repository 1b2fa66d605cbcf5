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

// End-to-end private k-means and its privacy accountant.
//
// The pipeline reduces the data to d' dimensions inside the unit ball, picks
// candidate centers with m levels of private grid max-coverage, releases
// Laplace-noised candidate counts as a weighted proxy dataset, clusters the
// proxy without privacy, and finally releases each induced cluster's mean in
// the original space with NoisyAverage.

#ifndef DPKM_PIPELINE_H_
#define DPKM_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpkm/clustering.h"
#include "dpkm/core.h"
#include "dpkm/gridcover.h"
#include "dpkm/rng.h"

namespace dpkm {

// Per-stage budgets: eps_exp/delta_exp for the cover loop, eps_lap for the
// proxy counts and eps_avg/delta_avg for each NoisyAverage pass.
struct PrivacyParams {
  double eps_exp = 0.0;
  double delta_exp = 0.0;
  double eps_lap = 0.0;
  double eps_avg = 0.0;
  double delta_avg = 0.0;

  // Throws std::invalid_argument on any out-of-range field.
  void Validate() const;
};

struct PrivacyStage {
  std::string name;
  double eps = 0.0;
  double delta = 0.0;
};

struct PrivacyReport {
  double eps_total = 0.0;
  double delta_total = 0.0;
  std::vector<PrivacyStage> stages;
};

// eps = e * eps_exp * ln(1/delta_exp) / 2 + eps_lap + eps_avg
//       + rounds * (eps_lap + eps_avg)
// delta = delta_exp + delta_avg + rounds * delta_avg
PrivacyReport Account(const PrivacyParams& params, size_t dp_lloyd_rounds = 0);

// Inverse of Account: the cover loop gets a third of eps and half of delta,
// the remaining eps is shared equally by every Laplace and NoisyAverage
// release and the remaining delta by the NoisyAverage releases. Throws when
// the NoisyAverage share would exceed 1/3.
PrivacyParams SplitBudget(double eps_total, double delta_total,
                          size_t dp_lloyd_rounds = 0);

// SplitBudget, except that when the NoisyAverage share would exceed 1/3 it
// is pinned at 1/3 and the surplus is split evenly between the cover loop and
// the Laplace releases.
PrivacyParams AllocateBudget(double eps_total, double delta_total,
                             size_t dp_lloyd_rounds = 0);

// One weighted entry per candidate. Weight is the number of points whose
// nearest candidate (lowest index on ties) is c, plus Lap(1/eps_lap), clamped
// at zero. Zero-weight entries are kept.
WeightedDataset BuildProxy(const Dataset& reduced, const CenterSet& candidates,
                           double eps_lap, Rng& rng);
// Same with the per-candidate noise supplied. Testing hook.
WeightedDataset BuildProxyWithNoise(const Dataset& reduced,
                                    const CenterSet& candidates,
                                    const std::vector<double>& noise);

struct PipelineConfig {
  size_t k = 1;
  double eps = 0.5;  // approximation constant, (0, 0.5]
  PrivacyParams privacy;
  std::optional<size_t> target_dim;
  std::optional<size_t> rounds_per_level;
  size_t dp_lloyd_rounds = 0;
  size_t lloyd_max_iters = 10;
  uint64_t seed = 0;
};

struct PipelineDiagnostics {
  size_t target_dim = 0;
  size_t levels = 0;
  size_t rounds_per_level = 0;
  size_t candidate_count = 0;
  size_t projected_points = 0;
  std::vector<int64_t> level_cover;  // points covered per level
  std::vector<double> proxy_weights;
  std::vector<bool> avg_fallback;    // per released center
};

struct ClusteringResult {
  CenterSet centers;
  std::vector<size_t> assignment;
  double cost = 0.0;
  PrivacyReport privacy;
  PipelineDiagnostics diagnostics;
};

ClusteringResult RunPipeline(const Dataset& data, const PipelineConfig& config);

}  // namespace dpkm

#endif  // DPKM_PIPELINE_H_
