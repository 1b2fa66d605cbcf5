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

#include "dpkm/pipeline.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dpkm/mechanisms.h"
#include "dpkm/preprocess.h"

namespace dpkm {
namespace {

enum StreamTag : uint64_t {
  kJlStream = 1,
  kCoverStream = 2,
  kProxyStream = 3,
  kLloydStream = 4,
  kAverageStream = 5,
  kRefineStream = 6,
};

bool InOpenUnit(double x) { return x > 0.0 && x < 1.0; }

void CheckAccountable(const PrivacyParams& p) {
  if (!(p.eps_exp >= 0.0) || !(p.eps_lap >= 0.0) || !(p.eps_avg >= 0.0) ||
      !std::isfinite(p.eps_exp) || !std::isfinite(p.eps_lap) ||
      !std::isfinite(p.eps_avg)) {
    throw std::invalid_argument("privacy eps values must be finite and >= 0");
  }
  if (!InOpenUnit(p.delta_exp)) {
    throw std::invalid_argument("delta_exp must lie in (0, 1)");
  }
  if (!(p.delta_avg >= 0.0 && p.delta_avg < 1.0)) {
    throw std::invalid_argument("delta_avg must lie in [0, 1)");
  }
  if (p.eps_avg > 1.0 / 3.0) {
    throw std::invalid_argument("eps_avg must not exceed 1/3");
  }
}

double LoopEps(const PrivacyParams& p) {
  return std::numbers::e * p.eps_exp * std::log(1.0 / p.delta_exp) / 2.0;
}

std::vector<Point> Gather(const Dataset& data, const std::vector<size_t>& idx) {
  std::vector<Point> out;
  out.reserve(idx.size());
  for (size_t i : idx) out.push_back(data[i]);
  return out;
}

// One round of private Lloyd in the original space. Clusters whose Laplace
// count does not clear NoisyAverage's count offset keep their center.
void RefineRound(const Dataset& data, const PrivacyParams& privacy,
                 CenterSet& centers, Rng& rng) {
  const size_t k = centers.size();
  const std::vector<size_t> assignment = AssignClusters(data, centers);
  std::vector<std::vector<size_t>> members(k);
  for (size_t i = 0; i < assignment.size(); ++i) {
    members[assignment[i]].push_back(i);
  }
  const NoisyAvgParams avg{privacy.eps_avg, privacy.delta_avg};
  const double gate = NoisyAverageCountOffset(avg);
  for (size_t c = 0; c < k; ++c) {
    const double noisy_count = static_cast<double>(members[c].size()) +
                               SampleLaplace({1.0 / privacy.eps_lap}, rng);
    if (noisy_count <= gate) continue;
    centers[c] = NoisyAverage(Gather(data, members[c]), data.dim(),
                              data.diameter_bound(), avg, rng)
                     .value;
  }
}

}  // namespace

void PrivacyParams::Validate() const {
  if (!(eps_exp > 0.0) || !(eps_lap > 0.0) || !(eps_avg > 0.0) ||
      !std::isfinite(eps_exp) || !std::isfinite(eps_lap)) {
    throw std::invalid_argument("privacy eps values must be positive");
  }
  if (eps_avg > 1.0 / 3.0) {
    throw std::invalid_argument("eps_avg must not exceed 1/3");
  }
  if (!InOpenUnit(delta_exp) || !InOpenUnit(delta_avg)) {
    throw std::invalid_argument("privacy delta values must lie in (0, 1)");
  }
}

PrivacyReport Account(const PrivacyParams& params, size_t dp_lloyd_rounds) {
  CheckAccountable(params);
  PrivacyReport report;
  report.stages.push_back({"cover_loop", LoopEps(params), params.delta_exp});
  report.stages.push_back({"proxy_counts", params.eps_lap, 0.0});
  report.stages.push_back({"noisy_average", params.eps_avg, params.delta_avg});
  for (size_t r = 0; r < dp_lloyd_rounds; ++r) {
    report.stages.push_back({"dp_lloyd_round_" + std::to_string(r + 1),
                             params.eps_lap + params.eps_avg,
                             params.delta_avg});
  }
  for (const PrivacyStage& s : report.stages) {
    report.eps_total += s.eps;
    report.delta_total += s.delta;
  }
  return report;
}

PrivacyParams SplitBudget(double eps_total, double delta_total,
                          size_t dp_lloyd_rounds) {
  if (!(eps_total > 0.0) || !std::isfinite(eps_total)) {
    throw std::invalid_argument("total eps must be positive");
  }
  if (!InOpenUnit(delta_total)) {
    throw std::invalid_argument("total delta must lie in (0, 1)");
  }
  const double releases = static_cast<double>(dp_lloyd_rounds + 1);
  PrivacyParams p;
  p.eps_lap = eps_total / (3.0 * releases);
  p.eps_avg = p.eps_lap;
  if (p.eps_avg > 1.0 / 3.0) {
    throw std::invalid_argument(
        "infeasible budget: the NoisyAVG share would be " +
        std::to_string(p.eps_avg) + " > 1/3");
  }
  p.delta_exp = delta_total / 2.0;
  p.delta_avg = delta_total / (2.0 * releases);
  p.eps_exp = 2.0 * (eps_total / 3.0) /
              (std::numbers::e * std::log(1.0 / p.delta_exp));
  return p;
}

PrivacyParams AllocateBudget(double eps_total, double delta_total,
                             size_t dp_lloyd_rounds) {
  const double releases = static_cast<double>(dp_lloyd_rounds + 1);
  if (!(eps_total / (3.0 * releases) > 1.0 / 3.0)) {
    return SplitBudget(eps_total, delta_total, dp_lloyd_rounds);
  }
  if (!InOpenUnit(delta_total) || !std::isfinite(eps_total)) {
    throw std::invalid_argument("invalid total budget");
  }
  PrivacyParams p;
  p.eps_avg = 1.0 / 3.0;
  const double surplus = eps_total - releases / 3.0;
  p.eps_lap = surplus / (2.0 * releases);
  p.delta_exp = delta_total / 2.0;
  p.delta_avg = delta_total / (2.0 * releases);
  p.eps_exp =
      surplus / (std::numbers::e * std::log(1.0 / p.delta_exp));
  return p;
}

WeightedDataset BuildProxyWithNoise(const Dataset& reduced,
                                    const CenterSet& candidates,
                                    const std::vector<double>& noise) {
  if (candidates.empty()) throw std::invalid_argument("no candidate centers");
  if (noise.size() != candidates.size()) {
    throw std::invalid_argument("one noise value per candidate required");
  }
  std::vector<double> counts(candidates.size(), 0.0);
  for (const Point& p : reduced.points()) {
    counts[NearestCenter(p, candidates)] += 1.0;
  }
  WeightedDataset proxy;
  proxy.points = candidates;
  proxy.weights.resize(candidates.size());
  for (size_t c = 0; c < candidates.size(); ++c) {
    proxy.weights[c] = std::max(0.0, counts[c] + noise[c]);
  }
  return proxy;
}

WeightedDataset BuildProxy(const Dataset& reduced, const CenterSet& candidates,
                           double eps_lap, Rng& rng) {
  if (candidates.empty()) throw std::invalid_argument("no candidate centers");
  if (!(eps_lap > 0.0)) throw std::invalid_argument("eps_lap must be > 0");
  std::vector<double> noise(candidates.size());
  for (double& x : noise) x = SampleLaplace({1.0 / eps_lap}, rng);
  return BuildProxyWithNoise(reduced, candidates, noise);
}

ClusteringResult RunPipeline(const Dataset& data, const PipelineConfig& config) {
  if (config.k == 0) throw std::invalid_argument("k must be >= 1");
  if (!(config.eps > 0.0) || config.eps > 0.5) {
    throw std::invalid_argument("approximation eps must lie in (0, 0.5]");
  }
  if (data.size() < 2) throw std::invalid_argument("pipeline needs n >= 2");
  config.privacy.Validate();
  const PrivacyParams& privacy = config.privacy;

  const Rng root(config.seed);
  Rng jl_rng = root.Derive(kJlStream);
  Rng cover_rng = root.Derive(kCoverStream);
  Rng proxy_rng = root.Derive(kProxyStream);
  Rng lloyd_rng = root.Derive(kLloydStream);
  Rng avg_rng = root.Derive(kAverageStream);
  Rng refine_rng = root.Derive(kRefineStream);

  ClusteringResult result;
  PipelineDiagnostics& diag = result.diagnostics;

  const JlTransform jl =
      MakeJl(data.size(), data.dim(), config.eps, jl_rng, config.target_dim);
  auto [reduced, record] = ReduceAndNormalize(data, jl);
  diag.target_dim = jl.target_dim();
  diag.projected_points = record.projected_indices.size();

  const std::vector<GridLevel> levels =
      GridLevels(data.size(), jl.target_dim(), config.eps);
  const size_t rounds = config.rounds_per_level.value_or(
      DefaultRoundsPerLevel(config.k, config.eps));
  diag.levels = levels.size();
  diag.rounds_per_level = rounds;

  CenterSet candidates;
  UncoveredPool pool = UncoveredPool::Full(reduced.size());
  for (const GridLevel& level : levels) {
    GridCoverResult chosen = PrivateGridSetCover(
        reduced.points(), pool, level, rounds, privacy.eps_exp, cover_rng);
    int64_t covered = 0;
    for (int64_t c : chosen.round_cover) covered += c;
    diag.level_cover.push_back(covered);
    for (Point& c : chosen.centers) candidates.push_back(std::move(c));
  }
  diag.candidate_count = candidates.size();

  // The proxy counts use every reduced point, covered or not.
  WeightedDataset proxy =
      BuildProxy(reduced, candidates, privacy.eps_lap, proxy_rng);
  diag.proxy_weights = proxy.weights;
  if (!(proxy.total_weight() > 0.0)) {
    std::fill(proxy.weights.begin(), proxy.weights.end(), 1.0);
  }

  LloydConfig lloyd;
  lloyd.k = config.k;
  lloyd.max_iters = config.lloyd_max_iters;
  const CenterSet proxy_centers = Lloyd(proxy, lloyd, lloyd_rng).centers;

  const std::vector<size_t> reduced_assignment =
      AssignClusters(reduced, proxy_centers);
  const std::vector<std::vector<size_t>> members =
      LiftAssignment(data, record, reduced_assignment, config.k);

  const NoisyAvgParams avg{privacy.eps_avg, privacy.delta_avg};
  for (size_t c = 0; c < config.k; ++c) {
    NoisyAvgResult released =
        NoisyAverage(Gather(data, members[c]), data.dim(),
                     data.diameter_bound(), avg, avg_rng);
    diag.avg_fallback.push_back(released.fallback);
    result.centers.push_back(std::move(released.value));
  }

  for (size_t r = 0; r < config.dp_lloyd_rounds; ++r) {
    RefineRound(data, privacy, result.centers, refine_rng);
  }

  result.assignment = AssignClusters(data, result.centers);
  result.cost = KMeansCost(data, result.centers);
  result.privacy = Account(privacy, config.dp_lloyd_rounds);
  return result;
}

}  // namespace dpkm
