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

#include "dpkm/mechanisms.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace dpkm {
namespace {

// log(exp(a) - 1) for a > 0 without overflow.
double LogExpm1(double a) {
  if (a > 30.0) return a + std::log1p(-std::exp(-a));
  return std::log(std::expm1(a));
}

void CheckCoverageArgs(double log_grid_size, double eps_exp) {
  if (!(eps_exp > 0.0) || !std::isfinite(eps_exp)) {
    throw std::invalid_argument("exponential mechanism: eps must be > 0");
  }
  if (!(log_grid_size >= 0.0) || !std::isfinite(log_grid_size)) {
    throw std::invalid_argument("exponential mechanism: empty grid");
  }
}

// Log of the total weight of the nonuniform component,
// sum_c m_c (exp(eps c / 2) - 1).
double LogExcessMass(std::span<const CountGroup> groups, double eps_exp,
                     std::vector<double>* per_group) {
  per_group->clear();
  double max_log = -std::numeric_limits<double>::infinity();
  for (const CountGroup& g : groups) {
    if (g.count < 1 || g.multiplicity < 1) {
      throw std::invalid_argument(
          "coverage group needs count >= 1 and multiplicity >= 1");
    }
    const double lw = std::log(static_cast<double>(g.multiplicity)) +
                      LogExpm1(0.5 * eps_exp * static_cast<double>(g.count));
    per_group->push_back(lw);
    max_log = std::max(max_log, lw);
  }
  if (per_group->empty()) return max_log;
  double sum = 0.0;
  for (double lw : *per_group) sum += std::exp(lw - max_log);
  return max_log + std::log(sum);
}

void CheckSupportFits(std::span<const CountGroup> groups,
                      double log_grid_size) {
  double support = 0.0;
  for (const CountGroup& g : groups) support += static_cast<double>(g.multiplicity);
  if (support > 0.0 && std::log(support) > log_grid_size + 1e-12) {
    throw std::invalid_argument(
        "more nonzero-cover points than grid points");
  }
}

}  // namespace

double SampleLaplace(LaplaceParam param, Rng& rng) {
  if (!(param.scale > 0.0) || !std::isfinite(param.scale)) {
    throw std::invalid_argument("Laplace scale must be positive");
  }
  // Difference of two standard exponentials is standard Laplace.
  const double e1 = rng.Exponential();
  const double e2 = rng.Exponential();
  return param.scale * (e1 - e2);
}

double SampleGaussian(GaussianParam param, Rng& rng) {
  if (!(param.sigma > 0.0) || !std::isfinite(param.sigma)) {
    throw std::invalid_argument("Gaussian sigma must be positive");
  }
  return param.sigma * rng.StandardNormal();
}

Point SampleUniformBall(size_t dim, double radius, Rng& rng) {
  Point direction(dim);
  double norm = 0.0;
  while (norm == 0.0) {
    for (double& x : direction) x = rng.StandardNormal();
    norm = Norm(direction);
  }
  const double r =
      radius * std::pow(rng.Uniform(), 1.0 / static_cast<double>(dim));
  for (double& x : direction) x *= r / norm;
  return direction;
}

double CoverageDistribution::LogGridSize(uint64_t grid_size) {
  if (grid_size == 0) throw std::invalid_argument("empty grid");
  return std::log(static_cast<double>(grid_size));
}

double CoverageMixtureWeight(std::span<const CountGroup> groups,
                             double log_grid_size, double eps_exp) {
  CheckCoverageArgs(log_grid_size, eps_exp);
  CheckSupportFits(groups, log_grid_size);
  std::vector<double> per_group;
  const double log_excess = LogExcessMass(groups, eps_exp, &per_group);
  if (per_group.empty()) return 0.0;
  // totalCover = |G| + excess, so P_samp = excess / (excess + |G|).
  return 1.0 / (1.0 + std::exp(log_grid_size - log_excess));
}

std::optional<size_t> SampleCoverageGroup(std::span<const CountGroup> groups,
                                          double log_grid_size,
                                          double eps_exp, Rng& rng) {
  CheckCoverageArgs(log_grid_size, eps_exp);
  CheckSupportFits(groups, log_grid_size);
  std::vector<double> per_group;
  const double log_excess = LogExcessMass(groups, eps_exp, &per_group);
  const double p_samp =
      per_group.empty() ? 0.0
                        : 1.0 / (1.0 + std::exp(log_grid_size - log_excess));
  if (!rng.Bernoulli(p_samp)) return std::nullopt;

  const double max_log = *std::max_element(per_group.begin(), per_group.end());
  std::vector<double> cumulative(per_group.size());
  double total = 0.0;
  for (size_t i = 0; i < per_group.size(); ++i) {
    total += std::exp(per_group[i] - max_log);
    cumulative[i] = total;
  }
  const double u = rng.Uniform() * total;
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return std::min<size_t>(it - cumulative.begin(), per_group.size() - 1);
}

GridPoint SampleExponentialMechanism(const CoverageDistribution& dist,
                                     const UniformGridSampler& uniform_sampler,
                                     Rng& rng) {
  std::map<int64_t, std::vector<size_t>> by_count;
  for (size_t i = 0; i < dist.nonzero_entries.size(); ++i) {
    const int64_t c = dist.nonzero_entries[i].second;
    if (c < 1) {
      throw std::invalid_argument("nonzero_entries must have cover >= 1");
    }
    by_count[c].push_back(i);
  }
  std::vector<CountGroup> groups;
  std::vector<const std::vector<size_t>*> members;
  for (const auto& [count, idx] : by_count) {
    groups.push_back({count, static_cast<int64_t>(idx.size())});
    members.push_back(&idx);
  }
  const std::optional<size_t> group = SampleCoverageGroup(
      groups, dist.log_total_grid_size, dist.eps_exp, rng);
  if (!group) return uniform_sampler(rng);
  const std::vector<size_t>& pick = *members[*group];
  const auto j = rng.UniformInt(0, static_cast<int64_t>(pick.size()) - 1);
  return dist.nonzero_entries[pick[j]].first;
}

double NoisyAverageCountOffset(NoisyAvgParams params) {
  return 5.0 / params.eps * std::log(2.0 / params.delta);
}

NoisyAvgResult NoisyAverageWithLaplace(std::span<const Point> members,
                                       size_t dim, double diameter,
                                       NoisyAvgParams params,
                                       double laplace_draw, Rng& rng) {
  if (!(params.eps > 0.0) || params.eps > 1.0 / 3.0) {
    throw std::invalid_argument("NoisyAVG needs eps in (0, 1/3]");
  }
  if (!(params.delta > 0.0) || !(params.delta < 1.0)) {
    throw std::invalid_argument("NoisyAVG needs delta in (0, 1)");
  }
  if (!(diameter > 0.0) || dim == 0) {
    throw std::invalid_argument("NoisyAVG needs a positive diameter and dim");
  }
  for (const Point& p : members) {
    if (p.size() != dim) {
      throw std::invalid_argument("NoisyAVG: member dimension mismatch");
    }
  }

  NoisyAvgResult out;
  out.noisy_count = static_cast<double>(members.size()) + laplace_draw -
                    NoisyAverageCountOffset(params);
  // m == 0 would divide by zero in sigma, so it takes the fallback as well.
  if (out.noisy_count <= 0.0 || members.empty()) {
    out.fallback = true;
    out.value = SampleUniformBall(dim, diameter / 2.0, rng);
    return out;
  }

  out.sigma = 5.0 * diameter / (4.0 * params.eps * out.noisy_count) *
              std::sqrt(2.0 * std::log(3.5 / params.delta));
  out.value.assign(dim, 0.0);
  for (const Point& p : members) {
    for (size_t j = 0; j < dim; ++j) out.value[j] += p[j];
  }
  const double inv = 1.0 / static_cast<double>(members.size());
  for (double& x : out.value) {
    x = x * inv + SampleGaussian({out.sigma}, rng);
  }
  return out;
}

NoisyAvgResult NoisyAverage(std::span<const Point> members, size_t dim,
                            double diameter, NoisyAvgParams params, Rng& rng) {
  if (!(params.eps > 0.0) || params.eps > 1.0 / 3.0) {
    throw std::invalid_argument("NoisyAVG needs eps in (0, 1/3]");
  }
  const double lap = SampleLaplace({5.0 / params.eps}, rng);
  return NoisyAverageWithLaplace(members, dim, diameter, params, lap, rng);
}

}  // namespace dpkm
