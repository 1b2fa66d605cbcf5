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

// Noise primitives: Laplace and Gaussian samplers, the exponential mechanism
// specialised to coverage scores over a huge grid, and private averaging.
//
// None of the samplers are hardened against floating-point side channels.

#ifndef DPKM_MECHANISMS_H_
#define DPKM_MECHANISMS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dpkm/core.h"
#include "dpkm/rng.h"

namespace dpkm {

using GridPoint = std::vector<int64_t>;

struct LaplaceParam {
  double scale;
};

struct GaussianParam {
  double sigma;
};

double SampleLaplace(LaplaceParam param, Rng& rng);
double SampleGaussian(GaussianParam param, Rng& rng);

// Uniform draw from the closed ball of `radius` about the origin in R^dim.
Point SampleUniformBall(size_t dim, double radius, Rng& rng);

// Exponential-mechanism law over a grid where only a few points have
// nonzero cover. Grid points absent from `nonzero_entries` have cover 0.
// The grid size is carried as a logarithm since it routinely exceeds 2^64.
struct CoverageDistribution {
  std::vector<std::pair<GridPoint, int64_t>> nonzero_entries;
  double log_total_grid_size = 0.0;
  double eps_exp = 1.0;

  static double LogGridSize(uint64_t grid_size);
};

// Nonzero cover counts grouped by value: `multiplicity` grid points share
// cover `count`.
struct CountGroup {
  int64_t count;
  int64_t multiplicity;
};

// Mixture weight P_samp = 1 - |G| / totalCover, where
// totalCover = sum_g exp(eps * cover[g] / 2). Zero iff no group is present.
double CoverageMixtureWeight(std::span<const CountGroup> groups,
                             double log_grid_size, double eps_exp);

// One draw of the two-part decomposition: with probability P_samp returns the
// index of a group, chosen with probability proportional to
// multiplicity * (exp(eps * count / 2) - 1); otherwise returns nullopt, which
// means "draw uniformly over the full grid". Choosing uniformly inside the
// returned group completes an exact exponential-mechanism sample.
std::optional<size_t> SampleCoverageGroup(std::span<const CountGroup> groups,
                                          double log_grid_size,
                                          double eps_exp, Rng& rng);

using UniformGridSampler = std::function<GridPoint(Rng&)>;

// Samples g with probability exp(eps*c_g/2) / sum_h exp(eps*c_h/2) without
// materialising the grid.
GridPoint SampleExponentialMechanism(const CoverageDistribution& dist,
                                     const UniformGridSampler& uniform_sampler,
                                     Rng& rng);

struct NoisyAvgParams {
  double eps;    // in (0, 1/3]
  double delta;  // in (0, 1)
};

struct NoisyAvgResult {
  Point value;
  double noisy_count = 0.0;
  double sigma = 0.0;  // 0 when the fallback branch ran
  bool fallback = false;
};

// Private mean of `members` (each of dimension `dim`) drawn from a domain of
// diameter `diameter`. A noisy count m = |members| + Lap(5/eps) -
// (5/eps) ln(2/delta) calibrates Gaussian noise of scale
// sigma = 5*diameter / (4*eps*m) * sqrt(2 ln(3.5/delta)). When m <= 0, or
// there are no members, returns a uniform point of the ball of radius
// diameter/2 instead.
NoisyAvgResult NoisyAverage(std::span<const Point> members, size_t dim,
                            double diameter, NoisyAvgParams params, Rng& rng);

// As above with the Laplace draw supplied by the caller. Testing hook.
NoisyAvgResult NoisyAverageWithLaplace(std::span<const Point> members,
                                       size_t dim, double diameter,
                                       NoisyAvgParams params,
                                       double laplace_draw, Rng& rng);

// The count below which NoisyAverage's expected noisy count is nonpositive:
// (5/eps) ln(2/delta).
double NoisyAverageCountOffset(NoisyAvgParams params);

}  // namespace dpkm

#endif  // DPKM_MECHANISMS_H_
