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
#include <limits>
#include <stdexcept>

namespace dpkm {
namespace {

// Index i with cumulative(i-1) <= u < cumulative(i) over positive masses.
size_t SampleProportional(const std::vector<double>& mass, double total,
                          Rng& rng) {
  const double u = rng.Uniform() * total;
  double running = 0.0;
  size_t last_positive = 0;
  for (size_t i = 0; i < mass.size(); ++i) {
    if (mass[i] <= 0.0) continue;
    running += mass[i];
    last_positive = i;
    if (u < running) return i;
  }
  return last_positive;
}

void CheckSampleable(const WeightedDataset& data) {
  data.Validate();
  if (data.size() == 0 || !(data.total_weight() > 0.0)) {
    throw std::invalid_argument("k-means needs at least one positive weight");
  }
}

}  // namespace

WeightedDataset UnitWeights(const std::vector<Point>& points) {
  return WeightedDataset{points, std::vector<double>(points.size(), 1.0)};
}

CenterSet KMeansPlusPlusSeed(const WeightedDataset& data, size_t k, Rng& rng) {
  CheckSampleable(data);
  if (k == 0) throw std::invalid_argument("k must be >= 1");

  CenterSet centers;
  centers.reserve(k);
  centers.push_back(
      data.points[SampleProportional(data.weights, data.total_weight(), rng)]);

  std::vector<double> nearest(data.size());
  for (size_t i = 0; i < data.size(); ++i) {
    nearest[i] = SquaredDistance(data.points[i], centers[0]);
  }
  std::vector<double> mass(data.size());
  while (centers.size() < k) {
    double total = 0.0;
    for (size_t i = 0; i < data.size(); ++i) {
      mass[i] = data.weights[i] * nearest[i];
      total += mass[i];
    }
    size_t pick;
    if (total > 0.0) {
      pick = SampleProportional(mass, total, rng);
    } else {
      // Fewer distinct support points than k: duplicates are unavoidable.
      pick = SampleProportional(data.weights, data.total_weight(), rng);
    }
    centers.push_back(data.points[pick]);
    for (size_t i = 0; i < data.size(); ++i) {
      nearest[i] =
          std::min(nearest[i], SquaredDistance(data.points[i], centers.back()));
    }
  }
  return centers;
}

LloydResult Lloyd(const WeightedDataset& data, const LloydConfig& config,
                  Rng& rng) {
  CheckSampleable(data);
  if (config.k == 0) throw std::invalid_argument("k must be >= 1");
  if (config.relative_tolerance < 0.0) {
    throw std::invalid_argument("relative tolerance must be >= 0");
  }

  LloydResult out;
  if (config.seeding == Seeding::kProvided) {
    if (config.initial_centers.size() != config.k) {
      throw std::invalid_argument("provided centers must number k");
    }
    out.centers = config.initial_centers;
  } else {
    out.centers = KMeansPlusPlusSeed(data, config.k, rng);
  }
  const size_t dim = data.points.front().size();
  for (const Point& c : out.centers) {
    if (c.size() != dim) throw std::invalid_argument("center dimension mismatch");
  }

  double cost = KMeansCost(data, out.centers);
  out.cost_history.push_back(cost);
  std::vector<Point> sums(config.k, Point(dim));
  std::vector<double> weight(config.k);
  std::vector<double> contribution(data.size());

  while (out.iterations < config.max_iters) {
    for (auto& s : sums) std::fill(s.begin(), s.end(), 0.0);
    std::fill(weight.begin(), weight.end(), 0.0);
    for (size_t i = 0; i < data.size(); ++i) {
      const size_t c = NearestCenter(data.points[i], out.centers);
      contribution[i] =
          data.weights[i] * SquaredDistance(data.points[i], out.centers[c]);
      weight[c] += data.weights[i];
      for (size_t j = 0; j < dim; ++j) {
        sums[c][j] += data.weights[i] * data.points[i][j];
      }
    }
    for (size_t c = 0; c < config.k; ++c) {
      if (weight[c] > 0.0) {
        for (size_t j = 0; j < dim; ++j) out.centers[c][j] = sums[c][j] / weight[c];
        continue;
      }
      // Empty cluster: take over the worst-served point.
      size_t worst = 0;
      double worst_value = -1.0;
      for (size_t i = 0; i < data.size(); ++i) {
        if (contribution[i] > worst_value) {
          worst_value = contribution[i];
          worst = i;
        }
      }
      if (worst_value > 0.0) {
        out.centers[c] = data.points[worst];
        contribution[worst] = 0.0;
      }
    }
    ++out.iterations;
    const double next = KMeansCost(data, out.centers);
    out.cost_history.push_back(next);
    const bool converged =
        cost <= 0.0 || cost - next < config.relative_tolerance * cost;
    cost = next;
    if (converged) break;
  }
  out.cost = cost;
  return out;
}

}  // namespace dpkm
