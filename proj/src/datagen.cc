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

#include "dpkm/datagen.h"

#include <cmath>
#include <stdexcept>

#include "dpkm/mechanisms.h"
#include "dpkm/rng.h"

namespace dpkm {
namespace {

constexpr int kCodewordRetries = 10000;

}  // namespace

Dataset GenerateSynthetic(size_t n, size_t d, size_t components, double spread,
                          uint64_t seed) {
  if (n == 0 || d == 0 || components == 0 || components > n) {
    throw std::invalid_argument("synthetic: need 1 <= components <= n, d >= 1");
  }
  if (!(spread >= 0.0) || !std::isfinite(spread)) {
    throw std::invalid_argument("synthetic: spread must be >= 0");
  }
  Rng rng(seed);
  std::vector<Point> means(components, Point(d));
  for (Point& m : means) {
    for (double& x : m) x = 2.0 * rng.Uniform() - 1.0;
  }
  const double radius = std::sqrt(static_cast<double>(d));
  std::vector<Point> points;
  points.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const auto c = rng.UniformInt(0, static_cast<int64_t>(components) - 1);
    Point p = means[c];
    if (spread > 0.0) {
      for (double& x : p) x += spread * rng.StandardNormal();
    }
    const double norm = Norm(p);
    if (norm > radius) {
      for (double& x : p) x *= radius / norm;
    }
    points.push_back(std::move(p));
  }
  return Dataset(std::move(points), 2.0 * radius);
}

HardInstance GenerateHardInstance(size_t k, size_t d, size_t multiplicity,
                                  uint64_t seed) {
  if (k == 0 || d == 0 || multiplicity == 0) {
    throw std::invalid_argument("hard instance: k, d and L must be >= 1");
  }
  Rng rng(seed);
  std::vector<std::vector<int>> words;
  while (words.size() < k) {
    bool placed = false;
    for (int attempt = 0; attempt < kCodewordRetries && !placed; ++attempt) {
      std::vector<int> w(d);
      for (int& bit : w) bit = static_cast<int>(rng.NextU64() & 1);
      placed = true;
      for (const auto& other : words) {
        size_t hamming = 0;
        for (size_t j = 0; j < d; ++j) hamming += (w[j] != other[j]);
        if (4 * hamming < d) {
          placed = false;
          break;
        }
      }
      if (placed) words.push_back(std::move(w));
    }
    if (!placed) {
      throw std::runtime_error(
          "hard instance: could not place codeword " +
          std::to_string(words.size() + 1) + "; d too small for k");
    }
  }

  HardInstance out{Dataset({Point(d, 0.0)}, 1.0), {}};
  std::vector<Point> points;
  for (const auto& w : words) {
    Point c(d);
    for (size_t j = 0; j < d; ++j) c[j] = w[j] ? 0.5 : -0.5;
    for (size_t l = 0; l < multiplicity; ++l) points.push_back(c);
    out.codewords.push_back(std::move(c));
  }
  out.data = Dataset(std::move(points), std::sqrt(static_cast<double>(d)));
  return out;
}

CenterSet RandomCenters(size_t k, size_t dim, double diameter, uint64_t seed) {
  Rng rng(seed);
  CenterSet out;
  for (size_t c = 0; c < k; ++c) {
    out.push_back(SampleUniformBall(dim, diameter / 2.0, rng));
  }
  return out;
}

}  // namespace dpkm
