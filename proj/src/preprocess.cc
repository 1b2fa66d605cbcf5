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

#include "dpkm/preprocess.h"

#include <cmath>
#include <stdexcept>

namespace dpkm {

JlTransform::JlTransform(std::vector<double> matrix, size_t source_dim,
                         size_t target_dim, double distortion)
    : matrix_(std::move(matrix)),
      source_dim_(source_dim),
      target_dim_(target_dim),
      distortion_(distortion) {
  if (source_dim_ == 0 || target_dim_ == 0) {
    throw std::invalid_argument("JL transform dimensions must be >= 1");
  }
  if (matrix_.size() != source_dim_ * target_dim_) {
    throw std::invalid_argument("JL matrix has the wrong number of entries");
  }
  for (double x : matrix_) {
    if (!std::isfinite(x)) throw std::invalid_argument("JL matrix not finite");
  }
  if (!(distortion_ >= 0.0) || distortion_ > 0.5) {
    throw std::invalid_argument("JL distortion must lie in [0, 0.5]");
  }
}

JlTransform JlTransform::Identity(size_t dim, double distortion) {
  std::vector<double> m(dim * dim, 0.0);
  for (size_t i = 0; i < dim; ++i) m[i * dim + i] = 1.0;
  return JlTransform(std::move(m), dim, dim, distortion);
}

Point JlTransform::Apply(std::span<const double> p) const {
  if (p.size() != source_dim_) {
    throw std::invalid_argument("JL apply: dimension mismatch");
  }
  Point out(target_dim_, 0.0);
  for (size_t r = 0; r < target_dim_; ++r) {
    const double* row = &matrix_[r * source_dim_];
    double sum = 0.0;
    for (size_t c = 0; c < source_dim_; ++c) sum += row[c] * p[c];
    out[r] = sum;
  }
  return out;
}

size_t DefaultTargetDim(size_t n) {
  const double half_log = std::log2(static_cast<double>(n)) / 2.0;
  return std::max<size_t>(1, static_cast<size_t>(std::ceil(half_log)));
}

JlTransform MakeJl(size_t n, size_t d, double eps, Rng& rng,
                   std::optional<size_t> target_dim) {
  if (!(eps > 0.0) || eps > 0.5) {
    throw std::invalid_argument("JL eps must lie in (0, 0.5]");
  }
  if (n < 2 || d < 1) throw std::invalid_argument("JL needs n >= 2, d >= 1");
  const size_t dprime = target_dim.value_or(DefaultTargetDim(n));
  if (dprime == 0) throw std::invalid_argument("target dimension must be >= 1");
  const double stddev = 1.0 / std::sqrt(static_cast<double>(dprime));
  std::vector<double> m(dprime * d);
  for (double& x : m) x = stddev * rng.StandardNormal();
  return JlTransform(std::move(m), d, dprime, eps);
}

std::pair<Dataset, PreprocessRecord> ReduceAndNormalize(
    const Dataset& data, const JlTransform& transform) {
  const double scale =
      data.diameter_bound() * (1.0 + transform.distortion()) / 2.0;
  std::vector<Point> reduced;
  reduced.reserve(data.size());
  std::vector<size_t> projected;
  for (size_t i = 0; i < data.size(); ++i) {
    Point q = transform.Apply(data[i]);
    for (double& x : q) x /= scale;
    const double norm = Norm(q);
    if (norm > 1.0) {
      for (double& x : q) x /= norm;
      projected.push_back(i);
    }
    reduced.push_back(std::move(q));
  }
  return {Dataset(std::move(reduced), 2.0),
          PreprocessRecord{transform, scale, std::move(projected)}};
}

std::vector<std::vector<size_t>> LiftAssignment(
    const Dataset& original, const PreprocessRecord& /*record*/,
    std::span<const size_t> assignment, size_t k) {
  // T' maps point i to reduced point i, so lifting is index-preserving.
  if (assignment.size() != original.size()) {
    throw std::invalid_argument("assignment length differs from dataset size");
  }
  std::vector<std::vector<size_t>> members(k);
  for (size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] >= k) {
      throw std::invalid_argument("cluster index out of range");
    }
    members[assignment[i]].push_back(i);
  }
  return members;
}

}  // namespace dpkm
