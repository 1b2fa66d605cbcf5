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

// Dimension reduction, scaling into the unit ball, and lifting cluster
// memberships back to the original points.

#ifndef DPKM_PREPROCESS_H_
#define DPKM_PREPROCESS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dpkm/core.h"
#include "dpkm/rng.h"

namespace dpkm {

// Dense Gaussian Johnson-Lindenstrauss map R^source_dim -> R^target_dim.
class JlTransform {
 public:
  JlTransform(std::vector<double> matrix, size_t source_dim,
              size_t target_dim, double distortion);

  static JlTransform Identity(size_t dim, double distortion);

  size_t source_dim() const { return source_dim_; }
  size_t target_dim() const { return target_dim_; }
  double distortion() const { return distortion_; }
  // Row-major target_dim x source_dim.
  const std::vector<double>& matrix() const { return matrix_; }

  Point Apply(std::span<const double> p) const;

 private:
  std::vector<double> matrix_;
  size_t source_dim_;
  size_t target_dim_;
  double distortion_;
};

// Default reduced dimension: max(1, ceil(log2(n) / 2)).
size_t DefaultTargetDim(size_t n);

// Entries i.i.d. N(0, 1/d'). `eps` must lie in (0, 0.5].
JlTransform MakeJl(size_t n, size_t d, double eps, Rng& rng,
                   std::optional<size_t> target_dim = std::nullopt);

struct PreprocessRecord {
  JlTransform transform;
  double scale_factor;  // images are divided by this
  std::vector<size_t> projected_indices;
};

// Maps every point through `transform`, divides by diameter*(1+eps)/2 and
// radially projects anything left outside the unit ball. The result has
// diameter bound 2.
std::pair<Dataset, PreprocessRecord> ReduceAndNormalize(
    const Dataset& data, const JlTransform& transform);

// Groups original point indices by the cluster their image was assigned to.
// Empty clusters give empty lists.
std::vector<std::vector<size_t>> LiftAssignment(
    const Dataset& original, const PreprocessRecord& record,
    std::span<const size_t> assignment, size_t k);

}  // namespace dpkm

#endif  // DPKM_PREPROCESS_H_
