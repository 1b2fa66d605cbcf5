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

// Private max-coverage center selection over geometrically refined grids.
//
// At level i the grid has unit t_i and the cover threshold is r_i + t_i*sqrt(d').
// Grid points are t_i * b for integer b with every |b_j| <= floor(1/t_i), so
// the grid spans [-1, 1]^{d'}. A data point's candidate grid points are found
// by offsetting its floor-to-grid cell by vectors from a precomputed offset
// set, which keeps coverage counting polynomial in n.

#ifndef DPKM_GRIDCOVER_H_
#define DPKM_GRIDCOVER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dpkm/core.h"
#include "dpkm/mechanisms.h"
#include "dpkm/rng.h"

namespace dpkm {

struct GridLevel {
  int index = 1;       // 1-based
  double unit = 0.0;   // t_i
  double radius = 0.0; // r_i
  size_t dim = 1;      // d'

  // r_i + t_i * sqrt(d').
  double threshold() const;
  // Largest |b_j| of a grid point inside [-1, 1].
  int64_t axis_bound() const;
  uint64_t axis_size() const { return 2 * static_cast<uint64_t>(axis_bound()) + 1; }
  double log_grid_size() const;
  Point ToPoint(std::span<const int64_t> b) const;
};

// m = ceil(log_{1+eps}(2n)) levels with r_1 = 1/n and t_1 = eps/(n sqrt(d')),
// both growing by (1 + eps) per level.
std::vector<GridLevel> GridLevels(size_t n, size_t dprime, double eps);

GridPoint FloorToGrid(std::span<const double> p, double unit);

// Nonnegative integer vectors v with sum_j (t v_j)^2 < threshold^2.
struct OffsetSet {
  size_t dim = 0;
  std::vector<GridPoint> offsets;
};

OffsetSet BuildOffsets(const GridLevel& level);

// Grid points within the cover threshold of p, sorted and deduplicated.
std::vector<GridPoint> CandidateGridPoints(std::span<const double> p,
                                           const GridLevel& level,
                                           const OffsetSet& offsets);

// Points not yet covered during the cover rounds.
struct UncoveredPool {
  std::vector<char> alive;

  static UncoveredPool Full(size_t n) { return {std::vector<char>(n, 1)}; }
  size_t live_count() const;
};

// Cover counts for one level over the live pool. Candidate lists are computed
// once per point; removing a cover decrements the counts of every grid point
// the removed points touched, so after each removal the counts equal a fresh
// recount over the remaining points.
class CoverageTracker {
 public:
  CoverageTracker(std::span<const Point> points, const UncoveredPool& pool,
                  const GridLevel& level, const OffsetSet& offsets);

  const GridLevel& level() const { return level_; }

  int64_t Count(std::span<const int64_t> b) const;
  // Live point indices within the threshold of grid point b.
  std::vector<size_t> Cover(std::span<const int64_t> b) const;
  // Marks Cover(b) as covered and returns it.
  std::vector<size_t> RemoveCover(std::span<const int64_t> b);

  // Nonzero counts grouped by value, ascending.
  std::vector<CountGroup> Groups() const;
  // Uniform choice among grid points whose count equals `count`.
  GridPoint SampleWithCount(int64_t count, Rng& rng) const;
  // Highest count, ties to the earliest-registered grid point; nullopt when
  // every count is zero.
  std::optional<GridPoint> ArgMax() const;
  // The per-point list form consumed by SampleExponentialMechanism.
  CoverageDistribution Distribution(double eps_exp) const;

  size_t live_count() const { return live_; }
  bool IsLive(size_t point) const { return alive_[point] != 0; }

 private:
  static constexpr uint32_t kNone = UINT32_MAX;

  uint32_t Find(std::span<const int64_t> b) const;
  uint32_t FindOrInsert(std::span<const int64_t> b);
  void Grow();
  void MoveDown(uint32_t id);
  GridPoint Key(uint32_t id) const;
  std::span<const uint32_t> Members(uint32_t id) const;
  std::span<const uint32_t> PointGrid(size_t point) const;

  GridLevel level_;
  std::vector<char> alive_;
  size_t live_ = 0;

  // Open-addressing table from grid point to id; keys stored flat.
  std::vector<int64_t> keys_;
  std::vector<uint64_t> hashes_;
  std::vector<uint32_t> table_;
  size_t num_ids_ = 0;

  // Compressed incidence lists: grid ids per point, points per grid id.
  std::vector<size_t> point_start_;
  std::vector<uint32_t> point_ids_;
  std::vector<size_t> member_start_;
  std::vector<uint32_t> member_points_;

  std::vector<int64_t> count_;
  std::vector<std::vector<uint32_t>> buckets_;  // indexed by count
  std::vector<uint32_t> slot_;                  // position inside its bucket
};

enum class SelectionMode {
  kExponential,
  // Deterministic argmax; the eps_exp -> infinity limit. Testing only.
  kExactArgmax,
};

struct GridCoverResult {
  CenterSet centers;                // real coordinates t_i * g, one per round
  std::vector<GridPoint> chosen;    // integer grid coordinates
  std::vector<int64_t> round_cover; // |cover[g]| removed each round
  // (point index, grid point that covered it) for every removed point.
  std::vector<std::pair<size_t, Point>> covered_by;
};

// k' rounds of private max-coverage on `pool` at this level. Rounds still
// draw (uniformly) when nothing is left to cover.
GridCoverResult PrivateGridSetCover(std::span<const Point> points,
                                    UncoveredPool& pool,
                                    const GridLevel& level, size_t rounds,
                                    double eps_exp, Rng& rng,
                                    SelectionMode mode =
                                        SelectionMode::kExponential);

// ceil(k / eps).
size_t DefaultRoundsPerLevel(size_t k, double eps);
// 2 * ceil(k * ln(1/eps)) + 1.
size_t BicriteriaRoundsPerLevel(size_t k, double eps);

}  // namespace dpkm

#endif  // DPKM_GRIDCOVER_H_
