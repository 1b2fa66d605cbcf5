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

#include "dpkm/gridcover.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dpkm {
namespace {

uint64_t HashKey(std::span<const int64_t> b) {
  uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (int64_t x : b) {
    h ^= static_cast<uint64_t>(x);
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 31;
  }
  return h * 0x94d049bb133111ebULL;
}

void EnumerateOffsets(size_t coord, int64_t sum_sq, double unit_sq,
                      double threshold_sq, GridPoint& current,
                      std::vector<GridPoint>& out) {
  if (coord == current.size()) {
    out.push_back(current);
    return;
  }
  for (int64_t v = 0;; ++v) {
    const int64_t next = sum_sq + v * v;
    if (!(unit_sq * static_cast<double>(next) < threshold_sq)) break;
    current[coord] = v;
    EnumerateOffsets(coord + 1, next, unit_sq, threshold_sq, current, out);
  }
  current[coord] = 0;
}

// Calls fn(b) for every grid point t*b = floor(p) + t*s + (2s - 1)*t*v that
// lies inside the grid and strictly within the threshold of p. The (v, s)
// map is injective, so no point is reported twice.
template <typename Fn>
void ForEachCandidate(std::span<const double> p, const GridLevel& level,
                      const OffsetSet& offsets, GridPoint& scratch, Fn&& fn) {
  const size_t d = level.dim;
  if (p.size() != d || offsets.dim != d) {
    throw std::invalid_argument("candidate grid points: dimension mismatch");
  }
  const GridPoint base = FloorToGrid(p, level.unit);
  const int64_t bound = level.axis_bound();
  const double threshold_sq = level.threshold() * level.threshold();
  const uint64_t patterns = uint64_t{1} << d;
  scratch.resize(d);
  for (const GridPoint& v : offsets.offsets) {
    for (uint64_t s = 0; s < patterns; ++s) {
      bool inside = true;
      double dist = 0.0;
      for (size_t j = 0; j < d && inside; ++j) {
        const bool up = (s >> j) & 1;
        const int64_t b = up ? base[j] + 1 + v[j] : base[j] - v[j];
        if (b < -bound || b > bound) inside = false;
        const double diff = level.unit * static_cast<double>(b) - p[j];
        dist += diff * diff;
        scratch[j] = b;
      }
      if (inside && dist < threshold_sq) fn(scratch);
    }
  }
}

}  // namespace

double GridLevel::threshold() const {
  return radius + unit * std::sqrt(static_cast<double>(dim));
}

int64_t GridLevel::axis_bound() const {
  return static_cast<int64_t>(std::floor(1.0 / unit));
}

double GridLevel::log_grid_size() const {
  return static_cast<double>(dim) * std::log(static_cast<double>(axis_size()));
}

Point GridLevel::ToPoint(std::span<const int64_t> b) const {
  Point out(b.size());
  for (size_t j = 0; j < b.size(); ++j) {
    out[j] = unit * static_cast<double>(b[j]);
  }
  return out;
}

std::vector<GridLevel> GridLevels(size_t n, size_t dprime, double eps) {
  if (n < 2) throw std::invalid_argument("grid levels need n >= 2");
  if (!(eps > 0.0) || eps > 0.5) {
    throw std::invalid_argument("grid levels need eps in (0, 0.5]");
  }
  if (dprime == 0) throw std::invalid_argument("grid levels need d' >= 1");
  const double nd = static_cast<double>(n);
  const size_t m = static_cast<size_t>(
      std::ceil(std::log(2.0 * nd) / std::log1p(eps)));
  const double root_d = std::sqrt(static_cast<double>(dprime));
  std::vector<GridLevel> levels;
  levels.reserve(m);
  for (size_t i = 1; i <= m; ++i) {
    const double growth = std::pow(1.0 + eps, static_cast<double>(i - 1));
    GridLevel level;
    level.index = static_cast<int>(i);
    level.radius = growth / nd;
    level.unit = eps / (nd * root_d) * growth;
    level.dim = dprime;
    levels.push_back(level);
  }
  return levels;
}

GridPoint FloorToGrid(std::span<const double> p, double unit) {
  if (!(unit > 0.0)) throw std::invalid_argument("grid unit must be > 0");
  GridPoint b(p.size());
  for (size_t j = 0; j < p.size(); ++j) {
    b[j] = static_cast<int64_t>(std::floor(p[j] / unit));
  }
  return b;
}

OffsetSet BuildOffsets(const GridLevel& level) {
  OffsetSet out;
  out.dim = level.dim;
  GridPoint current(level.dim, 0);
  const double threshold = level.threshold();
  EnumerateOffsets(0, 0, level.unit * level.unit, threshold * threshold,
                   current, out.offsets);
  return out;
}

std::vector<GridPoint> CandidateGridPoints(std::span<const double> p,
                                           const GridLevel& level,
                                           const OffsetSet& offsets) {
  std::vector<GridPoint> out;
  GridPoint scratch;
  ForEachCandidate(p, level, offsets, scratch,
                   [&](const GridPoint& b) { out.push_back(b); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

size_t UncoveredPool::live_count() const {
  return static_cast<size_t>(std::count(alive.begin(), alive.end(), 1));
}

CoverageTracker::CoverageTracker(std::span<const Point> points,
                                 const UncoveredPool& pool,
                                 const GridLevel& level,
                                 const OffsetSet& offsets)
    : level_(level), alive_(pool.alive) {
  if (alive_.size() != points.size()) {
    throw std::invalid_argument("pool size differs from point count");
  }
  table_.assign(1024, kNone);
  // Candidate enumeration is injective, so each point's id list is already
  // free of duplicates.
  point_start_.assign(points.size() + 1, 0);
  GridPoint scratch;
  for (size_t i = 0; i < points.size(); ++i) {
    point_start_[i] = point_ids_.size();
    if (!alive_[i]) continue;
    ++live_;
    ForEachCandidate(points[i], level_, offsets, scratch,
                     [&](const GridPoint& b) {
                       point_ids_.push_back(FindOrInsert(b));
                     });
  }
  point_start_[points.size()] = point_ids_.size();

  count_.assign(num_ids_, 0);
  for (uint32_t id : point_ids_) ++count_[id];
  member_start_.assign(num_ids_ + 1, 0);
  for (size_t id = 0; id < num_ids_; ++id) {
    member_start_[id + 1] = member_start_[id] + count_[id];
  }
  member_points_.resize(point_ids_.size());
  std::vector<size_t> fill(member_start_.begin(), member_start_.end() - 1);
  for (size_t i = 0; i < points.size(); ++i) {
    for (uint32_t id : PointGrid(i)) {
      member_points_[fill[id]++] = static_cast<uint32_t>(i);
    }
  }

  slot_.resize(num_ids_);
  buckets_.assign(live_ + 1, {});
  for (uint32_t id = 0; id < num_ids_; ++id) {
    std::vector<uint32_t>& bucket = buckets_[count_[id]];
    slot_[id] = static_cast<uint32_t>(bucket.size());
    bucket.push_back(id);
  }
}

uint32_t CoverageTracker::Find(std::span<const int64_t> b) const {
  const size_t d = level_.dim;
  const size_t mask = table_.size() - 1;
  const uint64_t h = HashKey(b);
  for (size_t pos = h & mask;; pos = (pos + 1) & mask) {
    const uint32_t id = table_[pos];
    if (id == kNone) return kNone;
    if (hashes_[id] == h &&
        std::equal(b.begin(), b.end(), keys_.begin() + id * d)) {
      return id;
    }
  }
}

uint32_t CoverageTracker::FindOrInsert(std::span<const int64_t> b) {
  if (2 * (num_ids_ + 1) > table_.size()) Grow();
  const size_t d = level_.dim;
  const size_t mask = table_.size() - 1;
  const uint64_t h = HashKey(b);
  size_t pos = h & mask;
  for (;; pos = (pos + 1) & mask) {
    const uint32_t id = table_[pos];
    if (id == kNone) break;
    if (hashes_[id] == h &&
        std::equal(b.begin(), b.end(), keys_.begin() + id * d)) {
      return id;
    }
  }
  if (num_ids_ >= kNone) throw std::length_error("too many grid points");
  const auto id = static_cast<uint32_t>(num_ids_++);
  keys_.insert(keys_.end(), b.begin(), b.end());
  hashes_.push_back(h);
  table_[pos] = id;
  return id;
}

void CoverageTracker::Grow() {
  table_.assign(table_.size() * 2, kNone);
  const size_t mask = table_.size() - 1;
  for (uint32_t id = 0; id < num_ids_; ++id) {
    size_t pos = hashes_[id] & mask;
    while (table_[pos] != kNone) pos = (pos + 1) & mask;
    table_[pos] = id;
  }
}

std::span<const uint32_t> CoverageTracker::Members(uint32_t id) const {
  return {member_points_.data() + member_start_[id],
          member_start_[id + 1] - member_start_[id]};
}

std::span<const uint32_t> CoverageTracker::PointGrid(size_t point) const {
  return {point_ids_.data() + point_start_[point],
          point_start_[point + 1] - point_start_[point]};
}

GridPoint CoverageTracker::Key(uint32_t id) const {
  const size_t d = level_.dim;
  return GridPoint(keys_.begin() + id * d, keys_.begin() + (id + 1) * d);
}

void CoverageTracker::MoveDown(uint32_t id) {
  std::vector<uint32_t>& from = buckets_[count_[id]];
  const uint32_t last = from.back();
  from[slot_[id]] = last;
  slot_[last] = slot_[id];
  from.pop_back();
  --count_[id];
  std::vector<uint32_t>& to = buckets_[count_[id]];
  slot_[id] = static_cast<uint32_t>(to.size());
  to.push_back(id);
}

int64_t CoverageTracker::Count(std::span<const int64_t> b) const {
  const uint32_t id = Find(b);
  return id == kNone ? 0 : count_[id];
}

std::vector<size_t> CoverageTracker::Cover(std::span<const int64_t> b) const {
  std::vector<size_t> out;
  const uint32_t id = Find(b);
  if (id == kNone) return out;
  for (uint32_t p : Members(id)) {
    if (alive_[p]) out.push_back(p);
  }
  return out;
}

std::vector<size_t> CoverageTracker::RemoveCover(std::span<const int64_t> b) {
  std::vector<size_t> removed = Cover(b);
  for (size_t p : removed) {
    alive_[p] = 0;
    --live_;
    for (uint32_t id : PointGrid(p)) MoveDown(id);
  }
  return removed;
}

std::vector<CountGroup> CoverageTracker::Groups() const {
  std::vector<CountGroup> out;
  for (size_t c = 1; c < buckets_.size(); ++c) {
    if (!buckets_[c].empty()) {
      out.push_back({static_cast<int64_t>(c),
                     static_cast<int64_t>(buckets_[c].size())});
    }
  }
  return out;
}

GridPoint CoverageTracker::SampleWithCount(int64_t count, Rng& rng) const {
  if (count < 1 || static_cast<size_t>(count) >= buckets_.size() ||
      buckets_[count].empty()) {
    throw std::invalid_argument("no grid point has the requested count");
  }
  const std::vector<uint32_t>& bucket = buckets_[count];
  const auto j = rng.UniformInt(0, static_cast<int64_t>(bucket.size()) - 1);
  return Key(bucket[j]);
}

std::optional<GridPoint> CoverageTracker::ArgMax() const {
  for (size_t c = buckets_.size(); c-- > 1;) {
    if (!buckets_[c].empty()) {
      return Key(*std::min_element(buckets_[c].begin(), buckets_[c].end()));
    }
  }
  return std::nullopt;
}

CoverageDistribution CoverageTracker::Distribution(double eps_exp) const {
  CoverageDistribution dist;
  dist.eps_exp = eps_exp;
  dist.log_total_grid_size = level_.log_grid_size();
  for (uint32_t id = 0; id < count_.size(); ++id) {
    if (count_[id] > 0) dist.nonzero_entries.emplace_back(Key(id), count_[id]);
  }
  return dist;
}

GridCoverResult PrivateGridSetCover(std::span<const Point> points,
                                    UncoveredPool& pool,
                                    const GridLevel& level, size_t rounds,
                                    double eps_exp, Rng& rng,
                                    SelectionMode mode) {
  if (rounds == 0) throw std::invalid_argument("k' must be >= 1");
  if (mode == SelectionMode::kExponential &&
      (!(eps_exp > 0.0) || !std::isfinite(eps_exp))) {
    throw std::invalid_argument("eps_E must be > 0");
  }
  const OffsetSet offsets = BuildOffsets(level);
  CoverageTracker tracker(points, pool, level, offsets);
  const int64_t bound = level.axis_bound();
  const auto uniform = [&](Rng& r) {
    GridPoint b(level.dim);
    for (int64_t& x : b) x = r.UniformInt(-bound, bound);
    return b;
  };

  GridCoverResult out;
  for (size_t round = 0; round < rounds; ++round) {
    GridPoint g;
    if (mode == SelectionMode::kExactArgmax) {
      std::optional<GridPoint> best = tracker.ArgMax();
      g = best ? *std::move(best) : uniform(rng);
    } else {
      const std::vector<CountGroup> groups = tracker.Groups();
      const std::optional<size_t> group =
          SampleCoverageGroup(groups, level.log_grid_size(), eps_exp, rng);
      g = group ? tracker.SampleWithCount(groups[*group].count, rng)
                : uniform(rng);
    }
    const Point center = level.ToPoint(g);
    const std::vector<size_t> removed = tracker.RemoveCover(g);
    for (size_t p : removed) {
      pool.alive[p] = 0;
      out.covered_by.emplace_back(p, center);
    }
    out.round_cover.push_back(static_cast<int64_t>(removed.size()));
    out.centers.push_back(center);
    out.chosen.push_back(std::move(g));
  }
  return out;
}

size_t DefaultRoundsPerLevel(size_t k, double eps) {
  return static_cast<size_t>(std::ceil(static_cast<double>(k) / eps));
}

size_t BicriteriaRoundsPerLevel(size_t k, double eps) {
  return 2 * static_cast<size_t>(
                 std::ceil(static_cast<double>(k) * std::log(1.0 / eps))) +
         1;
}

}  // namespace dpkm
