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

#include "dpkm/core.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dpkm {
namespace {

// Slack for distances that sit on the bound up to rounding.
constexpr double kDiameterSlack = 1e-9;

std::string ViolationMessage(size_t first, size_t second, double distance,
                             double bound) {
  std::ostringstream os;
  os << "points " << first << " and " << second << " are " << distance
     << " apart, exceeding the declared diameter " << bound;
  return os.str();
}

double MaxDistanceFrom(const std::vector<Point>& points, const Point& center) {
  double best = 0.0;
  for (const Point& p : points) best = std::max(best, SquaredDistance(p, center));
  return std::sqrt(best);
}

void CheckDiameter(const std::vector<Point>& points, double bound) {
  const double limit = bound * (1.0 + kDiameterSlack);
  const size_t d = points.front().size();

  // Every pair is within 2r of any center whose enclosing radius is r.
  Point origin(d, 0.0);
  Point box_center(d, 0.0);
  for (size_t j = 0; j < d; ++j) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Point& p : points) {
      lo = std::min(lo, p[j]);
      hi = std::max(hi, p[j]);
    }
    box_center[j] = 0.5 * (lo + hi);
  }
  const double radius = std::min(MaxDistanceFrom(points, origin),
                                 MaxDistanceFrom(points, box_center));
  if (2.0 * radius <= limit) return;

  for (size_t a = 0; a < points.size(); ++a) {
    for (size_t b = a + 1; b < points.size(); ++b) {
      const double dist = std::sqrt(SquaredDistance(points[a], points[b]));
      if (dist > limit) throw DiameterViolation(a, b, dist, bound);
    }
  }
}

}  // namespace

DiameterViolation::DiameterViolation(size_t first, size_t second,
                                     double distance, double bound)
    : std::invalid_argument(ViolationMessage(first, second, distance, bound)),
      first_(first),
      second_(second),
      distance_(distance) {}

Dataset::Dataset(std::vector<Point> points, double diameter_bound)
    : points_(std::move(points)), diameter_bound_(diameter_bound) {
  if (points_.empty()) throw std::invalid_argument("dataset has no points");
  if (!(diameter_bound_ > 0.0) || !std::isfinite(diameter_bound_)) {
    throw std::invalid_argument("diameter bound must be positive and finite");
  }
  const size_t d = points_.front().size();
  if (d == 0) throw std::invalid_argument("points must have dimension >= 1");
  for (size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].size() != d) {
      throw std::invalid_argument("point " + std::to_string(i) +
                                  " has inconsistent dimension");
    }
    for (double x : points_[i]) {
      if (!std::isfinite(x)) {
        throw std::invalid_argument("point " + std::to_string(i) +
                                    " has a non-finite coordinate");
      }
    }
  }
  CheckDiameter(points_, diameter_bound_);
}

double WeightedDataset::total_weight() const {
  double total = 0.0;
  for (double w : weights) total += w;
  return total;
}

void WeightedDataset::Validate() const {
  if (points.size() != weights.size()) {
    throw std::invalid_argument("weighted dataset: points/weights mismatch");
  }
  for (size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != points.front().size()) {
      throw std::invalid_argument("weighted dataset: inconsistent dimension");
    }
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
      throw std::invalid_argument("weighted dataset: weights must be >= 0");
    }
  }
}

double SquaredDistance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("squared distance: dimension mismatch");
  }
  double sum = 0.0;
  for (size_t j = 0; j < p.size(); ++j) {
    const double diff = p[j] - q[j];
    sum += diff * diff;
  }
  return sum;
}

size_t NearestCenter(std::span<const double> p, const CenterSet& centers) {
  if (centers.empty()) throw std::invalid_argument("empty center set");
  size_t best = 0;
  double best_dist = SquaredDistance(p, centers[0]);
  for (size_t c = 1; c < centers.size(); ++c) {
    const double dist = SquaredDistance(p, centers[c]);
    if (dist < best_dist) {
      best_dist = dist;
      best = c;
    }
  }
  return best;
}

double KMeansCost(std::span<const Point> points, const CenterSet& centers) {
  if (centers.empty()) throw std::invalid_argument("empty center set");
  double cost = 0.0;
  for (const Point& p : points) {
    cost += SquaredDistance(p, centers[NearestCenter(p, centers)]);
  }
  return cost;
}

double KMeansCost(const Dataset& data, const CenterSet& centers) {
  return KMeansCost(data.points(), centers);
}

double KMeansCost(const WeightedDataset& data, const CenterSet& centers) {
  if (centers.empty()) throw std::invalid_argument("empty center set");
  double cost = 0.0;
  for (size_t i = 0; i < data.size(); ++i) {
    const Point& p = data.points[i];
    cost += data.weights[i] *
            SquaredDistance(p, centers[NearestCenter(p, centers)]);
  }
  return cost;
}

std::vector<size_t> AssignClusters(std::span<const Point> points,
                                   const CenterSet& centers) {
  std::vector<size_t> out;
  out.reserve(points.size());
  for (const Point& p : points) out.push_back(NearestCenter(p, centers));
  return out;
}

std::vector<size_t> AssignClusters(const Dataset& data,
                                   const CenterSet& centers) {
  return AssignClusters(data.points(), centers);
}

double Norm(std::span<const double> p) {
  double sum = 0.0;
  for (double x : p) sum += x * x;
  return std::sqrt(sum);
}

}  // namespace dpkm
