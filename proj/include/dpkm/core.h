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

// Shared data types and the k-means objective.

#ifndef DPKM_CORE_H_
#define DPKM_CORE_H_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpkm {

using Point = std::vector<double>;
using CenterSet = std::vector<Point>;

// Raised when a declared diameter bound is violated by a pair of points.
class DiameterViolation : public std::invalid_argument {
 public:
  DiameterViolation(size_t first, size_t second, double distance,
                    double bound);

  size_t first() const { return first_; }
  size_t second() const { return second_; }
  double distance() const { return distance_; }

 private:
  size_t first_;
  size_t second_;
  double distance_;
};

// n points in R^d with a declared bound on the pairwise Euclidean distance.
// Construction validates finiteness, consistent width and the bound.
class Dataset {
 public:
  Dataset(std::vector<Point> points, double diameter_bound);

  size_t size() const { return points_.size(); }
  size_t dim() const { return points_.front().size(); }
  double diameter_bound() const { return diameter_bound_; }

  const Point& operator[](size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }

 private:
  std::vector<Point> points_;
  double diameter_bound_;
};

// Points with nonnegative real weights. May be empty.
struct WeightedDataset {
  std::vector<Point> points;
  std::vector<double> weights;

  size_t size() const { return points.size(); }
  double total_weight() const;
  // Throws unless widths agree, weights are finite and nonnegative.
  void Validate() const;
};

double SquaredDistance(std::span<const double> p, std::span<const double> q);

// Index of the nearest center, ties to the lowest index.
size_t NearestCenter(std::span<const double> p, const CenterSet& centers);

// Sum over points of the squared distance to the nearest center.
double KMeansCost(const Dataset& data, const CenterSet& centers);
double KMeansCost(const WeightedDataset& data, const CenterSet& centers);
double KMeansCost(std::span<const Point> points, const CenterSet& centers);

std::vector<size_t> AssignClusters(const Dataset& data,
                                   const CenterSet& centers);
std::vector<size_t> AssignClusters(std::span<const Point> points,
                                   const CenterSet& centers);

double Norm(std::span<const double> p);

}  // namespace dpkm

#endif  // DPKM_CORE_H_
