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

// Fixture generators.

#ifndef DPKM_DATAGEN_H_
#define DPKM_DATAGEN_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dpkm/core.h"

namespace dpkm {

// Gaussian mixture: component means uniform in [-1, 1]^d, each point a
// uniformly chosen mean plus N(0, spread^2 I), radially clipped to the ball
// of radius sqrt(d). The declared diameter is the box diagonal 2*sqrt(d).
Dataset GenerateSynthetic(size_t n, size_t d, size_t components, double spread,
                          uint64_t seed);

struct HardInstance {
  Dataset data;
  CenterSet codewords;  // optimal centers, cost exactly 0
};

// k random binary codewords of length d with pairwise Hamming distance at
// least d/4, mapped to the cube vertices {-1/2, 1/2}^d and each repeated L
// times (grouped by codeword). Diameter sqrt(d). Throws std::runtime_error
// when rejection sampling runs out of retries.
HardInstance GenerateHardInstance(size_t k, size_t d, size_t multiplicity,
                                  uint64_t seed);

// k points uniform in the ball of radius diameter/2. Uses no data.
CenterSet RandomCenters(size_t k, size_t dim, double diameter, uint64_t seed);

}  // namespace dpkm

#endif  // DPKM_DATAGEN_H_
