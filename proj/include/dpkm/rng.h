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

#ifndef DPKM_RNG_H_
#define DPKM_RNG_H_

#include <cstdint>
#include <random>

namespace dpkm {

// Seeded random stream. Identical seed and identical call sequence give
// identical outputs. Not thread-safe; each task owns its own stream.
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), engine_(seed) {}

  uint64_t seed() const { return seed_; }

  // Uniform in [0, 1), 53 random bits.
  double Uniform();
  // Uniform integer in [lo, hi], inclusive.
  int64_t UniformInt(int64_t lo, int64_t hi);
  // Standard exponential, exact inverse-CDF on (0, 1].
  double Exponential();
  double StandardNormal();
  bool Bernoulli(double p) { return Uniform() < p; }

  uint64_t NextU64() { return engine_(); }

  // Independent stream keyed by (seed, tag); does not advance this stream.
  Rng Derive(uint64_t tag) const;

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to derive stream seeds.
uint64_t MixSeed(uint64_t seed, uint64_t tag);

}  // namespace dpkm

#endif  // DPKM_RNG_H_
