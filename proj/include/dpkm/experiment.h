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

// Benchmark harness: the private pipeline against non-private Lloyd and
// data-independent random centers, over a k sweep with repetitions.

#ifndef DPKM_EXPERIMENT_H_
#define DPKM_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dpkm/core.h"
#include "dpkm/pipeline.h"

namespace dpkm {

inline constexpr char kPrivateAlgorithm[] = "private";
inline constexpr char kLloydAlgorithm[] = "lloyd";
inline constexpr char kRandomAlgorithm[] = "random";

struct ExperimentSpec {
  std::vector<size_t> ks;
  double eps_total = 1.0;
  double delta_total = 0.0;  // 0 means n^-1.5
  std::optional<PrivacyParams> privacy;  // overrides the split when set
  size_t repetitions = 5;
  uint64_t seed = 0;
  double eps_approx = 0.5;
  std::optional<size_t> target_dim;
  std::optional<size_t> rounds_per_level;
  size_t dp_lloyd_rounds = 1;
  size_t lloyd_iters = 10;

  void Validate() const;
};

struct RunRecord {
  std::string algorithm;
  size_t k = 0;
  size_t rep = 0;
  uint64_t seed = 0;
  double cost = 0.0;
  double eps_total = 0.0;
  double delta_total = 0.0;
  double wall_ms = 0.0;
};

struct SummaryRow {
  std::string algorithm;
  size_t k = 0;
  size_t reps = 0;
  double mean_cost = 0.0;
  double std_cost = 0.0;  // sample standard deviation, 0 for one rep
  double eps_total = 0.0;
  double delta_total = 0.0;
};

struct ExperimentResult {
  std::vector<RunRecord> records;
  std::vector<SummaryRow> summary;
};

using RecordSink = std::function<void(const RunRecord&)>;

// Runs every (k, repetition) for all three algorithms. Each repetition uses
// a seed derived from (spec.seed, k, rep), so results do not depend on order.
ExperimentResult RunExperiment(const Dataset& data, const ExperimentSpec& spec,
                               const RecordSink& on_record = nullptr);

std::vector<SummaryRow> Summarize(const std::vector<RunRecord>& records);

// One JSON object per line: {"type":"run",...} then {"type":"summary",...}.
void WriteJsonLines(std::ostream& out, const ExperimentResult& result);
ExperimentResult ReadJsonLines(std::istream& in);
std::string RunRecordJson(const RunRecord& r);

// algorithm,k,seed,cost,eps_total,delta_total,wall_ms
void WriteRunsCsv(std::ostream& out, const std::vector<RunRecord>& records);
// algorithm,k,reps,mean_cost,std_cost,eps_total,delta_total (no timings, so
// identical specs give byte-identical files).
void WriteSummaryCsv(std::ostream& out, const std::vector<SummaryRow>& rows);

}  // namespace dpkm

#endif  // DPKM_EXPERIMENT_H_
