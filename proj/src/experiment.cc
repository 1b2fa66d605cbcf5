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

#include "dpkm/experiment.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "dpkm/clustering.h"
#include "dpkm/datagen.h"
#include "json.hpp"

namespace dpkm {
namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

enum : uint64_t { kPrivateTag = 11, kLloydTag = 12, kRandomTag = 13 };

double ElapsedMs(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

std::string Num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

void ExperimentSpec::Validate() const {
  if (ks.empty()) throw std::invalid_argument("experiment: no k values");
  for (size_t k : ks) {
    if (k == 0) throw std::invalid_argument("experiment: k must be >= 1");
  }
  if (repetitions == 0) {
    throw std::invalid_argument("experiment: repetitions must be >= 1");
  }
  if (!privacy && !(eps_total > 0.0)) {
    throw std::invalid_argument("experiment: eps must be > 0");
  }
}

ExperimentResult RunExperiment(const Dataset& data, const ExperimentSpec& spec,
                               const RecordSink& on_record) {
  spec.Validate();
  const double delta =
      spec.delta_total > 0.0
          ? spec.delta_total
          : std::pow(static_cast<double>(data.size()), -1.5);
  const PrivacyParams privacy =
      spec.privacy ? *spec.privacy
                   : AllocateBudget(spec.eps_total, delta, spec.dp_lloyd_rounds);
  const PrivacyReport report = Account(privacy, spec.dp_lloyd_rounds);

  ExperimentResult result;
  const auto emit = [&](RunRecord r) {
    if (on_record) on_record(r);
    result.records.push_back(std::move(r));
  };

  for (size_t k : spec.ks) {
    for (size_t rep = 0; rep < spec.repetitions; ++rep) {
      const uint64_t rep_seed = MixSeed(MixSeed(spec.seed, k), rep);

      {
        PipelineConfig config;
        config.k = k;
        config.eps = spec.eps_approx;
        config.privacy = privacy;
        config.target_dim = spec.target_dim;
        config.rounds_per_level = spec.rounds_per_level;
        config.dp_lloyd_rounds = spec.dp_lloyd_rounds;
        config.lloyd_max_iters = spec.lloyd_iters;
        config.seed = MixSeed(rep_seed, kPrivateTag);
        const auto start = Clock::now();
        const ClusteringResult run = RunPipeline(data, config);
        emit({kPrivateAlgorithm, k, rep, config.seed, run.cost,
              report.eps_total, report.delta_total, ElapsedMs(start)});
      }
      {
        const uint64_t seed = MixSeed(rep_seed, kLloydTag);
        Rng rng(seed);
        LloydConfig config;
        config.k = k;
        config.max_iters = spec.lloyd_iters;
        const auto start = Clock::now();
        const LloydResult run = Lloyd(UnitWeights(data.points()), config, rng);
        emit({kLloydAlgorithm, k, rep, seed, KMeansCost(data, run.centers), 0.0,
              0.0, ElapsedMs(start)});
      }
      {
        const uint64_t seed = MixSeed(rep_seed, kRandomTag);
        const auto start = Clock::now();
        const CenterSet centers =
            RandomCenters(k, data.dim(), data.diameter_bound(), seed);
        emit({kRandomAlgorithm, k, rep, seed, KMeansCost(data, centers), 0.0,
              0.0, ElapsedMs(start)});
      }
    }
  }
  result.summary = Summarize(result.records);
  return result;
}

std::vector<SummaryRow> Summarize(const std::vector<RunRecord>& records) {
  std::vector<SummaryRow> rows;
  std::vector<std::vector<double>> costs;
  for (const RunRecord& r : records) {
    size_t i = 0;
    while (i < rows.size() &&
           !(rows[i].algorithm == r.algorithm && rows[i].k == r.k)) {
      ++i;
    }
    if (i == rows.size()) {
      rows.push_back({r.algorithm, r.k, 0, 0.0, 0.0, r.eps_total,
                      r.delta_total});
      costs.emplace_back();
    }
    costs[i].push_back(r.cost);
  }
  for (size_t i = 0; i < rows.size(); ++i) {
    const std::vector<double>& c = costs[i];
    double sum = 0.0;
    for (double x : c) sum += x;
    const double mean = sum / static_cast<double>(c.size());
    double ss = 0.0;
    for (double x : c) ss += (x - mean) * (x - mean);
    rows[i].reps = c.size();
    rows[i].mean_cost = mean;
    rows[i].std_cost =
        c.size() > 1 ? std::sqrt(ss / static_cast<double>(c.size() - 1)) : 0.0;
  }
  return rows;
}

std::string RunRecordJson(const RunRecord& r) {
  json j = {{"type", "run"},          {"algorithm", r.algorithm},
            {"k", r.k},               {"rep", r.rep},
            {"seed", r.seed},         {"cost", r.cost},
            {"eps_total", r.eps_total}, {"delta_total", r.delta_total},
            {"wall_ms", r.wall_ms}};
  return j.dump();
}

void WriteJsonLines(std::ostream& out, const ExperimentResult& result) {
  for (const RunRecord& r : result.records) out << RunRecordJson(r) << '\n';
  for (const SummaryRow& s : result.summary) {
    json j = {{"type", "summary"},        {"algorithm", s.algorithm},
              {"k", s.k},                 {"reps", s.reps},
              {"mean_cost", s.mean_cost}, {"std_cost", s.std_cost},
              {"eps_total", s.eps_total}, {"delta_total", s.delta_total}};
    out << j.dump() << '\n';
  }
}

ExperimentResult ReadJsonLines(std::istream& in) {
  ExperimentResult result;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    const std::string type = j.at("type").get<std::string>();
    if (type == "run") {
      result.records.push_back(
          {j.at("algorithm").get<std::string>(), j.at("k").get<size_t>(),
           j.at("rep").get<size_t>(), j.at("seed").get<uint64_t>(),
           j.at("cost").get<double>(), j.at("eps_total").get<double>(),
           j.at("delta_total").get<double>(), j.at("wall_ms").get<double>()});
    } else if (type == "summary") {
      result.summary.push_back(
          {j.at("algorithm").get<std::string>(), j.at("k").get<size_t>(),
           j.at("reps").get<size_t>(), j.at("mean_cost").get<double>(),
           j.at("std_cost").get<double>(), j.at("eps_total").get<double>(),
           j.at("delta_total").get<double>()});
    } else {
      throw std::runtime_error("unknown record type: " + type);
    }
  }
  return result;
}

void WriteRunsCsv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << "algorithm,k,seed,cost,eps_total,delta_total,wall_ms\n";
  for (const RunRecord& r : records) {
    out << r.algorithm << ',' << r.k << ',' << r.seed << ',' << Num(r.cost)
        << ',' << Num(r.eps_total) << ',' << Num(r.delta_total) << ','
        << Num(r.wall_ms) << '\n';
  }
}

void WriteSummaryCsv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "algorithm,k,reps,mean_cost,std_cost,eps_total,delta_total\n";
  for (const SummaryRow& s : rows) {
    out << s.algorithm << ',' << s.k << ',' << s.reps << ',' << Num(s.mean_cost)
        << ',' << Num(s.std_cost) << ',' << Num(s.eps_total) << ','
        << Num(s.delta_total) << '\n';
  }
}

}  // namespace dpkm
