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

// dpkm: differentially private k-means from the command line.
//
//   dpkm cluster    --input data.csv --diameter 10 --k 4 --eps 1 --delta 1e-6
//   dpkm gen-synth  --n 5000 --d 20 --components 16 --out synth.csv
//   dpkm gen-hard   --k 4 --d 32 --multiplicity 50 --out hard.csv
//   dpkm experiment --source synthetic --k 2,6,10 --reps 5 --out results/run
//   dpkm budget     --eps 1 --delta 1e-6 --dp-lloyd-rounds 1
//
// Data goes to stdout (or --out); diagnostics go to stderr.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpkm/datagen.h"
#include "dpkm/experiment.h"
#include "dpkm/gridcover.h"
#include "dpkm/io.h"
#include "dpkm/pipeline.h"
#include "dpkm/preprocess.h"
#include "json.hpp"

namespace {

using nlohmann::json;

struct ClusterArgs {
  std::string input;
  double diameter = 0.0;
  bool skip_header = false;
  size_t k = 2;
  double eps = 1.0;
  double delta = 0.0;
  double eps_approx = 0.5;
  std::optional<size_t> dprime;
  std::optional<size_t> kprime;
  size_t dp_lloyd_rounds = 0;
  uint64_t seed = 0;
  std::string out;
};

struct SynthArgs {
  size_t n = 5000;
  size_t d = 20;
  size_t components = 16;
  double spread = 0.1;
  uint64_t seed = 0;
  std::string out;
};

struct HardArgs {
  size_t k = 4;
  size_t d = 32;
  size_t multiplicity = 50;
  uint64_t seed = 0;
  std::string out;
};

struct ExperimentArgs {
  std::string source = "synthetic";
  std::string input;
  double diameter = 0.0;
  bool skip_header = false;
  SynthArgs synth;
  HardArgs hard;
  std::vector<size_t> ks = {2, 6, 10, 14, 18};
  double eps = 1.0;
  double delta = 0.0;
  double eps_approx = 0.5;
  std::optional<size_t> dprime;
  std::optional<size_t> kprime;
  size_t dp_lloyd_rounds = 1;
  size_t reps = 5;
  uint64_t seed = 0;
  std::string out;
};

struct BudgetArgs {
  double eps = 1.0;
  double delta = 1e-6;
  size_t dp_lloyd_rounds = 0;
};

// Candidate-enumeration work at the finest level; the cover rounds scale with
// it. Large values mean --dprime should be lowered.
void WarnIfExpensive(size_t n, double eps,
                     std::optional<size_t> dprime) {
  const size_t target = dprime.value_or(dpkm::DefaultTargetDim(n));
  const dpkm::GridLevel first = dpkm::GridLevels(n, target, eps).front();
  if (target > 12) {
    std::cerr << "warning: d' = " << target
              << " makes grid cover enumeration intractable; pass --dprime\n";
    return;
  }
  const double offsets =
      static_cast<double>(dpkm::BuildOffsets(first).offsets.size());
  const double work = offsets * std::ldexp(1.0, static_cast<int>(target)) *
                      static_cast<double>(n);
  if (work > 2e9) {
    std::cerr << "warning: d' = " << target << " enumerates ~" << work
              << " candidate grid points per level; consider a smaller "
                 "--dprime\n";
  }
}

std::ostream& OpenOut(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot write " + path);
  return file;
}

json ReportJson(const dpkm::PrivacyReport& report) {
  json stages = json::array();
  for (const auto& s : report.stages) {
    stages.push_back({{"stage", s.name}, {"eps", s.eps}, {"delta", s.delta}});
  }
  return {{"eps_total", report.eps_total},
          {"delta_total", report.delta_total},
          {"stages", stages}};
}

json ParamsJson(const dpkm::PrivacyParams& p) {
  return {{"eps_exp", p.eps_exp},   {"delta_exp", p.delta_exp},
          {"eps_lap", p.eps_lap},   {"eps_avg", p.eps_avg},
          {"delta_avg", p.delta_avg}};
}

int RunCluster(const ClusterArgs& a) {
  const dpkm::Dataset data = dpkm::IngestCsv(a.input, a.diameter, a.skip_header);
  const double delta = a.delta > 0.0
                           ? a.delta
                           : std::pow(static_cast<double>(data.size()), -1.5);
  WarnIfExpensive(data.size(), a.eps_approx, a.dprime);

  dpkm::PipelineConfig config;
  config.k = a.k;
  config.eps = a.eps_approx;
  config.privacy = dpkm::AllocateBudget(a.eps, delta, a.dp_lloyd_rounds);
  config.target_dim = a.dprime;
  config.rounds_per_level = a.kprime;
  config.dp_lloyd_rounds = a.dp_lloyd_rounds;
  config.seed = a.seed;
  const dpkm::ClusteringResult result = dpkm::RunPipeline(data, config);

  const auto& diag = result.diagnostics;
  json out = {{"k", a.k},
              {"centers", result.centers},
              {"assignment", result.assignment},
              {"cost", result.cost},
              {"privacy_params", ParamsJson(config.privacy)},
              {"privacy", ReportJson(result.privacy)},
              {"diagnostics",
               {{"target_dim", diag.target_dim},
                {"levels", diag.levels},
                {"rounds_per_level", diag.rounds_per_level},
                {"candidates", diag.candidate_count},
                {"projected_points", diag.projected_points},
                {"level_cover", diag.level_cover},
                {"avg_fallback", diag.avg_fallback}}}};
  std::ofstream file;
  OpenOut(a.out, file) << out.dump(2) << '\n';
  return 0;
}

int RunGenSynth(const SynthArgs& a) {
  const dpkm::Dataset data =
      dpkm::GenerateSynthetic(a.n, a.d, a.components, a.spread, a.seed);
  std::ofstream file;
  dpkm::WriteCsvDataset(OpenOut(a.out, file), data);
  std::cerr << "diameter " << data.diameter_bound() << '\n';
  return 0;
}

int RunGenHard(const HardArgs& a) {
  const dpkm::HardInstance hard =
      dpkm::GenerateHardInstance(a.k, a.d, a.multiplicity, a.seed);
  std::ofstream file;
  dpkm::WriteCsvDataset(OpenOut(a.out, file), hard.data);
  std::cerr << "diameter " << hard.data.diameter_bound() << '\n';
  return 0;
}

int RunExperimentCmd(const ExperimentArgs& a) {
  std::optional<dpkm::Dataset> data;
  if (a.source == "file") {
    data = dpkm::IngestCsv(a.input, a.diameter, a.skip_header);
  } else if (a.source == "synthetic") {
    data = dpkm::GenerateSynthetic(a.synth.n, a.synth.d, a.synth.components,
                                   a.synth.spread, a.seed);
  } else {
    data = dpkm::GenerateHardInstance(a.hard.k, a.hard.d, a.hard.multiplicity,
                                      a.seed)
               .data;
  }
  WarnIfExpensive(data->size(), a.eps_approx, a.dprime);

  dpkm::ExperimentSpec spec;
  spec.ks = a.ks;
  spec.eps_total = a.eps;
  spec.delta_total = a.delta;
  spec.repetitions = a.reps;
  spec.seed = a.seed;
  spec.eps_approx = a.eps_approx;
  spec.target_dim = a.dprime;
  spec.rounds_per_level = a.kprime;
  spec.dp_lloyd_rounds = a.dp_lloyd_rounds;

  std::ofstream log(a.out + ".jsonl");
  if (!log) throw std::runtime_error("cannot write " + a.out + ".jsonl");
  // Run records are appended as they finish.
  const dpkm::ExperimentResult result =
      dpkm::RunExperiment(*data, spec, [&](const dpkm::RunRecord& r) {
        log << dpkm::RunRecordJson(r) << '\n' << std::flush;
        std::cerr << r.algorithm << " k=" << r.k << " rep=" << r.rep
                  << " cost=" << r.cost << '\n';
      });
  dpkm::ExperimentResult summary_only;
  summary_only.summary = result.summary;
  dpkm::WriteJsonLines(log, summary_only);

  std::ofstream runs(a.out + "_runs.csv");
  dpkm::WriteRunsCsv(runs, result.records);
  std::ofstream summary(a.out + "_summary.csv");
  dpkm::WriteSummaryCsv(summary, result.summary);
  dpkm::WriteSummaryCsv(std::cout, result.summary);
  return 0;
}

int RunBudget(const BudgetArgs& a) {
  const dpkm::PrivacyParams p =
      dpkm::SplitBudget(a.eps, a.delta, a.dp_lloyd_rounds);
  const dpkm::PrivacyReport report = dpkm::Account(p, a.dp_lloyd_rounds);
  std::printf("eps_exp   %.17g\n", p.eps_exp);
  std::printf("delta_exp %.17g\n", p.delta_exp);
  std::printf("eps_lap   %.17g\n", p.eps_lap);
  std::printf("eps_avg   %.17g\n", p.eps_avg);
  std::printf("delta_avg %.17g\n", p.delta_avg);
  for (const auto& s : report.stages) {
    const bool surcharge = s.name.rfind("dp_lloyd_round", 0) == 0;
    std::printf("%s %s eps=%.17g delta=%.17g\n",
                surcharge ? "surcharge" : "stage", s.name.c_str(), s.eps,
                s.delta);
  }
  std::printf("total eps=%.17g delta=%.17g\n", report.eps_total,
              report.delta_total);
  const bool ok =
      std::abs(report.eps_total - a.eps) <= 1e-12 * a.eps &&
      std::abs(report.delta_total - a.delta) <= 1e-12 * a.delta;
  std::printf("round-trip: %s\n", ok ? "OK" : "MISMATCH");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private k-means clustering"};
  app.require_subcommand(1);

  ClusterArgs cluster;
  CLI::App* c = app.add_subcommand("cluster", "Cluster a CSV dataset privately");
  c->add_option("--input", cluster.input, "CSV file")->required();
  c->add_option("--diameter", cluster.diameter, "Declared diameter bound")
      ->required();
  c->add_flag("--skip-header", cluster.skip_header);
  c->add_option("--k", cluster.k)->capture_default_str();
  c->add_option("--eps", cluster.eps, "Total privacy eps")->capture_default_str();
  c->add_option("--delta", cluster.delta, "Total privacy delta (default n^-1.5)");
  c->add_option("--eps-approx", cluster.eps_approx)->capture_default_str();
  c->add_option("--dprime", cluster.dprime, "Reduced dimension override");
  c->add_option("--kprime", cluster.kprime, "Cover rounds per level override");
  c->add_option("--dp-lloyd-rounds", cluster.dp_lloyd_rounds)
      ->capture_default_str();
  c->add_option("--seed", cluster.seed)->capture_default_str();
  c->add_option("--out", cluster.out, "JSON output path (default stdout)");

  SynthArgs synth;
  CLI::App* s = app.add_subcommand("gen-synth", "Generate a Gaussian mixture");
  s->add_option("--n", synth.n)->capture_default_str();
  s->add_option("--d", synth.d)->capture_default_str();
  s->add_option("--components", synth.components)->capture_default_str();
  s->add_option("--spread", synth.spread)->capture_default_str();
  s->add_option("--seed", synth.seed)->capture_default_str();
  s->add_option("--out", synth.out, "CSV output path (default stdout)");

  HardArgs hard;
  CLI::App* h = app.add_subcommand("gen-hard", "Generate a codeword instance");
  h->add_option("--k", hard.k)->capture_default_str();
  h->add_option("--d", hard.d)->capture_default_str();
  h->add_option("--multiplicity", hard.multiplicity)->capture_default_str();
  h->add_option("--seed", hard.seed)->capture_default_str();
  h->add_option("--out", hard.out, "CSV output path (default stdout)");

  ExperimentArgs exp;
  CLI::App* e = app.add_subcommand("experiment", "Benchmark against baselines");
  e->add_option("--source", exp.source)
      ->check(CLI::IsMember({"file", "synthetic", "hard"}))
      ->capture_default_str();
  e->add_option("--input", exp.input);
  e->add_option("--diameter", exp.diameter);
  e->add_flag("--skip-header", exp.skip_header);
  e->add_option("--n", exp.synth.n)->capture_default_str();
  e->add_option("--d", exp.synth.d)->capture_default_str();
  e->add_option("--components", exp.synth.components)->capture_default_str();
  e->add_option("--spread", exp.synth.spread)->capture_default_str();
  e->add_option("--hard-k", exp.hard.k)->capture_default_str();
  e->add_option("--hard-d", exp.hard.d)->capture_default_str();
  e->add_option("--multiplicity", exp.hard.multiplicity)->capture_default_str();
  e->add_option("--k", exp.ks, "Comma-separated k values")
      ->delimiter(',')
      ->capture_default_str();
  e->add_option("--eps", exp.eps)->capture_default_str();
  e->add_option("--delta", exp.delta, "Total delta (default n^-1.5)");
  e->add_option("--eps-approx", exp.eps_approx)->capture_default_str();
  e->add_option("--dprime", exp.dprime);
  e->add_option("--kprime", exp.kprime);
  e->add_option("--dp-lloyd-rounds", exp.dp_lloyd_rounds)->capture_default_str();
  e->add_option("--reps", exp.reps)->capture_default_str();
  e->add_option("--seed", exp.seed)->capture_default_str();
  e->add_option("--out", exp.out, "Output path prefix")->required();

  BudgetArgs budget;
  CLI::App* b = app.add_subcommand("budget", "Split a total privacy budget");
  b->add_option("--eps", budget.eps)->capture_default_str();
  b->add_option("--delta", budget.delta)->capture_default_str();
  b->add_option("--dp-lloyd-rounds", budget.dp_lloyd_rounds)
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (c->parsed()) return RunCluster(cluster);
    if (s->parsed()) return RunGenSynth(synth);
    if (h->parsed()) return RunGenHard(hard);
    if (e->parsed()) {
      if (exp.source == "file" && (exp.input.empty() || exp.diameter <= 0.0)) {
        throw std::invalid_argument(
            "--source file needs --input and --diameter");
      }
      return RunExperimentCmd(exp);
    }
    if (b->parsed()) return RunBudget(budget);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 1;
}
