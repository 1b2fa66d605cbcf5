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

// Acceptance gate. Each criterion prints one "[PASS]" or "[FAIL]" line.
//
//   acceptance_test [--criterion N] [--cli PATH] [--workdir DIR]
//
// Without --criterion every criterion runs. The exit status is nonzero when
// any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "dpkm/clustering.h"
#include "dpkm/core.h"
#include "dpkm/datagen.h"
#include "dpkm/experiment.h"
#include "dpkm/gridcover.h"
#include "dpkm/mechanisms.h"
#include "dpkm/pipeline.h"
#include "dpkm/rng.h"

namespace dpkm {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Options {
  int criterion = 0;  // 0 runs all
  std::string cli;
  fs::path workdir = fs::temp_directory_path();
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// --- 1: exponential-mechanism exactness -------------------------------------

Outcome ExponentialMechanismExactness(const Options&) {
  const auto start = Clock::now();
  std::vector<int64_t> covers(10, 0);
  covers[0] = 3;
  covers[1] = 1;
  const double eps = 1.0;
  std::vector<double> law;
  for (int64_t c : covers) law.push_back(std::exp(eps * c / 2.0));
  const double z = std::accumulate(law.begin(), law.end(), 0.0);
  for (double& p : law) p /= z;

  CoverageDistribution dist;
  dist.eps_exp = eps;
  dist.log_total_grid_size = CoverageDistribution::LogGridSize(10);
  dist.nonzero_entries = {{{0}, 3}, {{1}, 1}};
  const UniformGridSampler uniform = [](Rng& r) {
    return GridPoint{r.UniformInt(0, 9)};
  };
  Rng rng(20261016);
  const int samples = 100000;
  std::vector<double> freq(10, 0.0);
  for (int i = 0; i < samples; ++i) {
    freq[SampleExponentialMechanism(dist, uniform, rng)[0]] += 1.0 / samples;
  }
  double tv = 0.0;
  for (size_t i = 0; i < 10; ++i) tv += std::abs(freq[i] - law[i]) / 2.0;
  const double secs = Seconds(start);
  return {tv < 0.01 && secs < 5.0,
          Fmt("TV=%.5f (< 0.01), %.2fs (< 5s)", tv, secs)};
}

// --- 2: offset/candidate completeness ---------------------------------------

Outcome CandidateCompleteness(const Options&) {
  const auto start = Clock::now();
  Rng rng(2);
  int mismatches = 0;
  const int cases = 200;
  for (int trial = 0; trial < cases; ++trial) {
    GridLevel level;
    level.dim = 1 + rng.UniformInt(0, 1);
    level.unit = 1.0 / (1.0 + 19.0 * rng.Uniform());
    level.radius = 3.0 * level.unit * rng.Uniform();
    Point p(level.dim);
    for (double& x : p) x = 2.0 * rng.Uniform() - 1.0;

    const int64_t bound = level.axis_bound();
    const double thr_sq = level.threshold() * level.threshold();
    std::vector<GridPoint> brute;
    GridPoint b(level.dim, -bound);
    while (true) {
      double dist = 0.0;
      for (size_t j = 0; j < level.dim; ++j) {
        const double diff = level.unit * static_cast<double>(b[j]) - p[j];
        dist += diff * diff;
      }
      if (dist < thr_sq) brute.push_back(b);
      size_t j = 0;
      while (j < level.dim && b[j] == bound) b[j++] = -bound;
      if (j == level.dim) break;
      ++b[j];
    }
    std::sort(brute.begin(), brute.end());
    if (level.axis_size() > 41 ||
        CandidateGridPoints(p, level, BuildOffsets(level)) != brute) {
      ++mismatches;
    }
  }
  const double secs = Seconds(start);
  return {mismatches == 0 && secs < 10.0,
          Fmt("%d/%d cases differ from brute force, %.2fs (< 10s)", mismatches,
              cases, secs)};
}

// --- 3: greedy bicriteria coverage ------------------------------------------

Outcome GreedyBicriteria(const Options&) {
  const auto start = Clock::now();
  GridLevel level;
  level.dim = 2;
  level.unit = 0.1;
  level.radius = 0.1;
  const size_t picks = BicriteriaRoundsPerLevel(2, 0.25);
  const double reach = 0.9 * level.threshold();
  size_t worst = SIZE_MAX;
  bool all_ok = picks == 7;
  for (uint64_t run = 0; run < 20; ++run) {
    Rng rng(300 + run);
    // Two random grid points; every point lies inside one of their covers.
    std::vector<Point> pts;
    for (int ball = 0; ball < 2; ++ball) {
      // One center in the lower half-plane, one in the upper.
      const GridPoint g = {rng.UniformInt(-7, 7),
                           ball ? rng.UniformInt(2, 7) : rng.UniformInt(-7, -2)};
      const Point center = level.ToPoint(g);
      const int64_t count = rng.UniformInt(3, 12);
      for (int64_t i = 0; i < count; ++i) {
        Point p = SampleUniformBall(2, reach, rng);
        p[0] += center[0];
        p[1] += center[1];
        pts.push_back(std::move(p));
      }
    }
    UncoveredPool pool = UncoveredPool::Full(pts.size());
    PrivateGridSetCover(pts, pool, level, picks, 1.0, rng,
                        SelectionMode::kExactArgmax);
    const size_t covered = pts.size() - pool.live_count();
    worst = std::min(worst, covered * 100 / pts.size());
    if (4 * covered < 3 * pts.size()) all_ok = false;
  }
  const double secs = Seconds(start);
  return {all_ok && secs < 5.0,
          Fmt("worst coverage %zu%% (>= 75%%) in 20 runs with %zu picks, "
              "%.2fs (< 5s)",
              worst, picks, secs)};
}

// --- 4: accountant fidelity -------------------------------------------------

Outcome AccountantFidelity(const Options&) {
  Rng rng(4);
  double worst_account = 0.0, worst_split = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const PrivacyParams p{rng.Uniform() * 2.0, 1e-12 + rng.Uniform() * 0.5,
                          rng.Uniform() * 2.0, rng.Uniform() / 3.0,
                          1e-12 + rng.Uniform() * 0.4};
    const PrivacyReport r = Account(p);
    const double eps = std::numbers::e * p.eps_exp *
                           std::log(1.0 / p.delta_exp) / 2.0 +
                       p.eps_lap + p.eps_avg;
    const double delta = p.delta_exp + p.delta_avg;
    worst_account = std::max({worst_account,
                              std::abs(r.eps_total - eps) / std::max(eps, 1e-300),
                              std::abs(r.delta_total - delta) / delta});

    const double eps_t = 1e-3 + rng.Uniform() * 0.999;
    const double delta_t = std::pow(10.0, -1.0 - 11.0 * rng.Uniform());
    const PrivacyReport back = Account(SplitBudget(eps_t, delta_t));
    worst_split = std::max({worst_split,
                            std::abs(back.eps_total - eps_t) / eps_t,
                            std::abs(back.delta_total - delta_t) / delta_t});
  }
  return {worst_account <= 1e-12 && worst_split <= 1e-12,
          Fmt("max rel. error: accountant %.2e, split round-trip %.2e "
              "(<= 1e-12)",
              worst_account, worst_split)};
}

// --- 5: large-budget consistency --------------------------------------------

Dataset TwoGaussianBalls(size_t n, size_t dim, uint64_t seed) {
  Rng rng(seed);
  std::vector<Point> pts;
  for (size_t i = 0; i < n; ++i) {
    Point p(dim);
    for (double& x : p) x = 0.1 * rng.StandardNormal();
    p[0] += i < n / 2 ? -1.0 : 1.0;
    pts.push_back(std::move(p));
  }
  return Dataset(std::move(pts), 4.0);
}

Outcome LargeBudgetConsistency(const Options&) {
  const auto start = Clock::now();
  int good = 0, fallbacks = 0;
  std::string costs;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const Dataset data = TwoGaussianBalls(200, 10, 500 + seed);
    PipelineConfig config;
    config.k = 2;
    config.privacy = AllocateBudget(1000.0, 1e-6);
    config.seed = seed;
    const ClusteringResult priv = RunPipeline(data, config);
    Rng rng(600 + seed);
    LloydConfig lc;
    lc.k = 2;
    const double lloyd = KMeansCost(
        data, Lloyd(UnitWeights(data.points()), lc, rng).centers);
    good += priv.cost <= 2.0 * lloyd;
    for (bool f : priv.diagnostics.avg_fallback) fallbacks += f;
    costs += Fmt(" %.3g/%.3g", priv.cost, lloyd);
  }
  const double secs = Seconds(start);
  return {good >= 4 && secs < 60.0,
          Fmt("%d/5 seeds within 2x of Lloyd (need 4); private/lloyd:%s; "
              "NoisyAVG fallbacks %d/10; %.1fs (< 60s)",
              good, costs.c_str(), fallbacks, secs)};
}

// --- 6: realistic-budget sanity ---------------------------------------------

Outcome RealisticBudget(const Options&) {
  const auto start = Clock::now();
  const Dataset data = GenerateSynthetic(5000, 20, 16, 0.1, 7);
  ExperimentSpec spec;
  spec.ks = {2, 6, 10};
  spec.eps_total = 1.0;  // delta defaults to n^-1.5
  spec.repetitions = 5;
  spec.seed = 6;
  // The default d' = 7 needs ~10^7 grid candidates per point per level.
  spec.target_dim = 3;
  const ExperimentResult r = RunExperiment(data, spec);
  auto mean = [&](const char* algo, size_t k) {
    for (const SummaryRow& s : r.summary) {
      if (s.algorithm == algo && s.k == k) return s.mean_cost;
    }
    return std::nan("");
  };
  bool ok = true;
  std::string detail;
  double prev_lloyd = INFINITY;
  for (size_t k : spec.ks) {
    const double p = mean(kPrivateAlgorithm, k);
    const double l = mean(kLloydAlgorithm, k);
    const double u = mean(kRandomAlgorithm, k);
    ok = ok && p < u && l <= prev_lloyd;
    prev_lloyd = l;
    detail += Fmt(" k=%zu private=%.4g random=%.4g lloyd=%.4g;", k, p, u, l);
  }
  const double secs = Seconds(start);
  return {ok && secs < 900.0, Fmt("%s %.0fs (< 900s)", detail.c_str(), secs)};
}

// --- 7: noise-sampler calibration -------------------------------------------

Outcome SamplerCalibration(const Options&) {
  const int n = 100000;
  Rng rng(7);
  auto moments = [&](auto draw) {
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = draw();
      s += x;
      s2 += x * x;
    }
    const double m = s / n;
    return std::pair<double, double>(m, s2 / n - m * m);
  };
  const auto [lap_mean, lap_var] =
      moments([&] { return SampleLaplace({1.0}, rng); });
  int below = 0;
  for (int i = 0; i < n; ++i) below += SampleLaplace({2.0}, rng) < 0.0;
  const double g_mean =
      moments([&] { return SampleGaussian({1.0}, rng); }).first;
  const double g_var3 =
      moments([&] { return SampleGaussian({3.0}, rng); }).second;
  int inside = 0;
  for (int i = 0; i < n; ++i) {
    inside += std::abs(SampleGaussian({1.0}, rng)) <= 1.0;
  }
  const double below_frac = static_cast<double>(below) / n;
  const double inside_frac = static_cast<double>(inside) / n;
  const bool ok = std::abs(lap_mean) <= 0.05 &&
                  std::abs(lap_var - 2.0) <= 0.2 &&
                  std::abs(below_frac - 0.5) <= 0.01 &&
                  std::abs(g_mean) <= 0.05 && std::abs(g_var3 - 9.0) <= 0.9 &&
                  std::abs(inside_frac - 0.6827) <= 0.02;
  return {ok, Fmt("laplace mean=%.4f var=%.4f P(<0)=%.4f; gaussian mean=%.4f "
                  "var(sigma=3)=%.3f P(|x|<=1)=%.4f",
                  lap_mean, lap_var, below_frac, g_mean, g_var3, inside_frac)};
}

// --- 8: NoisyAVG contract ---------------------------------------------------

Outcome NoisyAvgContract(const Options&) {
  const std::vector<Point> members(100, Point{0.0, 0.0});
  const NoisyAvgParams params{1.0 / 3.0, 0.1};
  Rng rng(8);
  const NoisyAvgResult r =
      NoisyAverageWithLaplace(members, 2, 2.0, params, 0.0, rng);
  const double m_hat = 100.0 - 15.0 * std::log(20.0);
  const double m_err = std::abs(r.noisy_count - m_hat) / m_hat;

  const std::vector<Point> few(5, Point{0.7, 0.0, -0.7});
  const double diameter = 3.0;
  int fallbacks = 0, outside = 0;
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    Rng call_rng(seed);
    const NoisyAvgResult f =
        NoisyAverage(few, 3, diameter, {0.25, 1e-3}, call_rng);
    if (!f.fallback) continue;
    ++fallbacks;
    outside += Norm(f.value) > diameter / 2.0;
  }
  return {m_err <= 1e-12 && fallbacks > 0 && outside == 0,
          Fmt("m_hat rel. error %.2e (<= 1e-12); %d/1000 fallbacks, %d "
              "outside the radius-1.5 ball",
              m_err, fallbacks, outside)};
}

// --- 9: hard-instance sign check --------------------------------------------

Outcome HardInstanceSign(const Options&) {
  const HardInstance h = GenerateHardInstance(4, 32, 50, 9);
  const double optimal = KMeansCost(h.data, h.codewords);
  const double delta = std::pow(static_cast<double>(h.data.size()), -1.5);
  int positive = 0;
  std::string costs;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    PipelineConfig config;
    config.k = 4;
    config.privacy = AllocateBudget(1.0, delta);
    config.seed = 900 + seed;
    const double cost = RunPipeline(h.data, config).cost;
    positive += cost > 0.0;
    costs += Fmt(" %.4g", cost);
  }
  return {optimal == 0.0 && positive == 5,
          Fmt("optimal cost %.1f; private costs:%s (%d/5 positive)", optimal,
              costs.c_str(), positive)};
}

// --- 10: experiment determinism ---------------------------------------------

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome ExperimentDeterminism(const Options& opt) {
  if (opt.cli.empty()) return {false, "no --cli path given"};
  const fs::path dir = opt.workdir / "dpkm_acceptance_10";
  fs::create_directories(dir);
  std::string summaries[2];
  for (int run = 0; run < 2; ++run) {
    const fs::path prefix = dir / ("run" + std::to_string(run));
    const std::string cmd =
        "\"" + opt.cli +
        "\" experiment --source synthetic --n 400 --d 6 --components 4 "
        "--k 2,4 --reps 2 --dprime 2 --seed 10 --out \"" +
        prefix.string() + "\" > /dev/null 2>&1";
    if (std::system(cmd.c_str()) != 0) {
      return {false, "CLI experiment run failed: " + cmd};
    }
    summaries[run] = Slurp(prefix.string() + "_summary.csv");
  }
  fs::remove_all(dir);
  const bool same = !summaries[0].empty() && summaries[0] == summaries[1];
  return {same, Fmt("summary CSVs %s (%zu bytes)",
                    same ? "byte-identical" : "differ", summaries[0].size())};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome(const Options&)> run;
};

const std::vector<Criterion>& Criteria() {
  static const std::vector<Criterion> all = {
      {1, "exponential-mechanism exactness", ExponentialMechanismExactness},
      {2, "offset/candidate completeness", CandidateCompleteness},
      {3, "greedy bicriteria coverage", GreedyBicriteria},
      {4, "accountant fidelity", AccountantFidelity},
      {5, "large-budget consistency", LargeBudgetConsistency},
      {6, "realistic-budget sanity", RealisticBudget},
      {7, "noise-sampler calibration", SamplerCalibration},
      {8, "NoisyAVG contract", NoisyAvgContract},
      {9, "hard-instance sign check", HardInstanceSign},
      {10, "experiment determinism", ExperimentDeterminism},
  };
  return all;
}

}  // namespace
}  // namespace dpkm

int main(int argc, char** argv) {
  dpkm::Options opt;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (i + 1 >= argc) {
      std::fprintf(stderr, "missing value for %s\n", arg.c_str());
      return 2;
    }
    if (arg == "--criterion") {
      opt.criterion = std::atoi(argv[++i]);
    } else if (arg == "--cli") {
      opt.cli = argv[++i];
    } else if (arg == "--workdir") {
      opt.workdir = argv[++i];
    } else {
      std::fprintf(stderr, "unknown argument %s\n", arg.c_str());
      return 2;
    }
  }
  int failed = 0, ran = 0;
  for (const dpkm::Criterion& c : dpkm::Criteria()) {
    if (opt.criterion != 0 && c.id != opt.criterion) continue;
    ++ran;
    dpkm::Outcome out;
    try {
      out = c.run(opt);
    } catch (const std::exception& ex) {
      out = {false, std::string("exception: ") + ex.what()};
    }
    std::printf("[%s] criterion %d: %s: %s\n", out.pass ? "PASS" : "FAIL",
                c.id, c.name, out.detail.c_str());
    std::fflush(stdout);
    failed += !out.pass;
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion %d\n", opt.criterion);
    return 2;
  }
  return failed == 0 ? 0 : 1;
}
