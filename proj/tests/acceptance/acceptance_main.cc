// Copyright 2026 The dprank Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance checks. Prints one PASS/FAIL/SKIP line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Dense>

#include "dprank/baselines.h"
#include "dprank/dataset.h"
#include "dprank/errors.h"
#include "dprank/estimator.h"
#include "dprank/experiments.h"
#include "dprank/extensions.h"
#include "dprank/lst_models.h"
#include "dprank/privacy.h"
#include "dprank/ranking_metrics.h"
#include "dprank/rng.h"
#include "dprank/stats.h"

namespace dprank {
namespace {

namespace fs = std::filesystem;

enum class Verdict { kPass, kFail, kSkip };

struct Outcome {
  Verdict verdict;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

struct Paths {
  std::string cli;
  std::string data;
  std::string work;
};

std::string Fmt(double x, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << x;
  return s.str();
}

Outcome Judge(bool ok, const std::string& detail) {
  return {ok ? Verdict::kPass : Verdict::kFail, detail};
}

// ---- 1 ---------------------------------------------------------------------

Outcome MechanismCorrectness() {
  const auto btl = ComparisonModel::Btl();
  const double eps = std::log(2.0);
  const double f = btl.cdf(std::log(2.0));  // 2/3
  const int n = 100000;
  Rng rng = MakeRng(2024, {1});
  std::bernoulli_distribution truth(f);
  long ones = 0;
  double sum = 0, sum2 = 0;
  for (int k = 0; k < n; ++k) {
    const int out = randomized_response(truth(rng) ? 1 : 0, eps, rng);
    ones += out;
    const double z = debias(out, eps);
    sum += z;
    sum2 += z * z;
  }
  const double q = 5.0 / 9.0;
  const double freq = double(ones) / n;
  const double freq_se = std::sqrt(q * (1 - q) / n);
  // Debiased value: z = ((e + 1) y~ - 1) / (e - 1), so Var z = ((e+1)/(e-1))^2 q(1-q).
  const double e = std::exp(eps);
  const double var_closed = std::pow((e + 1) / (e - 1), 2) * q * (1 - q);
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  const bool freq_ok = std::abs(freq - q) <= 4 * freq_se;
  const bool mean_ok = std::abs(mean - f) <= 4 * std::sqrt(var_closed / n);
  const bool var_ok = std::abs(var / var_closed - 1) <= 0.05 &&
                      std::abs(debias_variance(eps, f) / var_closed - 1) <= 1e-12;
  return Judge(freq_ok && mean_ok && var_ok,
               "P(y~=1)=" + Fmt(freq, 5) + " (5/9=" + Fmt(q, 5) + "), mean z=" + Fmt(mean, 5) +
                   " (2/3), var z=" + Fmt(var, 5) + " (closed form " + Fmt(var_closed, 5) + ")");
}

// ---- 2 ---------------------------------------------------------------------

// Gauss-Newton least squares of logistic(theta_i - theta_j) against the
// three RR probabilities, with theta_3 = 0.
Outcome RrTransitivityInfeasible() {
  const double p12 = 5.0 / 9.0, p13 = 3.0 / 5.0, p23 = 5.0 / 9.0;
  const double odds = [](double p) { return p / (1 - p); }(p12) *
                      [](double p) { return p / (1 - p); }(p23);
  const double transitivity_residual = std::abs(odds - p13 / (1 - p13));
  auto sig = [](double x) { return 1 / (1 + std::exp(-x)); };
  Eigen::Vector2d t(0, 0);
  Eigen::Vector3d target(p12, p13, p23);
  Eigen::Vector3d r;
  for (int it = 0; it < 100; ++it) {
    const double g12 = t[0] - t[1], g13 = t[0], g23 = t[1];
    r << sig(g12) - target[0], sig(g13) - target[1], sig(g23) - target[2];
    auto d = [&](double g) { return sig(g) * (1 - sig(g)); };
    Eigen::Matrix<double, 3, 2> jac;
    jac << d(g12), -d(g12), d(g13), 0, 0, d(g23);
    const Eigen::Vector2d step = (jac.transpose() * jac).ldlt().solve(-jac.transpose() * r);
    t += step;
    if (step.norm() < 1e-15) break;
  }
  r << sig(t[0] - t[1]) - target[0], sig(t[0]) - target[1], sig(t[1]) - target[2];
  const bool ok = odds != 1.5 && transitivity_residual > 0 && r.norm() > 1e-3;
  return Judge(ok, "(5/4)(5/4)=" + Fmt(odds, 6) + " vs 3/2, |diff|=" + Fmt(transitivity_residual) +
                       "; least-squares BTL residual norm=" + Fmt(r.norm()));
}

// ---- 3 ---------------------------------------------------------------------

double NaiveObjective(const std::vector<double>& theta, const PairwiseDataset& d,
                      const ComparisonModel& model, double lambda) {
  const auto w = d.profile()->weights();
  double total = 0;
  for (const auto& r : d.records()) {
    const double gap = theta[r.i] - theta[r.j];
    total -= r.value * std::log(model.cdf(gap)) + (w[r.user] - r.value) * std::log(model.cdf(-gap));
  }
  for (double t : theta) total += lambda * t * t;
  return total;
}

Outcome EstimatorCore() {
  double worst_grad = 0, worst_center = 0, worst_obj = 0;
  int fits = 0;
  for (const auto& model : {ComparisonModel::Btl(), ComparisonModel::Tm(), ComparisonModel::Dt()}) {
    for (int inst = 0; inst < 20; ++inst) {
      Rng rng = MakeRng(3, {static_cast<std::uint64_t>(model.kind()), static_cast<std::uint64_t>(inst)});
      const int m = 4 + inst % 7, users = 10 + 3 * inst;
      auto raw = generate(CenteredUniformTheta(m, rng), model, users, 0.7, rng);
      auto profile = PrivacyProfile::UniformDraw(users, 0.5, 3.0, rng);
      auto data = privatize(raw, profile, Mechanism::kADRR, rng);
      const double lambda = default_lambda(profile);
      std::uniform_real_distribution<double> u(-1.5, 1.5);
      std::vector<double> theta(m);
      for (double& t : theta) t = u(rng);
      const auto g = gradient(theta, data, model, lambda);
      for (int i = 0; i < m; ++i) {
        const double h = 1e-6;
        auto tp = theta, tm = theta;
        tp[i] += h;
        tm[i] -= h;
        const double fd = (objective(tp, data, model, lambda) - objective(tm, data, model, lambda)) / (2 * h);
        worst_grad = std::max(worst_grad, std::abs(g[i] - fd) / std::max(1.0, std::abs(fd)));
      }
      worst_obj = std::max(worst_obj, std::abs(objective(theta, data, model, lambda) -
                                               NaiveObjective(theta, data, model, lambda)));
      EstimatorConfig config;
      config.lambda = lambda;
      auto est = fit(data, model, config);
      ++fits;
      worst_center = std::max(worst_center,
                              std::abs(std::accumulate(est.theta_hat.begin(), est.theta_hat.end(), 0.0)));
    }
  }
  return Judge(worst_grad <= 1e-6 && worst_center <= 1e-8 && worst_obj <= 1e-10,
               "max gradient rel err=" + Fmt(worst_grad) + ", max |sum theta_hat|=" + Fmt(worst_center) +
                   " over " + std::to_string(fits) + " fits, max objective diff=" + Fmt(worst_obj));
}

// ---- 4 ---------------------------------------------------------------------

Outcome ScenarioOneCell() {
  auto spec = ScenarioSpec::Defaults(Scenario::kI);
  spec.users = {100, 400};
  spec.items = {10};
  spec.replicates = 50;
  auto report = run_scenario(spec);
  const double at100 = report.Mean(0, "adrr", "l2");
  const double at400 = report.Mean(1, "adrr", "l2");
  const bool ok = at100 >= 0.095 && at100 <= 0.125 && at400 < at100;
  return Judge(ok, "mean l2/sqrt(m) at L=100: " + Fmt(at100) + " (band [0.095, 0.125]); at L=400: " +
                       Fmt(at400));
}

// ---- 5 ---------------------------------------------------------------------

Outcome ScenarioTwoScaling() {
  auto spec = ScenarioSpec::Defaults(Scenario::kII);
  spec.replicates = 100;
  auto report = run_scenario(spec);
  double linf = std::nan(""), l2 = std::nan("");
  for (const auto& s : report.scaling) (s.metric == "linf" ? linf : l2) = s.correlation;
  return Judge(linf >= 0.85, "corr(linf, 1/sqrt(B))=" + Fmt(linf) + " (need >= 0.85), corr(l2, 1/sqrt(B))=" +
                                 Fmt(l2) + ", 100 replicates");
}

// ---- 6 ---------------------------------------------------------------------

Outcome ScenarioFiveOrdering() {
  auto spec = ScenarioSpec::Defaults(Scenario::kV);
  spec.replicates = 50;
  auto report = run_scenario(spec);
  const double adrr = report.Mean(0, "adrr", "linf"), rr = report.Mean(0, "rr", "linf"),
               lap = report.Mean(0, "laplace", "linf");
  const double k_adrr = report.Mean(0, "adrr", "kendall"), k_count = report.Mean(0, "count", "kendall");
  const bool ok = adrr < rr && adrr < lap && k_adrr < k_count;
  return Judge(ok, "linf ADRR=" + Fmt(adrr) + " RR=" + Fmt(rr) + " Laplace=" + Fmt(lap) +
                       "; Kendall ADRR=" + Fmt(k_adrr) + " count=" + Fmt(k_count));
}

// ---- 7 ---------------------------------------------------------------------

std::vector<double> FromRanks(const std::vector<int>& sigma) {
  std::vector<double> v;
  for (int s : sigma) v.push_back(-static_cast<double>(s));
  return v;
}

Outcome MetricsExhaustive() {
  long compared = 0, mismatches = 0;
  for (int m = 2; m <= 6; ++m) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(m);
    std::iota(p.begin(), p.end(), 1);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    for (const auto& a : perms) {
      for (const auto& b : perms) {
        int disc = 0, foot = 0;
        for (int i = 0; i < m; ++i) {
          foot += std::abs(a[i] - b[i]);
          for (int j = i + 1; j < m; ++j) disc += (a[i] < a[j]) != (b[i] < b[j]);
        }
        const auto va = FromRanks(a), vb = FromRanks(b);
        mismatches += kendall(va, vb) != disc / (m * (m - 1) / 2.0);
        mismatches += spearman_footrule(va, vb) != 2.0 * foot / (m * m);
        for (int k = 1; k < m; ++k) {
          std::set<int> ta, tb;
          for (int i = 0; i < m; ++i) {
            if (a[i] <= k) ta.insert(i);
            if (b[i] <= k) tb.insert(i);
          }
          int sym = 0;
          for (int i : ta) sym += !tb.count(i);
          for (int i : tb) sym += !ta.count(i);
          mismatches += topk_hamming(va, vb, k) != sym / (2.0 * k);
        }
        ++compared;
      }
    }
  }
  Rng rng = MakeRng(7);
  std::uniform_int_distribution<int> size(3, 30);
  int dg_violations = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const int m = size(rng);
    std::vector<int> a(m), b(m);
    std::iota(a.begin(), a.end(), 1);
    std::iota(b.begin(), b.end(), 1);
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    dg_violations += footrule_distance(a, b) > 2 * kendall_distance(a, b);
  }
  return Judge(mismatches == 0 && dg_violations == 0,
               std::to_string(compared) + " permutation pairs, " + std::to_string(mismatches) +
                   " oracle mismatches; Diaconis-Graham violations " + std::to_string(dg_violations) + "/1000");
}

// ---- 8 ---------------------------------------------------------------------

Outcome HessianScaling() {
  const auto tm = ComparisonModel::Tm();
  std::vector<double> medians;
  for (int m : {10, 20, 30}) {
    std::vector<double> values;
    const auto theta = EvenlySpacedTheta(m, 1.0 / (m - 1));
    for (int draw = 0; draw < 30; ++draw) {
      Rng rng = MakeRng(8, {static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(draw)});
      auto raw = generate(theta, tm, 30, 0.8, rng);
      auto data = privatize(raw, PrivacyProfile::Constant(30, 2.0), Mechanism::kADRR, rng);
      values.push_back(hessian_min_nonzero_eigenvalue(theta, data, tm));
    }
    medians.push_back(stats::Median(values));
  }
  const double r21 = medians[1] / medians[0], r31 = medians[2] / medians[0], r32 = medians[2] / medians[1];
  const bool ok = std::abs(r21 / 2 - 1) <= 0.25 && std::abs(r31 / 3 - 1) <= 0.25 && std::abs(r32 / 1.5 - 1) <= 0.25;
  return Judge(ok, "medians " + Fmt(medians[0]) + ", " + Fmt(medians[1]) + ", " + Fmt(medians[2]) +
                       "; ratios 20/10=" + Fmt(r21, 3) + " 30/10=" + Fmt(r31, 3) + " 30/20=" + Fmt(r32, 3));
}

// ---- 9 ---------------------------------------------------------------------

Outcome ModelSelectionRate() {
  const int users = 800, items = 30, reps = 100;
  const std::vector<ComparisonModel> candidates{ComparisonModel::Btl(), ComparisonModel::Tm()};
  int correct = 0, btl_truth = 0, btl_correct = 0;
  for (int r = 0; r < reps; ++r) {
    Rng rng = MakeRng(9, {static_cast<std::uint64_t>(r)});
    std::bernoulli_distribution coin(0.5);
    const std::size_t truth = coin(rng) ? 0 : 1;
    auto raw = generate(CenteredUniformTheta(items, rng), candidates[truth], users, 1.0, rng);
    EstimatorConfig config;
    config.lambda = 1.0 / users;
    const auto sel = select_model(raw, candidates, config);
    correct += sel.chosen == truth;
    btl_truth += truth == 0;
    btl_correct += truth == 0 && sel.chosen == 0;
  }
  const double rate = double(correct) / reps;
  return Judge(rate >= 0.85, "correct-selection rate " + Fmt(rate, 3) + " over " + std::to_string(reps) +
                                 " replicates (BTL truth " + std::to_string(btl_correct) + "/" +
                                 std::to_string(btl_truth) + ")");
}

// ---- 10 --------------------------------------------------------------------

Outcome MixedEffects() {
  const int users = 300, items = 30, reps = 50;
  std::vector<double> errs, sigma_errs;
  for (int r = 0; r < reps; ++r) {
    Rng rng = MakeRng(10, {static_cast<std::uint64_t>(r)});
    const auto theta = CenteredUniformTheta(items, rng);
    auto data = generate_mixed_effects(theta, users, 1.0, 1.0, rng);
    auto est = fit_mixed_effects(data.raw, 1.0 / users, {});
    errs.push_back(l2_error_per_item(est.theta_hat, theta));
    sigma_errs.push_back(std::abs(est.sigma_hat - 1));
  }
  const double err = stats::Mean(errs), sig = stats::Mean(sigma_errs);
  return Judge(err >= 0.020 && err <= 0.032 && sig <= 0.10,
               "mean l2/sqrt(m)=" + Fmt(err) + ", mean |sigma_hat-1|=" + Fmt(sig));
}

// ---- 11 --------------------------------------------------------------------

Outcome RealData(const Paths& paths) {
  if (!fs::exists(paths.data)) {
    std::string detail = "dataset not installed at " + paths.data;
    if (!paths.cli.empty()) {
      const auto out = fs::path(paths.work) / "real";
      const std::string cmd = "\"" + paths.cli + "\" --out \"" + out.string() + "\" real-data --data \"" +
                              paths.data + "\" > /dev/null 2>&1";
      const int status = std::system(cmd.c_str());
      const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
      detail += "; dprank real-data exited " + std::to_string(code);
      if (code != 3) return {Verdict::kFail, detail + " (expected 3)"};
    }
    return {Verdict::kSkip, detail};
  }
  RealDataConfig config;
  config.dataset = paths.data;
  auto report = real_data_pipeline(config);
  const RankPermutation expected{8, 3, 10, 9, 7, 1, 5, 4, 6, 2};
  const bool truth_ok =
      report.truth_btl == expected && report.truth_tm == expected && report.truth_count == expected;
  const double adrr = stats::Mean(report.Errors("adrr_btl"));
  const double rr = stats::Mean(report.Errors("rr"));
  const double lap = stats::Mean(report.Errors("laplace"));
  std::string ranks;
  for (int s : report.truth_btl) ranks += std::to_string(s) + " ";
  return Judge(truth_ok && adrr < rr && adrr < lap,
               "BTL truth ranks (" + ranks + ") agree=" + (report.truths_agree ? "yes" : "no") +
                   "; Kendall ADRR=" + Fmt(adrr) + " RR=" + Fmt(rr) + " Laplace=" + Fmt(lap));
}

// ---- 12 --------------------------------------------------------------------

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome Determinism(const Paths& paths) {
  if (paths.cli.empty()) return {Verdict::kFail, "no CLI binary given (--cli)"};
  std::vector<fs::path> dirs{fs::path(paths.work) / "det_a", fs::path(paths.work) / "det_b"};
  for (const auto& dir : dirs) {
    fs::remove_all(dir);
    const std::string cmd = "\"" + paths.cli + "\" --seed 42 --out \"" + dir.string() +
                            "\" simulate --scenario 1 > /dev/null";
    const int status = std::system(cmd.c_str());
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
      return {Verdict::kFail, "simulate exited with status " + std::to_string(status)};
    }
  }
  int files = 0, differing = 0;
  for (const auto& entry : fs::directory_iterator(dirs[0])) {
    if (entry.path().extension() != ".csv") continue;
    ++files;
    const auto other = dirs[1] / entry.path().filename();
    differing += !fs::exists(other) || Slurp(entry.path()) != Slurp(other);
  }
  return Judge(files > 0 && differing == 0,
               std::to_string(files) + " CSV files compared, " + std::to_string(differing) + " differ");
}

}  // namespace
}  // namespace dprank

int main(int argc, char** argv) {
  using namespace dprank;
  CLI::App app("Acceptance checks");
  Paths paths;
  paths.work = (fs::temp_directory_path() / "dprank_acceptance").string();
  std::vector<int> only;
  app.add_option("--cli", paths.cli, "Path to the dprank binary");
  app.add_option("--data", paths.data, "Car-preference CSV")->default_val("data/car_preferences.csv");
  app.add_option("--work", paths.work, "Scratch directory");
  app.add_option("--only", only, "Run only these criteria")->delimiter(',');
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(paths.work);

  const std::vector<Criterion> criteria = {
      {1, "mechanism correctness", 5, MechanismCorrectness},
      {2, "RR transitivity infeasibility", 1, RrTransitivityInfeasible},
      {3, "estimator core", 30, EstimatorCore},
      {4, "Scenario I cell", 300, ScenarioOneCell},
      {5, "Scenario II scaling", 600, ScenarioTwoScaling},
      {6, "Scenario V ordering", 600, ScenarioFiveOrdering},
      {7, "ranking metrics", 30, MetricsExhaustive},
      {8, "Hessian diagnostic", 120, HessianScaling},
      {9, "model selection", 900, ModelSelectionRate},
      {10, "mixed effects", 600, MixedEffects},
      {11, "real data", 300, [&] { return RealData(paths); }},
      {12, "determinism", 60, [&] { return Determinism(paths); }},
  };

  int pass = 0, fail = 0, skip = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {Verdict::kFail, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out.verdict == Verdict::kPass && secs > c.budget_s) {
      out.verdict = Verdict::kFail;
      out.detail += "; over the " + Fmt(c.budget_s) + " s budget";
    }
    const char* tag = out.verdict == Verdict::kPass ? "PASS" : out.verdict == Verdict::kFail ? "FAIL" : "SKIP";
    (out.verdict == Verdict::kPass ? pass : out.verdict == Verdict::kFail ? fail : skip)++;
    std::printf("%s %2d %s: %s [%.1f s]\n", tag, c.id, c.name.c_str(), out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("summary: %d passed, %d failed, %d skipped\n", pass, fail, skip);
  return fail == 0 ? 0 : 1;
}
