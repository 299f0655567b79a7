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

#ifndef DPRANK_EXPERIMENTS_H_
#define DPRANK_EXPERIMENTS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dprank/config.h"
#include "dprank/dataset.h"
#include "dprank/lst_models.h"
#include "dprank/privacy.h"
#include "dprank/ranking_metrics.h"
#include "dprank/rng.h"
#include "dprank/stats.h"

namespace dprank {

enum class Scenario { kI = 1, kII, kIII, kIV, kV };

Scenario ScenarioFromNumber(int n);
int ScenarioNumber(Scenario s);

// How the per-user budgets of one replicate are drawn.
//   kUniform:  eps_l ~ U(lo, hi)
//   kShifted:  A ~ U(lo, hi), then eps_l ~ U(A, A + width)
//   kScheme:   every user gets eps_s(m, L), s = scheme in {1, 2, 3}:
//                1: log^2(mL) / sqrt(mL)
//                2: 1 / sqrt(mL)
//                3: 1 / (log^2(mL) sqrt(mL))
//              each scaled so that eps_s(10, 100) = 1.
struct EpsilonLaw {
  enum class Kind { kUniform, kShifted, kScheme };
  Kind kind = Kind::kUniform;
  double lo = 1.0;
  double hi = 5.0;
  double width = 0.5;
  int scheme = 1;

  std::string Describe() const;
  PrivacyProfile Draw(int users, int items, Rng& rng) const;
};

double SchemeEpsilon(int scheme, int items, int users);

// One scenario run. The grid is the product models x users x items x deltas
// (x schemes for scenario III). Scenario V draws L from [users[0], users_max]
// and m from [items[0], items_max] in every replicate instead.
struct ScenarioSpec {
  Scenario scenario = Scenario::kI;
  std::vector<std::string> models{"btl"};
  std::vector<int> users{100};
  std::vector<int> items{10};
  std::vector<double> deltas{0.0};  // scenario IV gap; 0 means theta ~ U(-1, 1)
  std::vector<int> schemes{1};      // scenario III only
  int users_max = 0;                // scenario V only
  int items_max = 0;                // scenario V only
  double p = 0.5;
  EpsilonLaw eps;
  double lambda_c = 1.0;  // lambda = lambda_c / (L B(eps))
  int replicates = 50;
  std::uint64_t base_seed = 42;

  // Standard settings for each scenario.
  static ScenarioSpec Defaults(Scenario s);
  // Overrides fields from config keys: models, users, items, deltas,
  // schemes, users_max, items_max, p, eps_law (uniform|shifted|scheme),
  // eps_lo, eps_hi, eps_width, lambda_c, replicates, seed.
  void Apply(Config& config);
  // Throws ValidationError on an empty grid or illegal parameters.
  void Validate() const;
};

struct GridCell {
  int index = 0;
  std::string model;
  int users = 0;
  int items = 0;
  double delta = 0;
  int k = 0;       // top-K size, m / 2
  int scheme = 0;  // scenario III only
};

std::vector<GridCell> ExpandGrid(const ScenarioSpec& spec);

// One replicate of one cell. Metrics are (method, metric, value) triples;
// method is "adrr", "rr", "laplace" or "count".
struct ReplicateResult {
  int cell = 0;
  int replicate = 0;
  int users = 0;  // as drawn (differs from the cell in scenario V)
  int items = 0;
  double B = 0;
  bool failed = false;
  std::string error;
  struct Metric {
    std::string method;
    std::string metric;
    double value;
  };
  std::vector<Metric> metrics;
};

struct CellSummary {
  int cell = 0;
  std::string method;
  std::string metric;
  int n = 0;
  double mean = 0;
  double sd = 0;  // over replicates, n - 1 denominator
  int failures = 0;
  bool flagged = false;  // more than 5% of replicates failed
};

// Least-squares fit of an error metric against 1 / sqrt(B) within one cell.
struct ScalingFit {
  int cell = 0;
  std::string metric;
  double correlation = 0;
  stats::Line line;
};

struct RankReport {
  ScenarioSpec spec;
  std::vector<GridCell> cells;
  std::vector<ReplicateResult> replicates;  // ordered by (cell, replicate)
  std::vector<CellSummary> summary;
  std::vector<ScalingFit> scaling;  // scenario II

  // Mean of (method, metric) in a cell; NaN when absent.
  double Mean(int cell, const std::string& method,
              const std::string& metric) const;
  std::vector<double> Values(int cell, const std::string& method,
                             const std::string& metric) const;

  // Writes <prefix>_tidy.csv, <prefix>_summary.csv, <prefix>_meta.txt and,
  // for scenario II, <prefix>_scaling.csv. Returns the paths written.
  std::vector<std::filesystem::path> Write(const std::filesystem::path& dir,
                                           const std::string& prefix) const;
};

// Replicate r of cell c draws everything from MakeRng(base_seed, {c, r}).
// Replicates run in parallel; results do not depend on the thread count.
// A ConvergenceError in one replicate is recorded, not rethrown.
RankReport run_scenario(const ScenarioSpec& spec);

// ---- Real data -------------------------------------------------------------

struct RealDataConfig {
  std::filesystem::path dataset;
  int replicates = 100;
  std::uint64_t base_seed = 42;
  double a_lo = 0.2;  // A ~ U(a_lo, a_hi), eps_l ~ U(A, A + width)
  double a_hi = 2.0;
  double width = 1.0;
  double lambda_c = 1.0;
};

struct RealDataReport {
  int users = 0;
  int items = 0;
  IntransitivityReport intransitivity;
  // Non-private rankings (1-based rank of each item) from the BTL fit, the
  // TM fit and the count method.
  RankPermutation truth_btl, truth_tm, truth_count;
  bool truths_agree = false;
  // Full-ranking (Kendall) errors against truth_btl, one per replicate, for
  // adrr_btl, adrr_tm, rr, laplace and count.
  std::vector<std::string> methods;
  std::vector<std::vector<double>> errors;
  int failures = 0;
  // ADRR(BTL) against each competitor.
  // A failed replicate is dropped for every method so that errors stay
  // paired.
  struct TestRow {
    std::string against;
    stats::TTest test;  // competitor minus ADRR(BTL); t > 0 favours ADRR
  };
  std::vector<TestRow> tests;

  const std::vector<double>& Errors(const std::string& method) const;
  std::vector<std::filesystem::path> Write(const std::filesystem::path& dir) const;
};

// Throws MissingDataError when the dataset file is absent.
RealDataReport real_data_pipeline(const RealDataConfig& config);

}  // namespace dprank

#endif  // DPRANK_EXPERIMENTS_H_
