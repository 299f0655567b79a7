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

#include "dprank/experiments.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

#include "dprank/baselines.h"
#include "dprank/csv_util.h"
#include "dprank/errors.h"
#include "dprank/estimator.h"

namespace dprank {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <typename T>
std::string JoinList(const std::vector<T>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ",";
    if constexpr (std::is_same_v<T, std::string>) {
      out += v[k];
    } else if constexpr (std::is_floating_point_v<T>) {
      out += csv::FormatDouble(v[k]);
    } else {
      out += std::to_string(v[k]);
    }
  }
  return out;
}

std::string Fmt(double v) {
  if (std::isnan(v)) return "nan";
  return csv::FormatDouble(v);
}

void AddRankingMetrics(ReplicateResult& out, const std::string& method,
                       const PreferenceVector& theta_hat,
                       const PreferenceVector& theta_star, int k) {
  out.metrics.push_back({method, "kendall", kendall(theta_hat, theta_star)});
  out.metrics.push_back(
      {method, "spearman", spearman_footrule(theta_hat, theta_star)});
  if (k >= 1 && k < static_cast<int>(theta_star.size())) {
    out.metrics.push_back(
        {method, "topk", topk_hamming(theta_hat, theta_star, k)});
  }
}

void AddEstimateMetrics(ReplicateResult& out, const std::string& method,
                        const Estimate& est, const PreferenceVector& theta_star,
                        int k) {
  out.metrics.push_back(
      {method, "l2", l2_error_per_item(est.theta_hat, theta_star)});
  out.metrics.push_back({method, "linf", linf_error(est.theta_hat, theta_star)});
  AddRankingMetrics(out, method, est.theta_hat, theta_star, k);
  out.metrics.push_back(
      {method, "iterations", static_cast<double>(est.iterations)});
}

ReplicateResult RunReplicate(const ScenarioSpec& spec, const GridCell& cell,
                             int rep) {
  ReplicateResult out;
  out.cell = cell.index;
  out.replicate = rep;
  Rng rng = MakeRng(spec.base_seed, {static_cast<std::uint64_t>(cell.index),
                                     static_cast<std::uint64_t>(rep)});
  int users = cell.users;
  int items = cell.items;
  int k = cell.k;
  if (spec.scenario == Scenario::kV) {
    users = std::uniform_int_distribution<int>(spec.users[0], spec.users_max)(rng);
    items = std::uniform_int_distribution<int>(spec.items[0], spec.items_max)(rng);
    k = items / 2;
  }
  out.users = users;
  out.items = items;

  const auto model = ComparisonModel::Parse(cell.model);
  const PreferenceVector theta = cell.delta > 0
                                     ? EvenlySpacedTheta(items, cell.delta)
                                     : CenteredUniformTheta(items, rng);
  const auto raw = generate(theta, model, users, spec.p, rng);
  EpsilonLaw law = spec.eps;
  if (spec.scenario == Scenario::kIII) law.scheme = cell.scheme;
  const auto profile = law.Draw(users, items, rng);
  out.B = profile.B();

  EstimatorConfig config;
  config.lambda = default_lambda(profile, spec.lambda_c);
  const auto adrr = privatize(raw, profile, Mechanism::kADRR, rng);
  std::optional<PairwiseDataset> rr, laplace;
  if (spec.scenario == Scenario::kV) {
    rr = privatize(raw, profile, Mechanism::kClassicRR, rng);
    laplace = privatize(raw, profile, Mechanism::kLaplace, rng);
  }

  try {
    AddEstimateMetrics(out, "adrr", fit(adrr, model, config), theta, k);
    if (rr) {
      AddEstimateMetrics(out, "rr", fit_classic_rr(*rr, model, config), theta, k);
      AddEstimateMetrics(out, "laplace", fit_laplace(*laplace, model, config),
                         theta, k);
      AddRankingMetrics(out, "count", count_scores(*rr).scores, theta, k);
    }
  } catch (const ConvergenceError& e) {
    out.failed = true;
    out.error = e.what();
    out.metrics.clear();
  }
  return out;
}

std::string CellUsers(const ScenarioSpec& spec, const GridCell& cell) {
  if (spec.scenario == Scenario::kV) {
    return std::to_string(spec.users[0]) + "-" + std::to_string(spec.users_max);
  }
  return std::to_string(cell.users);
}

std::string CellItems(const ScenarioSpec& spec, const GridCell& cell) {
  if (spec.scenario == Scenario::kV) {
    return std::to_string(spec.items[0]) + "-" + std::to_string(spec.items_max);
  }
  return std::to_string(cell.items);
}

std::string CellColumns(const ScenarioSpec& spec, const GridCell& cell) {
  return std::to_string(ScenarioNumber(spec.scenario)) + "," +
         std::to_string(cell.index) + "," + cell.model + "," +
         CellUsers(spec, cell) + "," + CellItems(spec, cell) + "," +
         Fmt(spec.p) + "," + Fmt(cell.delta) + "," + std::to_string(cell.k) +
         "," + std::to_string(cell.scheme);
}

constexpr const char* kCellHeader =
    "scenario,cell,model,users,items,p,delta,k,scheme";

}  // namespace

Scenario ScenarioFromNumber(int n) {
  if (n < 1 || n > 5) {
    throw ValidationError("scenario must be 1..5, got " + std::to_string(n));
  }
  return static_cast<Scenario>(n);
}

int ScenarioNumber(Scenario s) { return static_cast<int>(s); }

double SchemeEpsilon(int scheme, int items, int users) {
  auto f = [scheme](double n) {
    const double log2 = std::log(n) * std::log(n);
    switch (scheme) {
      case 1: return log2 / std::sqrt(n);
      case 2: return 1.0 / std::sqrt(n);
      case 3: return 1.0 / (log2 * std::sqrt(n));
    }
    throw ValidationError("privacy scheme must be 1, 2 or 3");
  };
  if (items < 2 || users < 1) throw ValidationError("need m >= 2 and L >= 1");
  return f(static_cast<double>(items) * users) / f(10.0 * 100.0);
}

std::string EpsilonLaw::Describe() const {
  switch (kind) {
    case Kind::kUniform:
      return "U(" + Fmt(lo) + "," + Fmt(hi) + ")";
    case Kind::kShifted:
      return "U(A,A+" + Fmt(width) + ") with A~U(" + Fmt(lo) + "," + Fmt(hi) + ")";
    case Kind::kScheme:
      return "scheme " + std::to_string(scheme) + " anchored at eps(m=10,L=100)=1";
  }
  return "";
}

PrivacyProfile EpsilonLaw::Draw(int users, int items, Rng& rng) const {
  switch (kind) {
    case Kind::kUniform:
      return PrivacyProfile::UniformDraw(users, lo, hi, rng);
    case Kind::kShifted: {
      const double a = std::uniform_real_distribution<double>(lo, hi)(rng);
      return PrivacyProfile::UniformDraw(users, a, a + width, rng);
    }
    case Kind::kScheme:
      return PrivacyProfile::Constant(users, SchemeEpsilon(scheme, items, users));
  }
  throw ValidationError("unknown privacy law");
}

ScenarioSpec ScenarioSpec::Defaults(Scenario s) {
  ScenarioSpec spec;
  spec.scenario = s;
  switch (s) {
    case Scenario::kI:
      spec.users = {100, 200, 300, 400};
      spec.items = {10, 20, 30};
      break;
    case Scenario::kII:
      spec.users = {200};
      spec.items = {20};
      spec.p = 1.0;
      spec.eps = {EpsilonLaw::Kind::kShifted, 0.5, 2.5, 0.5, 1};
      break;
    case Scenario::kIII:
      spec.users = {100, 200, 400, 800};
      spec.items = {10, 20, 30};
      spec.schemes = {1, 2, 3};
      spec.eps.kind = EpsilonLaw::Kind::kScheme;
      break;
    case Scenario::kIV:
      spec.users = {100, 200, 300};
      spec.items = {10, 20, 30};
      spec.deltas = {0.05, 0.1, 0.15};
      break;
    case Scenario::kV:
      spec.users = {150};
      spec.users_max = 400;
      spec.items = {10};
      spec.items_max = 30;
      spec.eps = {EpsilonLaw::Kind::kUniform, 0.2, 2.0, 0.5, 1};
      break;
  }
  return spec;
}

void ScenarioSpec::Apply(Config& config) {
  if (auto v = config.TakeList("models")) models = *v;
  if (auto v = config.TakeIntList("users")) users = *v;
  if (auto v = config.TakeIntList("items")) items = *v;
  if (auto v = config.TakeDoubleList("deltas")) deltas = *v;
  if (auto v = config.TakeIntList("schemes")) schemes = *v;
  if (auto v = config.TakeInt("users_max")) users_max = static_cast<int>(*v);
  if (auto v = config.TakeInt("items_max")) items_max = static_cast<int>(*v);
  if (auto v = config.TakeDouble("p")) p = *v;
  if (auto v = config.Take("eps_law")) {
    if (*v == "uniform") {
      eps.kind = EpsilonLaw::Kind::kUniform;
    } else if (*v == "shifted") {
      eps.kind = EpsilonLaw::Kind::kShifted;
    } else if (*v == "scheme") {
      eps.kind = EpsilonLaw::Kind::kScheme;
    } else {
      throw ValidationError("eps_law must be uniform, shifted or scheme");
    }
  }
  if (auto v = config.TakeDouble("eps_lo")) eps.lo = *v;
  if (auto v = config.TakeDouble("eps_hi")) eps.hi = *v;
  if (auto v = config.TakeDouble("eps_width")) eps.width = *v;
  if (auto v = config.TakeDouble("lambda_c")) lambda_c = *v;
  if (auto v = config.TakeInt("replicates")) replicates = static_cast<int>(*v);
  if (auto v = config.TakeUnsigned("seed")) base_seed = *v;
}

void ScenarioSpec::Validate() const {
  if (replicates < 1) throw ValidationError("replicates must be >= 1");
  if (models.empty() || users.empty() || items.empty() || deltas.empty()) {
    throw ValidationError("scenario grid is empty");
  }
  for (const auto& m : models) ComparisonModel::Parse(m);
  for (int l : users) {
    if (l < 1) throw ValidationError("users must be >= 1");
  }
  for (int m : items) {
    if (m < 2) throw ValidationError("items must be >= 2");
  }
  for (double d : deltas) {
    if (!(d >= 0) || !std::isfinite(d)) {
      throw ValidationError("deltas must be finite and >= 0");
    }
  }
  if (!(p > 0 && p <= 1)) throw ValidationError("p must lie in (0, 1]");
  if (!(lambda_c > 0)) throw ValidationError("lambda_c must be > 0");
  switch (eps.kind) {
    case EpsilonLaw::Kind::kUniform:
    case EpsilonLaw::Kind::kShifted:
      if (!(eps.lo > 0 && eps.hi >= eps.lo && std::isfinite(eps.hi))) {
        throw ValidationError("eps law needs 0 < eps_lo <= eps_hi");
      }
      if (eps.kind == EpsilonLaw::Kind::kShifted && !(eps.width >= 0)) {
        throw ValidationError("eps_width must be >= 0");
      }
      break;
    case EpsilonLaw::Kind::kScheme:
      if (schemes.empty()) throw ValidationError("scheme list is empty");
      for (int s : schemes) {
        if (s < 1 || s > 3) throw ValidationError("schemes must be 1, 2 or 3");
      }
      break;
  }
  if (scenario == Scenario::kV) {
    if (users_max < users[0] || items_max < items[0]) {
      throw ValidationError(
          "scenario 5 needs users_max >= users and items_max >= items");
    }
  }
}

std::vector<GridCell> ExpandGrid(const ScenarioSpec& spec) {
  std::vector<GridCell> cells;
  if (spec.scenario == Scenario::kV) {
    for (const auto& model : spec.models) {
      GridCell c;
      c.index = static_cast<int>(cells.size());
      c.model = model;
      c.users = spec.users[0];
      c.items = spec.items[0];
      cells.push_back(c);
    }
    return cells;
  }
  const bool by_scheme = spec.eps.kind == EpsilonLaw::Kind::kScheme;
  const std::vector<int> schemes =
      by_scheme ? spec.schemes : std::vector<int>{0};
  for (const auto& model : spec.models) {
    for (int scheme : schemes) {
      for (int users : spec.users) {
        for (int items : spec.items) {
          for (double delta : spec.deltas) {
            GridCell c;
            c.index = static_cast<int>(cells.size());
            c.model = model;
            c.users = users;
            c.items = items;
            c.delta = delta;
            c.k = items / 2;
            c.scheme = scheme;
            cells.push_back(c);
          }
        }
      }
    }
  }
  return cells;
}

RankReport run_scenario(const ScenarioSpec& spec) {
  spec.Validate();
  RankReport report;
  report.spec = spec;
  report.cells = ExpandGrid(spec);
  const std::size_t reps = spec.replicates;
  const auto n = static_cast<std::ptrdiff_t>(report.cells.size() * reps);
  report.replicates.resize(n);
  std::vector<std::exception_ptr> errors(n);

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    const auto& cell = report.cells[t / reps];
    try {
      report.replicates[t] = RunReplicate(spec, cell, static_cast<int>(t % reps));
    } catch (...) {
      errors[t] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (const auto& cell : report.cells) {
    const auto begin = report.replicates.begin() + cell.index * reps;
    const auto end = begin + reps;
    int failures = 0;
    std::vector<std::pair<std::string, std::string>> keys;
    std::map<std::pair<std::string, std::string>, std::vector<double>> values;
    for (auto it = begin; it != end; ++it) {
      if (it->failed) ++failures;
      for (const auto& m : it->metrics) {
        auto key = std::make_pair(m.method, m.metric);
        if (!values.count(key)) keys.push_back(key);
        values[key].push_back(m.value);
      }
    }
    if (keys.empty()) {
      keys.push_back({"adrr", "l2"});
      values[keys[0]];
    }
    for (const auto& key : keys) {
      const auto& v = values[key];
      CellSummary s;
      s.cell = cell.index;
      s.method = key.first;
      s.metric = key.second;
      s.n = static_cast<int>(v.size());
      s.mean = v.empty() ? kNaN : stats::Mean(v);
      s.sd = v.size() < 2 ? kNaN : stats::SampleSd(v);
      s.failures = failures;
      s.flagged = failures > 0.05 * spec.replicates;
      report.summary.push_back(s);
    }

    if (spec.scenario == Scenario::kII) {
      std::vector<double> x;
      std::map<std::string, std::vector<double>> y;
      for (auto it = begin; it != end; ++it) {
        if (it->failed) continue;
        x.push_back(1.0 / std::sqrt(it->B));
        for (const auto& m : it->metrics) {
          if (m.method == "adrr" && (m.metric == "linf" || m.metric == "l2")) {
            y[m.metric].push_back(m.value);
          }
        }
      }
      for (const char* metric : {"linf", "l2"}) {
        ScalingFit fit;
        fit.cell = cell.index;
        fit.metric = metric;
        try {
          fit.correlation = stats::PearsonCorrelation(x, y[metric]);
          fit.line = stats::LeastSquaresLine(x, y[metric]);
        } catch (const ValidationError&) {
          fit.correlation = kNaN;
          fit.line = {kNaN, kNaN};
        }
        report.scaling.push_back(fit);
      }
    }
  }
  return report;
}

double RankReport::Mean(int cell, const std::string& method,
                        const std::string& metric) const {
  for (const auto& s : summary) {
    if (s.cell == cell && s.method == method && s.metric == metric) {
      return s.mean;
    }
  }
  return kNaN;
}

std::vector<double> RankReport::Values(int cell, const std::string& method,
                                       const std::string& metric) const {
  std::vector<double> out;
  for (const auto& r : replicates) {
    if (r.cell != cell) continue;
    for (const auto& m : r.metrics) {
      if (m.method == method && m.metric == metric) out.push_back(m.value);
    }
  }
  return out;
}

std::vector<std::filesystem::path> RankReport::Write(
    const std::filesystem::path& dir, const std::string& prefix) const {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;

  const auto tidy_path = dir / (prefix + "_tidy.csv");
  {
    auto out = csv::OpenForWrite(tidy_path);
    out << kCellHeader << ",replicate,drawn_users,drawn_items,B,method,metric,value\n";
    for (const auto& r : replicates) {
      const std::string head =
          CellColumns(spec, cells[r.cell]) + "," + std::to_string(r.replicate) +
          "," + std::to_string(r.users) + "," + std::to_string(r.items) + "," +
          Fmt(r.B) + ",";
      if (r.failed) out << head << "adrr,failed,1\n";
      for (const auto& m : r.metrics) {
        out << head << m.method << "," << m.metric << "," << Fmt(m.value) << "\n";
      }
    }
  }
  written.push_back(tidy_path);

  const auto summary_path = dir / (prefix + "_summary.csv");
  {
    auto out = csv::OpenForWrite(summary_path);
    out << kCellHeader << ",method,metric,n,mean,sd,failures,flagged\n";
    for (const auto& s : summary) {
      out << CellColumns(spec, cells[s.cell]) << "," << s.method << ","
          << s.metric << "," << s.n << "," << Fmt(s.mean) << "," << Fmt(s.sd)
          << "," << s.failures << "," << (s.flagged ? 1 : 0) << "\n";
    }
  }
  written.push_back(summary_path);

  if (!scaling.empty()) {
    const auto path = dir / (prefix + "_scaling.csv");
    auto out = csv::OpenForWrite(path);
    out << kCellHeader << ",metric,correlation,intercept,slope\n";
    for (const auto& f : scaling) {
      out << CellColumns(spec, cells[f.cell]) << "," << f.metric << ","
          << Fmt(f.correlation) << "," << Fmt(f.line.intercept) << ","
          << Fmt(f.line.slope) << "\n";
    }
    written.push_back(path);
  }

  const auto meta_path = dir / (prefix + "_meta.txt");
  {
    auto out = csv::OpenForWrite(meta_path);
    out << "scenario=" << ScenarioNumber(spec.scenario) << "\n"
        << "models=" << JoinList(spec.models) << "\n"
        << "users=" << JoinList(spec.users) << "\n"
        << "items=" << JoinList(spec.items) << "\n";
    if (spec.scenario == Scenario::kIV) {
      out << "deltas=" << JoinList(spec.deltas) << "\n";
    }
    if (spec.scenario == Scenario::kV) {
      out << "users_max=" << spec.users_max << "\n"
          << "items_max=" << spec.items_max << "\n";
    }
    if (spec.eps.kind == EpsilonLaw::Kind::kScheme) {
      out << "schemes=" << JoinList(spec.schemes) << "\n"
          << "scheme_anchor=eps_s(m,L)=f_s(mL)/f_s(1000) so eps_s(10,100)=1\n";
    }
    out << "p=" << Fmt(spec.p) << "\n"
        << "eps_law=" << spec.eps.Describe() << "\n"
        << "lambda=" << Fmt(spec.lambda_c) << "/(L*B)\n"
        << "replicates=" << spec.replicates << "\n"
        << "seed=" << spec.base_seed << "\n"
        << "replicate_stream=mt19937_64(DeriveSeed(seed,{cell,replicate}))\n"
        << "theta_star="
        << (spec.scenario == Scenario::kIV ? "evenly spaced with gap delta, centered"
                                           : "U(-1,1) per replicate, centered")
        << "\n";
  }
  written.push_back(meta_path);
  return written;
}

// ---- Real data -------------------------------------------------------------

const std::vector<double>& RealDataReport::Errors(const std::string& method) const {
  for (std::size_t k = 0; k < methods.size(); ++k) {
    if (methods[k] == method) return errors[k];
  }
  throw ValidationError("no method named " + method);
}

RealDataReport real_data_pipeline(const RealDataConfig& config) {
  const auto raw = load_preference_csv(config.dataset);
  if (config.replicates < 2) throw ValidationError("replicates must be >= 2");
  if (!(config.a_lo > 0 && config.a_hi >= config.a_lo && config.width >= 0)) {
    throw ValidationError("budget law needs 0 < a_lo <= a_hi and width >= 0");
  }
  RealDataReport report;
  report.users = raw.users();
  report.items = raw.items();
  report.intransitivity = intransitivity_report(raw);

  const auto btl = ComparisonModel::Btl();
  const auto tm = ComparisonModel::Tm();
  EstimatorConfig truth_config;
  truth_config.lambda = config.lambda_c / raw.users();
  const auto truth = fit(raw, btl, truth_config).theta_hat;
  report.truth_btl = rank_of(truth);
  report.truth_tm = rank_of(fit(raw, tm, truth_config).theta_hat);
  report.truth_count = count_scores(raw).ranking();
  report.truths_agree = report.truth_btl == report.truth_tm &&
                        report.truth_btl == report.truth_count;

  report.methods = {"adrr_btl", "adrr_tm", "rr", "laplace", "count"};
  const int reps = config.replicates;
  std::vector<std::vector<double>> per_rep(reps);
  std::vector<std::exception_ptr> errors(reps);
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < reps; ++r) {
    try {
      Rng rng = MakeRng(config.base_seed, {static_cast<std::uint64_t>(r)});
      const double a =
          std::uniform_real_distribution<double>(config.a_lo, config.a_hi)(rng);
      const auto profile =
          PrivacyProfile::UniformDraw(raw.users(), a, a + config.width, rng);
      const auto adrr = privatize(raw, profile, Mechanism::kADRR, rng);
      const auto rr = privatize(raw, profile, Mechanism::kClassicRR, rng);
      const auto lap = privatize(raw, profile, Mechanism::kLaplace, rng);
      EstimatorConfig cfg;
      cfg.lambda = default_lambda(profile, config.lambda_c);
      try {
        per_rep[r] = {
            kendall(fit(adrr, btl, cfg).theta_hat, truth),
            kendall(fit(adrr, tm, cfg).theta_hat, truth),
            kendall(fit_classic_rr(rr, btl, cfg).theta_hat, truth),
            kendall(fit_laplace(lap, btl, cfg).theta_hat, truth),
            kendall(count_scores(rr).scores, truth),
        };
      } catch (const ConvergenceError&) {
        per_rep[r].clear();
      }
    } catch (...) {
      errors[r] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  report.errors.assign(report.methods.size(), {});
  for (const auto& row : per_rep) {
    if (row.empty()) {
      ++report.failures;
      continue;
    }
    for (std::size_t k = 0; k < row.size(); ++k) report.errors[k].push_back(row[k]);
  }
  for (const char* other : {"rr", "laplace", "count"}) {
    RealDataReport::TestRow row{other, {kNaN, kNaN, 0}};
    try {
      row.test = stats::paired_t_test(report.Errors(other), report.Errors("adrr_btl"));
    } catch (const ValidationError&) {
    }
    report.tests.push_back(row);
  }
  return report;
}

std::vector<std::filesystem::path> RealDataReport::Write(
    const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  const auto errors_path = dir / "real_data_errors.csv";
  {
    auto out = csv::OpenForWrite(errors_path);
    out << "replicate,method,kendall\n";
    const std::size_t n = errors.empty() ? 0 : errors[0].size();
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t k = 0; k < methods.size(); ++k) {
        out << r << "," << methods[k] << "," << Fmt(errors[k][r]) << "\n";
      }
    }
  }
  const auto summary_path = dir / "real_data_summary.txt";
  {
    auto out = csv::OpenForWrite(summary_path);
    auto ranks = [](const RankPermutation& p) { return JoinList(p); };
    out << "users=" << users << "\n"
        << "items=" << items << "\n"
        << "intransitive_user_fraction=" << Fmt(intransitivity.user_fraction) << "\n"
        << "intransitive_comparison_fraction="
        << Fmt(intransitivity.comparison_fraction) << "\n"
        << "truth_btl=" << ranks(truth_btl) << "\n"
        << "truth_tm=" << ranks(truth_tm) << "\n"
        << "truth_count=" << ranks(truth_count) << "\n"
        << "truths_agree=" << (truths_agree ? 1 : 0) << "\n"
        << "failures=" << failures << "\n";
    for (std::size_t k = 0; k < methods.size(); ++k) {
      out << "mean_" << methods[k] << "=" << Fmt(stats::Mean(errors[k])) << "\n"
          << "sd_" << methods[k] << "=" << Fmt(stats::SampleSd(errors[k])) << "\n";
    }
    for (const auto& t : tests) {
      out << "t_adrr_vs_" << t.against << "=" << Fmt(t.test.t) << "\n"
          << "p_adrr_vs_" << t.against << "=" << Fmt(t.test.p) << "\n";
    }
  }
  return {errors_path, summary_path};
}

}  // namespace dprank
