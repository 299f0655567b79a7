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

// dprank: command-line front end for private rank aggregation.
//
// Exit codes: 0 success, 1 validation error, 2 convergence failure,
// 3 missing data.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dprank/baselines.h"
#include "dprank/config.h"
#include "dprank/csv_util.h"
#include "dprank/dataset.h"
#include "dprank/errors.h"
#include "dprank/estimator.h"
#include "dprank/experiments.h"
#include "dprank/extensions.h"
#include "dprank/ranking_metrics.h"

namespace fs = std::filesystem;
using namespace dprank;

namespace {

enum ExitCode { kOk = 0, kValidation = 1, kConvergence = 2, kMissingData = 3 };

struct Globals {
  std::uint64_t seed = 42;
  std::optional<int> replicates;
  std::string model = "btl";
  fs::path out = "out";
  std::string config_path;
  Config config;
};

std::string F(double v) { return csv::FormatDouble(v); }

// Flags win over config keys; config keys win over defaults.
template <typename T, typename U>
void FromConfig(std::optional<U> value, const CLI::Option* flag, T& target) {
  if (value && (flag == nullptr || flag->count() == 0)) {
    target = static_cast<T>(*value);
  }
}

PrivacyProfile ProfileOrDraw(const std::string& path, double lo, double hi,
                             int users, Rng& rng) {
  if (!path.empty()) {
    auto profile = load_profile_csv(path);
    if (static_cast<int>(profile.size()) != users) {
      throw ValidationError("profile has " + std::to_string(profile.size()) +
                            " users, data has " + std::to_string(users));
    }
    return profile;
  }
  return PrivacyProfile::UniformDraw(users, lo, hi, rng);
}

double LambdaFor(const PairwiseDataset& data, std::optional<double> lambda,
                 double lambda_c) {
  if (lambda) {
    if (!(*lambda >= 0)) throw ValidationError("--lambda must be >= 0");
    return *lambda;
  }
  if (data.profile()) return default_lambda(*data.profile(), lambda_c);
  return lambda_c / data.users();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private rank aggregation from pairwise comparisons"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  auto* seed_opt = app.add_option("--seed", g.seed, "Base RNG seed")->default_val(42);
  auto* reps_opt = app.add_option("--replicates", g.replicates, "Replicate count");
  auto* model_opt = app.add_option("--model", g.model,
                                   "Comparison model: btl, tm or dt (simulate accepts a comma list)")
                        ->default_val("btl");
  auto* out_opt = app.add_option("--out", g.out, "Output directory")->default_val("out");
  app.add_option("--config", g.config_path, "key=value configuration file")
      ->check(CLI::ExistingFile);

  // generate
  auto* gen = app.add_subcommand("generate", "Draw theta* and a raw comparison dataset");
  int gen_items = 10, gen_users = 100;
  double gen_p = 1.0, gen_delta = 0.0;
  std::string gen_theta;
  auto* gen_items_opt = gen->add_option("--items", gen_items, "Number of items m");
  auto* gen_users_opt = gen->add_option("--users", gen_users, "Number of users L");
  auto* gen_p_opt = gen->add_option("--p", gen_p, "Observation probability");
  auto* gen_delta_opt = gen->add_option("--delta", gen_delta,
                                        "Evenly spaced theta with this gap (0: U(-1,1))");
  gen->add_option("--theta", gen_theta, "Use theta from an item,theta_hat CSV");

  // privatize
  auto* priv = app.add_subcommand("privatize", "Apply a local privacy mechanism");
  std::string priv_data, priv_profile, priv_mech = "adrr";
  double priv_lo = 1.0, priv_hi = 5.0;
  priv->add_option("--data", priv_data, "Raw dataset CSV")->required();
  priv->add_option("--mechanism", priv_mech, "adrr, rr or laplace");
  priv->add_option("--profile", priv_profile, "user_id,epsilon CSV");
  auto* priv_lo_opt = priv->add_option("--eps-lo", priv_lo, "Lower end of U(lo, hi) budgets");
  auto* priv_hi_opt = priv->add_option("--eps-hi", priv_hi, "Upper end of U(lo, hi) budgets");

  // fit
  auto* fitc = app.add_subcommand("fit", "Estimate theta from a dataset");
  std::string fit_data, fit_profile;
  std::optional<double> fit_lambda;
  double fit_lambda_c = 1.0;
  fitc->add_option("--data", fit_data, "Dataset CSV")->required();
  fitc->add_option("--profile", fit_profile, "user_id,epsilon CSV used to privatize");
  fitc->add_option("--lambda", fit_lambda, "Penalty (default lambda_c / (L B))");
  fitc->add_option("--lambda-c", fit_lambda_c, "Penalty constant c");

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "Compare an estimate with the truth");
  std::string eval_est, eval_truth;
  int eval_k = 0;
  eval->add_option("--estimate", eval_est, "item,theta_hat CSV")->required();
  eval->add_option("--truth", eval_truth, "item,theta_hat CSV of theta*")->required();
  eval->add_option("--k", eval_k, "Top-K size (default m/2)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run a simulation scenario");
  int sim_scenario = 1;
  sim->add_option("--scenario", sim_scenario, "Scenario 1..5")->required()->check(CLI::Range(1, 5));

  // real-data
  auto* real = app.add_subcommand("real-data", "Run the car-preference comparison");
  std::string real_path = "data/car_preferences.csv";
  auto* real_path_opt = real->add_option("--data", real_path, "Normalized preference CSV");

  // select-model
  auto* sel = app.add_subcommand("select-model", "Pick the LST model with the smallest loss");
  std::string sel_data, sel_profile;
  double sel_lambda_c = 1.0;
  sel->add_option("--data", sel_data, "Raw or ADRR dataset CSV")->required();
  sel->add_option("--profile", sel_profile, "Profile for ADRR data");
  sel->add_option("--lambda-c", sel_lambda_c, "Penalty constant c");

  // budget
  auto* bud = app.add_subcommand("budget", "Check G(eps) against a threshold alpha");
  std::optional<double> bud_alpha;
  std::string bud_profile;
  std::vector<double> bud_eps;
  bud->add_option("--alpha", bud_alpha, "Threshold alpha");
  bud->add_option("--profile", bud_profile, "user_id,epsilon CSV");
  bud->add_option("--eps", bud_eps, "Budgets, space or comma separated")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }

  try {
    if (!g.config_path.empty()) g.config = Config::Load(g.config_path);
    Config& cfg = g.config;
    FromConfig(cfg.TakeUnsigned("seed"), seed_opt, g.seed);
    if (auto v = cfg.TakeInt("replicates"); v && reps_opt->count() == 0) {
      g.replicates = static_cast<int>(*v);
    }
    const bool model_set = model_opt->count() > 0 || cfg.Has("model");
    FromConfig(cfg.Take("model"), model_opt, g.model);
    if (auto v = cfg.Take("out"); v && out_opt->count() == 0) g.out = *v;
    if (g.replicates && *g.replicates < 1) {
      throw ValidationError("--replicates must be >= 1");
    }

    if (*gen) {
      FromConfig(cfg.TakeInt("items"), gen_items_opt, gen_items);
      FromConfig(cfg.TakeInt("users"), gen_users_opt, gen_users);
      FromConfig(cfg.TakeDouble("p"), gen_p_opt, gen_p);
      FromConfig(cfg.TakeDouble("delta"), gen_delta_opt, gen_delta);
      cfg.Finish();
      const auto model = ComparisonModel::Parse(g.model);
      Rng rng = MakeRng(g.seed);
      PreferenceVector theta;
      if (!gen_theta.empty()) {
        theta = load_estimate_csv(gen_theta);
      } else if (gen_delta > 0) {
        theta = EvenlySpacedTheta(gen_items, gen_delta);
      } else {
        if (gen_items < 2) throw ValidationError("--items must be >= 2");
        theta = CenteredUniformTheta(gen_items, rng);
      }
      const auto raw = generate(theta, model, gen_users, gen_p, rng);
      fs::create_directories(g.out);
      write_csv(raw, g.out / "raw.csv");
      write_estimate_csv(theta, g.out / "theta_star.csv");
      std::cout << "items=" << raw.items() << "\nusers=" << raw.users()
                << "\nrecords=" << raw.size() << "\nmodel=" << model.name()
                << "\ndata=" << (g.out / "raw.csv").string()
                << "\ntheta=" << (g.out / "theta_star.csv").string() << "\n";
    } else if (*priv) {
      FromConfig(cfg.TakeDouble("eps_lo"), priv_lo_opt, priv_lo);
      FromConfig(cfg.TakeDouble("eps_hi"), priv_hi_opt, priv_hi);
      cfg.Finish();
      const auto raw = load_csv(priv_data);
      const auto mech = ParseMechanism(priv_mech);
      Rng rng = MakeRng(g.seed);
      const auto profile = ProfileOrDraw(priv_profile, priv_lo, priv_hi, raw.users(), rng);
      const auto out = privatize(raw, profile, mech, rng);
      fs::create_directories(g.out);
      write_csv(out, g.out / "private.csv");
      write_profile_csv(profile, g.out / "profile.csv");
      std::cout << "mechanism=" << ToString(mech) << "\nrecords=" << out.size()
                << "\nB=" << F(profile.B()) << "\nG=" << F(profile.G())
                << "\ncentral_epsilon="
                << F(central_dp_epsilon(profile, raw.CountsPerUser()))
                << "\ndata=" << (g.out / "private.csv").string()
                << "\nprofile=" << (g.out / "profile.csv").string() << "\n";
    } else if (*fitc) {
      cfg.Finish();
      auto data = load_csv(fit_data);
      if (!fit_profile.empty()) {
        auto profile = load_profile_csv(fit_profile);
        if (static_cast<int>(profile.size()) < data.users()) {
          throw ValidationError("profile covers fewer users than the data");
        }
        data = load_csv(fit_data, data.items(), static_cast<int>(profile.size()))
                   .WithProfile(std::move(profile));
      }
      const auto model = ComparisonModel::Parse(g.model);
      EstimatorConfig ec;
      ec.lambda = LambdaFor(data, fit_lambda, fit_lambda_c);
      Estimate est;
      switch (data.kind()) {
        case ValueKind::kRRBinary: est = fit_classic_rr(data, model, ec); break;
        case ValueKind::kLaplaceReal: est = fit_laplace(data, model, ec); break;
        default: est = fit(data, model, ec); break;
      }
      fs::create_directories(g.out);
      write_estimate_csv(est.theta_hat, g.out / "theta_hat.csv");
      std::cout << "model=" << model.name() << "\nkind=" << ToString(data.kind())
                << "\nlambda=" << F(ec.lambda) << "\n"
                << DiagnosticsLine(est) << "\nestimate="
                << (g.out / "theta_hat.csv").string() << "\n";
    } else if (*eval) {
      cfg.Finish();
      const auto est = load_estimate_csv(eval_est);
      const auto truth = load_estimate_csv(eval_truth);
      if (est.size() != truth.size()) {
        throw ValidationError("estimate and truth have different item counts");
      }
      const int k = eval_k > 0 ? eval_k : static_cast<int>(truth.size()) / 2;
      std::cout << "l2=" << F(l2_error_per_item(est, truth))
                << "\nlinf=" << F(linf_error(est, truth))
                << "\nkendall=" << F(kendall(est, truth))
                << "\nspearman=" << F(spearman_footrule(est, truth))
                << "\nk=" << k << "\ntopk=" << F(topk_hamming(est, truth, k)) << "\n";
    } else if (*sim) {
      auto spec = ScenarioSpec::Defaults(ScenarioFromNumber(sim_scenario));
      spec.base_seed = g.seed;
      if (model_set) cfg.Set("models", g.model);
      spec.Apply(cfg);
      if (seed_opt->count() > 0) spec.base_seed = g.seed;
      if (g.replicates) spec.replicates = *g.replicates;
      cfg.Finish();
      const auto report = run_scenario(spec);
      const auto paths =
          report.Write(g.out, "scenario" + std::to_string(sim_scenario));
      int failures = 0, flagged = 0;
      for (const auto& r : report.replicates) failures += r.failed;
      for (const auto& s : report.summary) flagged += s.flagged;
      std::cout << "scenario=" << sim_scenario << "\ncells=" << report.cells.size()
                << "\nreplicates=" << spec.replicates << "\nfailures=" << failures
                << "\nflagged_rows=" << flagged << "\n";
      for (const auto& f : report.scaling) {
        std::cout << "correlation_" << f.metric << "_cell" << f.cell << "="
                  << F(f.correlation) << "\n";
      }
      for (const auto& p : paths) std::cout << "wrote=" << p.string() << "\n";
    } else if (*real) {
      RealDataConfig rc;
      FromConfig(cfg.Take("data"), real_path_opt, real_path);
      if (auto v = cfg.TakeDouble("a_lo")) rc.a_lo = *v;
      if (auto v = cfg.TakeDouble("a_hi")) rc.a_hi = *v;
      if (auto v = cfg.TakeDouble("eps_width")) rc.width = *v;
      if (auto v = cfg.TakeDouble("lambda_c")) rc.lambda_c = *v;
      cfg.Finish();
      rc.dataset = real_path;
      rc.base_seed = g.seed;
      if (g.replicates) rc.replicates = *g.replicates;
      const auto report = real_data_pipeline(rc);
      const auto paths = report.Write(g.out);
      std::cout << "truths_agree=" << (report.truths_agree ? 1 : 0) << "\n";
      for (std::size_t k = 0; k < report.methods.size(); ++k) {
        std::cout << "mean_" << report.methods[k] << "="
                  << F(stats::Mean(report.errors[k])) << "\n";
      }
      for (const auto& t : report.tests) {
        std::cout << "t_adrr_vs_" << t.against << "=" << F(t.test.t) << "\n";
      }
      for (const auto& p : paths) std::cout << "wrote=" << p.string() << "\n";
    } else if (*sel) {
      if (auto v = cfg.TakeDouble("lambda_c")) sel_lambda_c = *v;
      cfg.Finish();
      auto data = load_csv(sel_data);
      if (!sel_profile.empty()) {
        auto profile = load_profile_csv(sel_profile);
        data = load_csv(sel_data, data.items(), static_cast<int>(profile.size()))
                   .WithProfile(std::move(profile));
      }
      EstimatorConfig ec;
      ec.lambda = LambdaFor(data, std::nullopt, sel_lambda_c);
      const std::vector<ComparisonModel> candidates = {
          ComparisonModel::Btl(), ComparisonModel::Tm(), ComparisonModel::Dt()};
      const auto choice = select_model(data, candidates, ec);
      std::cout << "model=" << choice.model().name() << "\n";
      for (std::size_t k = 0; k < candidates.size(); ++k) {
        std::cout << "loss_" << candidates[k].name() << "=" << F(choice.losses[k]) << "\n";
      }
    } else if (*bud) {
      if (auto v = cfg.TakeDouble("alpha"); v && !bud_alpha) bud_alpha = *v;
      cfg.Finish();
      if (!bud_alpha) throw ValidationError("budget needs --alpha");
      std::vector<double> eps = bud_eps;
      if (!bud_profile.empty()) {
        const auto profile = load_profile_csv(bud_profile);
        eps.insert(eps.end(), profile.epsilons().begin(), profile.epsilons().end());
      }
      if (eps.empty()) throw ValidationError("budget needs --eps or --profile");
      const auto check = budget_check(eps, *bud_alpha);
      std::cout << "users=" << eps.size() << "\nG=" << F(check.G)
                << "\nB=" << F(check.G / eps.size()) << "\nalpha=" << F(*bud_alpha)
                << "\nsatisfied=" << (check.satisfied ? "true" : "false") << "\n";
    }
  } catch (const MissingDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMissingData;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << " (final_grad_norm="
              << e.final_grad_norm() << " iterations=" << e.iterations() << ")\n";
    return kConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kOk;
}
