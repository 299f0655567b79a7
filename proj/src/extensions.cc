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

#include "dprank/extensions.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

#include "dprank/errors.h"
#include "dprank/kernels.h"
#include "dprank/privacy.h"

namespace dprank {

namespace {

void CheckMixedInputs(std::span<const double> theta,
                      std::span<const double> gamma,
                      const PairwiseDataset& raw) {
  if (raw.kind() != ValueKind::kRawBinary) {
    throw ValidationError("mixed effects are fit on raw binary data only");
  }
  if (theta.size() != static_cast<std::size_t>(raw.items()) ||
      gamma.size() != static_cast<std::size_t>(raw.users())) {
    throw ValidationError("theta/gamma sizes do not match the dataset");
  }
}

double MixedPenalized(const PairwiseDataset& raw, double lambda,
                      std::span<const double> x, std::span<double> grad) {
  const std::size_t m = raw.items();
  const auto theta = x.first(m);
  double value = kernels::omp::MixedLossGradient(
      raw.records(), theta, x.subspan(m), grad.first(m), grad.subspan(m));
  for (std::size_t i = 0; i < m; ++i) {
    value += lambda * theta[i] * theta[i];
    grad[i] += 2.0 * lambda * theta[i];
  }
  return value;
}

double InfNorm(std::span<const double> v) {
  double n = 0;
  for (double x : v) n = std::max(n, std::abs(x));
  return n;
}

}  // namespace

MixedEffectsData generate_mixed_effects(const PreferenceVector& theta_star,
                                        int users, double p, double sigma,
                                        Rng& rng) {
  const int m = static_cast<int>(theta_star.size());
  if (!(p > 0 && p <= 1)) {
    throw ValidationError("observation probability p must lie in (0, 1]");
  }
  if (users < 1 || m < 2) throw ValidationError("need L >= 1 and m >= 2");
  if (!(sigma >= 0)) throw ValidationError("sigma must be >= 0");

  MixedEffectsData out;
  out.gamma_star.resize(users);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double& g : out.gamma_star) g = sigma * normal(rng);

  const auto btl = ComparisonModel::Btl();
  const std::uint64_t base = rng();
  std::vector<Comparison> records;
  for (int l = 0; l < users; ++l) {
    Rng r = MakeRng(base, {static_cast<std::uint64_t>(l)});
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        if (p < 1 && u(r) >= p) continue;
        const double prob =
            btl.cdf(out.gamma_star[l] + theta_star[i] - theta_star[j]);
        records.push_back({l, i, j, u(r) < prob ? 1.0 : 0.0});
      }
    }
  }
  out.raw = PairwiseDataset(m, users, ValueKind::kRawBinary, std::move(records));
  return out;
}

double mixed_objective(std::span<const double> theta,
                       std::span<const double> gamma,
                       const PairwiseDataset& raw, double lambda) {
  CheckMixedInputs(theta, gamma, raw);
  std::vector<double> x(theta.begin(), theta.end());
  x.insert(x.end(), gamma.begin(), gamma.end());
  std::vector<double> grad(x.size());
  return MixedPenalized(raw, lambda, x, grad);
}

std::vector<double> mixed_gradient(std::span<const double> theta,
                                   std::span<const double> gamma,
                                   const PairwiseDataset& raw, double lambda) {
  CheckMixedInputs(theta, gamma, raw);
  std::vector<double> x(theta.begin(), theta.end());
  x.insert(x.end(), gamma.begin(), gamma.end());
  std::vector<double> grad(x.size());
  MixedPenalized(raw, lambda, x, grad);
  return grad;
}

MixedEffectsEstimate fit_mixed_effects(const PairwiseDataset& raw,
                                       double lambda,
                                       const EstimatorConfig& config) {
  if (raw.kind() != ValueKind::kRawBinary) {
    throw ValidationError("mixed effects are fit on raw binary data only");
  }
  if (raw.empty()) throw ValidationError("cannot fit an empty dataset");
  if (!(lambda >= 0)) throw ValidationError("lambda must be >= 0");
  const std::size_t m = raw.items();
  const std::size_t n = m + raw.users();

  // A user whose answers are all 1 (or all 0) pushes gamma_l to +inf (-inf).
  std::vector<std::int64_t> ones(raw.users(), 0), seen(raw.users(), 0);
  for (const auto& r : raw.records()) {
    ones[r.user] += r.value != 0.0;
    ++seen[r.user];
  }
  for (int l = 0; l < raw.users(); ++l) {
    if (seen[l] > 0 && (ones[l] == 0 || ones[l] == seen[l])) {
      throw ConvergenceError(
          "user " + std::to_string(l + 1) +
              " answered every comparison the same way; the user effect has "
              "no finite estimate",
          std::numeric_limits<double>::infinity(), 0);
    }
  }

  // Diagonal curvature bound: every record contributes at most 1/4.
  std::vector<double> diag(n, 0.0);
  for (const auto& r : raw.records()) {
    diag[r.i] += 0.25;
    diag[r.j] += 0.25;
    diag[m + r.user] += 0.25;
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (k < m) diag[k] += 2.0 * lambda;
    if (diag[k] == 0) diag[k] = 1.0;
  }

  constexpr double kArmijo = 0.3;
  std::vector<double> x(n, 0.0), grad(n), dir(n), trial(n), trial_grad(n);
  double f = MixedPenalized(raw, lambda, x, grad);
  double alpha = 1.0;
  long iter = 0;
  for (;; ++iter) {
    const double gnorm = InfNorm(grad);
    if (gnorm <= config.grad_tol) break;
    if (iter >= config.max_iters) {
      throw ConvergenceError("mixed-effects fit did not converge in " +
                                 std::to_string(config.max_iters) + " iterations",
                             gnorm, iter);
    }
    double slope = 0;
    for (std::size_t k = 0; k < n; ++k) {
      dir[k] = -grad[k] / diag[k];
      slope += grad[k] * dir[k];
    }
    double ft = 0;
    while (true) {
      for (std::size_t k = 0; k < n; ++k) trial[k] = x[k] + alpha * dir[k];
      ft = MixedPenalized(raw, lambda, trial, trial_grad);
      // Same rounding-level switch as the main estimator, with the gradient
      // measured in the preconditioner's metric.
      const double noise = 1024 * std::numeric_limits<double>::epsilon() * std::abs(f);
      if (-alpha * slope > noise) {
        if (ft <= f + kArmijo * alpha * slope) break;
      } else if (ft <= f + noise) {
        double trial_norm = 0;
        for (std::size_t k = 0; k < n; ++k) {
          trial_norm += trial_grad[k] * trial_grad[k] / diag[k];
        }
        if (trial_norm < -slope) break;
      }
      alpha *= 0.5;
      if (alpha < 1e-30) {
        throw ConvergenceError("mixed-effects line search failed", gnorm, iter);
      }
    }
    x.swap(trial);
    grad.swap(trial_grad);
    f = ft;
    if (config.on_step) config.on_step(iter + 1, f);
    alpha = std::min(alpha * 2.0, 1e6);
  }

  MixedEffectsEstimate est;
  est.theta_hat.assign(x.begin(), x.begin() + m);
  est.gamma_hat.assign(x.begin() + m, x.end());
  est.iterations = iter;
  est.final_grad_norm = InfNorm(grad);
  const std::size_t users = est.gamma_hat.size();
  if (users >= 2) {
    const double mean =
        std::accumulate(est.gamma_hat.begin(), est.gamma_hat.end(), 0.0) / users;
    double ss = 0;
    for (double g : est.gamma_hat) ss += (g - mean) * (g - mean);
    est.sigma_hat = std::sqrt(ss / (users - 1));
  }
  return est;
}

ModelSelection select_model(const WeightedData& data,
                            std::span<const ComparisonModel> candidates,
                            const EstimatorConfig& config) {
  if (candidates.empty()) throw ValidationError("no candidate models given");
  ModelSelection out;
  out.candidates.assign(candidates.begin(), candidates.end());
  for (const auto& model : candidates) {
    Estimate est;
    try {
      est = fit(data, model, config);
    } catch (const ConvergenceError& e) {
      throw ConvergenceError("fit failed for candidate " +
                                 std::string(model.name()) + ": " + e.what(),
                             e.final_grad_norm(), e.iterations());
    }
    out.losses.push_back(objective(est.theta_hat, data, model, 0.0));
  }
  for (std::size_t k = 1; k < out.losses.size(); ++k) {
    if (out.losses[k] < out.losses[out.chosen]) out.chosen = k;
  }
  return out;
}

ModelSelection select_model(const PairwiseDataset& dataset,
                            std::span<const ComparisonModel> candidates,
                            const EstimatorConfig& config) {
  return select_model(WeightedData::FromDataset(dataset), candidates, config);
}

BudgetCheck budget_check(std::span<const double> epsilons, double alpha) {
  if (!(alpha > 0)) throw DomainError("budget threshold alpha must be > 0");
  BudgetCheck out;
  for (double e : epsilons) {
    if (std::isnan(e) || !(e > 0)) {
      throw DomainError("budget check needs every eps_l > 0");
    }
    const double t = retention(e);
    out.G += t * t;
  }
  out.satisfied = out.G > alpha;
  return out;
}

}  // namespace dprank
