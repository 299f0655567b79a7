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

#ifndef DPRANK_EXTENSIONS_H_
#define DPRANK_EXTENSIONS_H_

#include <span>
#include <vector>

#include "dprank/dataset.h"
#include "dprank/estimator.h"
#include "dprank/lst_models.h"

namespace dprank {

// ---- Mixed-effects BTL -----------------------------------------------------
//
// P(y = 1) = logistic(gamma_l + theta_i - theta_j) with a per-user effect
// gamma_l. theta and gamma are fit jointly, then sigma is estimated from
// gamma_hat.

struct MixedEffectsEstimate {
  PreferenceVector theta_hat;
  std::vector<double> gamma_hat;
  double sigma_hat = 0;  // sample sd of gamma_hat, L - 1 denominator
  long iterations = 0;
  double final_grad_norm = 0;
};

// Raw data from the mixed-effects model; gamma_star holds the drawn effects.
struct MixedEffectsData {
  PairwiseDataset raw;
  std::vector<double> gamma_star;
};

MixedEffectsData generate_mixed_effects(const PreferenceVector& theta_star,
                                        int users, double p, double sigma,
                                        Rng& rng);

// sum[-y s + log(1 + e^s)] + lambda ||theta||^2. gamma is not penalized.
double mixed_objective(std::span<const double> theta,
                       std::span<const double> gamma,
                       const PairwiseDataset& raw, double lambda);
// Gradient as (theta part, gamma part) concatenated.
std::vector<double> mixed_gradient(std::span<const double> theta,
                                   std::span<const double> gamma,
                                   const PairwiseDataset& raw, double lambda);

// Descent preconditioned by the count-based diagonal curvature
// (n_i / 4 + 2 lambda for items, n_l / 4 for users). Uses grad_tol,
// max_iters and on_step from the config; step_size is ignored.
MixedEffectsEstimate fit_mixed_effects(const PairwiseDataset& raw,
                                       double lambda,
                                       const EstimatorConfig& config);

// ---- Model selection -------------------------------------------------------

struct ModelSelection {
  std::size_t chosen = 0;
  std::vector<double> losses;  // unpenalized L_0 at each candidate's fit
  ComparisonModel model() const { return candidates[chosen]; }
  std::vector<ComparisonModel> candidates;
};

// Fits every candidate and picks the smallest unpenalized loss; ties go to
// the earlier candidate. A failed fit raises ConvergenceError naming it.
ModelSelection select_model(const WeightedData& data,
                            std::span<const ComparisonModel> candidates,
                            const EstimatorConfig& config);
ModelSelection select_model(const PairwiseDataset& dataset,
                            std::span<const ComparisonModel> candidates,
                            const EstimatorConfig& config);

// ---- Budget guidance -------------------------------------------------------

struct BudgetCheck {
  double G = 0;
  bool satisfied = false;
};

// G = sum_l tanh(eps_l / 2)^2 compared against the threshold alpha.
BudgetCheck budget_check(std::span<const double> epsilons, double alpha);

}  // namespace dprank

#endif  // DPRANK_EXTENSIONS_H_
