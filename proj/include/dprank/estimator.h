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

#ifndef DPRANK_ESTIMATOR_H_
#define DPRANK_ESTIMATOR_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dprank/dataset.h"
#include "dprank/kernels.h"
#include "dprank/lst_models.h"
#include "dprank/privacy.h"

namespace dprank {

// Largest item count accepted by the dense Hessian diagnostic.
inline constexpr int kMaxHessianItems = 2000;

// The (z, w) form of a dataset that the weighted likelihood consumes.
class WeightedData {
 public:
  WeightedData() = default;

  // RawBinary: w = 1/L, z = y/L. DebiasedWeighted: z = stored value,
  // w = w_l from the attached profile. Other kinds are rejected.
  static WeightedData FromDataset(const PairwiseDataset& dataset);
  // z = value/L, w = 1/L for any kind. This is the plug-in used for the
  // classic-RR and Laplace baselines.
  static WeightedData Uniform(const PairwiseDataset& dataset);
  static WeightedData FromRecords(int items,
                                  std::vector<kernels::WeightedRecord> records);

  int items() const { return items_; }
  std::span<const kernels::WeightedRecord> records() const { return records_; }
  const kernels::PairStats& pairs() const { return pairs_; }
  bool empty() const { return records_.empty(); }

 private:
  int items_ = 0;
  std::vector<kernels::WeightedRecord> records_;
  kernels::PairStats pairs_;
};

struct EstimatorConfig {
  double lambda = 0.0;
  // Fixed step size; nullopt selects backtracking (Armijo) line search.
  std::optional<double> step_size;
  double grad_tol = 1e-8;  // on the infinity norm of the gradient
  long max_iters = 50000;
  std::uint64_t restart_seed = 0x5eed;
  // Called after every accepted step with (iteration, objective).
  std::function<void(long, double)> on_step;
};

struct Estimate {
  PreferenceVector theta_hat;
  long iterations = 0;
  double final_grad_norm = 0;
  double objective_value = 0;
  bool restarted = false;
};

// L_lambda(theta) = L_0(theta) + lambda ||theta||^2.
double objective(std::span<const double> theta, const PairwiseDataset& dataset,
                 const ComparisonModel& model, double lambda);
double objective(std::span<const double> theta, const WeightedData& data,
                 const ComparisonModel& model, double lambda);

std::vector<double> gradient(std::span<const double> theta,
                             const PairwiseDataset& dataset,
                             const ComparisonModel& model, double lambda);
std::vector<double> gradient(std::span<const double> theta,
                             const WeightedData& data,
                             const ComparisonModel& model, double lambda);

// Gradient descent from theta = 0. Throws ConvergenceError when the tolerance
// is not met within max_iters or the line search fails twice.
Estimate fit(const PairwiseDataset& dataset, const ComparisonModel& model,
             const EstimatorConfig& config);
Estimate fit(const WeightedData& data, const ComparisonModel& model,
             const EstimatorConfig& config);

// c / (L B(eps)).
double default_lambda(const PrivacyProfile& profile, double c = 1.0);

// Smallest eigenvalue of the Hessian of L_0 restricted to the complement of
// the all-ones vector. Throws ValidationError when items > kMaxHessianItems.
double hessian_min_nonzero_eigenvalue(std::span<const double> theta,
                                      const WeightedData& data,
                                      const ComparisonModel& model);
double hessian_min_nonzero_eigenvalue(std::span<const double> theta,
                                      const PairwiseDataset& dataset,
                                      const ComparisonModel& model);

// CSV "item,theta_hat" with 1-based items.
void write_estimate_csv(const PreferenceVector& theta,
                        const std::filesystem::path& path);
PreferenceVector load_estimate_csv(const std::filesystem::path& path);

// One-line key=value summary of optimizer diagnostics.
std::string DiagnosticsLine(const Estimate& estimate);

}  // namespace dprank

#endif  // DPRANK_ESTIMATOR_H_
