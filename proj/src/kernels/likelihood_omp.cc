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

#include <algorithm>
#include <vector>

#include "dprank/kernels.h"
#include "kernels/pair_terms.h"

namespace dprank::kernels::omp {

namespace {

// Below this many terms a parallel region costs more than it saves.
constexpr std::ptrdiff_t kParallelMin = 4096;

}  // namespace

double Loss(const PairStats& pairs, std::span<const double> theta,
            const ComparisonModel& model) {
  const auto n = static_cast<std::ptrdiff_t>(pairs.size());
  std::vector<double> term(n);
#pragma omp parallel for schedule(static) if (n >= kParallelMin)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    term[k] = detail::PairLoss(pairs.z[k], pairs.w[k],
                               theta[pairs.i[k]] - theta[pairs.j[k]], model);
  }
  detail::CompensatedSum total;
  for (double t : term) total.Add(t);
  return total.Value();
}

double LossGradient(const PairStats& pairs, std::span<const double> theta,
                    const ComparisonModel& model, std::span<double> grad) {
  const auto n = static_cast<std::ptrdiff_t>(pairs.size());
  std::vector<double> term(n);
  std::vector<double> slope(n);
#pragma omp parallel for schedule(static) if (n >= kParallelMin)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const double gap = theta[pairs.i[k]] - theta[pairs.j[k]];
    term[k] = detail::PairLoss(pairs.z[k], pairs.w[k], gap, model);
    slope[k] = detail::PairSlope(pairs.z[k], pairs.w[k], gap, model);
  }
  std::fill(grad.begin(), grad.end(), 0.0);
  detail::CompensatedSum total;
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    total.Add(term[k]);
    grad[pairs.i[k]] += slope[k];
    grad[pairs.j[k]] -= slope[k];
  }
  return total.Value();
}

Eigen::MatrixXd Hessian(const PairStats& pairs, std::span<const double> theta,
                        const ComparisonModel& model) {
  const auto n = static_cast<std::ptrdiff_t>(pairs.size());
  std::vector<double> curv(n);
#pragma omp parallel for schedule(static) if (n >= kParallelMin)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    curv[k] = detail::PairCurvature(pairs.z[k], pairs.w[k],
                                    theta[pairs.i[k]] - theta[pairs.j[k]],
                                    model);
  }
  const auto m = static_cast<Eigen::Index>(theta.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const int i = pairs.i[k];
    const int j = pairs.j[k];
    h(i, i) += curv[k];
    h(j, j) += curv[k];
    h(i, j) -= curv[k];
    h(j, i) -= curv[k];
  }
  return h;
}

double MixedLossGradient(std::span<const Comparison> records,
                         std::span<const double> theta,
                         std::span<const double> gamma,
                         std::span<double> grad_theta,
                         std::span<double> grad_gamma) {
  const auto n = static_cast<std::ptrdiff_t>(records.size());
  std::vector<double> term(n);
  std::vector<double> resid(n);
#pragma omp parallel for schedule(static) if (n >= kParallelMin)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto& r = records[k];
    const double s = gamma[r.user] + theta[r.i] - theta[r.j];
    term[k] = -r.value * s + detail::Softplus(s);
    resid[k] = detail::Sigmoid(s) - r.value;
  }
  std::fill(grad_theta.begin(), grad_theta.end(), 0.0);
  std::fill(grad_gamma.begin(), grad_gamma.end(), 0.0);
  detail::CompensatedSum total;
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto& r = records[k];
    total.Add(term[k]);
    grad_gamma[r.user] += resid[k];
    grad_theta[r.i] += resid[k];
    grad_theta[r.j] -= resid[k];
  }
  return total.Value();
}

}  // namespace dprank::kernels::omp
