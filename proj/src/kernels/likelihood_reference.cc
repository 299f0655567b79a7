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
#include <map>
#include <utility>

#include "dprank/errors.h"
#include "dprank/kernels.h"
#include "kernels/pair_terms.h"

namespace dprank::kernels {

PairStats AggregatePairs(std::span<const WeightedRecord> records, int items) {
  std::map<std::pair<int, int>, std::pair<double, double>> sums;
  for (const auto& r : records) {
    if (r.i < 0 || r.j >= items || r.i >= r.j) {
      throw ValidationError("weighted record with bad item pair");
    }
    auto& s = sums[{r.i, r.j}];
    s.first += r.z;
    s.second += r.w;
  }
  PairStats out;
  out.items = items;
  out.i.reserve(sums.size());
  out.j.reserve(sums.size());
  out.z.reserve(sums.size());
  out.w.reserve(sums.size());
  for (const auto& [key, s] : sums) {
    out.i.push_back(key.first);
    out.j.push_back(key.second);
    out.z.push_back(s.first);
    out.w.push_back(s.second);
  }
  return out;
}

namespace reference {

using detail::PairCurvature;
using detail::PairLoss;
using detail::PairSlope;

double Loss(std::span<const WeightedRecord> records,
            std::span<const double> theta, const ComparisonModel& model) {
  double total = 0;
  for (const auto& r : records) {
    total += PairLoss(r.z, r.w, theta[r.i] - theta[r.j], model);
  }
  return total;
}

double LossGradient(std::span<const WeightedRecord> records,
                    std::span<const double> theta,
                    const ComparisonModel& model, std::span<double> grad) {
  std::fill(grad.begin(), grad.end(), 0.0);
  double total = 0;
  for (const auto& r : records) {
    const double gap = theta[r.i] - theta[r.j];
    total += PairLoss(r.z, r.w, gap, model);
    const double d = PairSlope(r.z, r.w, gap, model);
    grad[r.i] += d;
    grad[r.j] -= d;
  }
  return total;
}

Eigen::MatrixXd Hessian(std::span<const WeightedRecord> records,
                        std::span<const double> theta,
                        const ComparisonModel& model) {
  const auto m = static_cast<Eigen::Index>(theta.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
  for (const auto& r : records) {
    const double c = PairCurvature(r.z, r.w, theta[r.i] - theta[r.j], model);
    h(r.i, r.i) += c;
    h(r.j, r.j) += c;
    h(r.i, r.j) -= c;
    h(r.j, r.i) -= c;
  }
  return h;
}

double MixedLossGradient(std::span<const Comparison> records,
                         std::span<const double> theta,
                         std::span<const double> gamma,
                         std::span<double> grad_theta,
                         std::span<double> grad_gamma) {
  std::fill(grad_theta.begin(), grad_theta.end(), 0.0);
  std::fill(grad_gamma.begin(), grad_gamma.end(), 0.0);
  double total = 0;
  for (const auto& r : records) {
    const double s = gamma[r.user] + theta[r.i] - theta[r.j];
    total += -r.value * s + detail::Softplus(s);
    const double resid = detail::Sigmoid(s) - r.value;
    grad_gamma[r.user] += resid;
    grad_theta[r.i] += resid;
    grad_theta[r.j] -= resid;
  }
  return total;
}

}  // namespace reference
}  // namespace dprank::kernels
