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

#ifndef DPRANK_KERNELS_H_
#define DPRANK_KERNELS_H_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dprank/dataset.h"
#include "dprank/lst_models.h"

namespace dprank::kernels {

// Gaps are clipped to [-kGapClip, kGapClip] before log F is evaluated; the
// loss is flat (zero derivative) beyond the clip.
inline constexpr double kGapClip = 36.0;

// One user's contribution to pair (i, j): surrogate z and weight w, so that
// the record adds -[z log F(gap) + (w - z) log F(-gap)] to the loss.
struct WeightedRecord {
  std::int32_t user;
  std::int32_t i;
  std::int32_t j;
  double z;
  double w;
};

// Records summed per item pair (structure of arrays). The loss depends on
// the data only through these sums, so one pass costs O(#pairs).
struct PairStats {
  int items = 0;
  std::vector<std::int32_t> i;
  std::vector<std::int32_t> j;
  std::vector<double> z;
  std::vector<double> w;

  std::size_t size() const { return i.size(); }
};

PairStats AggregatePairs(std::span<const WeightedRecord> records, int items);

// Serial per-record implementation. Slow on purpose: it is the readable
// definition the parallel kernels are tested against.
namespace reference {

double Loss(std::span<const WeightedRecord> records,
            std::span<const double> theta, const ComparisonModel& model);
// Returns the loss and overwrites `grad` with its gradient.
double LossGradient(std::span<const WeightedRecord> records,
                    std::span<const double> theta,
                    const ComparisonModel& model, std::span<double> grad);
Eigen::MatrixXd Hessian(std::span<const WeightedRecord> records,
                        std::span<const double> theta,
                        const ComparisonModel& model);

// Mixed-effects BTL loss sum[-y s + log(1 + e^s)], s = gamma_l + theta_i -
// theta_j, over raw records. Overwrites both gradients.
double MixedLossGradient(std::span<const Comparison> records,
                         std::span<const double> theta,
                         std::span<const double> gamma,
                         std::span<double> grad_theta,
                         std::span<double> grad_gamma);

}  // namespace reference

// OpenMP kernels over aggregated pairs. Per-pair terms are evaluated in
// parallel and accumulated serially in a fixed order, so results do not
// depend on the thread count.
namespace omp {

double Loss(const PairStats& pairs, std::span<const double> theta,
            const ComparisonModel& model);
double LossGradient(const PairStats& pairs, std::span<const double> theta,
                    const ComparisonModel& model, std::span<double> grad);
Eigen::MatrixXd Hessian(const PairStats& pairs, std::span<const double> theta,
                        const ComparisonModel& model);

double MixedLossGradient(std::span<const Comparison> records,
                         std::span<const double> theta,
                         std::span<const double> gamma,
                         std::span<double> grad_theta,
                         std::span<double> grad_gamma);

}  // namespace omp

}  // namespace dprank::kernels

#endif  // DPRANK_KERNELS_H_
