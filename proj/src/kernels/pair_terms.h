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

#ifndef DPRANK_SRC_KERNELS_PAIR_TERMS_H_
#define DPRANK_SRC_KERNELS_PAIR_TERMS_H_

#include <algorithm>
#include <cmath>

#include "dprank/kernels.h"

namespace dprank::kernels::detail {

inline double Clip(double gap) {
  return std::clamp(gap, -kGapClip, kGapClip);
}

inline bool Clipped(double gap) { return std::abs(gap) > kGapClip; }

// -[z log F(gap) + (w - z) log F(-gap)]
inline double PairLoss(double z, double w, double gap,
                       const ComparisonModel& model) {
  const double x = Clip(gap);
  return -(z * model.log_cdf(x) + (w - z) * model.log_cdf(-x));
}

// d/dgap of PairLoss.
inline double PairSlope(double z, double w, double gap,
                        const ComparisonModel& model) {
  if (Clipped(gap)) return 0.0;
  return -z * model.g(gap) + (w - z) * model.g(-gap);
}

// d^2/dgap^2 of PairLoss.
inline double PairCurvature(double z, double w, double gap,
                            const ComparisonModel& model) {
  if (Clipped(gap)) return 0.0;
  return -z * model.g_prime(gap) - (w - z) * model.g_prime(-gap);
}

// Neumaier compensated sum. Objectives here add up 1e5+ terms and the line
// search compares values whose difference is near the rounding level.
class CompensatedSum {
 public:
  void Add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double Value() const { return sum_ + comp_; }

 private:
  double sum_ = 0;
  double comp_ = 0;
};

inline double Softplus(double s) {
  return s > 0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s));
}

inline double Sigmoid(double s) {
  if (s >= 0) return 1.0 / (1.0 + std::exp(-s));
  const double e = std::exp(s);
  return e / (1.0 + e);
}

}  // namespace dprank::kernels::detail

#endif  // DPRANK_SRC_KERNELS_PAIR_TERMS_H_
