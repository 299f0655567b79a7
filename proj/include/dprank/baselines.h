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

#ifndef DPRANK_BASELINES_H_
#define DPRANK_BASELINES_H_

#include <vector>

#include "dprank/dataset.h"
#include "dprank/estimator.h"
#include "dprank/ranking_metrics.h"

namespace dprank {

// Total privatized wins per item: record (l, i, j, y~) adds y~ to item i and
// 1 - y~ to item j. Raw binary data is accepted too (the non-private count).
struct CountScores {
  std::vector<double> scores;

  RankPermutation ranking() const { return rank_of(scores); }
};

CountScores count_scores(const PairwiseDataset& rr_data);

// Fits the weighted likelihood to classic RR bits as if they were raw
// comparisons (uniform weights, no debiasing).
Estimate fit_classic_rr(const PairwiseDataset& rr_data,
                        const ComparisonModel& model,
                        const EstimatorConfig& config);

// Fits Laplace-perturbed values used directly as the surrogate with uniform
// weights 1/L. The noise is mean zero, so the surrogate stays unbiased.
Estimate fit_laplace(const PairwiseDataset& laplace_data,
                     const ComparisonModel& model,
                     const EstimatorConfig& config);

// Privatizes raw data with the Laplace mechanism, then calls fit_laplace.
Estimate fit_laplace_baseline(const PairwiseDataset& raw,
                              const PrivacyProfile& profile,
                              const ComparisonModel& model,
                              const EstimatorConfig& config, Rng& rng);

}  // namespace dprank

#endif  // DPRANK_BASELINES_H_
