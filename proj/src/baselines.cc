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

#include "dprank/baselines.h"

#include <string>

#include "dprank/errors.h"

namespace dprank {

namespace {

void ExpectKind(const PairwiseDataset& data, ValueKind kind,
                const char* what) {
  if (data.kind() != kind) {
    throw ValidationError(std::string(what) + " expects " +
                          std::string(ToString(kind)) + " records, got " +
                          std::string(ToString(data.kind())));
  }
}

}  // namespace

CountScores count_scores(const PairwiseDataset& rr_data) {
  if (rr_data.kind() != ValueKind::kRawBinary) {
    ExpectKind(rr_data, ValueKind::kRRBinary, "count method");
  }
  CountScores out{std::vector<double>(rr_data.items(), 0.0)};
  for (const auto& r : rr_data.records()) {
    out.scores[r.i] += r.value;
    out.scores[r.j] += 1.0 - r.value;
  }
  return out;
}

Estimate fit_classic_rr(const PairwiseDataset& rr_data,
                        const ComparisonModel& model,
                        const EstimatorConfig& config) {
  ExpectKind(rr_data, ValueKind::kRRBinary, "classic RR fit");
  return fit(WeightedData::Uniform(rr_data), model, config);
}

Estimate fit_laplace(const PairwiseDataset& laplace_data,
                     const ComparisonModel& model,
                     const EstimatorConfig& config) {
  ExpectKind(laplace_data, ValueKind::kLaplaceReal, "Laplace fit");
  return fit(WeightedData::Uniform(laplace_data), model, config);
}

Estimate fit_laplace_baseline(const PairwiseDataset& raw,
                              const PrivacyProfile& profile,
                              const ComparisonModel& model,
                              const EstimatorConfig& config, Rng& rng) {
  return fit_laplace(privatize(raw, profile, Mechanism::kLaplace, rng), model,
                     config);
}

}  // namespace dprank
