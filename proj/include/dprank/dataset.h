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

#ifndef DPRANK_DATASET_H_
#define DPRANK_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dprank/lst_models.h"
#include "dprank/privacy.h"
#include "dprank/rng.h"

namespace dprank {

// Item preference scores theta. Simulation truths and fitted estimates are
// centered (sum to zero); only differences are identifiable.
using PreferenceVector = std::vector<double>;

// theta_i ~ U(-1, 1), then centered.
PreferenceVector CenteredUniformTheta(int items, Rng& rng);
// Evenly spaced scores with adjacent gap `delta`, descending in item index,
// centered.
PreferenceVector EvenlySpacedTheta(int items, double delta);
void Center(PreferenceVector& theta);

enum class ValueKind { kRawBinary, kRRBinary, kDebiasedWeighted, kLaplaceReal };

std::string_view ToString(ValueKind kind);
ValueKind ParseValueKind(std::string_view token);

// One observed comparison between items i < j by one user (all 0-based).
// value is y (item i preferred) for raw data, the RR bit, the weighted
// debiased surrogate w_l * z~, or the Laplace-perturbed y.
struct Comparison {
  std::int32_t user;
  std::int32_t i;
  std::int32_t j;
  double value;

  friend bool operator==(const Comparison&, const Comparison&) = default;
};

// Immutable set of pairwise comparisons from `users` users over `items` items.
// Construction validates index ranges, i < j, uniqueness of (user, i, j) and
// the value domain of binary kinds.
class PairwiseDataset {
 public:
  PairwiseDataset() = default;
  PairwiseDataset(int items, int users, ValueKind kind,
                  std::vector<Comparison> records,
                  std::optional<PrivacyProfile> profile = std::nullopt);

  int items() const { return items_; }
  int users() const { return users_; }
  ValueKind kind() const { return kind_; }
  std::span<const Comparison> records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  // The budgets used to privatize this dataset, when known.
  const std::optional<PrivacyProfile>& profile() const { return profile_; }
  PairwiseDataset WithProfile(PrivacyProfile profile) const;

  // S_l: number of observed comparisons per user.
  std::vector<std::int64_t> CountsPerUser() const;
  // Items that appear in no comparison.
  std::vector<int> IsolatedItems() const;

 private:
  int items_ = 0;
  int users_ = 0;
  ValueKind kind_ = ValueKind::kRawBinary;
  std::vector<Comparison> records_;
  std::optional<PrivacyProfile> profile_;
};

// Draws a raw dataset: each of the users * C(m, 2) comparisons is observed
// independently with probability p and, if observed, y ~ Bernoulli(F(gap)).
// Users are generated from independent streams seeded off `rng`.
PairwiseDataset generate(const PreferenceVector& theta_star,
                         const ComparisonModel& model, int users, double p,
                         Rng& rng);

enum class Mechanism { kClassicRR, kADRR, kLaplace };
std::string_view ToString(Mechanism mechanism);
Mechanism ParseMechanism(std::string_view token);

// Applies a local mechanism to every record of a raw dataset using each
// user's own budget. ClassicRR -> RR bits, ADRR -> w_l * debias(RR bit),
// Laplace -> y + Laplace(1 / eps_l). The (user, i, j) index set is preserved.
PairwiseDataset privatize(const PairwiseDataset& raw,
                          const PrivacyProfile& profile, Mechanism mechanism,
                          Rng& rng);

// CSV "user_id,item_i,item_j,value,kind", 1-based ids. Item and user counts
// are inferred from the largest ids unless larger minimums are given.
PairwiseDataset load_csv(const std::filesystem::path& path, int min_items = 0,
                         int min_users = 0);
void write_csv(const PairwiseDataset& dataset,
               const std::filesystem::path& path);

// Normalized real-data CSV "user_id,item_i,item_j,choice" where choice = 1
// means item_i was preferred. Rows with item_i > item_j are flipped into
// canonical order. Throws MissingDataError if the file does not exist.
PairwiseDataset load_preference_csv(const std::filesystem::path& path);

struct IntransitivityReport {
  double user_fraction = 0;        // users with >= 1 conflicting comparison
  double comparison_fraction = 0;  // conflicting comparisons / all
  int flagged_users = 0;
  std::int64_t conflicting_comparisons = 0;
};

// For every user, orders items by that user's win count (ties by item index)
// and counts comparisons whose winner sits below the loser in that order.
IntransitivityReport intransitivity_report(const PairwiseDataset& raw);

}  // namespace dprank

#endif  // DPRANK_DATASET_H_
