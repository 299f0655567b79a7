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

#ifndef DPRANK_PRIVACY_H_
#define DPRANK_PRIVACY_H_

#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <vector>

#include "dprank/rng.h"

namespace dprank {

// Budget sentinel meaning "no privacy": flip probability 0, retention 1,
// debiasing is the identity. Serialized as "inf".
inline constexpr double kNoPrivacy = std::numeric_limits<double>::infinity();

// p_eps = 1 / (e^eps + 1). Defined for eps >= 0 (including the sentinel).
double flip_probability(double epsilon);

// Retention factor t = (e^eps - 1) / (e^eps + 1) = tanh(eps / 2), in [0, 1].
double retention(double epsilon);

// Classic randomized response: keeps y with probability 1 - p_eps, otherwise
// returns 1 - y. eps = 0 is a fair coin.
int randomized_response(int y, double epsilon, Rng& rng);

// Unbiased surrogate ((e^eps + 1) y~ - 1) / (e^eps - 1) for an RR output.
// Throws DomainError for eps <= 0.
double debias(int y_tilde, double epsilon);

// Var of debias(RR(y)) for y ~ Bernoulli(F):
//   ((e^eps + 1) / (e^eps - 1))^2 / 4 - (2F - 1)^2 / 4.
double debias_variance(double epsilon, double f_value);

// w_l = t_l^2 / sum_k t_k^2. Throws DomainError if any eps_l <= 0.
std::vector<double> adaptive_weights(std::span<const double> epsilons);

// y + Laplace(0, 1 / eps) noise.
double laplace_perturb(int y, double epsilon, Rng& rng);

// Per-user privacy budgets together with the quantities derived from them.
class PrivacyProfile {
 public:
  PrivacyProfile() = default;
  // eps_l >= 0 is accepted so that classic RR can be run at eps = 0; the
  // adaptive weights (and therefore ADRR) need every eps_l > 0.
  explicit PrivacyProfile(std::vector<double> epsilons);

  static PrivacyProfile Constant(std::size_t users, double epsilon);
  static PrivacyProfile UniformDraw(std::size_t users, double lo, double hi,
                                    Rng& rng);

  std::size_t size() const { return epsilons_.size(); }
  std::span<const double> epsilons() const { return epsilons_; }
  double epsilon(std::size_t user) const { return epsilons_[user]; }

  bool has_weights() const { return !weights_.empty() || epsilons_.empty(); }
  // Throws DomainError when some eps_l == 0.
  std::span<const double> weights() const;

  // B(eps) = mean of t_l^2 and G(eps) = L * B(eps).
  double B() const { return epsilons_.empty() ? 0.0 : G_ / size(); }
  double G() const { return G_; }

 private:
  std::vector<double> epsilons_;
  std::vector<double> weights_;
  double G_ = 0;
};

// max_l S_l * eps_l, the central epsilon-DP budget of running RR
// independently on each of user l's S_l observed comparisons.
double central_dp_epsilon(const PrivacyProfile& profile,
                          std::span<const std::int64_t> counts);

// CSV "user_id,epsilon" with 1-based user ids; the sentinel is spelled "inf".
PrivacyProfile load_profile_csv(const std::filesystem::path& path);
void write_profile_csv(const PrivacyProfile& profile,
                       const std::filesystem::path& path);

}  // namespace dprank

#endif  // DPRANK_PRIVACY_H_
