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

#include "dprank/privacy.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dprank/csv_util.h"
#include "dprank/errors.h"

namespace dprank {

namespace {

void CheckBudget(double epsilon) {
  if (std::isnan(epsilon) || epsilon < 0) {
    throw DomainError("privacy budget must be >= 0, got " +
                      std::to_string(epsilon));
  }
}

double Uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace

double flip_probability(double epsilon) {
  CheckBudget(epsilon);
  if (std::isinf(epsilon)) return 0.0;
  return 1.0 / (std::exp(epsilon) + 1.0);
}

double retention(double epsilon) {
  CheckBudget(epsilon);
  if (std::isinf(epsilon)) return 1.0;
  return std::tanh(0.5 * epsilon);
}

int randomized_response(int y, double epsilon, Rng& rng) {
  const double p = flip_probability(epsilon);
  if (p == 0.0) return y;
  return Uniform01(rng) < p ? 1 - y : y;
}

double debias(int y_tilde, double epsilon) {
  CheckBudget(epsilon);
  if (epsilon == 0) throw DomainError("debias undefined at eps=0");
  if (std::isinf(epsilon)) return y_tilde;
  // e^eps - 1 via expm1 keeps precision for small budgets.
  const double em1 = std::expm1(epsilon);
  return y_tilde == 1 ? (em1 + 1.0) / em1 : -1.0 / em1;
}

double debias_variance(double epsilon, double f_value) {
  CheckBudget(epsilon);
  if (epsilon == 0) throw DomainError("debias undefined at eps=0");
  if (!(f_value > 0 && f_value < 1)) {
    throw DomainError("F value must lie in (0, 1)");
  }
  const double inv_t = 1.0 / retention(epsilon);
  const double centered = 2.0 * f_value - 1.0;
  return 0.25 * (inv_t * inv_t - centered * centered);
}

std::vector<double> adaptive_weights(std::span<const double> epsilons) {
  std::vector<double> w(epsilons.size());
  double total = 0;
  for (std::size_t l = 0; l < epsilons.size(); ++l) {
    CheckBudget(epsilons[l]);
    if (epsilons[l] == 0) {
      throw DomainError("adaptive weights need every eps_l > 0 (user " +
                        std::to_string(l + 1) + " has eps = 0)");
    }
    const double t = retention(epsilons[l]);
    w[l] = t * t;
    total += w[l];
  }
  for (double& x : w) x /= total;
  return w;
}

double laplace_perturb(int y, double epsilon, Rng& rng) {
  CheckBudget(epsilon);
  if (epsilon == 0) throw DomainError("Laplace mechanism needs eps > 0");
  if (std::isinf(epsilon)) return y;
  // Inverse-CDF draw of Laplace(0, 1 / eps).
  const double u = Uniform01(rng) - 0.5;
  const double noise =
      -std::copysign(1.0, u) * std::log1p(-2.0 * std::abs(u)) / epsilon;
  return y + noise;
}

PrivacyProfile::PrivacyProfile(std::vector<double> epsilons)
    : epsilons_(std::move(epsilons)) {
  bool all_positive = true;
  for (double e : epsilons_) {
    CheckBudget(e);
    const double t = retention(e);
    G_ += t * t;
    all_positive = all_positive && e > 0;
  }
  if (all_positive && !epsilons_.empty()) weights_ = adaptive_weights(epsilons_);
}

PrivacyProfile PrivacyProfile::Constant(std::size_t users, double epsilon) {
  return PrivacyProfile(std::vector<double>(users, epsilon));
}

PrivacyProfile PrivacyProfile::UniformDraw(std::size_t users, double lo,
                                           double hi, Rng& rng) {
  if (!(lo >= 0 && hi >= lo)) {
    throw DomainError("uniform budget law needs 0 <= lo <= hi");
  }
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> eps(users);
  for (double& e : eps) e = dist(rng);
  return PrivacyProfile(std::move(eps));
}

std::span<const double> PrivacyProfile::weights() const {
  if (!has_weights()) {
    throw DomainError("adaptive weights need every eps_l > 0");
  }
  return weights_;
}

double central_dp_epsilon(const PrivacyProfile& profile,
                          std::span<const std::int64_t> counts) {
  if (counts.size() != profile.size()) {
    throw ValidationError("one comparison count per user is required");
  }
  double worst = 0;
  for (std::size_t l = 0; l < counts.size(); ++l) {
    if (counts[l] < 0) throw ValidationError("negative comparison count");
    if (counts[l] == 0) continue;
    worst = std::max(worst, static_cast<double>(counts[l]) * profile.epsilon(l));
  }
  return worst;
}

PrivacyProfile load_profile_csv(const std::filesystem::path& path) {
  auto in = csv::OpenForRead(path);
  csv::ExpectHeader(in, "user_id,epsilon", path);
  std::vector<double> eps;
  std::vector<bool> seen;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = csv::SplitRow(line);
    if (fields.size() != 2) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": expected 2 fields");
    }
    const auto user = csv::ParseInt(fields[0], line_no);
    const double e = csv::ParseDouble(fields[1], line_no);
    if (user < 1) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": user_id must be >= 1");
    }
    if (e < 0) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": epsilon must be >= 0");
    }
    const auto idx = static_cast<std::size_t>(user - 1);
    if (idx >= eps.size()) {
      eps.resize(idx + 1, -1.0);
      seen.resize(idx + 1, false);
    }
    if (seen[idx]) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": duplicate user_id " + std::to_string(user));
    }
    seen[idx] = true;
    eps[idx] = e;
  }
  for (std::size_t l = 0; l < seen.size(); ++l) {
    if (!seen[l]) {
      throw ValidationError(path.string() + ": missing user_id " +
                            std::to_string(l + 1));
    }
  }
  return PrivacyProfile(std::move(eps));
}

void write_profile_csv(const PrivacyProfile& profile,
                       const std::filesystem::path& path) {
  auto out = csv::OpenForWrite(path);
  out << "user_id,epsilon\n";
  for (std::size_t l = 0; l < profile.size(); ++l) {
    out << (l + 1) << ',' << csv::FormatDouble(profile.epsilon(l)) << '\n';
  }
}

}  // namespace dprank
