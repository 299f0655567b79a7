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

#include "dprank/ranking_metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dprank/errors.h"

namespace dprank {

namespace {

void CheckSameSize(std::size_t a, std::size_t b) {
  if (a != b) {
    throw ValidationError("rankings have different lengths (" +
                          std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

RankPermutation rank_of(std::span<const double> theta) {
  std::vector<int> order(theta.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return theta[a] > theta[b]; });
  RankPermutation sigma(theta.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    sigma[order[k]] = static_cast<int>(k) + 1;
  }
  return sigma;
}

double topk_hamming(std::span<const double> theta_hat,
                    std::span<const double> theta_star, int k) {
  CheckSameSize(theta_hat.size(), theta_star.size());
  const int m = static_cast<int>(theta_star.size());
  if (k < 1 || k > m - 1) {
    throw ValidationError("K must satisfy 1 <= K <= m - 1 (K = " +
                          std::to_string(k) + ", m = " + std::to_string(m) + ")");
  }
  const auto hat = rank_of(theta_hat);
  const auto star = rank_of(theta_star);
  int missed = 0;
  int extra = 0;
  for (int i = 0; i < m; ++i) {
    const bool in_star = star[i] <= k;
    const bool in_hat = hat[i] <= k;
    missed += in_star && !in_hat;
    extra += in_hat && !in_star;
  }
  return (missed + extra) / (2.0 * k);
}

double kendall_distance(const RankPermutation& a, const RankPermutation& b) {
  CheckSameSize(a.size(), b.size());
  const std::size_t m = a.size();
  if (m < 2) throw ValidationError("Kendall distance needs m >= 2");
  long discordant = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      discordant += (a[i] < a[j]) != (b[i] < b[j]);
    }
  }
  return 2.0 * discordant / (static_cast<double>(m) * (m - 1));
}

double footrule_distance(const RankPermutation& a, const RankPermutation& b) {
  CheckSameSize(a.size(), b.size());
  const std::size_t m = a.size();
  if (m < 2) throw ValidationError("Spearman footrule needs m >= 2");
  long total = 0;
  for (std::size_t i = 0; i < m; ++i) total += std::abs(a[i] - b[i]);
  return 2.0 * total / (static_cast<double>(m) * m);
}

double kendall(std::span<const double> theta_hat,
               std::span<const double> theta_star) {
  return kendall_distance(rank_of(theta_hat), rank_of(theta_star));
}

double spearman_footrule(std::span<const double> theta_hat,
                         std::span<const double> theta_star) {
  return footrule_distance(rank_of(theta_hat), rank_of(theta_star));
}

double l2_error_per_item(std::span<const double> theta_hat,
                         std::span<const double> theta_star) {
  CheckSameSize(theta_hat.size(), theta_star.size());
  if (theta_star.empty()) return 0.0;
  double ss = 0;
  for (std::size_t i = 0; i < theta_star.size(); ++i) {
    const double d = theta_hat[i] - theta_star[i];
    ss += d * d;
  }
  return std::sqrt(ss / theta_star.size());
}

double linf_error(std::span<const double> theta_hat,
                  std::span<const double> theta_star) {
  CheckSameSize(theta_hat.size(), theta_star.size());
  double worst = 0;
  for (std::size_t i = 0; i < theta_star.size(); ++i) {
    worst = std::max(worst, std::abs(theta_hat[i] - theta_star[i]));
  }
  return worst;
}

}  // namespace dprank
