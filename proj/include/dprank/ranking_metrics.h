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

#ifndef DPRANK_RANKING_METRICS_H_
#define DPRANK_RANKING_METRICS_H_

#include <span>
#include <vector>

namespace dprank {

// sigma[i] = k means item i holds the k-th largest value (1-based). Ties are
// broken by item index: the earlier item ranks better.
using RankPermutation = std::vector<int>;

RankPermutation rank_of(std::span<const double> theta);

// H_K = (1/2K) |top_K(star) symmetric-difference top_K(hat)|, 1 <= K < m.
double topk_hamming(std::span<const double> theta_hat,
                    std::span<const double> theta_star, int k);

// Fraction of item pairs ordered differently by the two rankings.
double kendall(std::span<const double> theta_hat,
               std::span<const double> theta_star);

// (2 / m^2) sum_i |sigma_hat(i) - sigma_star(i)|.
double spearman_footrule(std::span<const double> theta_hat,
                         std::span<const double> theta_star);

// The same metrics on rank permutations directly.
double kendall_distance(const RankPermutation& a, const RankPermutation& b);
double footrule_distance(const RankPermutation& a, const RankPermutation& b);

// Parameter errors used throughout the experiments.
double l2_error_per_item(std::span<const double> theta_hat,
                         std::span<const double> theta_star);  // ||.||_2/sqrt(m)
double linf_error(std::span<const double> theta_hat,
                  std::span<const double> theta_star);

}  // namespace dprank

#endif  // DPRANK_RANKING_METRICS_H_
