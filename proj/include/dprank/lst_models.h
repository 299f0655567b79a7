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

#ifndef DPRANK_LST_MODELS_H_
#define DPRANK_LST_MODELS_H_

#include <string>
#include <string_view>

namespace dprank {

enum class ModelKind { kBTL, kTM, kDT };

// A linear stochastic transitivity model: P(i beats j) = F(theta_i - theta_j)
// for a zero-symmetric, log-concave CDF F.
//
//   BTL  logistic CDF
//   TM   standard normal CDF
//   DT   Laplace(0, scale) CDF
//
// Besides F this exposes f = F', log F, g = f / F and g'. All members are pure
// and the type is a small value, so it can be shared freely across threads.
class ComparisonModel {
 public:
  static ComparisonModel Btl() { return ComparisonModel(ModelKind::kBTL, 1.0); }
  static ComparisonModel Tm() { return ComparisonModel(ModelKind::kTM, 1.0); }
  static ComparisonModel Dt(double scale = 1.0);

  // Parses "btl", "tm" or "dt" (case-insensitive). Throws ValidationError.
  static ComparisonModel Parse(std::string_view token);

  ModelKind kind() const { return kind_; }
  double scale() const { return scale_; }
  std::string_view name() const;

  double cdf(double x) const;
  double pdf(double x) const;
  double log_cdf(double x) const;
  double log_pdf(double x) const;
  double g(double x) const;
  double g_prime(double x) const;

  friend bool operator==(const ComparisonModel&,
                         const ComparisonModel&) = default;

 private:
  ComparisonModel(ModelKind kind, double scale) : kind_(kind), scale_(scale) {}

  ModelKind kind_;
  double scale_;
};

namespace internal {

// (1 - Phi(t)) / phi(t) for t >= 0, via its continued fraction. Used by the
// TM branch for strongly negative arguments where Phi underflows.
double NormalMillsRatio(double t);

}  // namespace internal

}  // namespace dprank

#endif  // DPRANK_LST_MODELS_H_
