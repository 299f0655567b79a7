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

#include "dprank/lst_models.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "dprank/errors.h"

namespace dprank {

namespace {

constexpr double kTmTailCutoff = -8.0;
const double kLogSqrt2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

void CheckFinite(double x) {
  if (!std::isfinite(x)) {
    throw DomainError("comparison model evaluated at a non-finite argument");
  }
}

double LogisticCdf(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

namespace internal {

double NormalMillsRatio(double t) {
  // Backward evaluation of 1 / (t + 1 / (t + 2 / (t + 3 / (t + ...)))).
  double f = t;
  for (int k = 200; k >= 1; --k) f = t + k / f;
  return 1.0 / f;
}

}  // namespace internal

ComparisonModel ComparisonModel::Dt(double scale) {
  if (!(scale > 0) || !std::isfinite(scale)) {
    throw DomainError("DT scale must be a positive finite number");
  }
  return ComparisonModel(ModelKind::kDT, scale);
}

ComparisonModel ComparisonModel::Parse(std::string_view token) {
  std::string lower(token);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "btl") return Btl();
  if (lower == "tm") return Tm();
  if (lower == "dt") return Dt();
  // "dt:<scale>" selects a non-default Laplace scale.
  if (lower.starts_with("dt:")) {
    double scale = 0;
    const char* first = lower.data() + 3;
    const char* last = lower.data() + lower.size();
    auto [ptr, ec] = std::from_chars(first, last, scale);
    if (ec == std::errc() && ptr == last) return Dt(scale);
  }
  throw ValidationError("unknown comparison model '" + std::string(token) +
                        "' (expected btl, tm or dt)");
}

std::string_view ComparisonModel::name() const {
  switch (kind_) {
    case ModelKind::kBTL:
      return "btl";
    case ModelKind::kTM:
      return "tm";
    case ModelKind::kDT:
      return "dt";
  }
  return "?";
}

double ComparisonModel::cdf(double x) const {
  CheckFinite(x);
  switch (kind_) {
    case ModelKind::kBTL:
      return LogisticCdf(x);
    case ModelKind::kTM:
      return 0.5 * std::erfc(-x / std::numbers::sqrt2);
    case ModelKind::kDT:
      return x < 0 ? 0.5 * std::exp(x / scale_)
                   : 1.0 - 0.5 * std::exp(-x / scale_);
  }
  return 0;
}

double ComparisonModel::pdf(double x) const {
  CheckFinite(x);
  switch (kind_) {
    case ModelKind::kBTL: {
      const double e = std::exp(-std::abs(x));
      return e / ((1.0 + e) * (1.0 + e));
    }
    case ModelKind::kTM:
      return std::exp(-0.5 * x * x - kLogSqrt2Pi);
    case ModelKind::kDT:
      return std::exp(-std::abs(x) / scale_) / (2.0 * scale_);
  }
  return 0;
}

double ComparisonModel::log_cdf(double x) const {
  CheckFinite(x);
  switch (kind_) {
    case ModelKind::kBTL:
      return x >= 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
    case ModelKind::kTM:
      if (x < kTmTailCutoff) {
        const double t = -x;
        return -0.5 * t * t - kLogSqrt2Pi +
               std::log(internal::NormalMillsRatio(t));
      }
      if (x > 0) return std::log1p(-0.5 * std::erfc(x / std::numbers::sqrt2));
      return std::log(0.5 * std::erfc(-x / std::numbers::sqrt2));
    case ModelKind::kDT:
      return x < 0 ? std::log(0.5) + x / scale_
                   : std::log1p(-0.5 * std::exp(-x / scale_));
  }
  return 0;
}

double ComparisonModel::log_pdf(double x) const {
  CheckFinite(x);
  switch (kind_) {
    case ModelKind::kBTL:
      return -std::abs(x) - 2.0 * std::log1p(std::exp(-std::abs(x)));
    case ModelKind::kTM:
      return -0.5 * x * x - kLogSqrt2Pi;
    case ModelKind::kDT:
      return -std::abs(x) / scale_ - std::log(2.0 * scale_);
  }
  return 0;
}

double ComparisonModel::g(double x) const {
  // For BTL g(x) = 1 - F(x) exactly; the generic route is kept for the others.
  if (kind_ == ModelKind::kBTL) {
    CheckFinite(x);
    return LogisticCdf(-x);
  }
  return std::exp(log_pdf(x) - log_cdf(x));
}

double ComparisonModel::g_prime(double x) const {
  CheckFinite(x);
  switch (kind_) {
    case ModelKind::kBTL:
      return -LogisticCdf(x) * LogisticCdf(-x);
    case ModelKind::kTM: {
      const double gx = g(x);
      return -gx * (x + gx);
    }
    case ModelKind::kDT: {
      // g is constant (1 / scale) on the left half-line; the right derivative
      // is used at the kink.
      if (x < 0) return 0.0;
      const double e = std::exp(-x / scale_);
      return -2.0 * e / (scale_ * scale_ * (2.0 - e) * (2.0 - e));
    }
  }
  return 0;
}

}  // namespace dprank
