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

#ifndef DPRANK_STATS_H_
#define DPRANK_STATS_H_

#include <span>

namespace dprank::stats {

double Mean(std::span<const double> x);
// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
double SampleSd(std::span<const double> x);
double Median(std::span<const double> x);
double PearsonCorrelation(std::span<const double> x, std::span<const double> y);

// y ~ intercept + slope * x by ordinary least squares.
struct Line {
  double intercept = 0;
  double slope = 0;
};
Line LeastSquaresLine(std::span<const double> x, std::span<const double> y);

struct TTest {
  double t = 0;
  double p = 0;  // two-sided, Student t with n - 1 degrees of freedom
  int df = 0;
};

// Paired t test on d = a - b. Throws ValidationError for unequal lengths,
// n < 2, or differences with zero variance.
TTest paired_t_test(std::span<const double> a, std::span<const double> b);

}  // namespace dprank::stats

#endif  // DPRANK_STATS_H_
