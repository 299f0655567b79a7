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

#include <vector>

#include <benchmark/benchmark.h>

#include "dprank/dataset.h"
#include "dprank/estimator.h"
#include "dprank/kernels.h"
#include "dprank/rng.h"

namespace dprank {
namespace {

struct Problem {
  std::vector<kernels::WeightedRecord> weighted;
  std::vector<Comparison> raw;
  std::vector<double> theta;
  std::vector<double> gamma;
};

// Full observation, ADRR weights, theta ~ U(-1, 1).
Problem MakeProblem(int items, int users) {
  Rng rng = MakeRng(1, {static_cast<std::uint64_t>(items), static_cast<std::uint64_t>(users)});
  Problem p;
  p.theta = CenteredUniformTheta(items, rng);
  auto data = generate(p.theta, ComparisonModel::Btl(), users, 1.0, rng);
  auto adrr = privatize(data, PrivacyProfile::UniformDraw(users, 1.0, 5.0, rng), Mechanism::kADRR, rng);
  const auto weighted = WeightedData::FromDataset(adrr);
  p.weighted.assign(weighted.records().begin(), weighted.records().end());
  p.raw.assign(data.records().begin(), data.records().end());
  std::normal_distribution<double> n;
  p.gamma.resize(users);
  for (double& g : p.gamma) g = n(rng);
  return p;
}

void BM_LossGradientReference(benchmark::State& state) {
  const int items = state.range(0), users = state.range(1);
  auto p = MakeProblem(items, users);
  std::vector<double> grad(items);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kernels::reference::LossGradient(p.weighted, p.theta, ComparisonModel::Btl(), grad));
  }
  state.SetItemsProcessed(state.iterations() * p.weighted.size());
}

// Aggregation happens once per fit, so it is outside the timed loop.
void BM_LossGradientOmp(benchmark::State& state) {
  const int items = state.range(0), users = state.range(1);
  auto p = MakeProblem(items, users);
  const auto pairs = kernels::AggregatePairs(p.weighted, items);
  std::vector<double> grad(items);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::omp::LossGradient(pairs, p.theta, ComparisonModel::Btl(), grad));
  }
  state.SetItemsProcessed(state.iterations() * p.weighted.size());
}

void BM_AggregatePairs(benchmark::State& state) {
  const int items = state.range(0), users = state.range(1);
  auto p = MakeProblem(items, users);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::AggregatePairs(p.weighted, items));
  state.SetItemsProcessed(state.iterations() * p.weighted.size());
}

void BM_MixedReference(benchmark::State& state) {
  const int items = state.range(0), users = state.range(1);
  auto p = MakeProblem(items, users);
  std::vector<double> gt(items), gg(users);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::reference::MixedLossGradient(p.raw, p.theta, p.gamma, gt, gg));
  }
  state.SetItemsProcessed(state.iterations() * p.raw.size());
}

void BM_MixedOmp(benchmark::State& state) {
  const int items = state.range(0), users = state.range(1);
  auto p = MakeProblem(items, users);
  std::vector<double> gt(items), gg(users);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::omp::MixedLossGradient(p.raw, p.theta, p.gamma, gt, gg));
  }
  state.SetItemsProcessed(state.iterations() * p.raw.size());
}

void Sizes(benchmark::internal::Benchmark* b) {
  for (int items : {10, 30, 100}) b->Args({items, 400});
  b->Args({200, 100});
}

BENCHMARK(BM_LossGradientReference)->Apply(Sizes);
BENCHMARK(BM_LossGradientOmp)->Apply(Sizes);
BENCHMARK(BM_AggregatePairs)->Apply(Sizes);
BENCHMARK(BM_MixedReference)->Apply(Sizes);
BENCHMARK(BM_MixedOmp)->Apply(Sizes);

}  // namespace
}  // namespace dprank

BENCHMARK_MAIN();
