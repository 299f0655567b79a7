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

#include "dprank/estimator.h"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "dprank/csv_util.h"
#include "dprank/errors.h"

namespace dprank {

namespace {

constexpr double kArmijo = 0.3;
constexpr double kMinStep = 1e-30;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kNoiseUlps = 1024;

void CheckTheta(std::span<const double> theta, int items) {
  if (theta.size() != static_cast<std::size_t>(items)) {
    throw ValidationError("theta has " + std::to_string(theta.size()) +
                          " entries, dataset has " + std::to_string(items) +
                          " items");
  }
}

double Penalized(const WeightedData& data, const ComparisonModel& model,
                 double lambda, std::span<const double> theta,
                 std::span<double> grad) {
  double value = kernels::omp::LossGradient(data.pairs(), theta, model, grad);
  for (std::size_t i = 0; i < theta.size(); ++i) {
    value += lambda * theta[i] * theta[i];
    grad[i] += 2.0 * lambda * theta[i];
  }
  return value;
}

double InfNorm(std::span<const double> v) {
  double n = 0;
  for (double x : v) n = std::max(n, std::abs(x));
  return n;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

struct Descent {
  enum class Outcome { kConverged, kMaxIters, kLineSearchFailed };
  Outcome outcome;
  long iterations;
  double value;
  double grad_norm;
};

Descent Descend(const WeightedData& data, const ComparisonModel& model,
                const EstimatorConfig& config, std::vector<double>& theta,
                long budget) {
  const std::size_t m = theta.size();
  std::vector<double> grad(m), trial(m), trial_grad(m);
  double f = Penalized(data, model, config.lambda, theta, grad);
  double alpha = config.step_size.value_or(1.0);

  for (long iter = 0;; ++iter) {
    const double gnorm = InfNorm(grad);
    if (gnorm <= config.grad_tol) {
      return {Descent::Outcome::kConverged, iter, f, gnorm};
    }
    if (iter >= budget) return {Descent::Outcome::kMaxIters, iter, f, gnorm};

    const double g2 = Dot(grad, grad);
    double ft = 0;
    while (true) {
      for (std::size_t i = 0; i < m; ++i) trial[i] = theta[i] - alpha * grad[i];
      ft = Penalized(data, model, config.lambda, trial, trial_grad);
      if (config.step_size) {
        if (!std::isfinite(ft)) {
          return {Descent::Outcome::kLineSearchFailed, iter, f, gnorm};
        }
        break;
      }
      // Once the predicted decrease falls below what f can resolve, the
      // Armijo test is decided by rounding noise; there a step is accepted
      // when it shrinks the gradient and leaves f within that noise.
      const double noise = kNoiseUlps * kEps * std::abs(f);
      if (alpha * g2 > noise) {
        if (ft <= f - kArmijo * alpha * g2) break;
      } else if (ft <= f + noise && Dot(trial_grad, trial_grad) < g2) {
        break;
      }
      alpha *= 0.5;
      if (alpha < kMinStep) {
        return {Descent::Outcome::kLineSearchFailed, iter, f, gnorm};
      }
    }
    theta.swap(trial);
    grad.swap(trial_grad);
    f = ft;
    if (config.on_step) config.on_step(iter + 1, f);
    if (!config.step_size) alpha *= 2.0;
  }
}

void ValidateConfig(const EstimatorConfig& config) {
  if (!(config.lambda >= 0) || !std::isfinite(config.lambda)) {
    throw ValidationError("lambda must be a finite value >= 0");
  }
  if (!(config.grad_tol > 0)) throw ValidationError("grad_tol must be > 0");
  if (config.max_iters < 1) throw ValidationError("max_iters must be >= 1");
  if (config.step_size && !(*config.step_size > 0)) {
    throw ValidationError("step size must be > 0");
  }
}

}  // namespace

WeightedData WeightedData::FromDataset(const PairwiseDataset& dataset) {
  std::vector<kernels::WeightedRecord> recs;
  recs.reserve(dataset.size());
  switch (dataset.kind()) {
    case ValueKind::kRawBinary:
      return Uniform(dataset);
    case ValueKind::kDebiasedWeighted: {
      if (!dataset.profile()) {
        throw ValidationError(
            "debiased weighted data needs the privacy profile that produced it");
      }
      const auto w = dataset.profile()->weights();
      for (const auto& r : dataset.records()) {
        recs.push_back({r.user, r.i, r.j, r.value, w[r.user]});
      }
      return FromRecords(dataset.items(), std::move(recs));
    }
    default:
      throw ValidationError(
          "the weighted likelihood takes raw_binary or debiased_weighted "
          "records, got " +
          std::string(ToString(dataset.kind())));
  }
}

WeightedData WeightedData::Uniform(const PairwiseDataset& dataset) {
  std::vector<kernels::WeightedRecord> recs;
  recs.reserve(dataset.size());
  const double w = dataset.users() > 0 ? 1.0 / dataset.users() : 0.0;
  for (const auto& r : dataset.records()) {
    recs.push_back({r.user, r.i, r.j, r.value * w, w});
  }
  return FromRecords(dataset.items(), std::move(recs));
}

WeightedData WeightedData::FromRecords(
    int items, std::vector<kernels::WeightedRecord> records) {
  WeightedData d;
  d.items_ = items;
  d.pairs_ = kernels::AggregatePairs(records, items);
  d.records_ = std::move(records);
  return d;
}

double objective(std::span<const double> theta, const WeightedData& data,
                 const ComparisonModel& model, double lambda) {
  CheckTheta(theta, data.items());
  double value = kernels::omp::Loss(data.pairs(), theta, model);
  for (double t : theta) value += lambda * t * t;
  return value;
}

double objective(std::span<const double> theta, const PairwiseDataset& dataset,
                 const ComparisonModel& model, double lambda) {
  return objective(theta, WeightedData::FromDataset(dataset), model, lambda);
}

std::vector<double> gradient(std::span<const double> theta,
                             const WeightedData& data,
                             const ComparisonModel& model, double lambda) {
  CheckTheta(theta, data.items());
  std::vector<double> grad(theta.size());
  Penalized(data, model, lambda, theta, grad);
  return grad;
}

std::vector<double> gradient(std::span<const double> theta,
                             const PairwiseDataset& dataset,
                             const ComparisonModel& model, double lambda) {
  return gradient(theta, WeightedData::FromDataset(dataset), model, lambda);
}

Estimate fit(const WeightedData& data, const ComparisonModel& model,
             const EstimatorConfig& config) {
  ValidateConfig(config);
  if (data.empty()) throw ValidationError("cannot fit an empty dataset");
  const int m = data.items();

  std::vector<double> theta(m, 0.0);
  Descent run = Descend(data, model, config, theta, config.max_iters);
  long used = run.iterations;
  bool restarted = false;

  if (run.outcome == Descent::Outcome::kLineSearchFailed) {
    restarted = true;
    Rng rng(config.restart_seed);
    std::normal_distribution<double> noise(0.0, 0.1);
    for (double& t : theta) t = noise(rng);
    Center(theta);
    run = Descend(data, model, config, theta, config.max_iters - used);
    used += run.iterations;
  }
  if (run.outcome == Descent::Outcome::kLineSearchFailed) {
    throw ConvergenceError("line search failed after a restart (|grad|_inf = " +
                               csv::FormatDouble(run.grad_norm) + ")",
                           run.grad_norm, used);
  }
  if (run.outcome == Descent::Outcome::kMaxIters) {
    throw ConvergenceError("no convergence in " +
                               std::to_string(config.max_iters) +
                               " iterations (|grad|_inf = " +
                               csv::FormatDouble(run.grad_norm) + ")",
                           run.grad_norm, used);
  }
  Estimate est;
  est.theta_hat = std::move(theta);
  est.iterations = used;
  est.final_grad_norm = run.grad_norm;
  est.objective_value = run.value;
  est.restarted = restarted;
  return est;
}

Estimate fit(const PairwiseDataset& dataset, const ComparisonModel& model,
             const EstimatorConfig& config) {
  if (dataset.empty()) throw ValidationError("cannot fit an empty dataset");
  const auto isolated = dataset.IsolatedItems();
  if (!isolated.empty()) {
    std::cerr << "warning: " << isolated.size()
              << " item(s) appear in no comparison; their estimates are set "
                 "by the penalty alone\n";
  }
  return fit(WeightedData::FromDataset(dataset), model, config);
}

double default_lambda(const PrivacyProfile& profile, double c) {
  if (!(c > 0)) throw DomainError("lambda constant c must be > 0");
  if (profile.size() == 0) throw DomainError("empty privacy profile");
  if (!(profile.B() > 0)) {
    throw DomainError("B(eps) = 0: every user has eps = 0");
  }
  return c / (static_cast<double>(profile.size()) * profile.B());
}

double hessian_min_nonzero_eigenvalue(std::span<const double> theta,
                                      const WeightedData& data,
                                      const ComparisonModel& model) {
  CheckTheta(theta, data.items());
  const int m = data.items();
  if (m < 2) throw ValidationError("need at least two items");
  if (m > kMaxHessianItems) {
    throw ValidationError("Hessian diagnostic is capped at " +
                          std::to_string(kMaxHessianItems) + " items");
  }
  const Eigen::MatrixXd h = kernels::omp::Hessian(data.pairs(), theta, model);
  // Columns 2..m of a Householder Q whose first column is 1/sqrt(m) span the
  // complement of the all-ones vector.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Eigen::MatrixXd::Ones(m, 1));
  const Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd basis = q.rightCols(m - 1);
  const Eigen::MatrixXd reduced = basis.transpose() * h * basis;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(reduced,
                                                     Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

double hessian_min_nonzero_eigenvalue(std::span<const double> theta,
                                      const PairwiseDataset& dataset,
                                      const ComparisonModel& model) {
  return hessian_min_nonzero_eigenvalue(
      theta, WeightedData::FromDataset(dataset), model);
}

void write_estimate_csv(const PreferenceVector& theta,
                        const std::filesystem::path& path) {
  auto out = csv::OpenForWrite(path);
  out << "item,theta_hat\n";
  for (std::size_t i = 0; i < theta.size(); ++i) {
    out << i + 1 << ',' << csv::FormatDouble(theta[i]) << '\n';
  }
}

PreferenceVector load_estimate_csv(const std::filesystem::path& path) {
  auto in = csv::OpenForRead(path);
  csv::ExpectHeader(in, "item,theta_hat", path);
  PreferenceVector theta;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto f = csv::SplitRow(line);
    if (f.size() != 2) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": expected 2 fields");
    }
    const auto item = csv::ParseInt(f[0], line_no);
    if (item != static_cast<std::int64_t>(theta.size()) + 1) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": items must be listed as 1, 2, ...");
    }
    theta.push_back(csv::ParseDouble(f[1], line_no));
  }
  return theta;
}

std::string DiagnosticsLine(const Estimate& estimate) {
  std::ostringstream out;
  out << "iterations=" << estimate.iterations
      << " final_grad_norm=" << csv::FormatDouble(estimate.final_grad_norm)
      << " objective=" << csv::FormatDouble(estimate.objective_value)
      << " restarted=" << (estimate.restarted ? "true" : "false");
  return out.str();
}

}  // namespace dprank
