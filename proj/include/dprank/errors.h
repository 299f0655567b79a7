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

#ifndef DPRANK_ERRORS_H_
#define DPRANK_ERRORS_H_

#include <stdexcept>
#include <string>

namespace dprank {

// Invalid numeric input to a model or mechanism (negative epsilon, NaN, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed or inconsistent data: bad CSV rows, duplicate records, kind
// mismatches, illegal configuration.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative fit stopped before reaching its gradient tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double final_grad_norm,
                   long iterations)
      : std::runtime_error(what),
        final_grad_norm_(final_grad_norm),
        iterations_(iterations) {}

  double final_grad_norm() const { return final_grad_norm_; }
  long iterations() const { return iterations_; }

 private:
  double final_grad_norm_;
  long iterations_;
};

// A required external input (e.g. the car-preference dataset) is absent.
class MissingDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dprank

#endif  // DPRANK_ERRORS_H_
