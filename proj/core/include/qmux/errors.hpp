// Copyright 2026 The qmux Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QMUX_ERRORS_HPP
#define QMUX_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace qmux {

/// Precondition violation on a physical-domain argument.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A nonlinear fit failed to converge. Carries the best parameters seen so
/// far and the residual they achieve.
class FitError : public std::runtime_error {
 public:
  FitError(const std::string& what, std::vector<double> best_params,
           double residual_rms)
      : std::runtime_error(what),
        best_params_(std::move(best_params)),
        residual_rms_(residual_rms) {}

  const std::vector<double>& best_params() const { return best_params_; }
  double residual_rms() const { return residual_rms_; }

 private:
  std::vector<double> best_params_;
  double residual_rms_;
};

/// Integrator step too coarse for the requested tolerance.
class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qmux

#endif  // QMUX_ERRORS_HPP
