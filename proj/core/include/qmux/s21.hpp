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

#ifndef QMUX_S21_HPP
#define QMUX_S21_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

// Feedline transmission past a notch-coupled quarter-wave resonator:
// forward model, diameter-corrected complex fit, and the qubit-state
// dependent dispersive pull of the resonance.
namespace qmux::s21 {

struct NotchParams {
  double f0_ghz = 7.522;
  double qi = 38600.0;
  double qc = 5500.0;
  double asymmetry_rad = 0.0;  // impedance-mismatch rotation of the dip

  double q_total() const { return 1.0 / (1.0 / qi + 1.0 / qc); }
};

struct S21Sweep {
  std::vector<double> freqs_ghz;
  std::vector<std::complex<double>> s21;
  double power_dbm = -120.0;  // label only
};

/// S21(f) = 1 - (Q_t/Q_c) e^{i phi} / (1 + 2 i Q_t (f-f0)/f0). The baseline
/// is normalised to 1; at phi = 0 the on-resonance depth is 1 - Q_t/Q_c.
std::complex<double> notch_s21(const NotchParams& p, double f_ghz);

S21Sweep notch_model(const NotchParams& p,
                     const std::vector<double>& freqs_ghz);

/// Uniform sweep spanning `linewidths` total widths around f0, optionally
/// with additive complex Gaussian noise of the given sigma per quadrature.
S21Sweep synthesize_sweep(const NotchParams& p, int points = 1201,
                          double linewidths = 10.0, double noise_sigma = 0.0,
                          std::uint64_t seed = 1);

struct ResonanceFit {
  NotchParams params;
  double residual_rms = 0.0;  // complex misfit rms
  int iterations = 0;
};

/// Complex least-squares fit of the notch model. The initial guess, when not
/// supplied, comes from the dip position, a width estimate, and an algebraic
/// circle fit of the complex trace. Requires the sweep to cover at least a
/// few linewidths around the dip. Throws FitError on non-convergence.
ResonanceFit fit_notch(const S21Sweep& sweep,
                       std::optional<NotchParams> guess = std::nullopt);

enum class QubitState { ground, excited, saturated };

/// Resonance frequency under the dispersive pull of the qubit state:
/// ground -> f0 - chi/2pi, excited -> f0 + chi/2pi, saturated -> bare f0.
double dispersive_pull_ghz(double f0_ghz, double chi_mhz, QubitState state);

}  // namespace qmux::s21

#endif  // QMUX_S21_HPP
