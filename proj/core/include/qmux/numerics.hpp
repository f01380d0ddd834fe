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

#ifndef QMUX_NUMERICS_HPP
#define QMUX_NUMERICS_HPP

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <vector>

namespace qmux::numerics {

// ---------------------------------------------------------------------------
// Damped Gauss-Newton least squares.
//
// Minimises |r(x)|^2 for a vector residual r. The Jacobian is formed by
// central finite differences; a Levenberg damping term is grown until a step
// reduces the residual (monotone acceptance) and shrunk after success.
// ---------------------------------------------------------------------------

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct LeastSquaresOptions {
  int max_iterations = 200;
  double step_tolerance = 1e-12;     // relative parameter change
  double residual_tolerance = 1e-15; // absolute rms
  double initial_damping = 1e-6;
};

struct LeastSquaresResult {
  Eigen::VectorXd params;
  double residual_rms = 0.0;
  int iterations = 0;
  bool converged = false;
};

LeastSquaresResult fit_least_squares(const ResidualFn& residual,
                                     const Eigen::VectorXd& initial,
                                     const LeastSquaresOptions& opts = {});

// ---------------------------------------------------------------------------
// Algebraic circle fit (Kasa): least squares on x^2+y^2 + a x + b y + c = 0.
// ---------------------------------------------------------------------------

struct CircleFit {
  double cx = 0.0;
  double cy = 0.0;
  double radius = 0.0;
  double rms = 0.0;  // radial scatter about the fitted circle
};

CircleFit fit_circle(std::span<const double> x, std::span<const double> y);

// ---------------------------------------------------------------------------
// Decaying-tone model fit by variable projection:
//
//   y(t) ~ c0 + exp(-t/tau) * sum_k [a_k cos(2 pi f_k t) + b_k sin(2 pi f_k t)]
//
// The tone frequencies are fixed inputs; the linear coefficients are solved
// exactly for each trial decay time and tau is bracketed by a golden-section
// search on the projected residual. freqs may be empty (pure exponential) and
// may contain 0 (non-oscillating decaying term).
// ---------------------------------------------------------------------------

struct DecayFit {
  double tau = 0.0;          // decay time, units of t
  double offset = 0.0;       // c0 (0 when with_offset = false)
  std::vector<double> tone_amplitudes;  // per frequency, sqrt(a_k^2+b_k^2)
  std::vector<double> tone_phases;      // per frequency, atan2(b_k, a_k)
  double residual_rms = 0.0;
  bool converged = false;
};

DecayFit fit_decaying_tones(std::span<const double> t,
                            std::span<const double> y,
                            std::span<const double> freqs, bool with_offset);

/// Single-exponential convenience wrapper: y ~ offset + A exp(-t/tau).
DecayFit fit_exponential(std::span<const double> t, std::span<const double> y,
                         bool with_offset);

// ---------------------------------------------------------------------------
// Spectral peak scan: Hann-windowed discrete-time Fourier magnitude evaluated
// on a fine frequency grid, returning local maxima refined by quadratic
// interpolation. Frequencies are in reciprocal units of t.
// ---------------------------------------------------------------------------

struct SpectralPeak {
  double frequency = 0.0;
  double magnitude = 0.0;
};

std::vector<SpectralPeak> spectral_peaks(std::span<const double> t,
                                         std::span<const double> y,
                                         double f_min, double f_max,
                                         double f_step,
                                         std::size_t max_peaks = 4);

// ---------------------------------------------------------------------------
// Index-parallel map used by sweep commands. Results are written by index so
// output is independent of scheduling.
// ---------------------------------------------------------------------------

void parallel_for_index(std::size_t count,
                        const std::function<void(std::size_t)>& body);

}  // namespace qmux::numerics

#endif  // QMUX_NUMERICS_HPP
