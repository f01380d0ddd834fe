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

#include "qmux/s21.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qmux/constants.hpp"
#include "qmux/errors.hpp"
#include "qmux/numerics.hpp"

namespace qmux::s21 {

std::complex<double> notch_s21(const NotchParams& p, double f_ghz) {
  const double qt = p.q_total();
  const std::complex<double> rotation(std::cos(p.asymmetry_rad),
                                      std::sin(p.asymmetry_rad));
  const std::complex<double> denom(1.0,
                                   2.0 * qt * (f_ghz - p.f0_ghz) / p.f0_ghz);
  return 1.0 - (qt / p.qc) * rotation / denom;
}

S21Sweep notch_model(const NotchParams& p,
                     const std::vector<double>& freqs_ghz) {
  if (!(p.qi > 0.0) || !(p.qc > 0.0)) {
    throw DomainError("notch_model: quality factors must be positive");
  }
  S21Sweep sweep;
  sweep.freqs_ghz = freqs_ghz;
  sweep.s21.reserve(freqs_ghz.size());
  for (double f : freqs_ghz) sweep.s21.push_back(notch_s21(p, f));
  return sweep;
}

S21Sweep synthesize_sweep(const NotchParams& p, int points, double linewidths,
                          double noise_sigma, std::uint64_t seed) {
  if (points < 16) {
    throw DomainError("synthesize_sweep: need at least 16 points");
  }
  const double half_span = 0.5 * linewidths * p.f0_ghz / p.q_total();
  std::vector<double> freqs(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    freqs[static_cast<std::size_t>(i)] =
        p.f0_ghz - half_span +
        2.0 * half_span * static_cast<double>(i) / (points - 1);
  }
  S21Sweep sweep = notch_model(p, freqs);
  if (noise_sigma > 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, noise_sigma);
    for (auto& v : sweep.s21) {
      v += std::complex<double>(gauss(rng), gauss(rng));
    }
  }
  return sweep;
}

namespace {

NotchParams initial_guess(const S21Sweep& sweep) {
  const auto n = sweep.s21.size();
  std::vector<double> mag(n);
  for (std::size_t i = 0; i < n; ++i) mag[i] = std::abs(sweep.s21[i]);

  const auto dip =
      static_cast<std::size_t>(std::distance(
          mag.begin(), std::min_element(mag.begin(), mag.end())));
  const double f0 = sweep.freqs_ghz[dip];

  // Total Q from the half-depth width of the |S21|^2 dip.
  const double base = std::max(mag.front(), mag.back());
  const double half_level =
      std::sqrt(0.5 * (base * base + mag[dip] * mag[dip]));
  std::size_t left = dip, right = dip;
  while (left > 0 && mag[left] < half_level) --left;
  while (right + 1 < n && mag[right] < half_level) ++right;
  double width = sweep.freqs_ghz[right] - sweep.freqs_ghz[left];
  if (!(width > 0.0)) {
    width = (sweep.freqs_ghz.back() - sweep.freqs_ghz.front()) / 10.0;
  }
  double qt = f0 / width;

  // Diameter of the resonance circle fixes Q_t/Q_c; its rotation about the
  // off-resonant point fixes the asymmetry angle.
  std::vector<double> re(n), im(n);
  for (std::size_t i = 0; i < n; ++i) {
    re[i] = sweep.s21[i].real();
    im[i] = sweep.s21[i].imag();
  }
  const numerics::CircleFit circle = numerics::fit_circle(re, im);
  const double diameter = std::clamp(2.0 * circle.radius, 1e-6, 0.999999);
  const std::complex<double> centre(circle.cx, circle.cy);
  const std::complex<double> offres(1.0, 0.0);
  const double asymmetry = std::arg(offres - centre);

  NotchParams guess;
  guess.f0_ghz = f0;
  guess.qc = qt / diameter;
  guess.qi = 1.0 / std::max(1.0 / qt - 1.0 / guess.qc, 1e-12);
  guess.asymmetry_rad = asymmetry;
  return guess;
}

}  // namespace

ResonanceFit fit_notch(const S21Sweep& sweep, std::optional<NotchParams> guess) {
  if (sweep.freqs_ghz.size() != sweep.s21.size() ||
      sweep.freqs_ghz.size() < 16) {
    throw DomainError("fit_notch: need a sweep of at least 16 points");
  }
  const NotchParams start = guess ? *guess : initial_guess(sweep);

  const auto n = sweep.s21.size();
  const auto residual = [&](const Eigen::VectorXd& x) {
    NotchParams p;
    p.f0_ghz = x[0];
    p.qi = std::exp(x[1]);
    p.qc = std::exp(x[2]);
    p.asymmetry_rad = x[3];
    Eigen::VectorXd r(2 * static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const std::complex<double> d =
          notch_s21(p, sweep.freqs_ghz[i]) - sweep.s21[i];
      r[2 * static_cast<Eigen::Index>(i)] = d.real();
      r[2 * static_cast<Eigen::Index>(i) + 1] = d.imag();
    }
    return r;
  };

  Eigen::VectorXd x0(4);
  x0 << start.f0_ghz, std::log(std::max(start.qi, 1.0)),
      std::log(std::max(start.qc, 1.0)), start.asymmetry_rad;
  const numerics::LeastSquaresResult res =
      numerics::fit_least_squares(residual, x0);
  if (!res.converged) {
    throw FitError("fit_notch: no convergence within iteration budget",
                   {res.params[0], std::exp(res.params[1]),
                    std::exp(res.params[2]), res.params[3]},
                   res.residual_rms);
  }

  ResonanceFit fit;
  fit.params.f0_ghz = res.params[0];
  fit.params.qi = std::exp(res.params[1]);
  fit.params.qc = std::exp(res.params[2]);
  fit.params.asymmetry_rad = res.params[3];
  fit.residual_rms = res.residual_rms;
  fit.iterations = res.iterations;
  return fit;
}

double dispersive_pull_ghz(double f0_ghz, double chi_mhz, QubitState state) {
  if (!std::isfinite(chi_mhz)) {
    throw DomainError("dispersive_pull: chi must be finite");
  }
  switch (state) {
    case QubitState::ground:
      return f0_ghz - chi_mhz * 1e-3;
    case QubitState::excited:
      return f0_ghz + chi_mhz * 1e-3;
    case QubitState::saturated:
      return f0_ghz;
  }
  return f0_ghz;
}

}  // namespace qmux::s21
