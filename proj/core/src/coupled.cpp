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

#include "qmux/coupled.hpp"

#include <cmath>

#include "qmux/constants.hpp"
#include "qmux/errors.hpp"

namespace qmux::coupled {

double ej_at_flux_uev(double e_j_max_uev, double flux) {
  return e_j_max_uev * std::abs(std::cos(constants::pi * flux));
}

DispersiveShift dispersive_shift(double g_mhz, double delta0_ghz,
                                 double nu_c_ghz, double kappa_mhz) {
  if (delta0_ghz == 0.0 || delta0_ghz == nu_c_ghz) {
    throw DomainError("dispersive_shift: detuning sits exactly on a pole");
  }
  const double g_ghz = g_mhz * 1e-3;
  DispersiveShift out;
  out.chi_mhz =
      1e3 * g_ghz * g_ghz * nu_c_ghz / (delta0_ghz * (delta0_ghz - nu_c_ghz));
  const double guard_ghz =
      10.0 * 1e-3 * std::max(std::abs(out.chi_mhz), kappa_mhz);
  out.dispersive_valid = std::abs(delta0_ghz) > guard_ghz &&
                         std::abs(delta0_ghz - nu_c_ghz) > guard_ghz;
  return out;
}

double nu_c_from_chi_ghz(double chi_mhz, double delta0_ghz, double g_mhz) {
  const double chi_ghz = chi_mhz * 1e-3;
  const double g_ghz = g_mhz * 1e-3;
  const double denom = g_ghz * g_ghz + chi_ghz * delta0_ghz;
  if (denom == 0.0) {
    throw DomainError("nu_c_from_chi: degenerate denominator");
  }
  const double nu_c = chi_ghz * delta0_ghz * delta0_ghz / denom;
  if (!(nu_c > 0.0)) {
    throw DomainError(
        "nu_c_from_chi: inversion produced a non-physical charging energy");
  }
  return nu_c;
}

SpectroscopicEj ej_from_spectroscopy(double nu01_ghz, double nu_c_ghz) {
  if (!(nu01_ghz > 0.0) || !(nu_c_ghz > 0.0)) {
    throw DomainError("ej_from_spectroscopy: inputs must be positive");
  }
  SpectroscopicEj out;
  const double s = nu01_ghz + nu_c_ghz;
  out.nu_j_ghz = s * s / (8.0 * nu_c_ghz);
  out.e_j_uev = freq_ghz_to_energy_uev(out.nu_j_ghz);
  return out;
}

DressedPair dressed_levels(double nu01_ghz, double f_r_ghz, double g_mhz) {
  const double g_ghz = g_mhz * 1e-3;
  const double mean = 0.5 * (nu01_ghz + f_r_ghz);
  const double delta = nu01_ghz - f_r_ghz;
  const double split = std::sqrt(delta * delta + 4.0 * g_ghz * g_ghz);
  return {mean - 0.5 * split, mean + 0.5 * split};
}

std::vector<AnticrossingPoint> anticrossing_sweep(
    double nu_j_max_ghz, double nu_c_ghz, double f_r_ghz, double g_mhz,
    double flux_start, double flux_stop, int points, double flux_offset) {
  if (points < 2) {
    throw DomainError("anticrossing_sweep: need at least 2 points");
  }
  if (!(g_mhz > 0.0)) {
    throw DomainError("anticrossing_sweep: g must be positive");
  }
  std::vector<AnticrossingPoint> out;
  out.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    AnticrossingPoint p;
    p.flux = flux_start +
             (flux_stop - flux_start) * static_cast<double>(i) / (points - 1);
    const double nu_j =
        nu_j_max_ghz * std::abs(std::cos(constants::pi *
                                         (p.flux + flux_offset)));
    p.bare_qubit_ghz = std::sqrt(8.0 * nu_j * nu_c_ghz) - nu_c_ghz;
    p.bare_resonator_ghz = f_r_ghz;
    const DressedPair pair = dressed_levels(p.bare_qubit_ghz, f_r_ghz, g_mhz);
    p.lower_ghz = pair.lower_ghz;
    p.upper_ghz = pair.upper_ghz;
    out.push_back(p);
  }
  return out;
}

PurcellT1 purcell_t1(double kappa_mhz, double g_mhz, double delta0_ghz,
                     double t1_intrinsic_us) {
  if (!(kappa_mhz > 0.0) || !(g_mhz > 0.0) || !(t1_intrinsic_us > 0.0)) {
    throw DomainError("purcell_t1: rates must be positive");
  }
  PurcellT1 out;
  const double kappa_angular_per_us = constants::two_pi * kappa_mhz;  // 1/us
  if (delta0_ghz == 0.0) {
    // On resonance the excitation hybridises and decays at kappa/2.
    out.resonant_limit = true;
    out.t1_purcell_us = 2.0 / kappa_angular_per_us;
  } else {
    const double ratio = (g_mhz * 1e-3) / delta0_ghz;
    out.t1_purcell_us = 1.0 / (kappa_angular_per_us * ratio * ratio);
  }
  out.t1_total_us =
      1.0 / (1.0 / t1_intrinsic_us + 1.0 / out.t1_purcell_us);
  return out;
}

}  // namespace qmux::coupled
