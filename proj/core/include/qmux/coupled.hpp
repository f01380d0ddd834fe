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

#ifndef QMUX_COUPLED_HPP
#define QMUX_COUPLED_HPP

#include <vector>

// Qubit-resonator coupling: flux-tuned Josephson energy, dressed one-
// excitation levels, dispersive shift and its spectroscopic inversions, and
// the Purcell contribution to qubit relaxation.
//
// Conventions: g and chi are quoted as cyclic frequencies g/2pi, chi/2pi in
// MHz; detunings and transition frequencies in GHz.
namespace qmux::coupled {

struct CoupledSystem {
  double g_over_2pi_mhz = 54.3;
  double f_r_ghz = 7.522;        // bare resonator
  double nu01_ghz = 8.512;       // flux-dependent qubit transition
  double kappa_over_2pi_mhz = 1.37;
  double flux = 0.0;             // Phi / Phi_0

  double delta0_ghz() const { return nu01_ghz - f_r_ghz; }
};

/// Flux-tuned Josephson energy of a symmetric two-junction loop:
/// E_J(Phi) = E_J_max |cos(pi Phi/Phi_0)|. Total, periodic, even.
double ej_at_flux_uev(double e_j_max_uev, double flux);

struct DispersiveShift {
  double chi_mhz = 0.0;
  /// False when the detuning sits within 10 effective linewidths of either
  /// pole (delta0 = 0 or delta0 = nu_c); the perturbative expression is not
  /// trustworthy there.
  bool dispersive_valid = true;
};

/// chi/2pi = (g/2pi)^2 nu_c / (delta0 (delta0 - nu_c)).
/// kappa_mhz only widens the pole guard; it does not change the value.
DispersiveShift dispersive_shift(double g_mhz, double delta0_ghz,
                                 double nu_c_ghz, double kappa_mhz = 0.0);

/// Inverts the dispersive shift for the charging-energy frequency:
/// nu_c = chi delta0^2 / ((g/2pi)^2 + chi delta0), all cyclic.
double nu_c_from_chi_ghz(double chi_mhz, double delta0_ghz, double g_mhz);

struct SpectroscopicEj {
  double nu_j_ghz = 0.0;
  double e_j_uev = 0.0;
};

/// Josephson energy from spectroscopy: nu_J = (nu01 + nu_c)^2 / (8 nu_c),
/// the exact inverse of nu01 = sqrt(8 nu_J nu_c) - nu_c.
SpectroscopicEj ej_from_spectroscopy(double nu01_ghz, double nu_c_ghz);

struct DressedPair {
  double lower_ghz = 0.0;
  double upper_ghz = 0.0;
};

/// One-excitation dressed doublet of the two-level Jaynes-Cummings block:
/// (nu01 + f_r)/2 +- sqrt(delta0^2 + (2 g/2pi)^2)/2.
DressedPair dressed_levels(double nu01_ghz, double f_r_ghz, double g_mhz);

struct AnticrossingPoint {
  double flux = 0.0;
  double lower_ghz = 0.0;
  double upper_ghz = 0.0;
  double bare_qubit_ghz = 0.0;
  double bare_resonator_ghz = 0.0;
};

/// Dressed branches along a flux sweep. The bare qubit line follows
/// nu01(Phi) = sqrt(8 nu_J(Phi) nu_c) - nu_c with nu_J flux-tuned from
/// nu_j_max. flux_offset shifts the applied flux axis (experimental offset).
std::vector<AnticrossingPoint> anticrossing_sweep(
    double nu_j_max_ghz, double nu_c_ghz, double f_r_ghz, double g_mhz,
    double flux_start, double flux_stop, int points, double flux_offset = 0.0);

struct PurcellT1 {
  double t1_total_us = 0.0;
  double t1_purcell_us = 0.0;  // resonator-mediated component alone
  /// Set at delta0 = 0 where the dispersive rate diverges; the reported
  /// total then uses the resonant-limit decay kappa/2 instead.
  bool resonant_limit = false;
};

/// Purcell-limited relaxation: Gamma_P = kappa_angular (g/delta0)^2 added to
/// the intrinsic rate 1/t1_intrinsic.
PurcellT1 purcell_t1(double kappa_mhz, double g_mhz, double delta0_ghz,
                     double t1_intrinsic_us);

}  // namespace qmux::coupled

#endif  // QMUX_COUPLED_HPP
