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

#ifndef QMUX_TRANSMON_HPP
#define QMUX_TRANSMON_HPP

#include <vector>

// Transmon design inversions and exact charge-basis diagonalization of
//   H = 4 E_C (n - n_g)^2 - E_J cos(phi).
//
// Design inputs are the energy ratio r = E_J/E_C, the target 0->1 transition
// frequency, and the superconducting gap frequency; outputs are the
// fabrication-facing junction resistance and capacitances.
namespace qmux::transmon {

struct TransmonDesign {
  double ratio = 0.0;         // E_J / E_C
  double nu01_max_ghz = 0.0;  // 0->1 transition at zero flux
  double nu_gap_ghz = 0.0;    // superconducting gap as a frequency
  double r_n_kohm = 0.0;      // junction normal-state resistance
  double c_sigma_ff = 0.0;    // total shunt capacitance
  double c_g_ff = 0.0;        // resonator coupling capacitance
  double e_j_max_uev = 0.0;
  double e_c_uev = 0.0;
  double nu_c_ghz = 0.0;      // charging energy as a frequency
};

/// Junction resistance realizing the (r, nu01) target at gap frequency
/// nu_gap: R_N = (R_Q/2) (sqrt(8r)-1)/r (nu_gap/nu01). Requires r > 1/8.
double rn_for_target_kohm(double ratio, double nu01_ghz, double nu_gap_ghz);

/// Shunt capacitance realizing the same target:
/// C_sigma = (1/R_Q) (sqrt(8r)-1)/8 (1/nu01).
double csigma_for_target_ff(double ratio, double nu01_ghz);

/// Charging energy of a shunt capacitance, E_C = e^2 / (2 C_sigma).
double ec_from_csigma_uev(double c_sigma_ff);

/// Josephson energy of a junction by the Ambegaokar-Baratoff proportionality
/// E_J = (R_Q / 2 R_N) h nu_gap. Inverse route of rn_for_target.
double ej_from_rn_uev(double r_n_kohm, double nu_gap_ghz);

/// Coupling capacitance fraction C_g/C_sigma realizing a target dispersive
/// shift chi (cyclic, GHz) at detuning delta0 given the resonator vacuum
/// fluctuation scale nu0_rms:
///   C_g/C_sigma = (2/r)^(1/4) (delta0/nu0_rms) sqrt(chi/nu_c)
///                 sqrt(1 - nu_c/delta0).
/// Requires delta0 > nu_c (the shift changes sign at the straddling point).
double cg_ratio_for_chi(double ratio, double delta0_ghz, double nu0_rms_ghz,
                        double chi_over_2pi_ghz, double nu_c_ghz);

/// Eigenfrequencies (GHz, relative to the ground level, ascending) of the
/// charge-basis Hamiltonian truncated to n in [-n_cut, n_cut] at offset
/// charge n_g. num_levels must stay at least 2 levels clear of the basis
/// edge; n_cut >= 5.
std::vector<double> diagonalize(double e_j_uev, double e_c_uev, double n_g,
                                int n_cut, int num_levels = 6);

/// Peak-to-peak offset-charge spread of level m in MHz over a uniform n_g
/// grid on [0, 1/2]. For m >= 1 this is the spread of the 0->m transition;
/// for m = 0 it is the spread of the ground level itself.
double charge_dispersion_mhz(double e_j_uev, double e_c_uev, int level,
                             int grid_points = 41, int n_cut = 30);

struct TransmonSpectrum {
  std::vector<double> n_g_grid;
  /// levels[i][m]: frequency of level m (GHz, relative to ground at the same
  /// n_g) at n_g_grid[i].
  std::vector<std::vector<double>> levels;
  double nu01_ghz = 0.0;          // evaluated at n_g = 0
  double nu12_ghz = 0.0;
  double anharmonicity_ghz = 0.0; // nu01 - nu12
  double dispersion_01_mhz = 0.0; // peak-to-peak nu01 over the grid
};

TransmonSpectrum compute_spectrum(double e_j_uev, double e_c_uev,
                                  int num_levels = 4, int n_g_points = 41,
                                  int n_cut = 30);

/// Full design chain from (r, nu01, nu_gap) and the coupling targets.
TransmonDesign design_transmon(double ratio, double nu01_ghz,
                               double nu_gap_ghz, double delta0_ghz,
                               double nu0_rms_ghz, double chi_target_ghz);

}  // namespace qmux::transmon

#endif  // QMUX_TRANSMON_HPP
