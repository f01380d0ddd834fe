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

#include "qmux/transmon.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "qmux/constants.hpp"
#include "qmux/errors.hpp"

namespace qmux::transmon {

namespace {

void check_design_preconditions(double ratio, double nu01_ghz) {
  if (!(ratio > 0.125)) {
    throw DomainError("transmon design: requires E_J/E_C > 1/8");
  }
  if (!(nu01_ghz > 0.0)) {
    throw DomainError("transmon design: nu01 must be positive");
  }
}

}  // namespace

double rn_for_target_kohm(double ratio, double nu01_ghz, double nu_gap_ghz) {
  check_design_preconditions(ratio, nu01_ghz);
  if (!(nu_gap_ghz > 0.0)) {
    throw DomainError("rn_for_target: nu_gap must be positive");
  }
  return (constants::resistance_quantum_kohm / 2.0) *
         ((std::sqrt(8.0 * ratio) - 1.0) / ratio) * (nu_gap_ghz / nu01_ghz);
}

double csigma_for_target_ff(double ratio, double nu01_ghz) {
  check_design_preconditions(ratio, nu01_ghz);
  // 1/(kOhm GHz) = pF, so scale to fF.
  return 1e3 / constants::resistance_quantum_kohm *
         ((std::sqrt(8.0 * ratio) - 1.0) / 8.0) / nu01_ghz;
}

double ec_from_csigma_uev(double c_sigma_ff) {
  if (!(c_sigma_ff > 0.0)) {
    throw DomainError("ec_from_csigma: capacitance must be positive");
  }
  const double e = constants::elementary_charge_c;
  const double joule = e * e / (2.0 * c_sigma_ff * 1e-15);
  return joule / e * 1e6;
}

double ej_from_rn_uev(double r_n_kohm, double nu_gap_ghz) {
  if (!(r_n_kohm > 0.0) || !(nu_gap_ghz > 0.0)) {
    throw DomainError("ej_from_rn: inputs must be positive");
  }
  return constants::resistance_quantum_kohm / (2.0 * r_n_kohm) *
         freq_ghz_to_energy_uev(nu_gap_ghz);
}

double cg_ratio_for_chi(double ratio, double delta0_ghz, double nu0_rms_ghz,
                        double chi_over_2pi_ghz, double nu_c_ghz) {
  if (!(ratio > 0.0) || !(nu0_rms_ghz > 0.0) || !(nu_c_ghz > 0.0) ||
      !(delta0_ghz > 0.0) || chi_over_2pi_ghz < 0.0) {
    throw DomainError("cg_ratio_for_chi: inputs must be positive");
  }
  if (!(delta0_ghz > nu_c_ghz)) {
    throw DomainError(
        "cg_ratio_for_chi: detuning must exceed nu_c (design straddles the "
        "dispersive-shift sign change)");
  }
  return std::pow(2.0 / ratio, 0.25) * (delta0_ghz / nu0_rms_ghz) *
         std::sqrt(chi_over_2pi_ghz / nu_c_ghz) *
         std::sqrt(1.0 - nu_c_ghz / delta0_ghz);
}

std::vector<double> diagonalize(double e_j_uev, double e_c_uev, double n_g,
                                int n_cut, int num_levels) {
  if (!(e_j_uev >= 0.0) || !(e_c_uev > 0.0)) {
    throw DomainError("diagonalize: E_J must be >= 0 and E_C > 0");
  }
  if (n_cut < 5) {
    throw DomainError("diagonalize: n_cut must be at least 5");
  }
  const int dim = 2 * n_cut + 1;
  if (num_levels < 1 || num_levels > dim - 2) {
    throw DomainError(
        "diagonalize: requested level too close to the basis edge; "
        "increase n_cut");
  }

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const double n = static_cast<double>(i - n_cut);
    h(i, i) = 4.0 * e_c_uev * (n - n_g) * (n - n_g);
    if (i + 1 < dim) {
      h(i, i + 1) = -e_j_uev / 2.0;
      h(i + 1, i) = -e_j_uev / 2.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      h, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();

  std::vector<double> out(static_cast<std::size_t>(num_levels));
  for (int m = 0; m < num_levels; ++m) {
    out[static_cast<std::size_t>(m)] = energy_uev_to_freq_ghz(ev[m] - ev[0]);
  }
  return out;
}

double charge_dispersion_mhz(double e_j_uev, double e_c_uev, int level,
                             int grid_points, int n_cut) {
  if (level < 0) {
    throw DomainError("charge_dispersion: level must be >= 0");
  }
  if (grid_points < 21) {
    throw DomainError("charge_dispersion: need at least 21 grid points");
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_points; ++i) {
    const double n_g = 0.5 * static_cast<double>(i) / (grid_points - 1);
    double value = 0.0;
    if (level == 0) {
      // Ground level tracked on an absolute scale: recompute its energy
      // rather than the always-zero ground-relative frequency.
      const int dim = 2 * n_cut + 1;
      Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
      for (int k = 0; k < dim; ++k) {
        const double n = static_cast<double>(k - n_cut);
        h(k, k) = 4.0 * e_c_uev * (n - n_g) * (n - n_g);
        if (k + 1 < dim) {
          h(k, k + 1) = -e_j_uev / 2.0;
          h(k + 1, k) = -e_j_uev / 2.0;
        }
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
          h, Eigen::EigenvaluesOnly);
      value = energy_uev_to_freq_ghz(solver.eigenvalues()[0]);
    } else {
      value = diagonalize(e_j_uev, e_c_uev, n_g, n_cut,
                          level + 1)[static_cast<std::size_t>(level)];
    }
    lo = std::min(lo, value);
    hi = std::max(hi, value);
  }
  return (hi - lo) * 1e3;
}

TransmonSpectrum compute_spectrum(double e_j_uev, double e_c_uev,
                                  int num_levels, int n_g_points, int n_cut) {
  if (n_g_points < 2) {
    throw DomainError("compute_spectrum: need at least 2 n_g points");
  }
  TransmonSpectrum spec;
  spec.n_g_grid.resize(static_cast<std::size_t>(n_g_points));
  spec.levels.resize(static_cast<std::size_t>(n_g_points));
  double nu01_lo = std::numeric_limits<double>::infinity();
  double nu01_hi = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_g_points; ++i) {
    const double n_g = 0.5 * static_cast<double>(i) / (n_g_points - 1);
    spec.n_g_grid[static_cast<std::size_t>(i)] = n_g;
    spec.levels[static_cast<std::size_t>(i)] =
        diagonalize(e_j_uev, e_c_uev, n_g, n_cut, num_levels);
    const double nu01 = spec.levels[static_cast<std::size_t>(i)][1];
    nu01_lo = std::min(nu01_lo, nu01);
    nu01_hi = std::max(nu01_hi, nu01);
  }
  const auto& at_zero = spec.levels.front();
  spec.nu01_ghz = at_zero[1];
  if (num_levels >= 3) {
    spec.nu12_ghz = at_zero[2] - at_zero[1];
    spec.anharmonicity_ghz = spec.nu01_ghz - spec.nu12_ghz;
  }
  spec.dispersion_01_mhz = (nu01_hi - nu01_lo) * 1e3;
  return spec;
}

TransmonDesign design_transmon(double ratio, double nu01_ghz,
                               double nu_gap_ghz, double delta0_ghz,
                               double nu0_rms_ghz, double chi_target_ghz) {
  TransmonDesign d;
  d.ratio = ratio;
  d.nu01_max_ghz = nu01_ghz;
  d.nu_gap_ghz = nu_gap_ghz;
  d.r_n_kohm = rn_for_target_kohm(ratio, nu01_ghz, nu_gap_ghz);
  d.c_sigma_ff = csigma_for_target_ff(ratio, nu01_ghz);
  d.e_c_uev = ec_from_csigma_uev(d.c_sigma_ff);
  d.e_j_max_uev = ratio * d.e_c_uev;
  d.nu_c_ghz = energy_uev_to_freq_ghz(d.e_c_uev);
  d.c_g_ff = d.c_sigma_ff * cg_ratio_for_chi(ratio, delta0_ghz, nu0_rms_ghz,
                                             chi_target_ghz, d.nu_c_ghz);
  return d;
}

}  // namespace qmux::transmon
