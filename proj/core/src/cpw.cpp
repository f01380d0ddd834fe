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

#include "qmux/cpw.hpp"

#include <cmath>
#include <sstream>

#include "qmux/constants.hpp"
#include "qmux/errors.hpp"

namespace qmux::cpw {

namespace {

double derived_z0_ohm(const CpwGeometry& g) {
  return std::sqrt(g.l_per_len_nh_m * 1e-9 / (g.c_per_len_pf_m * 1e-12));
}

double derived_beta_rad_m_ghz(const CpwGeometry& g) {
  // 2 pi f sqrt(l c) at f = 1 GHz
  return constants::two_pi * 1e9 *
         std::sqrt(g.l_per_len_nh_m * 1e-9 * g.c_per_len_pf_m * 1e-12);
}

// Anchor for the calibrated vacuum-fluctuation scale: the reference
// quarter-wave design and the voltage scale it is known to produce.
constexpr double kAnchorF0Ghz = 7.0;
constexpr double kAnchorLengthUm = 4220.0;
constexpr double kAnchorCPerLenPfM = 153.0;
constexpr double kAnchorNu0Ghz = 0.623;

}  // namespace

CpwGeometry CpwGeometry::from_line_constants(double width_um, double gap_um,
                                             double c_pf_m, double l_nh_m) {
  CpwGeometry g;
  g.centre_width_um = width_um;
  g.gap_um = gap_um;
  g.c_per_len_pf_m = c_pf_m;
  g.l_per_len_nh_m = l_nh_m;
  g.z0_ohm = derived_z0_ohm(g);
  g.beta_rad_m_ghz = derived_beta_rad_m_ghz(g);
  return g;
}

std::vector<std::string> CpwGeometry::consistency_warnings(
    double rel_tol) const {
  std::vector<std::string> warnings;
  const double z0 = derived_z0_ohm(*this);
  if (std::abs(z0 - z0_ohm) > rel_tol * z0_ohm) {
    std::ostringstream os;
    os << "Z0 " << z0_ohm << " Ohm differs from sqrt(l_r/c_r) = " << z0
       << " Ohm by more than " << rel_tol * 100 << "%";
    warnings.push_back(os.str());
  }
  const double beta = derived_beta_rad_m_ghz(*this);
  if (std::abs(beta - beta_rad_m_ghz) > rel_tol * beta_rad_m_ghz) {
    std::ostringstream os;
    os << "beta " << beta_rad_m_ghz
       << " rad/m/GHz differs from 2 pi sqrt(l_r c_r) = " << beta
       << " rad/m/GHz by more than " << rel_tol * 100 << "%";
    warnings.push_back(os.str());
  }
  return warnings;
}

double quarter_wave_length_um(double f0_ghz, const CpwGeometry& geom) {
  if (!(f0_ghz > 0.0)) {
    throw DomainError("quarter_wave_length: f0 must be positive");
  }
  const double length_m =
      (constants::pi / 2.0) / (geom.beta_rad_m_ghz * f0_ghz);
  return length_m * 1e6;
}

double qc_from_coupler_s21(double s21_db) {
  if (!(s21_db < 0.0)) {
    throw DomainError(
        "qc_from_coupler_s21: coupler transmission must be attenuating "
        "(S21 < 0 dB)");
  }
  const double power_ratio = std::pow(10.0, s21_db / 10.0);
  return constants::pi / (2.0 * power_ratio);
}

double linewidth_mhz(double f0_ghz, double qc) {
  if (!(f0_ghz > 0.0) || !(qc > 0.0)) {
    throw DomainError("linewidth: f0 and Qc must be positive");
  }
  return 1e3 * f0_ghz / qc;
}

VacuumFluctuations vacuum_fluctuations(double f0_ghz, const CpwGeometry& geom,
                                       double length_um,
                                       VacuumFluctuationModel model) {
  if (!(f0_ghz > 0.0) || !(length_um > 0.0) ||
      !(geom.c_per_len_pf_m > 0.0)) {
    throw DomainError("vacuum_fluctuations: inputs must be positive");
  }
  double nu0_ghz = 0.0;
  switch (model) {
    case VacuumFluctuationModel::literal: {
      const double denom = constants::resistance_quantum_ohm *
                           (length_um * 1e-6) *
                           (geom.c_per_len_pf_m * 1e-12);
      nu0_ghz = std::sqrt(0.5 * f0_ghz * 1e9 / denom) * 1e-9;
      break;
    }
    case VacuumFluctuationModel::calibrated: {
      // Same sqrt(f0 / (L c_r)) scaling, pinned to the anchor design.
      nu0_ghz = kAnchorNu0Ghz *
                std::sqrt((f0_ghz / kAnchorF0Ghz) *
                          (kAnchorLengthUm / length_um) *
                          (kAnchorCPerLenPfM / geom.c_per_len_pf_m));
      break;
    }
  }
  VacuumFluctuations out;
  out.nu_rms_mhz = nu0_ghz * 1e3;
  out.v_rms_uv = freq_ghz_to_voltage_uv(nu0_ghz);
  return out;
}

ResonatorDesign design_resonator(double f0_ghz, const CpwGeometry& geom,
                                 double s21_db, double qi) {
  if (!(qi > 0.0)) {
    throw DomainError("design_resonator: Qi must be positive");
  }
  ResonatorDesign d;
  d.f0_bare_ghz = f0_ghz;
  d.length_um = quarter_wave_length_um(f0_ghz, geom);
  d.qc = qc_from_coupler_s21(s21_db);
  d.qi = qi;
  d.kappa_over_2pi_mhz = linewidth_mhz(f0_ghz, d.qc);
  return d;
}

}  // namespace qmux::cpw
