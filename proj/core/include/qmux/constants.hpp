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

#ifndef QMUX_CONSTANTS_HPP
#define QMUX_CONSTANTS_HPP

#include <cmath>
#include <limits>

// Physical constants (2019 SI exact values) and the fixed unit conversions
// used throughout. Canonical working units: GHz, ns, fF, kOhm, uV. All
// energies are carried as cyclic frequencies unless a function name says
// otherwise.
namespace qmux::constants {

inline constexpr double planck_j_s = 6.62607015e-34;
inline constexpr double elementary_charge_c = 1.602176634e-19;

/// h expressed in ueV per GHz, so that E[ueV] = planck_uev_ghz * nu[GHz].
inline constexpr double planck_uev_ghz =
    planck_j_s / elementary_charge_c * 1e15;

/// Quantum of resistance h/4e^2 for Cooper pairs, in Ohm and kOhm.
inline constexpr double resistance_quantum_ohm =
    planck_j_s / (4.0 * elementary_charge_c * elementary_charge_c);
inline constexpr double resistance_quantum_kohm = resistance_quantum_ohm / 1e3;

/// Superconducting flux quantum h/2e in Wb.
inline constexpr double flux_quantum_wb =
    planck_j_s / (2.0 * elementary_charge_c);

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

}  // namespace qmux::constants

namespace qmux {

/// E = h nu with h in ueV/GHz. Total on finite input.
inline double energy_uev_to_freq_ghz(double energy_uev) {
  return energy_uev / constants::planck_uev_ghz;
}

inline double freq_ghz_to_energy_uev(double freq_ghz) {
  return freq_ghz * constants::planck_uev_ghz;
}

/// Voltage carried by a cyclic frequency through e V = h nu.
inline double freq_ghz_to_voltage_uv(double freq_ghz) {
  return freq_ghz * constants::planck_uev_ghz;  // e V[ueV] == V[uV]
}

inline double voltage_uv_to_freq_ghz(double voltage_uv) {
  return voltage_uv / constants::planck_uev_ghz;
}

}  // namespace qmux

#endif  // QMUX_CONSTANTS_HPP
