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

#include <cmath>
#include <random>

#include "doctest.h"
#include "qmux/constants.hpp"

using namespace qmux;

TEST_CASE("resistance quantum and flux quantum from defining constants") {
  // h/4e^2 = 6.4532 kOhm; the conventional display value 6.46 kOhm is a
  // slightly generous rounding (actual deviation 0.105%).
  CHECK(constants::resistance_quantum_kohm ==
        doctest::Approx(6.4532018648).epsilon(1e-9));
  CHECK(std::abs(constants::resistance_quantum_kohm - 6.46) / 6.46 < 1.5e-3);

  // mutual consistency to machine precision
  const double e = constants::elementary_charge_c;
  CHECK(std::abs(constants::resistance_quantum_ohm * 4.0 * e * e -
                 constants::planck_j_s) /
            constants::planck_j_s <
        1e-12);
  CHECK(std::abs(constants::flux_quantum_wb * 2.0 * e -
                 constants::planck_j_s) /
            constants::planck_j_s <
        1e-12);
  CHECK(constants::flux_quantum_wb ==
        doctest::Approx(2.067833848e-15).epsilon(1e-9));
}

TEST_CASE("energy to frequency conversion") {
  // 1 GHz corresponds to 4.1357 ueV
  CHECK(std::abs(constants::planck_uev_ghz - 4.1357) / 4.1357 < 1e-4);

  CHECK(energy_uev_to_freq_ghz(2.23) ==
        doctest::Approx(0.539212).epsilon(1e-5));
  CHECK(energy_uev_to_freq_ghz(0.0) == 0.0);
  // gap energy of aluminium, about 48.3 GHz
  CHECK(energy_uev_to_freq_ghz(200.0) ==
        doctest::Approx(48.3598).epsilon(1e-5));
}

TEST_CASE("conversion round trip is an involution") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> log_e(-6.0, 6.0);
  for (int i = 0; i < 1000; ++i) {
    const double e_uev = std::pow(10.0, log_e(rng));
    const double back = freq_ghz_to_energy_uev(energy_uev_to_freq_ghz(e_uev));
    CHECK(std::abs(back - e_uev) / e_uev < 1e-12);
  }
}

TEST_CASE("voltage carried by a frequency") {
  // e V = h nu: 623 MHz corresponds to 2.577 uV
  CHECK(freq_ghz_to_voltage_uv(0.623) ==
        doctest::Approx(2.576521).epsilon(1e-6));
  CHECK(voltage_uv_to_freq_ghz(freq_ghz_to_voltage_uv(1.234)) ==
        doctest::Approx(1.234).epsilon(1e-14));
}
