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

#include "doctest.h"
#include "qmux/errors.hpp"
#include "qmux/photon_source.hpp"

using namespace qmux;
namespace ps = qmux::photon_source;

TEST_CASE("polarisation after the pi pulse") {
  CHECK(ps::epsilon_after_pi(80.0, 4.72) ==
        doctest::Approx(0.9830508).epsilon(1e-7));
  CHECK(ps::epsilon_after_pi(0.0, 4.72) == 1.0);
  CHECK(ps::epsilon_after_pi(80.0, 70.0) ==
        doctest::Approx(0.9988571).epsilon(1e-7));
  CHECK_THROWS_AS(ps::epsilon_after_pi(5000.0, 0.005), DomainError);
}

TEST_CASE("static source efficiency") {
  const double eta =
      ps::eta_static(0.983, 7.5, 5000.0, 54.3, 0.990, 4.72, 6.69);
  CHECK(eta == doctest::Approx(0.0086842).epsilon(1e-4));
  // quoted as roughly 0.9%
  CHECK(std::abs(eta - 0.0087) < 0.001);
  CHECK(ps::eta_static(0.983, 7.5, 5000.0, 0.0, 0.990, 4.72, 6.69) == 0.0);
  CHECK_THROWS_AS(ps::eta_static(1.5, 7.5, 5000.0, 54.3, 0.990, 4.72, 6.69),
                  DomainError);
}

TEST_CASE("dynamic source efficiency") {
  CHECK(ps::eta_dynamic(38600.0, 5500.0, 80.0, 58.0, 4.72) ==
        doctest::Approx(0.850063).epsilon(1e-6));
  CHECK(ps::eta_dynamic(2e6, 3500.0, 80.0, 58.0, 70.0) ==
        doctest::Approx(0.996287).epsilon(1e-6));
  CHECK(ps::eta_dynamic(2e6, 3500.0, 80.0, 58.0, 70.0) > 0.995);
  // vanishing external coupling leaves only the pulse-and-swap ceiling
  CHECK(ps::eta_dynamic(38600.0, 1e-9, 80.0, 58.0, 4.72) ==
        doctest::Approx(std::exp(-138.0 / 4720.0)).epsilon(1e-6));
}

TEST_CASE("dynamic efficiency is monotone in every argument") {
  const double base = ps::eta_dynamic(38600.0, 5500.0, 80.0, 58.0, 4.72);
  CHECK(ps::eta_dynamic(40000.0, 5500.0, 80.0, 58.0, 4.72) > base);
  CHECK(ps::eta_dynamic(38600.0, 6000.0, 80.0, 58.0, 4.72) < base);
  CHECK(ps::eta_dynamic(38600.0, 5500.0, 90.0, 58.0, 4.72) < base);
  CHECK(ps::eta_dynamic(38600.0, 5500.0, 80.0, 70.0, 4.72) < base);
  CHECK(ps::eta_dynamic(38600.0, 5500.0, 80.0, 58.0, 5.5) > base);
}

TEST_CASE("optimal coupling quality factor") {
  const double qc = ps::qc_optimal(7.5, 70.0, 54.3, 1.5);
  CHECK(qc == doctest::Approx(4322.71).epsilon(1e-5));
  // linear in T1, inverse square in the detuning
  CHECK(ps::qc_optimal(7.5, 140.0, 54.3, 1.5) ==
        doctest::Approx(2.0 * qc).epsilon(1e-12));
  CHECK(ps::qc_optimal(7.5, 70.0, 54.3, 3.0) ==
        doctest::Approx(qc / 4.0).epsilon(1e-12));
  CHECK(ps::qc_optimal(7.5, 70.0, 54.3, 1.5,
                       ps::ResonatorFreqConvention::angular) ==
        doctest::Approx(qc * 2.0 * 3.14159265358979).epsilon(1e-10));
}

TEST_CASE("report partitions the dynamic losses exactly") {
  ps::PhotonSourceParams params;  // defaults carry the measured device
  params.f0_ghz = 7.5;
  params.qc = 5500.0;
  const auto report = ps::analyze(params);
  CHECK(report.eta_dynamic == doctest::Approx(0.850063).epsilon(1e-6));
  const double total = report.eta_dynamic + report.loss.internal_loss +
                       report.loss.decay_during_pulse +
                       report.loss.decay_during_swap;
  CHECK(std::abs(total - 1.0) < 1e-12);
  CHECK(report.loss.internal_loss > 0.0);
  CHECK(report.loss.internal_loss < 1.0);
  CHECK(report.loss.decay_during_pulse ==
        doctest::Approx(0.0168063).epsilon(1e-5));
  CHECK(report.loss.decay_during_swap ==
        doctest::Approx(0.0120077).epsilon(1e-5));
  CHECK(report.eta_static_purcell_reference == 0.018);

  // the paper's central comparison: dynamic beats static on this device
  CHECK(report.eta_static < report.eta_dynamic);
}
