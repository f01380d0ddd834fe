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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "qmux/constants.hpp"
#include "qmux/errors.hpp"
#include "qmux/lindblad.hpp"
#include "qmux/numerics.hpp"

using namespace qmux;
using lindblad::LindbladConfig;
using lindblad::LindbladEngine;
using lindblad::PulseSegment;
using lindblad::PulseSequence;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LindbladConfig paper_qubit(double t2_us = 6.38) {
  LindbladConfig c;
  c.qubit_freq_ghz = 8.512;
  c.t1_us = 4.72;
  c.t2_us = t2_us;
  c.rabi_rate_mhz = 6.17;
  return c;
}

LindbladConfig closed_qubit() {
  LindbladConfig c;
  c.qubit_freq_ghz = 8.512;
  c.t1_us = kInf;
  c.t2_us = kInf;
  c.rabi_rate_mhz = 6.17;
  return c;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  }
  return v;
}

PulseSequence resonant_drive(const LindbladConfig& c, double duration_ns) {
  PulseSequence seq;
  seq.segments = {PulseSegment::drive(c.qubit_freq_ghz, c.rabi_rate_mhz,
                                      duration_ns)};
  return seq;
}

}  // namespace

TEST_CASE("configuration validation") {
  LindbladConfig c = paper_qubit();
  c.t2_us = 2.0 * c.t1_us + 0.5;  // beyond the physicality bound
  CHECK_THROWS_AS(c.validate(), DomainError);

  c = paper_qubit();
  c.integrator_step_ns = 0.0;
  CHECK_THROWS_AS(c.validate(), DomainError);

  c = paper_qubit();
  c.hilbert.qubit_levels = 4;
  CHECK_THROWS_AS(c.validate(), DomainError);

  c = paper_qubit();
  c.kappa_ext_mhz = 1.4;  // resonator rate without a resonator mode
  CHECK_THROWS_AS(c.validate(), DomainError);

  // derived pure dephasing: 1/Tphi = 1/T2 - 1/(2 T1)
  c = paper_qubit(6.38);
  CHECK(c.pure_dephasing_rate_per_us() ==
        doctest::Approx(1.0 / 6.38 - 0.5 / 4.72).epsilon(1e-12));
}

TEST_CASE("pulse sequence validation") {
  PulseSequence seq;
  CHECK_THROWS_AS(seq.validate(), DomainError);

  seq.segments = {PulseSegment::delay(-1.0)};
  CHECK_THROWS_AS(seq.validate(), DomainError);

  PulseSegment bad = PulseSegment::delay(10.0);
  bad.rabi_rate_mhz = 1.0;
  seq.segments = {bad};
  CHECK_THROWS_AS(seq.validate(), DomainError);
}

TEST_CASE("zero-duration sequence leaves the ground state untouched") {
  const auto trace = lindblad::evolve(closed_qubit(),
                                      resonant_drive(closed_qubit(), 0.0));
  REQUIRE(!trace.values.empty());
  CHECK(trace.times_ns.front() == 0.0);
  CHECK(trace.values.front() == 0.0);
}

TEST_CASE("closed-system resonant drive matches the analytic oscillation") {
  const auto c = closed_qubit();
  auto seq = resonant_drive(c, 1000.0);
  auto config = c;
  config.sample_dt_ns = 1.0;
  const auto trace = lindblad::evolve(config, seq);
  double max_err = 0.0;
  for (std::size_t i = 0; i < trace.times_ns.size(); ++i) {
    const double t = trace.times_ns[i];
    const double analytic =
        std::pow(std::sin(constants::pi * c.rabi_rate_mhz * 1e-3 * t), 2);
    max_err = std::max(max_err, std::abs(trace.values[i] - analytic));
  }
  CHECK(max_err < 1e-3);

  // the pi time for 6.17 MHz is 81 ns
  CHECK(c.pi_time_ns() == doctest::Approx(81.04).epsilon(1e-3));
  LindbladEngine engine(c);
  engine.run_segment(PulseSegment::drive(c.qubit_freq_ghz, c.rabi_rate_mhz,
                                         c.pi_time_ns()));
  CHECK(engine.excited_population() == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("detuned drive: generalized frequency and reduced contrast") {
  const auto c = closed_qubit();
  auto config = c;
  config.sample_dt_ns = 1.0;
  PulseSequence seq;
  seq.segments = {PulseSegment::drive(c.qubit_freq_ghz + 8e-3,
                                      c.rabi_rate_mhz, 1000.0)};
  const auto trace = lindblad::evolve(config, seq);

  const double peak =
      *std::max_element(trace.values.begin(), trace.values.end());
  // Omega^2 / (Omega^2 + Delta^2) with Omega = 6.17, Delta = 8 MHz
  CHECK(peak == doctest::Approx(0.372973).epsilon(2e-3));

  const auto peaks = numerics::spectral_peaks(trace.times_ns, trace.values,
                                              2e-3, 2e-2, 1e-6, 1);
  REQUIRE(peaks.size() == 1);
  CHECK(peaks[0].frequency * 1e3 == doctest::Approx(10.103).epsilon(5e-3));
}

TEST_CASE("trace preservation and positivity along a driven decay") {
  auto config = paper_qubit(6.38);
  config.sample_dt_ns = 50.0;
  LindbladEngine engine(config);
  double worst_trace = 0.0;
  double worst_eig = 0.0;
  const auto check_state = [&](double, const LindbladEngine& e) {
    worst_trace = std::max(worst_trace, e.trace_deviation());
    const Eigen::VectorXd ev =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(e.density())
            .eigenvalues();
    worst_eig = std::min(worst_eig, ev.minCoeff());
  };
  engine.run_segment(PulseSegment::drive(config.qubit_freq_ghz,
                                         config.rabi_rate_mhz,
                                         config.pi_time_ns()),
                     check_state);
  engine.run_segment(PulseSegment::delay(5000.0), check_state);
  CHECK(worst_trace < 1e-8);
  CHECK(worst_eig > -1e-8);
}

TEST_CASE("step halving leaves observables unchanged within tolerance") {
  auto config = paper_qubit(6.38);
  PulseSequence seq;
  seq.segments = {
      PulseSegment::drive(config.qubit_freq_ghz, config.rabi_rate_mhz,
                          config.pi_time_ns()),
      PulseSegment::delay(2000.0),
  };
  config.sample_dt_ns = 500.0;
  config.integrator_step_ns = 0.25;
  const auto coarse = lindblad::evolve(config, seq);
  config.integrator_step_ns = 0.125;
  const auto fine = lindblad::evolve(config, seq);
  REQUIRE(coarse.values.size() == fine.values.size());
  for (std::size_t i = 0; i < coarse.values.size(); ++i) {
    CHECK(std::abs(coarse.values[i] - fine.values[i]) < config.tolerance);
  }
}

TEST_CASE("an unstable step is reported, not silently integrated") {
  auto config = paper_qubit();
  config.t1_us = 1e-5;   // decay rate far beyond the step's stability
  config.t2_us = 2e-5;
  PulseSequence seq;
  seq.segments = {PulseSegment::drive(config.qubit_freq_ghz,
                                      config.rabi_rate_mhz, 50.0)};
  CHECK_THROWS_AS(lindblad::evolve(config, seq), AccuracyError);
}

TEST_CASE("relaxation experiment recovers the configured lifetime") {
  auto config = paper_qubit(6.69);
  const auto taus = linspace(0.0, 20000.0, 81);
  const auto result = lindblad::t1_experiment(config, taus);
  CHECK(result.fitted_t1_us == doctest::Approx(4.72).epsilon(0.01));

  // The pulse leaves slightly less than full inversion behind. The
  // first-order estimate 1 - tau_pi/T1 = 0.983 bounds it from below; the
  // master equation, which only exposes half the population to decay on
  // average, lands near 0.993.
  CHECK(result.p0 > 0.982);
  CHECK(result.p0 < 0.996);
  CHECK(result.trace.values.front() ==
        doctest::Approx(0.9927).epsilon(2e-3));

  // e-fold point: P(T1)/P(0) = 1/e
  const auto at = [&](double tau) {
    const auto it = std::min_element(
        taus.begin(), taus.end(), [&](double a, double b) {
          return std::abs(a - tau) < std::abs(b - tau);
        });
    return result.trace.values[static_cast<std::size_t>(
        std::distance(taus.begin(), it))];
  };
  CHECK(at(4720.0) / at(0.0) ==
        doctest::Approx(std::exp(-1.0)).epsilon(0.01));
}

TEST_CASE("ramsey fringes: parity doublet, beat, and envelope") {
  auto config = paper_qubit(6.38);
  config.detuning_mhz = 2.0;
  config.parity_split_mhz = 0.554;
  const auto taus = linspace(0.0, 16000.0, 161);
  const auto result = lindblad::ramsey_experiment(config, taus);

  REQUIRE(result.peak_freqs_mhz.size() == 2);
  CHECK(result.peak_separation_mhz == doctest::Approx(0.554).epsilon(0.02));
  const double ratio = result.peak_magnitudes[0] / result.peak_magnitudes[1];
  CHECK(ratio == doctest::Approx(1.0).epsilon(0.1));
  CHECK(result.fitted_t2_us == doctest::Approx(6.38).epsilon(0.02));
  CHECK_FALSE(result.resolution_warning);

  // short grid cannot resolve the doublet and says so
  const auto short_result =
      lindblad::ramsey_experiment(config, linspace(0.0, 2000.0, 21));
  CHECK(short_result.resolution_warning);
}

TEST_CASE("ramsey with a single parity component shows one peak") {
  auto config = paper_qubit(6.38);
  config.detuning_mhz = 2.0;
  config.parity_split_mhz = 0.0;
  const auto result =
      lindblad::ramsey_experiment(config, linspace(0.0, 12000.0, 121));
  REQUIRE(result.peak_freqs_mhz.size() == 1);
  CHECK(result.peak_freqs_mhz[0] == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("ramsey fringe agrees pointwise with the two-tone sum") {
  // Fast pulses keep the finite-pulse phase shift small; fit only the
  // fringe amplitude and phase, then demand pointwise agreement with
  //   offset + B exp(-tau/T2) cos(pi s tau) cos(2 pi delta tau + phi).
  auto config = paper_qubit(6.38);
  config.rabi_rate_mhz = 50.0;
  config.detuning_mhz = 2.0;
  config.parity_split_mhz = 0.554;
  const auto taus = linspace(0.0, 2400.0, 97);
  const auto result = lindblad::ramsey_experiment(config, taus);

  const double s_ghz = 0.554e-3;
  const double delta_ghz = 2.0e-3;
  const double t2_ns = 6380.0;
  // least squares for the two fringe quadratures at fixed (s, delta, T2)
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
  Eigen::Vector2d rhs = Eigen::Vector2d::Zero();
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double env = std::exp(-taus[i] / t2_ns) *
                       std::cos(constants::pi * s_ghz * taus[i]);
    const double bc = env * std::cos(constants::two_pi * delta_ghz * taus[i]);
    const double bs = env * std::sin(constants::two_pi * delta_ghz * taus[i]);
    const double y = result.trace.values[i] - 0.5;
    m(0, 0) += bc * bc;
    m(0, 1) += bc * bs;
    m(1, 1) += bs * bs;
    rhs[0] += y * bc;
    rhs[1] += y * bs;
  }
  m(1, 0) = m(0, 1);
  const Eigen::Vector2d ab = m.ldlt().solve(rhs);
  double max_err = 0.0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double env = std::exp(-taus[i] / t2_ns) *
                       std::cos(constants::pi * s_ghz * taus[i]);
    const double model =
        0.5 + env * (ab[0] * std::cos(constants::two_pi * delta_ghz * taus[i]) +
                     ab[1] * std::sin(constants::two_pi * delta_ghz * taus[i]));
    max_err = std::max(max_err, std::abs(model - result.trace.values[i]));
  }
  CHECK(max_err < 0.01);

  // beat null: fringe contrast collapses one half beat period in,
  // near 1/(2 s) = 903 ns
  const auto contrast = [&](double lo, double hi) {
    double mn = 1.0, mx = 0.0;
    for (std::size_t i = 0; i < taus.size(); ++i) {
      if (taus[i] < lo || taus[i] > hi) continue;
      mn = std::min(mn, result.trace.values[i]);
      mx = std::max(mx, result.trace.values[i]);
    }
    return mx - mn;
  };
  CHECK(contrast(750.0, 1050.0) < 0.15 * contrast(0.0, 300.0));
}

TEST_CASE("echo decay matches the configured coherence time") {
  auto config = paper_qubit(6.69);
  config.detuning_mhz = 2.0;
  config.parity_split_mhz = 0.554;
  const auto taus = linspace(0.0, 16000.0, 81);
  const auto result = lindblad::echo_experiment(config, taus);
  CHECK(result.fitted_t2_echo_us == doctest::Approx(6.69).epsilon(0.02));
  CHECK(result.offset == doctest::Approx(0.5).epsilon(0.02));
  CHECK(result.trace.values.front() == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("echo envelope is blind to the parity splitting") {
  auto config = paper_qubit(6.69);
  config.detuning_mhz = 1.0;
  config.rabi_rate_mhz = 25.0;  // fast pulses isolate the delay physics
  const auto taus = linspace(0.0, 12000.0, 49);
  std::vector<lindblad::EchoResult> results;
  for (double split : {0.0, 0.554, 2.0}) {
    config.parity_split_mhz = split;
    results.push_back(lindblad::echo_experiment(config, taus));
  }
  for (std::size_t i = 1; i < results.size(); ++i) {
    CHECK(std::abs(results[i].fitted_t2_echo_us -
                   results[0].fitted_t2_echo_us) /
              results[0].fitted_t2_echo_us <
          1e-3);
    CHECK(std::abs(results[i].amplitude - results[0].amplitude) < 2e-3);
    CHECK(std::abs(results[i].offset - results[0].offset) < 2e-3);
  }
}

TEST_CASE("echo without pure dephasing decays at twice the lifetime") {
  auto config = paper_qubit();
  config.t1_us = 4.0;
  config.t2_us = 8.0;  // T2 = 2 T1: relaxation-limited coherence
  config.detuning_mhz = 0.5;
  const auto taus = linspace(0.0, 20000.0, 51);
  const auto result = lindblad::echo_experiment(config, taus);
  CHECK(result.fitted_t2_echo_us == doctest::Approx(8.0).epsilon(0.01));
}

TEST_CASE("chevron map: center column, symmetry, and contrast law") {
  auto config = closed_qubit();
  config.sample_dt_ns = 2.0;
  const auto map =
      lindblad::rabi_chevron(config, 8.502, 8.522, 21, 1000.0, 251);
  REQUIRE(map.freqs_ghz.size() == 21);
  REQUIRE(map.p_excited.size() == 21);

  // the zero-detuning column oscillates at Omega itself
  const auto& centre = map.p_excited[10];
  CHECK(map.freqs_ghz[10] == doctest::Approx(8.512).epsilon(1e-12));
  const auto peaks = numerics::spectral_peaks(map.durations_ns, centre,
                                              2e-3, 2e-2, 1e-6, 1);
  REQUIRE(peaks.size() == 1);
  CHECK(peaks[0].frequency * 1e3 == doctest::Approx(6.17).epsilon(0.01));

  // detuning symmetry about the qubit line
  for (int k = 1; k <= 10; ++k) {
    const auto& lower = map.p_excited[static_cast<std::size_t>(10 - k)];
    const auto& upper = map.p_excited[static_cast<std::size_t>(10 + k)];
    for (std::size_t j = 0; j < lower.size(); ++j) {
      CHECK(std::abs(lower[j] - upper[j]) < 1e-6);
    }
  }

  // every column's oscillation frequency follows sqrt(Omega^2 + Delta^2)
  for (std::size_t i : {0UL, 4UL, 15UL, 20UL}) {
    const double delta_mhz = (map.freqs_ghz[i] - 8.512) * 1e3;
    const double expected =
        std::sqrt(6.17 * 6.17 + delta_mhz * delta_mhz);
    const auto col_peaks = numerics::spectral_peaks(
        map.durations_ns, map.p_excited[i], 2e-3, 2.5e-2, 1e-6, 1);
    REQUIRE(col_peaks.size() == 1);
    CHECK(col_peaks[0].frequency * 1e3 ==
          doctest::Approx(expected).epsilon(0.01));
  }
}

TEST_CASE("contrast drops to one quarter at detuning sqrt(3) Omega") {
  auto config = closed_qubit();
  config.sample_dt_ns = 1.0;
  PulseSequence seq;
  const double delta_ghz = std::sqrt(3.0) * 6.17e-3;
  seq.segments = {PulseSegment::drive(config.qubit_freq_ghz + delta_ghz,
                                      config.rabi_rate_mhz, 600.0)};
  const auto trace = lindblad::evolve(config, seq);
  const double peak =
      *std::max_element(trace.values.begin(), trace.values.end());
  CHECK(peak == doctest::Approx(0.25).epsilon(5e-3));
}

TEST_CASE("three-level qubit leaks only under a hard drive") {
  LindbladConfig config = closed_qubit();
  config.hilbert.qubit_levels = 3;
  config.anharmonicity_ghz = 0.540;

  LindbladEngine gentle(config);
  gentle.run_segment(PulseSegment::drive(config.qubit_freq_ghz,
                                         config.rabi_rate_mhz,
                                         config.pi_time_ns()));
  CHECK(gentle.density()(2, 2).real() < 1e-4);
  CHECK(gentle.excited_population() == doctest::Approx(1.0).epsilon(5e-3));

  LindbladConfig hard = config;
  hard.rabi_rate_mhz = 80.0;
  LindbladEngine driven(hard);
  driven.run_segment(PulseSegment::drive(hard.qubit_freq_ghz, 80.0,
                                         hard.pi_time_ns()));
  CHECK(driven.density()(2, 2).real() > 1e-4);
}

TEST_CASE("relaxation and coherence limits along the flux sweep") {
  const auto grid = linspace(7.7, 8.5, 33);
  const auto sweep = lindblad::purcell_sweep(1.37, 54.3, 7.5, 4.72, 6.69,
                                             grid);
  REQUIRE(sweep.size() == grid.size());
  // collapse toward the resonator, recovery at the sweet spot
  CHECK(sweep.front().t1_total_us == doctest::Approx(1.1815).epsilon(1e-3));
  CHECK(sweep.back().t1_total_us > 0.85 * 4.72);
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    CHECK(sweep[i].t1_total_us > sweep[i - 1].t1_total_us);
    CHECK(sweep[i].t1_total_us < 4.72);
    CHECK(sweep[i].t2_echo_bound_us <= 2.0 * sweep[i].t1_total_us + 1e-12);
  }
}
