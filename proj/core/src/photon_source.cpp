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

#include "qmux/photon_source.hpp"

#include <cmath>

#include "qmux/constants.hpp"
#include "qmux/coupled.hpp"
#include "qmux/errors.hpp"
#include "qmux/lindblad.hpp"

namespace qmux::photon_source {

double epsilon_after_pi(double tau_pi_ns, double t1_us) {
  if (!(tau_pi_ns >= 0.0) || !(t1_us > 0.0)) {
    throw DomainError("epsilon_after_pi: inputs must be positive");
  }
  const double ratio = tau_pi_ns / (t1_us * 1e3);
  if (ratio >= 1.0) {
    throw DomainError(
        "epsilon_after_pi: pulse longer than T1, estimate invalid");
  }
  return 1.0 - ratio;
}

double eta_static(double epsilon, double f0_ghz, double qc, double g_mhz,
                  double delta0_ghz, double t1_us, double t2_us) {
  if (!(epsilon >= 0.0) || epsilon > 1.0) {
    throw DomainError("eta_static: epsilon must lie in [0, 1]");
  }
  if (!(f0_ghz > 0.0) || !(qc > 0.0) || !(delta0_ghz > 0.0) ||
      !(t1_us > 0.0) || !(t2_us > 0.0) || g_mhz < 0.0) {
    throw DomainError("eta_static: inputs must be positive");
  }
  const double kappa_c_per_us = 1e3 * f0_ghz / qc;  // cyclic decay, 1/us
  const double ratio = (g_mhz * 1e-3) / delta0_ghz;
  const double qubit_rate_per_us = 1.0 / t1_us + 2.0 / t2_us;
  return epsilon * kappa_c_per_us * ratio * ratio / qubit_rate_per_us;
}

double eta_dynamic(double qi, double qc, double tau_pi_ns, double tau_swap_ns,
                   double t1_us) {
  if (!(qi > 0.0) || !(qc > 0.0) || !(t1_us > 0.0) || tau_pi_ns < 0.0 ||
      tau_swap_ns < 0.0) {
    throw DomainError("eta_dynamic: inputs must be positive");
  }
  const double t1_ns = t1_us * 1e3;
  return qi / (qi + qc) * std::exp(-tau_pi_ns / t1_ns - tau_swap_ns / t1_ns);
}

double qc_optimal(double f_r_ghz, double t1_us, double g_mhz,
                  double delta0_ghz, ResonatorFreqConvention convention) {
  if (!(f_r_ghz > 0.0) || !(t1_us > 0.0) || !(g_mhz > 0.0) ||
      !(delta0_ghz > 0.0)) {
    throw DomainError("qc_optimal: inputs must be positive");
  }
  const double ratio = (g_mhz * 1e-3) / delta0_ghz;
  double value = constants::two_pi * (f_r_ghz * 1e9) * (t1_us * 1e-6) *
                 ratio * ratio;
  if (convention == ResonatorFreqConvention::angular) {
    value *= constants::two_pi;
  }
  return value;
}

PhotonSourceReport analyze(const PhotonSourceParams& p) {
  PhotonSourceReport r;
  r.epsilon = epsilon_after_pi(p.tau_pi_ns, p.t1_us);
  r.eta_static = eta_static(r.epsilon, p.f0_ghz, p.qc, p.g_mhz, p.delta0_ghz,
                            p.t1_us, p.t2_us);
  r.eta_dynamic = eta_dynamic(p.qi, p.qc, p.tau_pi_ns, p.tau_swap_ns,
                              p.t1_us);
  r.tau_pi_ns = p.tau_pi_ns;
  r.tau_swap_ns = p.tau_swap_ns;
  r.qc_convention = p.qc_convention;
  r.qc_optimal =
      qc_optimal(p.f0_ghz, p.t1_us, p.g_mhz, p.delta0_ghz, p.qc_convention);

  // Exact partition of 1 - eta: the pulse eats 1-e^{-a}, the swap eats
  // e^{-a}(1-e^{-b}), the resonator branching eats the rest.
  const double t1_ns = p.t1_us * 1e3;
  const double pulse_survival = std::exp(-p.tau_pi_ns / t1_ns);
  const double swap_survival = std::exp(-p.tau_swap_ns / t1_ns);
  const double branching = p.qi / (p.qi + p.qc);
  r.loss.decay_during_pulse = 1.0 - pulse_survival;
  r.loss.decay_during_swap = pulse_survival * (1.0 - swap_survival);
  r.loss.internal_loss = pulse_survival * swap_survival * (1.0 - branching);
  return r;
}

namespace {

struct ProtocolSetup {
  lindblad::LindbladConfig lind;
  lindblad::PulseSegment pulse;
  double hold_ns = 0.0;
  double decay_ns = 0.0;
  double emergent_swap_ns = 0.0;
};

ProtocolSetup build_setup(const DynamicProtocolConfig& c) {
  if (!(c.g_mhz > 0.0) || c.photon_levels < 2) {
    throw DomainError(
        "simulate_dynamic_protocol: needs g > 0 and photon_levels >= 2");
  }
  if (!(c.nu01_ghz > c.f_r_ghz)) {
    throw DomainError(
        "simulate_dynamic_protocol: qubit must park above the resonator");
  }
  ProtocolSetup s;
  s.lind.hilbert.qubit_levels = 2;
  s.lind.hilbert.photon_levels = c.photon_levels;
  s.lind.qubit_freq_ghz = c.nu01_ghz;
  s.lind.resonator_freq_ghz = c.f_r_ghz;
  s.lind.g_mhz = c.g_mhz;
  s.lind.t1_us = c.t1_us;
  s.lind.t2_us = c.t2_us;
  s.lind.kappa_ext_mhz = 1e3 * c.f_r_ghz / c.qc;
  s.lind.kappa_int_mhz = 1e3 * c.f_r_ghz / c.qi;
  s.lind.rabi_rate_mhz = c.rabi_rate_mhz;
  s.lind.integrator_step_ns = c.integrator_step_ns;

  // The pulse drives the dressed qubit line, not the bare one; the coupling
  // pushes the parked transition up by roughly g^2/delta0.
  const coupled::DressedPair dressed =
      coupled::dressed_levels(c.nu01_ghz, c.f_r_ghz, c.g_mhz);
  const double drive_freq = dressed.upper_ghz;
  s.pulse = lindblad::PulseSegment::drive(drive_freq, c.rabi_rate_mhz,
                                          s.lind.pi_time_ns());

  s.emergent_swap_ns = 1.0 / (4.0 * c.g_mhz * 1e-3);
  s.hold_ns = c.hold_duration_ns > 0.0 ? c.hold_duration_ns
                                       : s.emergent_swap_ns;

  const double kappa_total_per_ns =
      constants::two_pi * (s.lind.kappa_ext_mhz + s.lind.kappa_int_mhz) *
      1e-3;
  s.decay_ns = c.decay_window_ns > 0.0 ? c.decay_window_ns
                                       : 8.0 / kappa_total_per_ns;
  return s;
}

// Undriven tail: populations and within-excitation-sector coherences evolve
// slowly, so a coarser ceiling than the engine heuristic is safe. Kept well
// inside the integrator's stability region for the detuning frequency.
double tail_step_ceiling_ns(const DynamicProtocolConfig& c) {
  const double detuning = std::max(c.nu01_ghz - c.f_r_ghz, 1e-3);
  return std::min(0.2, 1.2 / (constants::two_pi * detuning));
}

}  // namespace

DynamicProtocolResult simulate_dynamic_protocol(
    const DynamicProtocolConfig& c) {
  const ProtocolSetup s = build_setup(c);

  lindblad::LindbladEngine engine(s.lind);
  DynamicProtocolResult out;
  out.emergent_swap_ns = s.emergent_swap_ns;
  out.hold_duration_ns = s.hold_ns;
  out.eta_closed_form = eta_dynamic(c.qi, c.qc, s.lind.pi_time_ns(),
                                    c.tau_swap_ns, c.t1_us);

  const auto record = [&](double t, const lindblad::LindbladEngine& e) {
    ProtocolSample sample;
    sample.t_ns = t;
    sample.p_excited = e.excited_population();
    sample.photon_number = e.photon_number();
    sample.emitted = e.emitted_external();
    sample.lost = e.lost_internal() + e.lost_qubit();
    out.samples.push_back(sample);
  };
  // keep the trace slim: record every few steps only
  std::size_t stride_count = 0;
  const auto strided = [&](double t, const lindblad::LindbladEngine& e) {
    if (++stride_count % 8 == 0) record(t, e);
  };

  record(0.0, engine);
  engine.run_segment(s.pulse, strided);
  const double pulse_end_qubit_loss = engine.lost_qubit();
  record(engine.time_ns(), engine);

  auto tuned = lindblad::PulseSegment::delay(s.hold_ns);
  if (c.ramp_ns > 0.0) {
    auto ramp = lindblad::PulseSegment::delay(c.ramp_ns);
    ramp.qubit_freq_start_ghz = c.nu01_ghz;
    ramp.qubit_freq_end_ghz = c.f_r_ghz;
    engine.run_segment(ramp, strided);
  }
  tuned.qubit_freq_start_ghz = c.f_r_ghz;
  tuned.qubit_freq_end_ghz = c.f_r_ghz;
  engine.run_segment(tuned, strided);
  if (c.ramp_ns > 0.0) {
    auto ramp = lindblad::PulseSegment::delay(c.ramp_ns);
    ramp.qubit_freq_start_ghz = c.f_r_ghz;
    ramp.qubit_freq_end_ghz = c.nu01_ghz;
    engine.run_segment(ramp, strided);
  }

  auto parked = lindblad::PulseSegment::delay(s.decay_ns);
  engine.run_segment_with_step(parked, tail_step_ceiling_ns(c), strided);
  record(engine.time_ns(), engine);

  out.emission_probability = engine.emitted_external();

  // Partition of 1 - emission. Residual excitation still in the device at
  // the end of the window is charged to the channel it would decay through.
  const double residual_qubit = engine.excited_population();
  const double residual_photon = engine.photon_number();
  out.loss.internal_loss = engine.lost_internal() + residual_photon;
  out.loss.decay_during_swap =
      (engine.lost_qubit() - pulse_end_qubit_loss) + residual_qubit;
  out.loss.decay_during_pulse =
      1.0 - out.emission_probability - out.loss.internal_loss -
      out.loss.decay_during_swap;
  return out;
}

std::vector<std::pair<double, double>> sweep_hold_duration(
    const DynamicProtocolConfig& c,
    const std::vector<double>& hold_grid_ns) {
  if (hold_grid_ns.empty()) {
    throw DomainError("sweep_hold_duration: empty grid");
  }
  const ProtocolSetup s = build_setup(c);

  lindblad::LindbladEngine engine(s.lind);
  engine.run_segment(s.pulse);
  const lindblad::LindbladEngine::Snapshot after_pulse = engine.snapshot();

  std::vector<std::pair<double, double>> out;
  out.reserve(hold_grid_ns.size());
  for (double hold : hold_grid_ns) {
    engine.restore(after_pulse);
    auto tuned = lindblad::PulseSegment::delay(hold);
    tuned.qubit_freq_start_ghz = c.f_r_ghz;
    tuned.qubit_freq_end_ghz = c.f_r_ghz;
    engine.run_segment(tuned);
    auto parked = lindblad::PulseSegment::delay(s.decay_ns);
    engine.run_segment_with_step(parked, tail_step_ceiling_ns(c));
    out.emplace_back(hold, engine.emitted_external());
  }
  return out;
}

}  // namespace qmux::photon_source
