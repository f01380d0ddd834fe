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

#include "qmux/lindblad.hpp"

#include <algorithm>
#include <cmath>

#include "qmux/constants.hpp"
#include "qmux/coupled.hpp"
#include "qmux/errors.hpp"
#include "qmux/numerics.hpp"

namespace qmux::lindblad {

namespace {

using Eigen::MatrixXcd;
using std::complex;

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

MatrixXcd ladder_down(int levels) {
  MatrixXcd b = MatrixXcd::Zero(levels, levels);
  for (int m = 1; m < levels; ++m) {
    b(m - 1, m) = std::sqrt(static_cast<double>(m));
  }
  return b;
}

MatrixXcd number_op(int levels) {
  MatrixXcd n = MatrixXcd::Zero(levels, levels);
  for (int m = 0; m < levels; ++m) n(m, m) = static_cast<double>(m);
  return n;
}

constexpr double kPhaseBudgetRad = 0.15;  // max rotation per integrator step

}  // namespace

PulseSegment PulseSegment::drive(double freq_ghz, double rabi_mhz,
                                 double duration_ns, double phase_rad) {
  PulseSegment s;
  s.kind = Kind::drive;
  s.drive_freq_ghz = freq_ghz;
  s.rabi_rate_mhz = rabi_mhz;
  s.duration_ns = duration_ns;
  s.phase_rad = phase_rad;
  return s;
}

PulseSegment PulseSegment::delay(double duration_ns) {
  PulseSegment s;
  s.kind = Kind::delay;
  s.duration_ns = duration_ns;
  return s;
}

double PulseSequence::total_duration_ns() const {
  double total = 0.0;
  for (const auto& s : segments) total += s.duration_ns;
  return total;
}

void PulseSequence::validate() const {
  if (segments.empty()) {
    throw DomainError("PulseSequence: must contain at least one segment");
  }
  for (const auto& s : segments) {
    if (!(s.duration_ns >= 0.0) || !std::isfinite(s.duration_ns)) {
      throw DomainError("PulseSegment: duration must be finite and >= 0");
    }
    if (s.rabi_rate_mhz < 0.0) {
      throw DomainError("PulseSegment: rabi rate must be >= 0");
    }
    if (s.kind == PulseSegment::Kind::delay && s.rabi_rate_mhz != 0.0) {
      throw DomainError("PulseSegment: delay segments carry zero drive");
    }
    if (s.kind == PulseSegment::Kind::drive &&
        !std::isfinite(s.drive_freq_ghz)) {
      throw DomainError("PulseSegment: drive segments need a frequency");
    }
  }
}

double LindbladConfig::pure_dephasing_rate_per_us() const {
  if (!std::isfinite(t2_us)) return 0.0;
  const double inv_t1 = std::isfinite(t1_us) ? 1.0 / t1_us : 0.0;
  return 1.0 / t2_us - 0.5 * inv_t1;
}

void LindbladConfig::validate() const {
  if (hilbert.qubit_levels != 2 && hilbert.qubit_levels != 3) {
    throw DomainError("LindbladConfig: qubit must have 2 or 3 levels");
  }
  if (hilbert.photon_levels < 0) {
    throw DomainError("LindbladConfig: photon_levels must be >= 0");
  }
  if ((kappa_ext_mhz > 0.0 || kappa_int_mhz > 0.0 || g_mhz != 0.0) &&
      hilbert.photon_levels < 1) {
    throw DomainError(
        "LindbladConfig: resonator rates/coupling need photon_levels >= 1");
  }
  if (!(t1_us > 0.0) || !(t2_us > 0.0)) {
    throw DomainError("LindbladConfig: T1 and T2 must be positive");
  }
  if (std::isfinite(t2_us) && t2_us > 2.0 * t1_us * (1.0 + 1e-12)) {
    throw DomainError("LindbladConfig: requires T2 <= 2 T1");
  }
  if (kappa_ext_mhz < 0.0 || kappa_int_mhz < 0.0 || parity_split_mhz < 0.0) {
    throw DomainError("LindbladConfig: rates must be >= 0");
  }
  if (!(integrator_step_ns > 0.0)) {
    throw DomainError("LindbladConfig: integrator step must be positive");
  }
  if (!(tolerance > 0.0)) {
    throw DomainError("LindbladConfig: tolerance must be positive");
  }
  if (!(rabi_rate_mhz > 0.0)) {
    throw DomainError("LindbladConfig: rabi rate must be positive");
  }
}

LindbladEngine::LindbladEngine(const LindbladConfig& config,
                               double qubit_freq_shift_mhz)
    : config_(config),
      qubit_freq_ghz_(config.qubit_freq_ghz + qubit_freq_shift_mhz * 1e-3),
      frame_freq_ghz_(config.qubit_freq_ghz) {
  config_.validate();

  const int ql = config_.hilbert.qubit_levels;
  const int rl = config_.hilbert.photon_levels + 1;
  const MatrixXcd iq = MatrixXcd::Identity(ql, ql);
  const MatrixXcd ir = MatrixXcd::Identity(rl, rl);
  const MatrixXcd bq = ladder_down(ql);
  const MatrixXcd nq = number_op(ql);

  if (config_.hilbert.photon_levels > 0) {
    const MatrixXcd ar = ladder_down(rl);
    number_q_ = kron(nq, ir);
    lower_q_ = kron(bq, ir);
    number_r_ = kron(iq, number_op(rl));
    exchange_ = kron(bq, ar.adjoint()) + kron(bq.adjoint(), ar);
  } else {
    number_q_ = nq;
    lower_q_ = bq;
    number_r_ = MatrixXcd::Zero(ql, ql);
    exchange_ = MatrixXcd::Zero(ql, ql);
  }
  raise_q_ = lower_q_.adjoint();
  anharm_q_ = 0.5 * (number_q_ * number_q_ - number_q_);

  // Decay channels, rates in 1/ns.
  const double gamma1 =
      std::isfinite(config_.t1_us) ? 1e-3 / config_.t1_us : 0.0;
  const double gamma_phi = 1e-3 * config_.pure_dephasing_rate_per_us();
  if (gamma_phi < -1e-15) {
    throw DomainError("LindbladConfig: negative pure dephasing rate");
  }
  if (gamma1 > 0.0) {
    Jump j;
    j.op = std::sqrt(gamma1) * lower_q_;
    j.op_dag_op = j.op.adjoint() * j.op;
    j.flux_channel = 2;
    jumps_.push_back(std::move(j));
  }
  if (gamma_phi > 0.0) {
    Jump j;
    j.op = std::sqrt(2.0 * gamma_phi) * number_q_;
    j.op_dag_op = j.op.adjoint() * j.op;
    jumps_.push_back(std::move(j));
  }
  if (config_.hilbert.photon_levels > 0) {
    const MatrixXcd a_full = kron(iq, ladder_down(rl));
    const double kext = constants::two_pi * config_.kappa_ext_mhz * 1e-3;
    const double kint = constants::two_pi * config_.kappa_int_mhz * 1e-3;
    if (kext > 0.0) {
      Jump j;
      j.op = std::sqrt(kext) * a_full;
      j.op_dag_op = j.op.adjoint() * j.op;
      j.flux_channel = 0;
      jumps_.push_back(std::move(j));
    }
    if (kint > 0.0) {
      Jump j;
      j.op = std::sqrt(kint) * a_full;
      j.op_dag_op = j.op.adjoint() * j.op;
      j.flux_channel = 1;
      jumps_.push_back(std::move(j));
    }
  }

  const int dim = config_.hilbert.dim();
  h_scratch_.resize(dim, dim);
  k1_.resize(dim, dim);
  k2_.resize(dim, dim);
  k3_.resize(dim, dim);
  k4_.resize(dim, dim);
  rho_stage_.resize(dim, dim);
  tmp_.resize(dim, dim);
  reset();
}

void LindbladEngine::reset() {
  const int dim = config_.hilbert.dim();
  rho_ = MatrixXcd::Zero(dim, dim);
  rho_(0, 0) = 1.0;
  time_ns_ = 0.0;
  flux_[0] = flux_[1] = flux_[2] = 0.0;
  frame_set_ = false;
  frame_freq_ghz_ = config_.qubit_freq_ghz;
}

double LindbladEngine::excited_population() const {
  const int rl = config_.hilbert.photon_levels + 1;
  double p = 0.0;
  for (int r = 0; r < rl; ++r) {
    const int idx = 1 * rl + r;  // qubit level 1 block
    p += rho_(idx, idx).real();
  }
  return p;
}

double LindbladEngine::photon_number() const {
  return (number_r_ * rho_).trace().real();
}

double LindbladEngine::trace_deviation() const {
  return std::abs(rho_.trace().real() - 1.0) + std::abs(rho_.trace().imag());
}

double LindbladEngine::observable(ReadoutObservable obs) const {
  switch (obs) {
    case ReadoutObservable::excited_population:
      return excited_population();
    case ReadoutObservable::photon_number:
      return photon_number();
  }
  return 0.0;
}

double LindbladEngine::qubit_freq_at(const PulseSegment& seg,
                                     double frac) const {
  const bool has_start = std::isfinite(seg.qubit_freq_start_ghz);
  const bool has_end = std::isfinite(seg.qubit_freq_end_ghz);
  if (!has_start && !has_end) return qubit_freq_ghz_;
  const double start = has_start ? seg.qubit_freq_start_ghz : qubit_freq_ghz_;
  const double end = has_end ? seg.qubit_freq_end_ghz : start;
  return start + (end - start) * frac;
}

double LindbladEngine::segment_step_ns(const PulseSegment& seg) const {
  // Fastest frequency scale in the frame decides the step; the budget keeps
  // the per-step rotation small enough for the 4th-order error to vanish
  // against the configured tolerance.
  double f_scale_ghz = 1e-4;
  const auto consider = [&](double f) {
    f_scale_ghz = std::max(f_scale_ghz, std::abs(f));
  };
  consider(qubit_freq_at(seg, 0.0) - frame_freq_ghz_);
  consider(qubit_freq_at(seg, 1.0) - frame_freq_ghz_);
  if (config_.hilbert.photon_levels > 0) {
    consider(config_.resonator_freq_ghz - frame_freq_ghz_);
    consider(config_.g_mhz * 1e-3);
  }
  if (seg.kind == PulseSegment::Kind::drive) {
    consider(seg.drive_freq_ghz - frame_freq_ghz_);
    consider(seg.rabi_rate_mhz * 1e-3);
  }
  if (config_.hilbert.qubit_levels > 2) {
    consider(config_.anharmonicity_ghz);
  }
  const double h_budget = kPhaseBudgetRad / (constants::two_pi * f_scale_ghz);
  return std::min(config_.integrator_step_ns, h_budget);
}

void LindbladEngine::derivative(const MatrixXcd& rho, double t_ns,
                                const PulseSegment& seg, double nu_q_ghz,
                                MatrixXcd& drho, double* dflux) const {
  const complex<double> i_unit(0.0, 1.0);

  // Hamiltonian in the sequence frame, rad/ns.
  h_scratch_.setZero();
  const double dq = nu_q_ghz - frame_freq_ghz_;
  if (dq != 0.0) h_scratch_ += (constants::two_pi * dq) * number_q_;
  if (config_.hilbert.qubit_levels > 2) {
    h_scratch_ -=
        (constants::two_pi * config_.anharmonicity_ghz) * anharm_q_;
  }
  if (config_.hilbert.photon_levels > 0) {
    const double dr = config_.resonator_freq_ghz - frame_freq_ghz_;
    if (dr != 0.0) h_scratch_ += (constants::two_pi * dr) * number_r_;
    if (config_.g_mhz != 0.0) {
      h_scratch_ += (constants::two_pi * config_.g_mhz * 1e-3) * exchange_;
    }
  }
  if (seg.kind == PulseSegment::Kind::drive && seg.rabi_rate_mhz > 0.0) {
    const double theta =
        constants::two_pi * (seg.drive_freq_ghz - frame_freq_ghz_) * t_ns +
        seg.phase_rad;
    const complex<double> amp =
        constants::pi * seg.rabi_rate_mhz * 1e-3 *
        std::exp(complex<double>(0.0, -theta));
    h_scratch_ += amp * raise_q_ + std::conj(amp) * lower_q_;
  }

  drho.noalias() = h_scratch_ * rho;
  drho -= rho * h_scratch_;
  drho *= -i_unit;

  for (std::size_t k = 0; k < jumps_.size(); ++k) {
    const Jump& j = jumps_[k];
    tmp_.noalias() = j.op * rho;
    drho.noalias() += tmp_ * j.op.adjoint();
    tmp_.noalias() = j.op_dag_op * rho;
    drho -= 0.5 * tmp_;
    tmp_.noalias() = rho * j.op_dag_op;
    drho -= 0.5 * tmp_;
    if (j.flux_channel >= 0 && dflux != nullptr) {
      dflux[j.flux_channel] += (j.op_dag_op * rho).trace().real();
    }
  }
}

void LindbladEngine::run_segment(const PulseSegment& seg,
                                 const StepVisitor& visit) {
  run_segment_with_step(seg, std::numeric_limits<double>::infinity(), visit);
}

LindbladEngine::Snapshot LindbladEngine::snapshot() const {
  Snapshot s;
  s.rho = rho_;
  s.time_ns = time_ns_;
  for (int c = 0; c < 3; ++c) s.flux[c] = flux_[c];
  s.frame_set = frame_set_;
  s.frame_freq_ghz = frame_freq_ghz_;
  return s;
}

void LindbladEngine::restore(const Snapshot& snap) {
  rho_ = snap.rho;
  time_ns_ = snap.time_ns;
  for (int c = 0; c < 3; ++c) flux_[c] = snap.flux[c];
  frame_set_ = snap.frame_set;
  frame_freq_ghz_ = snap.frame_freq_ghz;
}

void LindbladEngine::run_segment_with_step(const PulseSegment& seg,
                                           double max_step_ns,
                                           const StepVisitor& visit) {
  if (!frame_set_) {
    // Frame locks to the first drive frequency seen after reset.
    if (seg.kind == PulseSegment::Kind::drive) {
      frame_freq_ghz_ = seg.drive_freq_ghz;
      frame_set_ = true;
    }
  }
  if (seg.duration_ns <= 0.0) return;

  const double seg_start = time_ns_;
  // A finite ceiling replaces the frequency heuristic; the configured step
  // still bounds it from above.
  const double h_target =
      std::isfinite(max_step_ns)
          ? std::min(config_.integrator_step_ns, max_step_ns)
          : segment_step_ns(seg);
  const auto steps =
      static_cast<long>(std::ceil(seg.duration_ns / h_target - 1e-12));
  const double h = seg.duration_ns / static_cast<double>(steps);

  double flux_stage[3];
  for (long s = 0; s < steps; ++s) {
    const double t0 = seg_start + h * static_cast<double>(s);
    const double frac0 = (t0 - seg_start) / seg.duration_ns;
    const double frac_half = (t0 + 0.5 * h - seg_start) / seg.duration_ns;
    const double frac1 = (t0 + h - seg_start) / seg.duration_ns;

    double df1[3] = {0, 0, 0}, df2[3] = {0, 0, 0}, df3[3] = {0, 0, 0},
           df4[3] = {0, 0, 0};
    derivative(rho_, t0, seg, qubit_freq_at(seg, frac0), k1_, df1);
    rho_stage_ = rho_ + (0.5 * h) * k1_;
    derivative(rho_stage_, t0 + 0.5 * h, seg, qubit_freq_at(seg, frac_half),
               k2_, df2);
    rho_stage_ = rho_ + (0.5 * h) * k2_;
    derivative(rho_stage_, t0 + 0.5 * h, seg, qubit_freq_at(seg, frac_half),
               k3_, df3);
    rho_stage_ = rho_ + h * k3_;
    derivative(rho_stage_, t0 + h, seg, qubit_freq_at(seg, frac1), k4_, df4);

    rho_ += (h / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
    for (int c = 0; c < 3; ++c) {
      flux_stage[c] =
          (h / 6.0) * (df1[c] + 2.0 * df2[c] + 2.0 * df3[c] + df4[c]);
      flux_[c] += flux_stage[c];
    }
    time_ns_ = seg_start + h * static_cast<double>(s + 1);
    if (visit) visit(time_ns_, *this);
  }
}

SimulationTrace evolve(const LindbladConfig& config,
                       const PulseSequence& sequence) {
  config.validate();
  sequence.validate();

  const double total = sequence.total_duration_ns();
  double sample_dt = config.sample_dt_ns;
  if (!(sample_dt > 0.0)) {
    sample_dt = std::max(config.integrator_step_ns, total / 2000.0);
  }

  std::vector<double> shifts;
  if (config.parity_split_mhz > 0.0) {
    shifts = {-0.5 * config.parity_split_mhz, 0.5 * config.parity_split_mhz};
  } else {
    shifts = {0.0};
  }

  SimulationTrace trace;
  bool first_branch = true;
  for (double shift : shifts) {
    LindbladEngine engine(config, shift);
    std::vector<double> times{0.0};
    std::vector<double> values{engine.observable(sequence.readout)};
    double next_sample = sample_dt;
    const auto visitor = [&](double t, const LindbladEngine& e) {
      if (t + 1e-9 >= next_sample) {
        times.push_back(t);
        values.push_back(e.observable(sequence.readout));
        while (next_sample <= t + 1e-9) next_sample += sample_dt;
        if (e.trace_deviation() > 10.0 * config.tolerance) {
          throw AccuracyError(
              "evolve: density-matrix trace drifted beyond 10x tolerance; "
              "reduce integrator_step_ns");
        }
      }
    };
    for (const auto& seg : sequence.segments) {
      engine.run_segment(seg, visitor);
    }
    if (engine.time_ns() > times.back() + 1e-9) {
      times.push_back(engine.time_ns());
      values.push_back(engine.observable(sequence.readout));
    }
    if (first_branch) {
      trace.times_ns = std::move(times);
      trace.values = std::move(values);
      first_branch = false;
    } else {
      for (std::size_t i = 0;
           i < trace.values.size() && i < values.size(); ++i) {
        trace.values[i] = 0.5 * (trace.values[i] + values[i]);
      }
    }
  }
  return trace;
}

namespace {

// Runs one sequence per parity branch and returns the averaged end-of-
// sequence readout.
double averaged_final_observable(const LindbladConfig& config,
                                 const PulseSequence& sequence) {
  std::vector<double> shifts;
  if (config.parity_split_mhz > 0.0) {
    shifts = {-0.5 * config.parity_split_mhz, 0.5 * config.parity_split_mhz};
  } else {
    shifts = {0.0};
  }
  double acc = 0.0;
  for (double shift : shifts) {
    LindbladEngine engine(config, shift);
    for (const auto& seg : sequence.segments) engine.run_segment(seg);
    if (engine.trace_deviation() > 10.0 * config.tolerance) {
      throw AccuracyError("sequence run: trace drifted beyond tolerance");
    }
    acc += engine.observable(sequence.readout);
  }
  return acc / static_cast<double>(shifts.size());
}

void check_grid(const std::vector<double>& grid, const char* who) {
  if (grid.size() < 4) {
    throw DomainError(std::string(who) + ": need at least 4 delay points");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw DomainError(std::string(who) + ": delays must increase");
    }
  }
}

}  // namespace

T1Result t1_experiment(const LindbladConfig& config,
                       const std::vector<double>& tau_grid_ns) {
  config.validate();
  check_grid(tau_grid_ns, "t1_experiment");
  if (!std::isfinite(config.t1_us)) {
    throw DomainError("t1_experiment: config T1 must be finite");
  }
  const double drive_freq =
      config.qubit_freq_ghz + config.detuning_mhz * 1e-3;
  const double tau_pi = config.pi_time_ns();

  std::vector<double> shifts;
  if (config.parity_split_mhz > 0.0) {
    shifts = {-0.5 * config.parity_split_mhz, 0.5 * config.parity_split_mhz};
  } else {
    shifts = {0.0};
  }

  T1Result out;
  out.trace.times_ns = tau_grid_ns;
  out.trace.values.assign(tau_grid_ns.size(), 0.0);
  for (double shift : shifts) {
    LindbladEngine engine(config, shift);
    engine.run_segment(PulseSegment::drive(drive_freq, config.rabi_rate_mhz,
                                           tau_pi));
    const double pulse_end = engine.time_ns();
    std::size_t next = 0;
    // Sample the decay on the fly; one relaxation run covers every delay.
    const auto visitor = [&](double t, const LindbladEngine& e) {
      while (next < tau_grid_ns.size() &&
             t + 1e-9 >= pulse_end + tau_grid_ns[next]) {
        out.trace.values[next] +=
            e.excited_population() / static_cast<double>(shifts.size());
        ++next;
      }
    };
    if (tau_grid_ns.front() <= 1e-12) {
      out.trace.values[0] +=
          engine.excited_population() / static_cast<double>(shifts.size());
      next = 1;
    }
    engine.run_segment(PulseSegment::delay(tau_grid_ns.back() + 1.0),
                       visitor);
    if (next < tau_grid_ns.size()) {
      throw DomainError("t1_experiment: sampling did not cover the grid");
    }
  }

  const numerics::DecayFit fit = numerics::fit_exponential(
      out.trace.times_ns, out.trace.values, /*with_offset=*/false);
  out.fitted_t1_us = fit.tau * 1e-3;
  out.p0 = fit.tone_amplitudes.front();
  out.residual_rms = fit.residual_rms;
  return out;
}

RamseyResult ramsey_experiment(const LindbladConfig& config,
                               const std::vector<double>& tau_grid_ns) {
  config.validate();
  check_grid(tau_grid_ns, "ramsey_experiment");
  const double drive_freq =
      config.qubit_freq_ghz + config.detuning_mhz * 1e-3;
  const double tau_half_pi = 0.5 * config.pi_time_ns();

  RamseyResult out;
  out.trace.times_ns = tau_grid_ns;
  out.trace.values.assign(tau_grid_ns.size(), 0.0);
  numerics::parallel_for_index(tau_grid_ns.size(), [&](std::size_t i) {
    PulseSequence seq;
    seq.segments = {
        PulseSegment::drive(drive_freq, config.rabi_rate_mhz, tau_half_pi),
        PulseSegment::delay(tau_grid_ns[i]),
        PulseSegment::drive(drive_freq, config.rabi_rate_mhz, tau_half_pi),
    };
    out.trace.values[i] = averaged_final_observable(config, seq);
  });

  const double tau_span = tau_grid_ns.back() - tau_grid_ns.front();
  double dt_min = tau_span;
  for (std::size_t i = 1; i < tau_grid_ns.size(); ++i) {
    dt_min = std::min(dt_min, tau_grid_ns[i] - tau_grid_ns[i - 1]);
  }
  const double f_lo = 0.25 / tau_span;
  const double f_hi = 0.45 / dt_min;
  const std::vector<numerics::SpectralPeak> raw = numerics::spectral_peaks(
      out.trace.times_ns, out.trace.values, f_lo, f_hi, 1e-6, 4);

  double max_mag = 0.0;
  for (const auto& p : raw) max_mag = std::max(max_mag, p.magnitude);
  std::vector<numerics::SpectralPeak> kept;
  for (const auto& p : raw) {
    if (p.magnitude >= 0.2 * max_mag) kept.push_back(p);
  }
  std::sort(kept.begin(), kept.end(),
            [](const auto& a, const auto& b) {
              return a.magnitude > b.magnitude;
            });
  if (kept.size() > 2) kept.resize(2);
  std::sort(kept.begin(), kept.end(),
            [](const auto& a, const auto& b) {
              return a.frequency < b.frequency;
            });

  std::vector<double> freqs;
  for (const auto& p : kept) {
    out.peak_freqs_mhz.push_back(p.frequency * 1e3);
    out.peak_magnitudes.push_back(p.magnitude);
    freqs.push_back(p.frequency);
  }
  if (kept.size() == 2) {
    out.peak_separation_mhz =
        out.peak_freqs_mhz[1] - out.peak_freqs_mhz[0];
  }

  const numerics::DecayFit fit = numerics::fit_decaying_tones(
      out.trace.times_ns, out.trace.values, freqs, /*with_offset=*/true);
  out.fitted_t2_us = fit.tau * 1e-3;
  out.residual_rms = fit.residual_rms;
  out.resolution_warning =
      config.parity_split_mhz > 0.0 &&
      tau_span < 2.0 / (config.parity_split_mhz * 1e-3);
  return out;
}

EchoResult echo_experiment(const LindbladConfig& config,
                           const std::vector<double>& tau_grid_ns) {
  config.validate();
  check_grid(tau_grid_ns, "echo_experiment");
  const double drive_freq =
      config.qubit_freq_ghz + config.detuning_mhz * 1e-3;
  const double tau_pi = config.pi_time_ns();
  const double tau_half_pi = 0.5 * tau_pi;

  EchoResult out;
  out.trace.times_ns = tau_grid_ns;
  out.trace.values.assign(tau_grid_ns.size(), 0.0);
  numerics::parallel_for_index(tau_grid_ns.size(), [&](std::size_t i) {
    PulseSequence seq;
    seq.segments = {
        PulseSegment::drive(drive_freq, config.rabi_rate_mhz, tau_half_pi),
        PulseSegment::delay(0.5 * tau_grid_ns[i]),
        PulseSegment::drive(drive_freq, config.rabi_rate_mhz, tau_pi),
        PulseSegment::delay(0.5 * tau_grid_ns[i]),
        PulseSegment::drive(drive_freq, config.rabi_rate_mhz, tau_half_pi,
                            constants::pi),
    };
    out.trace.values[i] = averaged_final_observable(config, seq);
  });

  const numerics::DecayFit fit = numerics::fit_exponential(
      out.trace.times_ns, out.trace.values, /*with_offset=*/true);
  out.fitted_t2_echo_us = fit.tau * 1e-3;
  out.amplitude = fit.tone_amplitudes.front();
  out.offset = fit.offset;
  out.residual_rms = fit.residual_rms;
  return out;
}

ChevronMap rabi_chevron(const LindbladConfig& config, double f_min_ghz,
                        double f_max_ghz, int n_freq, double t_max_ns,
                        int n_durations) {
  config.validate();
  if (!(f_max_ghz > f_min_ghz) || n_freq < 2 || n_durations < 2 ||
      !(t_max_ns > 0.0)) {
    throw DomainError("rabi_chevron: degenerate span");
  }
  ChevronMap map;
  map.freqs_ghz.resize(static_cast<std::size_t>(n_freq));
  map.durations_ns.resize(static_cast<std::size_t>(n_durations));
  for (int j = 0; j < n_durations; ++j) {
    map.durations_ns[static_cast<std::size_t>(j)] =
        t_max_ns * static_cast<double>(j) / (n_durations - 1);
  }
  map.p_excited.assign(static_cast<std::size_t>(n_freq),
                       std::vector<double>(
                           static_cast<std::size_t>(n_durations), 0.0));

  std::vector<double> shifts;
  if (config.parity_split_mhz > 0.0) {
    shifts = {-0.5 * config.parity_split_mhz, 0.5 * config.parity_split_mhz};
  } else {
    shifts = {0.0};
  }

  numerics::parallel_for_index(
      static_cast<std::size_t>(n_freq), [&](std::size_t i) {
        const double f =
            f_min_ghz + (f_max_ghz - f_min_ghz) *
                            static_cast<double>(i) / (n_freq - 1);
        map.freqs_ghz[i] = f;
        auto& column = map.p_excited[i];
        for (double shift : shifts) {
          LindbladEngine engine(config, shift);
          std::size_t next = 0;
          const auto visitor = [&](double t, const LindbladEngine& e) {
            while (next < column.size() &&
                   t + 1e-9 >= map.durations_ns[next]) {
              column[next] +=
                  e.excited_population() / static_cast<double>(shifts.size());
              ++next;
            }
          };
          if (map.durations_ns.front() <= 1e-12) {
            column[0] += engine.excited_population() /
                         static_cast<double>(shifts.size());
            next = 1;
          }
          engine.run_segment(
              PulseSegment::drive(f, config.rabi_rate_mhz, t_max_ns + 1.0),
              visitor);
        }
      });
  return map;
}

std::vector<PurcellSweepPoint> purcell_sweep(
    double kappa_mhz, double g_mhz, double f_r_ghz, double t1_intrinsic_us,
    double t2_echo_sweet_us, const std::vector<double>& nu01_grid_ghz) {
  if (nu01_grid_ghz.empty()) {
    throw DomainError("purcell_sweep: empty grid");
  }
  const double gamma_phi =
      std::max(0.0, 1.0 / t2_echo_sweet_us - 0.5 / t1_intrinsic_us);
  std::vector<PurcellSweepPoint> out;
  out.reserve(nu01_grid_ghz.size());
  for (double nu01 : nu01_grid_ghz) {
    PurcellSweepPoint p;
    p.nu01_ghz = nu01;
    const coupled::PurcellT1 t1 =
        coupled::purcell_t1(kappa_mhz, g_mhz, nu01 - f_r_ghz,
                            t1_intrinsic_us);
    p.t1_total_us = t1.t1_total_us;
    p.resonant = t1.resonant_limit;
    p.t2_echo_bound_us = 1.0 / (0.5 / p.t1_total_us + gamma_phi);
    out.push_back(p);
  }
  return out;
}

}  // namespace qmux::lindblad
