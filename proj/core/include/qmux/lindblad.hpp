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

#ifndef QMUX_LINDBLAD_HPP
#define QMUX_LINDBLAD_HPP

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

// Open-system time-domain simulator for the pulse experiments: driven qubit
// (2 or 3 levels), optionally coupled to a resonator mode, evolved under a
// Lindblad master equation by a fixed-step 4th-order integrator.
//
// Frame convention: one rotating frame per sequence, common to qubit and
// resonator, at the frequency of the first drive segment. Drive phases are
// evaluated at absolute sequence time, so pulses at other frequencies stay
// phase-coherent across segments.
namespace qmux::lindblad {

struct PulseSegment {
  enum class Kind { drive, delay };

  Kind kind = Kind::delay;
  double drive_freq_ghz = std::numeric_limits<double>::quiet_NaN();
  double rabi_rate_mhz = 0.0;  // on-resonance Rabi frequency Omega
  double phase_rad = 0.0;
  double duration_ns = 0.0;

  // Optional flux tuning: qubit transition moved to this frequency for the
  // segment, linearly ramped when start and end differ. NaN keeps the
  // configured frequency.
  double qubit_freq_start_ghz = std::numeric_limits<double>::quiet_NaN();
  double qubit_freq_end_ghz = std::numeric_limits<double>::quiet_NaN();

  static PulseSegment drive(double freq_ghz, double rabi_mhz,
                            double duration_ns, double phase_rad = 0.0);
  static PulseSegment delay(double duration_ns);
};

enum class ReadoutObservable { excited_population, photon_number };

struct PulseSequence {
  std::vector<PulseSegment> segments;
  ReadoutObservable readout = ReadoutObservable::excited_population;

  double total_duration_ns() const;
  void validate() const;
};

struct HilbertSpec {
  int qubit_levels = 2;   // 2 or 3
  int photon_levels = 0;  // resonator Fock states above vacuum (0 = no mode)

  int dim() const { return qubit_levels * (photon_levels + 1); }
};

struct LindbladConfig {
  HilbertSpec hilbert;

  double qubit_freq_ghz = 8.512;
  /// nu01 - nu12, enters only with 3 qubit levels.
  double anharmonicity_ghz = 0.540;
  double t1_us = std::numeric_limits<double>::infinity();
  double t2_us = std::numeric_limits<double>::infinity();
  double kappa_ext_mhz = 0.0;
  double kappa_int_mhz = 0.0;
  /// Default drive-qubit detuning used by the experiment builders.
  double detuning_mhz = 0.0;
  /// Quasiparticle parity splitting: observables average two runs with the
  /// qubit frequency offset by +-parity_split/2.
  double parity_split_mhz = 0.0;
  double rabi_rate_mhz = 6.17;
  double g_mhz = 0.0;             // qubit-resonator coupling (coupled space)
  double resonator_freq_ghz = 0.0;
  double integrator_step_ns = 0.25;
  double tolerance = 1e-6;
  double sample_dt_ns = 0.0;      // 0 = choose from sequence duration

  void validate() const;  // throws DomainError on unphysical settings
  double pi_time_ns() const { return 1.0 / (2.0 * rabi_rate_mhz * 1e-3); }
  double pure_dephasing_rate_per_us() const;
};

struct SimulationTrace {
  std::vector<double> times_ns;
  std::vector<double> values;
  std::string metadata;
};

/// Stepper over one parity branch. Tracks the cumulative probability flux
/// through each decay channel alongside the density matrix.
class LindbladEngine {
 public:
  LindbladEngine(const LindbladConfig& config,
                 double qubit_freq_shift_mhz = 0.0);

  void reset();

  using StepVisitor =
      std::function<void(double t_ns, const LindbladEngine& engine)>;
  void run_segment(const PulseSegment& segment,
                   const StepVisitor& visit = {});

  /// As run_segment but with a caller-chosen step ceiling. Callers own the
  /// accuracy argument (undriven tails whose observables are populations
  /// tolerate steps the general heuristic would refuse); verify with a
  /// step-halving check.
  void run_segment_with_step(const PulseSegment& segment, double max_step_ns,
                             const StepVisitor& visit = {});

  /// Full integration state, for branching sweeps off a shared prefix.
  struct Snapshot {
    Eigen::MatrixXcd rho;
    double time_ns = 0.0;
    double flux[3] = {0.0, 0.0, 0.0};
    bool frame_set = false;
    double frame_freq_ghz = 0.0;
  };
  Snapshot snapshot() const;
  void restore(const Snapshot& snap);

  const Eigen::MatrixXcd& density() const { return rho_; }
  double time_ns() const { return time_ns_; }
  double excited_population() const;
  double photon_number() const;
  double trace_deviation() const;
  double observable(ReadoutObservable obs) const;

  double emitted_external() const { return flux_[0]; }
  double lost_internal() const { return flux_[1]; }
  double lost_qubit() const { return flux_[2]; }

  /// Frame frequency is pinned by the first drive segment run after reset.
  double frame_freq_ghz() const { return frame_freq_ghz_; }

 private:
  struct Jump {
    Eigen::MatrixXcd op;
    Eigen::MatrixXcd op_dag_op;
    int flux_channel = -1;  // 0 ext, 1 int, 2 qubit, -1 untracked
  };

  void derivative(const Eigen::MatrixXcd& rho, double t_ns,
                  const PulseSegment& segment, double nu_q_ghz,
                  Eigen::MatrixXcd& drho, double* dflux) const;
  double segment_step_ns(const PulseSegment& segment) const;
  double qubit_freq_at(const PulseSegment& segment, double frac) const;

  LindbladConfig config_;
  double qubit_freq_ghz_;  // branch-shifted
  double frame_freq_ghz_;
  bool frame_set_ = false;

  Eigen::MatrixXcd number_q_, lower_q_, raise_q_, anharm_q_;
  Eigen::MatrixXcd number_r_, exchange_;  // a^dag b + a b^dag
  std::vector<Jump> jumps_;
  Eigen::MatrixXcd rho_;
  double time_ns_ = 0.0;
  double flux_[3] = {0.0, 0.0, 0.0};

  // scratch for the integrator
  mutable Eigen::MatrixXcd h_scratch_, k1_, k2_, k3_, k4_, rho_stage_, tmp_;
};

/// Evolves the ground state through the sequence and samples the readout
/// observable on a uniform grid (parity branches averaged when configured).
/// Throws AccuracyError if the trace drifts beyond 10x the tolerance.
SimulationTrace evolve(const LindbladConfig& config,
                       const PulseSequence& sequence);

// ---------------------------------------------------------------------------
// Standard experiments. All grids are in ns.
// ---------------------------------------------------------------------------

struct T1Result {
  SimulationTrace trace;          // population vs delay
  double fitted_t1_us = 0.0;
  double p0 = 0.0;                // fitted population at zero delay
  double residual_rms = 0.0;
};

/// Pi pulse, variable delay, population readout; single-exponential fit.
T1Result t1_experiment(const LindbladConfig& config,
                       const std::vector<double>& tau_grid_ns);

struct RamseyResult {
  SimulationTrace trace;          // fringe vs free-evolution delay
  std::vector<double> peak_freqs_mhz;
  std::vector<double> peak_magnitudes;
  double peak_separation_mhz = 0.0;   // 0 when a single component is found
  double fitted_t2_us = 0.0;
  double residual_rms = 0.0;
  bool resolution_warning = false;    // grid shorter than 2/parity_split
};

/// Two pi/2 pulses split by tau; spectral peak scan plus envelope fit.
RamseyResult ramsey_experiment(const LindbladConfig& config,
                               const std::vector<double>& tau_grid_ns);

struct EchoResult {
  SimulationTrace trace;
  double fitted_t2_echo_us = 0.0;
  double amplitude = 0.0;
  double offset = 0.0;
  double residual_rms = 0.0;
};

/// (pi/2) - tau/2 - (pi) - tau/2 - (pi/2) sequence; static detunings
/// (including the parity splitting) refocus out of the fitted decay.
EchoResult echo_experiment(const LindbladConfig& config,
                           const std::vector<double>& tau_grid_ns);

struct ChevronMap {
  std::vector<double> freqs_ghz;
  std::vector<double> durations_ns;
  /// p_excited[i][j]: population at freqs_ghz[i], durations_ns[j].
  std::vector<std::vector<double>> p_excited;
};

ChevronMap rabi_chevron(const LindbladConfig& config, double f_min_ghz,
                        double f_max_ghz, int n_freq, double t_max_ns,
                        int n_durations);

struct PurcellSweepPoint {
  double nu01_ghz = 0.0;
  double t1_total_us = 0.0;
  double t2_echo_bound_us = 0.0;
  bool resonant = false;
};

/// Closed-form sweep of relaxation and echo-coherence limits vs the qubit
/// transition frequency, combining the resonator-mediated decay with the
/// configured intrinsic rates.
std::vector<PurcellSweepPoint> purcell_sweep(
    double kappa_mhz, double g_mhz, double f_r_ghz, double t1_intrinsic_us,
    double t2_echo_sweet_us, const std::vector<double>& nu01_grid_ghz);

}  // namespace qmux::lindblad

#endif  // QMUX_LINDBLAD_HPP
