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

#include "qmux/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "qmux/constants.hpp"
#include "qmux/errors.hpp"

namespace qmux::numerics {

namespace {

double rms(const Eigen::VectorXd& r) {
  if (r.size() == 0) return 0.0;
  return std::sqrt(r.squaredNorm() / static_cast<double>(r.size()));
}

Eigen::MatrixXd numerical_jacobian(const ResidualFn& residual,
                                   const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& r0) {
  const auto n = x.size();
  Eigen::MatrixXd jac(r0.size(), n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double scale = std::max(std::abs(x[j]), 1e-8);
    const double h = 1e-7 * scale;
    Eigen::VectorXd xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    jac.col(j) = (residual(xp) - residual(xm)) / (2.0 * h);
  }
  return jac;
}

}  // namespace

LeastSquaresResult fit_least_squares(const ResidualFn& residual,
                                     const Eigen::VectorXd& initial,
                                     const LeastSquaresOptions& opts) {
  LeastSquaresResult out;
  Eigen::VectorXd x = initial;
  Eigen::VectorXd r = residual(x);
  double cost = r.squaredNorm();
  double damping = opts.initial_damping;

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    out.iterations = iter + 1;
    const Eigen::MatrixXd jac = numerical_jacobian(residual, x, r);
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * r;

    bool accepted = false;
    for (int attempt = 0; attempt < 40; ++attempt) {
      Eigen::MatrixXd damped = jtj;
      damped.diagonal().array() += damping * (jtj.diagonal().array() + 1e-30);
      const Eigen::VectorXd step = damped.ldlt().solve(-jtr);
      if (!step.allFinite()) {
        damping *= 10.0;
        continue;
      }
      const Eigen::VectorXd x_try = x + step;
      const Eigen::VectorXd r_try = residual(x_try);
      const double cost_try = r_try.squaredNorm();
      if (std::isfinite(cost_try) && cost_try <= cost) {
        const double rel_step =
            step.norm() / std::max(x.norm(), 1e-12);
        x = x_try;
        r = r_try;
        cost = cost_try;
        damping = std::max(damping * 0.25, 1e-14);
        accepted = true;
        if (rel_step < opts.step_tolerance ||
            rms(r) < opts.residual_tolerance) {
          out.params = x;
          out.residual_rms = rms(r);
          out.converged = true;
          return out;
        }
        break;
      }
      damping *= 10.0;
    }
    if (!accepted) {
      // Damping exhausted: stationary point to working precision.
      out.params = x;
      out.residual_rms = rms(r);
      out.converged = true;
      return out;
    }
  }

  out.params = x;
  out.residual_rms = rms(r);
  out.converged = false;
  return out;
}

CircleFit fit_circle(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3) {
    throw DomainError("fit_circle: need at least 3 matching points");
  }
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, 0) = x[i];
    a(i, 1) = y[i];
    a(i, 2) = 1.0;
    b[i] = -(x[i] * x[i] + y[i] * y[i]);
  }
  const Eigen::Vector3d sol =
      (a.transpose() * a).ldlt().solve(a.transpose() * b);
  CircleFit fit;
  fit.cx = -sol[0] / 2.0;
  fit.cy = -sol[1] / 2.0;
  const double r2 = fit.cx * fit.cx + fit.cy * fit.cy - sol[2];
  fit.radius = r2 > 0.0 ? std::sqrt(r2) : 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = std::hypot(x[i] - fit.cx, y[i] - fit.cy) - fit.radius;
    acc += d * d;
  }
  fit.rms = std::sqrt(acc / static_cast<double>(n));
  return fit;
}

namespace {

// Projected residual for fit_decaying_tones at a fixed decay rate. Solves the
// linear coefficients and reports the rms plus the solution.
struct ProjectedFit {
  double rms = 0.0;
  Eigen::VectorXd coeffs;
};

ProjectedFit project_linear(std::span<const double> t,
                            std::span<const double> y,
                            std::span<const double> freqs, bool with_offset,
                            double rate) {
  const auto n = static_cast<Eigen::Index>(t.size());
  const Eigen::Index cols =
      (with_offset ? 1 : 0) +
      static_cast<Eigen::Index>(freqs.size()) * 2;
  Eigen::MatrixXd basis(n, std::max<Eigen::Index>(cols, 1));
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index c = 0;
    const double env = std::exp(-rate * t[i]);
    if (with_offset) basis(i, c++) = 1.0;
    for (double f : freqs) {
      const double ph = constants::two_pi * f * t[i];
      basis(i, c++) = env * std::cos(ph);
      basis(i, c++) = env * std::sin(ph);
    }
    if (cols == 0) basis(i, 0) = env;  // pure exponential, single column
  }
  Eigen::Map<const Eigen::VectorXd> yv(y.data(), n);
  ProjectedFit out;
  out.coeffs = basis.colPivHouseholderQr().solve(yv);
  const Eigen::VectorXd resid = basis * out.coeffs - yv;
  out.rms = std::sqrt(resid.squaredNorm() / static_cast<double>(n));
  return out;
}

}  // namespace

DecayFit fit_decaying_tones(std::span<const double> t,
                            std::span<const double> y,
                            std::span<const double> freqs, bool with_offset) {
  if (t.size() != y.size() || t.size() < 4) {
    throw DomainError("fit_decaying_tones: need at least 4 matching samples");
  }
  const double t_span = *std::max_element(t.begin(), t.end()) -
                        *std::min_element(t.begin(), t.end());
  if (t_span <= 0.0) {
    throw DomainError("fit_decaying_tones: degenerate time grid");
  }

  // Bracket the decay rate on a log grid, then golden-section the best cell.
  const double rate_lo = 1e-3 / t_span;
  const double rate_hi = 50.0 / t_span;
  const int coarse = 120;
  double best_rate = rate_lo;
  double best_rms = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= coarse; ++i) {
    const double rate =
        rate_lo * std::pow(rate_hi / rate_lo, double(i) / coarse);
    const double r = project_linear(t, y, freqs, with_offset, rate).rms;
    if (r < best_rms) {
      best_rms = r;
      best_rate = rate;
    }
  }
  double lo = best_rate / std::pow(rate_hi / rate_lo, 1.5 / coarse);
  double hi = best_rate * std::pow(rate_hi / rate_lo, 1.5 / coarse);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::log(lo), b = std::log(hi);
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = project_linear(t, y, freqs, with_offset, std::exp(c)).rms;
  double fd = project_linear(t, y, freqs, with_offset, std::exp(d)).rms;
  for (int i = 0; i < 90 && (b - a) > 1e-12; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = project_linear(t, y, freqs, with_offset, std::exp(c)).rms;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = project_linear(t, y, freqs, with_offset, std::exp(d)).rms;
    }
  }
  const double rate = std::exp((a + b) / 2.0);
  const ProjectedFit proj = project_linear(t, y, freqs, with_offset, rate);

  DecayFit fit;
  fit.tau = 1.0 / rate;
  fit.residual_rms = proj.rms;
  fit.converged = true;
  Eigen::Index c0 = 0;
  if (with_offset) fit.offset = proj.coeffs[c0++];
  if (freqs.empty()) {
    fit.tone_amplitudes.push_back(proj.coeffs[c0]);
    fit.tone_phases.push_back(0.0);
  } else {
    for (std::size_t k = 0; k < freqs.size(); ++k) {
      const double ak = proj.coeffs[c0 + 2 * static_cast<Eigen::Index>(k)];
      const double bk = proj.coeffs[c0 + 2 * static_cast<Eigen::Index>(k) + 1];
      fit.tone_amplitudes.push_back(std::hypot(ak, bk));
      fit.tone_phases.push_back(std::atan2(bk, ak));
    }
  }
  return fit;
}

DecayFit fit_exponential(std::span<const double> t, std::span<const double> y,
                         bool with_offset) {
  return fit_decaying_tones(t, y, {}, with_offset);
}

std::vector<SpectralPeak> spectral_peaks(std::span<const double> t,
                                         std::span<const double> y,
                                         double f_min, double f_max,
                                         double f_step,
                                         std::size_t max_peaks) {
  if (t.size() != y.size() || t.size() < 8) {
    throw DomainError("spectral_peaks: need at least 8 matching samples");
  }
  if (!(f_step > 0.0) || !(f_max > f_min)) {
    throw DomainError("spectral_peaks: bad frequency grid");
  }
  const auto n = t.size();
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(n);

  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(constants::two_pi * double(i) / double(n - 1));
  }

  const auto grid_points =
      static_cast<std::size_t>(std::floor((f_max - f_min) / f_step)) + 1;
  std::vector<double> mag(grid_points);
  numerics::parallel_for_index(grid_points, [&](std::size_t k) {
    const double f = f_min + static_cast<double>(k) * f_step;
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double ph = constants::two_pi * f * t[i];
      const double v = (y[i] - mean) * w[i];
      re += v * std::cos(ph);
      im -= v * std::sin(ph);
    }
    mag[k] = std::hypot(re, im);
  });

  std::vector<SpectralPeak> peaks;
  for (std::size_t k = 1; k + 1 < grid_points; ++k) {
    if (mag[k] > mag[k - 1] && mag[k] >= mag[k + 1]) {
      // quadratic refinement around the sample maximum
      const double denom = mag[k - 1] - 2.0 * mag[k] + mag[k + 1];
      double shift = 0.0;
      if (std::abs(denom) > 1e-300) {
        shift = 0.5 * (mag[k - 1] - mag[k + 1]) / denom;
        shift = std::clamp(shift, -0.5, 0.5);
      }
      peaks.push_back({f_min + (static_cast<double>(k) + shift) * f_step,
                       mag[k] - 0.25 * (mag[k - 1] - mag[k + 1]) * shift});
    }
  }
  std::sort(peaks.begin(), peaks.end(),
            [](const SpectralPeak& a, const SpectralPeak& b) {
              return a.magnitude > b.magnitude;
            });
  if (peaks.size() > max_peaks) peaks.resize(max_peaks);
  std::sort(peaks.begin(), peaks.end(),
            [](const SpectralPeak& a, const SpectralPeak& b) {
              return a.frequency < b.frequency;
            });
  return peaks;
}

void parallel_for_index(std::size_t count,
                        const std::function<void(std::size_t)>& body) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  if (count < 2 || hw < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(hw, count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<std::size_t> next{0};
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        body(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace qmux::numerics
