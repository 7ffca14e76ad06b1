// Copyright 2026 The tfquant Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tfq/fourier.hpp"

#include <cmath>
#include <numbers>
#include <span>

#include "tfq/error.hpp"
#include "tfq/fft.hpp"

namespace tfq {
namespace {

constexpr double kSqrt2Pi = 2.5066282746310002;

std::span<cplx> as_span(CVector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

// Storage index (ascending omega) -> FFT bin.
std::size_t fft_bin(std::size_t k, std::size_t n) { return (k + n / 2) % n; }

}  // namespace

double Spectrum::energy() const { return samples.squaredNorm() * grid.domega(); }

Spectrum dft(const Signal& s) {
  const auto& g = s.grid;
  const std::size_t n = g.n();
  CVector work = s.samples;
  fft::forward(as_span(work));
  CVector out(static_cast<Eigen::Index>(n));
  const double scale = g.dt() / kSqrt2Pi;
  for (std::size_t k = 0; k < n; ++k) {
    const double w = g.omega(k);
    out[static_cast<Eigen::Index>(k)] =
        scale * std::polar(1.0, -w * g.t0()) * work[static_cast<Eigen::Index>(fft_bin(k, n))];
  }
  return Spectrum{g, std::move(out)};
}

Signal idft(const Spectrum& sp) {
  const auto& g = sp.grid;
  const std::size_t n = g.n();
  CVector work(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const double w = g.omega(k);
    work[static_cast<Eigen::Index>(fft_bin(k, n))] =
        std::polar(1.0, w * g.t0()) * sp.samples[static_cast<Eigen::Index>(k)];
  }
  fft::backward(as_span(work));
  work *= g.domega() / kSqrt2Pi;
  return Signal(g, std::move(work));
}

CMatrix dft_matrix(const UniformGrid& g) {
  const auto n = static_cast<Eigen::Index>(g.n());
  CMatrix f(n, n);
  const double inv = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const double w = g.omega(static_cast<std::size_t>(k));
    for (Eigen::Index j = 0; j < n; ++j) {
      f(k, j) = inv * std::polar(1.0, -w * g.t(static_cast<std::size_t>(j)));
    }
  }
  return f;
}

namespace {

// Circulant operator F^dag diag(mult) F; entry (j,l) depends on j - l only.
CMatrix fourier_multiplier(const UniformGrid& g, const CVector& mult) {
  const std::size_t n = g.n();
  CVector c(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    c[static_cast<Eigen::Index>(fft_bin(k, n))] = mult[static_cast<Eigen::Index>(k)];
  }
  fft::backward(as_span(c));  // c_m = sum_k mult_k e^{2 pi i k m / n}
  c /= static_cast<double>(n);
  const auto nn = static_cast<Eigen::Index>(n);
  CMatrix m(nn, nn);
  for (Eigen::Index j = 0; j < nn; ++j) {
    for (Eigen::Index l = 0; l < nn; ++l) {
      m(j, l) = c[(j - l + nn) % nn];
    }
  }
  return m;
}

}  // namespace

LinearOperator time_operator(const UniformGrid& g) {
  CMatrix m = g.times().cast<cplx>().asDiagonal();
  return LinearOperator(g, std::move(m), true);
}

LinearOperator frequency_operator(const UniformGrid& g) {
  CMatrix m = fourier_multiplier(g, g.omegas().cast<cplx>());
  // Remove rounding-level asymmetry from the FFT.
  m = 0.5 * (m + m.adjoint()).eval();
  return LinearOperator(g, std::move(m), true);
}

LinearOperator time_operator_spectral_sum(const UniformGrid& g) {
  const auto n = static_cast<Eigen::Index>(g.n());
  const double dt = g.dt();
  CMatrix m = CMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    // |delta_j> has samples e_j / dt; the projector's matrix carries one dt.
    CVector delta = CVector::Zero(n);
    delta[j] = 1.0 / dt;
    m += g.t(static_cast<std::size_t>(j)) * (delta * delta.adjoint()) * dt * dt;
  }
  return LinearOperator(g, std::move(m), true);
}

LinearOperator frequency_operator_spectral_sum(const UniformGrid& g) {
  const auto n = static_cast<Eigen::Index>(g.n());
  const double dt = g.dt();
  const double dw = g.domega();
  CMatrix m = CMatrix::Zero(n, n);
  CVector chi(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double w = g.omega(static_cast<std::size_t>(k));
    for (Eigen::Index j = 0; j < n; ++j) {
      chi[j] = std::polar(1.0 / kSqrt2Pi, w * g.t(static_cast<std::size_t>(j)));
    }
    m += (w * dw * dt) * (chi * chi.adjoint());
  }
  return LinearOperator(g, std::move(m), true);
}

LinearOperator exp_i_frequency(const UniformGrid& g, double sigma) {
  const auto n = static_cast<Eigen::Index>(g.n());
  CVector mult(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    mult[k] = std::polar(1.0, sigma * g.omega(static_cast<std::size_t>(k)));
  }
  return LinearOperator(g, fourier_multiplier(g, mult));
}

LinearOperator exp_i_time(const UniformGrid& g, double tau) {
  const auto n = static_cast<Eigen::Index>(g.n());
  CVector d(n);
  for (Eigen::Index j = 0; j < n; ++j) d[j] = std::polar(1.0, tau * g.t(static_cast<std::size_t>(j)));
  return LinearOperator(g, CMatrix(d.asDiagonal()));
}

Moments time_frequency_moments(const Signal& s) {
  const double e = s.energy();
  if (!(e > 0.0)) throw Error("uncertainty_product: zero signal");
  const auto& g = s.grid;
  const auto n = static_cast<Eigen::Index>(g.n());
  double mt = 0.0, mt2 = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double t = g.t(static_cast<std::size_t>(j));
    const double p = std::norm(s.samples[j]) * g.dt();
    mt += t * p;
    mt2 += t * t * p;
  }
  const Spectrum sp = dft(s);
  double mw = 0.0, mw2 = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double w = g.omega(static_cast<std::size_t>(k));
    const double p = std::norm(sp.samples[k]) * g.domega();
    mw += w * p;
    mw2 += w * w * p;
  }
  mt /= e;
  mt2 /= e;
  mw /= e;
  mw2 /= e;
  return Moments{mt, std::sqrt(std::max(0.0, mt2 - mt * mt)), mw,
                 std::sqrt(std::max(0.0, mw2 - mw * mw))};
}

double uncertainty_product(const Signal& s) {
  const Moments m = time_frequency_moments(s);
  return m.sd_t * m.sd_omega;
}

std::vector<Signal> gaussian_test_vectors(const UniformGrid& g) {
  std::vector<Signal> out;
  const double span = g.span();
  const double widths[] = {std::max(8.0 * g.dt(), span / 32.0), std::max(8.0 * g.dt(), span / 16.0)};
  const double centers[] = {-span / 8.0, 0.0, span / 8.0};
  const double carriers[] = {0.0, g.omega_max() / 8.0};
  for (double w : widths) {
    for (double c : centers) {
      for (double k : carriers) {
        out.push_back(Signal::from_function(g, [=](double t) {
          const double x = (t - c) / w;
          return std::polar(std::exp(-0.5 * x * x), k * t);
        }));
      }
    }
  }
  return out;
}

double weyl_relation_check(double sigma, double tau, const UniformGrid& g) {
  const CMatrix es = exp_i_frequency(g, sigma).matrix();
  const CMatrix et = exp_i_time(g, tau).matrix();
  const CMatrix diff = es * et - std::polar(1.0, sigma * tau) * (et * es);
  double worst = 0.0;
  for (const auto& v : gaussian_test_vectors(g)) {
    worst = std::max(worst, (diff * v.samples).norm() / v.samples.norm());
  }
  return worst;
}

double ccr_residual(const Signal& s) {
  const auto& g = s.grid;
  const CMatrix t = time_operator(g).matrix();
  const CMatrix w = frequency_operator(g).matrix();
  const CVector c = t * (w * s.samples) - w * (t * s.samples);
  const CVector r = c - cplx(0.0, 1.0) * s.samples;
  return r.norm() / s.samples.norm();
}

}  // namespace tfq
