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

#include "tfq/grid.hpp"

#include <cmath>
#include <numbers>
#include <span>
#include <sstream>

#include "tfq/error.hpp"
#include "tfq/fft.hpp"

namespace tfq {
namespace {

bool is_power_of_two(std::size_t n) { return n && !(n & (n - 1)); }

std::span<cplx> as_span(CVector& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace

UniformGrid::UniformGrid(std::size_t n, double t0, double dt) : n_(n), t0_(t0), dt_(dt) {
  if (n < 8 || !is_power_of_two(n)) {
    throw GridError("grid size must be a power of two >= 8, got " + std::to_string(n));
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) throw GridError("grid spacing dt must be > 0");
  if (!std::isfinite(t0)) throw GridError("grid origin t0 must be finite");
}

UniformGrid UniformGrid::centered(std::size_t n, double dt) {
  return UniformGrid(n, -0.5 * static_cast<double>(n) * dt, dt);
}

double UniformGrid::domega() const noexcept {
  return 2.0 * std::numbers::pi / (static_cast<double>(n_) * dt_);
}

double UniformGrid::omega_max() const noexcept { return std::numbers::pi / dt_; }

double UniformGrid::omega(std::size_t k) const noexcept {
  return (static_cast<double>(k) - static_cast<double>(n_ / 2)) * domega();
}

long UniformGrid::signed_lag(long m) const noexcept {
  const long n = static_cast<long>(n_);
  long r = ((m % n) + n) % n;
  return r >= n / 2 ? r - n : r;
}

RVector UniformGrid::times() const {
  RVector t(static_cast<Eigen::Index>(n_));
  for (std::size_t j = 0; j < n_; ++j) t[static_cast<Eigen::Index>(j)] = this->t(j);
  return t;
}

RVector UniformGrid::omegas() const {
  RVector w(static_cast<Eigen::Index>(n_));
  for (std::size_t k = 0; k < n_; ++k) w[static_cast<Eigen::Index>(k)] = omega(k);
  return w;
}

bool UniformGrid::operator==(const UniformGrid& o) const noexcept {
  return n_ == o.n_ && std::abs(t0_ - o.t0_) <= 1e-12 * std::max(1.0, std::abs(t0_)) &&
         std::abs(dt_ - o.dt_) <= 1e-12 * dt_;
}

Signal::Signal(UniformGrid g, CVector s) : grid(g), samples(std::move(s)) {
  if (static_cast<std::size_t>(samples.size()) != grid.n()) {
    throw GridError("signal length does not match grid size");
  }
}

Signal::Signal(UniformGrid g)
    : grid(g), samples(CVector::Zero(static_cast<Eigen::Index>(g.n()))) {}

Signal Signal::from_function(const UniformGrid& g, const std::function<cplx(double)>& f) {
  CVector s(static_cast<Eigen::Index>(g.n()));
  for (std::size_t j = 0; j < g.n(); ++j) s[static_cast<Eigen::Index>(j)] = f(g.t(j));
  return Signal(g, std::move(s));
}

double Signal::energy() const { return samples.squaredNorm() * grid.dt(); }
double Signal::norm() const { return std::sqrt(energy()); }

cplx inner_product(const Signal& x, const Signal& y) {
  if (!(x.grid == y.grid)) throw GridError("inner_product: grid mismatch");
  return x.samples.dot(y.samples) * x.grid.dt();  // Eigen dot conjugates lhs
}

CVector shift_samples(const UniformGrid& g, const CVector& x, double b) {
  const std::size_t n = g.n();
  const double steps = b / g.dt();
  const double rounded = std::round(steps);
  CVector out(static_cast<Eigen::Index>(n));
  if (std::abs(steps - rounded) <= 1e-12 * std::max(1.0, std::abs(steps))) {
    const long s = static_cast<long>(rounded);
    const long nn = static_cast<long>(n);
    for (long j = 0; j < nn; ++j) {
      out[j] = x[((j - s) % nn + nn) % nn];
    }
    return out;
  }
  out = x;
  fft::forward(as_span(out));
  const double dw = g.domega();
  const long half = static_cast<long>(n / 2);
  for (long k = 0; k < static_cast<long>(n); ++k) {
    const long kk = k < half ? k : k - static_cast<long>(n);
    if (kk == -half) {
      out[k] *= std::cos(static_cast<double>(half) * dw * b);
    } else {
      out[k] *= std::polar(1.0, -static_cast<double>(kk) * dw * b);
    }
  }
  fft::backward(as_span(out));
  out /= static_cast<double>(n);
  return out;
}

Probe::Probe(Signal base, std::string label, std::optional<double> gaussian_sigma)
    : base_(std::move(base)),
      label_(std::move(label)),
      sigma_(gaussian_sigma),
      autocorr_(base_.grid),
      autocorr_lag_(CVector::Zero(static_cast<Eigen::Index>(base_.grid.n()))) {
  const double nrm = base_.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw GridError("probe must have nonzero finite norm");
  base_.samples /= nrm;
  intensity_ = base_.samples.cwiseAbs2();

  // R at lag m: sum_j psi_j conj(psi_{j-m}) dt, computed through |FFT psi|^2.
  const std::size_t n = base_.grid.n();
  CVector spec = base_.samples;
  fft::forward(as_span(spec));
  CVector pw = spec.cwiseAbs2().cast<cplx>();
  fft::backward(as_span(pw));
  autocorr_lag_ = pw * (base_.grid.dt() / static_cast<double>(n));

  // R on the grid times t_j = t0 + j dt; spectrally shifted when t0 is not a
  // multiple of dt.
  const double off = base_.grid.t0();
  autocorr_.samples = shift_samples(base_.grid, autocorr_lag_, -off);
}

Probe make_gaussian_probe(const UniformGrid& g, double sigma) {
  if (!(sigma >= 4.0 * g.dt() * (1.0 - 1e-12))) {
    std::ostringstream os;
    os << "gaussian probe: sigma=" << sigma << " violates lower bound sigma >= 4*dt = "
       << 4.0 * g.dt();
    throw GridError(os.str());
  }
  if (!(sigma <= g.span() / 8.0 * (1.0 + 1e-12))) {
    std::ostringstream os;
    os << "gaussian probe: sigma=" << sigma << " violates upper bound sigma <= n*dt/8 = "
       << g.span() / 8.0;
    throw GridError(os.str());
  }
  const double amp = 1.0 / (std::pow(std::numbers::pi, 0.25) * std::sqrt(sigma));
  // Periodic circle: evaluate at the wrapped distance from the origin.
  auto s = Signal::from_function(g, [&](double t) {
    const double span = g.span();
    double tw = std::remainder(t, span);
    return cplx(amp * std::exp(-tw * tw / (2.0 * sigma * sigma)), 0.0);
  });
  return Probe(std::move(s), "gaussian", sigma);
}

Signal autocorrelation(const Probe& p) { return p.autocorr(); }

HalfLineGrid::HalfLineGrid(std::size_t m, double dx, std::optional<double> x_min)
    : m_(m), dx_(dx), x_min_(x_min.value_or(0.5 * dx)) {
  if (m < 4) throw GridError("half-line grid needs at least 4 points");
  if (!(dx > 0.0)) throw GridError("half-line grid spacing must be > 0");
  if (!(x_min_ >= 0.5 * dx * (1.0 - 1e-12))) {
    throw GridError("half-line grid requires x_min >= dx/2");
  }
}

RVector HalfLineGrid::xs() const {
  RVector v(static_cast<Eigen::Index>(m_));
  for (std::size_t j = 0; j < m_; ++j) v[static_cast<Eigen::Index>(j)] = x(j);
  return v;
}

bool HalfLineGrid::operator==(const HalfLineGrid& o) const noexcept {
  return m_ == o.m_ && std::abs(dx_ - o.dx_) <= 1e-12 * dx_ &&
         std::abs(x_min_ - o.x_min_) <= 1e-12 * std::max(dx_, x_min_);
}

HalfLineSignal::HalfLineSignal(HalfLineGrid g, CVector s) : grid(g), samples(std::move(s)) {
  if (static_cast<std::size_t>(samples.size()) != grid.m()) {
    throw GridError("half-line signal length does not match grid size");
  }
}

HalfLineSignal HalfLineSignal::from_function(const HalfLineGrid& g,
                                             const std::function<cplx(double)>& f) {
  CVector s(static_cast<Eigen::Index>(g.m()));
  for (std::size_t j = 0; j < g.m(); ++j) s[static_cast<Eigen::Index>(j)] = f(g.x(j));
  return HalfLineSignal(g, std::move(s));
}

double HalfLineSignal::norm() const { return std::sqrt(samples.squaredNorm() * grid.dx()); }

cplx HalfLineSignal::at(double x) const {
  const double u = (x - grid.x_min()) / grid.dx();
  const long m = static_cast<long>(grid.m());
  if (!(x > 0.0) || u > static_cast<double>(m - 1) || !std::isfinite(u)) return {0.0, 0.0};
  long i = static_cast<long>(std::floor(u)) - 1;
  i = std::clamp(i, 0L, m - 4);
  const double s = u - static_cast<double>(i);
  // 4-point Lagrange basis on nodes 0,1,2,3.
  const double l0 = -(s - 1) * (s - 2) * (s - 3) / 6.0;
  const double l1 = s * (s - 2) * (s - 3) / 2.0;
  const double l2 = -s * (s - 1) * (s - 3) / 2.0;
  const double l3 = s * (s - 1) * (s - 2) / 6.0;
  return l0 * samples[i] + l1 * samples[i + 1] + l2 * samples[i + 2] + l3 * samples[i + 3];
}

cplx inner_product(const HalfLineSignal& x, const HalfLineSignal& y) {
  if (!(x.grid == y.grid)) throw GridError("inner_product: half-line grid mismatch");
  return x.samples.dot(y.samples) * x.grid.dx();
}

}  // namespace tfq
