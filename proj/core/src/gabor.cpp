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

#include "tfq/gabor.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "tfq/error.hpp"

namespace tfq {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kSqrt2Pi = std::sqrt(kTwoPi);

// Grid frequency indices of the lattice omegas, or nullopt if any is off-grid.
std::optional<std::vector<std::size_t>> grid_omega_indices(const UniformGrid& g,
                                                           const RVector& omegas) {
  std::vector<std::size_t> idx;
  idx.reserve(static_cast<std::size_t>(omegas.size()));
  const double dw = g.domega();
  const double w0 = g.omega(0);
  for (Eigen::Index k = 0; k < omegas.size(); ++k) {
    const double x = (omegas[k] - w0) / dw;
    const double r = std::round(x);
    if (std::abs(x - r) > 1e-9 || r < 0.0 || r >= static_cast<double>(g.n())) return std::nullopt;
    idx.push_back(static_cast<std::size_t>(r));
  }
  return idx;
}

void check_band(const UniformGrid& g, double omega) {
  if (std::abs(omega) > g.omega_max() * (1.0 + 1e-12)) {
    throw Error("frequency " + std::to_string(omega) + " outside the band |omega| <= pi/dt");
  }
}

void check_same_grid(const UniformGrid& a, const UniformGrid& b) {
  if (!(a == b)) throw GridError("signal and probe live on different grids");
}

}  // namespace

double TFLattice::weight() const { return db * domega / kTwoPi; }

TFLattice TFLattice::on_grid(const UniformGrid& g, std::size_t b_stride, std::size_t omega_stride) {
  if (b_stride == 0 || omega_stride == 0) throw Error("lattice stride must be positive");
  const std::size_t n = g.n();
  const std::size_t nb = (n + b_stride - 1) / b_stride;
  const std::size_t nw = (n + omega_stride - 1) / omega_stride;
  TFLattice lat;
  lat.b_values.resize(static_cast<Eigen::Index>(nb));
  lat.omega_values.resize(static_cast<Eigen::Index>(nw));
  for (std::size_t i = 0; i < nb; ++i) lat.b_values[static_cast<Eigen::Index>(i)] = g.t(i * b_stride);
  for (std::size_t k = 0; k < nw; ++k) {
    lat.omega_values[static_cast<Eigen::Index>(k)] = g.omega(k * omega_stride);
  }
  lat.db = static_cast<double>(b_stride) * g.dt();
  lat.domega = static_cast<double>(omega_stride) * g.domega();
  return lat;
}

TFLattice TFLattice::default_for(const Probe& p) {
  const auto& g = p.grid();
  const double sigma = probe_width(p);
  // Strides are powers of two so the lattice stays uniform on the periodic grid.
  const auto pow2_floor = [](double x) {
    std::size_t s = 1;
    while (static_cast<double>(2 * s) <= x) s *= 2;
    return s;
  };
  return on_grid(g, pow2_floor(sigma / 4.0 / g.dt()), pow2_floor(1.0 / (4.0 * sigma) / g.domega()));
}

TFLattice TFLattice::empty() { return TFLattice{RVector(0), RVector(0), 0.0, 0.0}; }

WHGroupElement WHGroupElement::operator*(const WHGroupElement& o) const {
  return {varsigma + o.varsigma + 0.5 * (omega * o.b - o.omega * b), b + o.b, omega + o.omega};
}

WHGroupElement WHGroupElement::inverse() const { return {-varsigma, -b, -omega}; }

double probe_width(const Probe& p) {
  if (p.gaussian_sigma()) return *p.gaussian_sigma();
  const auto& g = p.grid();
  const RVector& w = p.intensity();
  const RVector t = g.times();
  const double mass = w.sum() * g.dt();
  const double mean = t.dot(w) * g.dt() / mass;
  const double var = (t.array() - mean).square().matrix().dot(w) * g.dt() / mass;
  return std::sqrt(2.0 * var);
}

Signal gabor_atom(const Probe& p, double b, double omega) {
  const auto& g = p.grid();
  check_band(g, omega);
  CVector x = p.shifted(b);
  for (std::size_t j = 0; j < g.n(); ++j) {
    x[static_cast<Eigen::Index>(j)] *= std::polar(1.0, omega * g.t(j));
  }
  return Signal(g, std::move(x));
}

GaborCoeffs gabor_transform(const Signal& s, const Probe& p, const TFLattice& lat) {
  const auto& g = s.grid;
  check_same_grid(g, p.grid());
  for (Eigen::Index k = 0; k < lat.omega_values.size(); ++k) check_band(g, lat.omega_values[k]);
  const auto nb = static_cast<Eigen::Index>(lat.nb());
  const auto nw = static_cast<Eigen::Index>(lat.nomega());
  const auto n = static_cast<Eigen::Index>(g.n());
  CMatrix values(nb, nw);
  const auto idx = grid_omega_indices(g, lat.omega_values);
  const RVector t = g.times();
  for (Eigen::Index i = 0; i < nb; ++i) {
    const CVector psi_b = p.shifted(lat.b_values[i]);
    CVector v = psi_b.conjugate().cwiseProduct(s.samples);
    if (idx) {
      const Spectrum sp = dft(Signal(g, std::move(v)));
      for (Eigen::Index k = 0; k < nw; ++k) {
        values(i, k) = kSqrt2Pi * sp.samples[static_cast<Eigen::Index>((*idx)[static_cast<std::size_t>(k)])];
      }
    } else {
      for (Eigen::Index k = 0; k < nw; ++k) {
        cplx acc = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) acc += std::polar(1.0, -lat.omega_values[k] * t[j]) * v[j];
        values(i, k) = acc * g.dt();
      }
    }
  }
  return GaborCoeffs{lat, std::move(values)};
}

Signal gabor_reconstruct(const GaborCoeffs& c, const Probe& p) {
  const auto& g = p.grid();
  const auto& lat = c.lattice;
  const auto n = static_cast<Eigen::Index>(g.n());
  CVector out = CVector::Zero(n);
  const auto idx = grid_omega_indices(g, lat.omega_values);
  const RVector t = g.times();
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(lat.nb()); ++i) {
    // sum_omega S(b,omega) e^{i omega t} domega
    CVector line(n);
    if (idx) {
      CVector spec = CVector::Zero(n);
      for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(lat.nomega()); ++k) {
        spec[static_cast<Eigen::Index>((*idx)[static_cast<std::size_t>(k)])] += c.values(i, k);
      }
      line = idft(Spectrum{g, std::move(spec)}).samples * (kSqrt2Pi * lat.domega / g.domega());
    } else {
      for (Eigen::Index j = 0; j < n; ++j) {
        cplx acc = 0.0;
        for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(lat.nomega()); ++k) {
          acc += c.values(i, k) * std::polar(1.0, lat.omega_values[k] * t[j]);
        }
        line[j] = acc * lat.domega;
      }
    }
    out += p.shifted(lat.b_values[i]).cwiseProduct(line) * (lat.db / kTwoPi);
  }
  return Signal(g, std::move(out));
}

LinearOperator resolution_of_identity_matrix(const Probe& p, const TFLattice& lat) {
  const auto& g = p.grid();
  const auto n = static_cast<Eigen::Index>(g.n());
  if (lat.nb() == 0 || lat.nomega() == 0) return LinearOperator::zero(g);
  // G(m) = sum_omega e^{i omega m dt}, m in (-n, n).
  CVector gsum(2 * n - 1);
  for (Eigen::Index m = -(n - 1); m <= n - 1; ++m) {
    cplx acc = 0.0;
    for (Eigen::Index k = 0; k < lat.omega_values.size(); ++k) {
      acc += std::polar(1.0, lat.omega_values[k] * static_cast<double>(m) * g.dt());
    }
    gsum[m + n - 1] = acc;
  }
  CMatrix psi(n, static_cast<Eigen::Index>(lat.nb()));
  for (Eigen::Index i = 0; i < psi.cols(); ++i) psi.col(i) = p.shifted(lat.b_values[i]);
  CMatrix r = psi * psi.adjoint();
  const double scale = g.dt() * lat.weight();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) r(j, k) *= scale * gsum[j - k + n - 1];
  }
  r = 0.5 * (r + r.adjoint()).eval();
  return LinearOperator(g, std::move(r), true);
}

LinearOperator wh_displacement(const WHGroupElement& e, const UniformGrid& grid) {
  check_band(grid, e.omega);
  const cplx phase = std::polar(1.0, e.varsigma - 0.5 * e.omega * e.b);
  CMatrix m = exp_i_time(grid, e.omega).matrix() * exp_i_frequency(grid, -e.b).matrix();
  return LinearOperator(grid, phase * m);
}

Signal apply_wh_displacement(const WHGroupElement& e, const Signal& s) {
  const auto& g = s.grid;
  check_band(g, e.omega);
  Spectrum sp = dft(s);
  for (std::size_t k = 0; k < g.n(); ++k) {
    sp.samples[static_cast<Eigen::Index>(k)] *= std::polar(1.0, -e.b * g.omega(k));
  }
  Signal out = idft(sp);
  const cplx phase = std::polar(1.0, e.varsigma - 0.5 * e.omega * e.b);
  for (std::size_t j = 0; j < g.n(); ++j) {
    out.samples[static_cast<Eigen::Index>(j)] *= phase * std::polar(1.0, e.omega * g.t(j));
  }
  return out;
}

namespace {

long lattice_steps(double shift, double step, const char* axis) {
  if (shift == 0.0) return 0;
  if (!(step > 0.0)) throw Error(std::string("covariance_check: lattice has no ") + axis + " spacing");
  const double x = shift / step;
  const double r = std::round(x);
  if (std::abs(x - r) > 1e-9 * std::max(1.0, std::abs(x))) {
    throw Error(std::string("covariance_check: ") + axis + " shift is not a lattice multiple");
  }
  return static_cast<long>(r);
}

}  // namespace

double covariance_check(const Signal& s, const Probe& p, double b0, double omega0,
                        const TFLattice& lat, CovariancePhase phase) {
  const long di = lattice_steps(b0, lat.db, "b");
  const long dk = lattice_steps(omega0, lat.domega, "omega");
  const GaborCoeffs base = gabor_transform(s, p, lat);
  const GaborCoeffs moved = gabor_transform(apply_wh_displacement({0.0, b0, omega0}, s), p, lat);
  const double sign = phase == CovariancePhase::kMinus ? -1.0 : 1.0;
  const auto nb = static_cast<long>(lat.nb());
  const auto nw = static_cast<long>(lat.nomega());
  double worst = 0.0;
  for (long i = 0; i < nb; ++i) {
    if (i - di < 0 || i - di >= nb) continue;
    for (long k = 0; k < nw; ++k) {
      if (k - dk < 0 || k - dk >= nw) continue;
      const double w = lat.omega_values[k];
      const cplx ph = std::polar(1.0, sign * (w - 0.5 * omega0) * b0);
      worst = std::max(worst, std::abs(moved.values(i, k) - ph * base.values(i - di, k - dk)));
    }
  }
  return worst;
}

}  // namespace tfq
