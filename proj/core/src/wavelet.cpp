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

#include "tfq/wavelet.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "tfq/error.hpp"
#include "tfq/fourier.hpp"

namespace tfq {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kSqrt2Pi = std::sqrt(kTwoPi);

std::vector<std::size_t> grid_indices(const UniformGrid& g, const RVector& b) {
  std::vector<std::size_t> idx;
  idx.reserve(static_cast<std::size_t>(b.size()));
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    const double x = (b[i] - g.t0()) / g.dt();
    const double r = std::round(x);
    if (std::abs(x - r) > 1e-9 || r < 0.0 || r >= static_cast<double>(g.n())) {
      throw GridError("wavelet b value " + std::to_string(b[i]) + " is not a grid time");
    }
    idx.push_back(static_cast<std::size_t>(r));
  }
  return idx;
}

double spacing(const UniformGrid& g, const RVector& b) {
  if (b.size() < 2) return g.dt();
  const double db = b[1] - b[0];
  for (Eigen::Index i = 2; i < b.size(); ++i) {
    if (std::abs(b[i] - b[i - 1] - db) > 1e-9 * std::abs(db)) {
      throw GridError("wavelet b values are not uniformly spaced");
    }
  }
  return db;
}

// a^{1/2} psi_hat(a omega_k) on the ascending frequency grid.
CVector dilated_spectrum(const Wavelet& w, double a) {
  const auto& g = w.base.grid();
  CVector out(static_cast<Eigen::Index>(g.n()));
  const double sa = std::sqrt(a);
  for (std::size_t k = 0; k < g.n(); ++k) out[static_cast<Eigen::Index>(k)] = sa * w.psi_hat(a * g.omega(k));
  return out;
}

void check_scales(const Wavelet& w, const ScaleGrid& scales) {
  if (scales.size() == 0) return;
  const auto& g = w.base.grid();
  const double width = w.rms_width();
  const double lo = scales.a_values()[0] * width;
  const double hi = scales.a_values()[static_cast<Eigen::Index>(scales.size()) - 1] * width;
  if (lo < 4.0 * g.dt()) {
    throw Error("scale a_min=" + std::to_string(scales.a_values()[0]) +
                " unresolvable: a_min * width must be >= 4 dt");
  }
  if (hi > g.span() / 8.0) {
    throw Error("scale a_max=" + std::to_string(scales.a_values()[static_cast<Eigen::Index>(scales.size()) - 1]) +
                " wraps: a_max * width must be <= span/8");
  }
}

Probe normalized_probe(const UniformGrid& g, const std::function<cplx(double)>& f,
                       std::string label) {
  return Probe(Signal::from_function(g, f), std::move(label));
}

}  // namespace

ScaleGrid::ScaleGrid(double a_min, double q, std::size_t m) : a_min_(a_min), q_(q) {
  if (!(a_min > 0.0)) throw Error("scale grid requires a_min > 0");
  if (!(q > 1.0)) throw Error("scale grid requires ratio q > 1");
  a_.resize(static_cast<Eigen::Index>(m));
  for (std::size_t j = 0; j < m; ++j) a_[static_cast<Eigen::Index>(j)] = a_min * std::pow(q, static_cast<double>(j));
}

ScaleGrid ScaleGrid::octaves(double a_min, double octaves, std::size_t voices) {
  if (voices == 0) throw Error("scale grid requires at least one voice per octave");
  const double q = std::pow(2.0, 1.0 / static_cast<double>(voices));
  const auto m = static_cast<std::size_t>(std::llround(octaves * static_cast<double>(voices))) + 1;
  return ScaleGrid(a_min, q, m);
}

Wavelet::Wavelet(Probe p) : base(std::move(p)), c_psi(admissibility_constant(base)) {}

cplx Wavelet::psi_hat(double xi) const {
  const auto& g = base.grid();
  if (std::abs(xi) > g.omega_max()) return 0.0;
  // Horner in z = e^{-i xi dt}.
  const cplx z = std::polar(1.0, -xi * g.dt());
  cplx acc = 0.0;
  for (std::size_t j = g.n(); j-- > 0;) acc = acc * z + base.base().samples[static_cast<Eigen::Index>(j)];
  return acc * std::polar(g.dt() / kSqrt2Pi, -xi * g.t0());
}

double Wavelet::rms_width() const {
  const auto& g = base.grid();
  const RVector& w = base.intensity();
  const RVector t = g.times();
  const double mass = w.sum() * g.dt();
  const double mean = t.dot(w) * g.dt() / mass;
  return std::sqrt((t.array() - mean).square().matrix().dot(w) * g.dt() / mass);
}

double admissibility_constant(const Probe& p) { return admissibility_constant(p.base()); }

double admissibility_constant(const Signal& psi) {
  const auto& g = psi.grid;
  const Spectrum sp = dft(psi);
  const std::size_t n = g.n();
  const std::size_t zero = n / 2;
  const double mean = std::abs(sp.samples[static_cast<Eigen::Index>(zero)]);
  if (mean > 1e-8 * std::max(1.0, psi.norm())) {
    throw AdmissibilityError("probe has nonzero mean: |psi_hat(0)| = " + std::to_string(mean));
  }
  double pos = 0.0, neg = 0.0;
  for (std::size_t m = 1; m < n / 2; ++m) {
    const double w = static_cast<double>(m) * g.domega();
    pos += std::norm(sp.samples[static_cast<Eigen::Index>(zero + m)]) / w;
    neg += std::norm(sp.samples[static_cast<Eigen::Index>(zero - m)]) / w;
  }
  pos *= kTwoPi * g.domega();
  neg *= kTwoPi * g.domega();
  if (!(pos > 0.0)) throw AdmissibilityError("admissibility integral vanishes");
  if (std::abs(pos - neg) > 1e-3 * std::max(pos, neg)) {
    throw SymmetryError("|psi_hat| is not even: positive/negative integrals " + std::to_string(pos) +
                        " vs " + std::to_string(neg));
  }
  return pos;
}

Probe mexican_hat(const UniformGrid& g, double sigma) {
  return normalized_probe(
      g,
      [sigma](double t) {
        const double x = t / sigma;
        return cplx((1.0 - x * x) * std::exp(-0.5 * x * x), 0.0);
      },
      "mexican_hat");
}

Probe morlet(const UniformGrid& g, double omega0, double sigma) {
  const double corr = std::exp(-0.5 * omega0 * omega0);
  return normalized_probe(
      g,
      [=](double t) {
        const double x = t / sigma;
        return cplx((std::cos(omega0 * x) - corr) * std::exp(-0.5 * x * x), 0.0);
      },
      "morlet");
}

WaveletCoeffs cwt(const Signal& s, const Wavelet& w, const RVector& b_values,
                  const ScaleGrid& scales) {
  const auto& g = s.grid;
  if (!(g == w.base.grid())) throw GridError("signal and wavelet live on different grids");
  check_scales(w, scales);
  const auto idx = grid_indices(g, b_values);
  const Spectrum sp = dft(s);
  CMatrix values(b_values.size(), static_cast<Eigen::Index>(scales.size()));
  for (Eigen::Index ia = 0; ia < values.cols(); ++ia) {
    const CVector psi = dilated_spectrum(w, scales.a_values()[ia]);
    const Signal line = idft(Spectrum{g, psi.conjugate().cwiseProduct(sp.samples)});
    for (std::size_t i = 0; i < idx.size(); ++i) {
      values(static_cast<Eigen::Index>(i), ia) = kSqrt2Pi * line.samples[static_cast<Eigen::Index>(idx[i])];
    }
  }
  return WaveletCoeffs{b_values, scales, std::move(values)};
}

Signal icwt(const WaveletCoeffs& c, const Wavelet& w) {
  const auto& g = w.base.grid();
  const auto n = static_cast<Eigen::Index>(g.n());
  const auto idx = grid_indices(g, c.b_values);
  const double db = spacing(g, c.b_values);
  CVector out = CVector::Zero(n);
  for (Eigen::Index ia = 0; ia < static_cast<Eigen::Index>(c.scales.size()); ++ia) {
    const double a = c.scales.a_values()[ia];
    CVector x = CVector::Zero(n);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      x[static_cast<Eigen::Index>(idx[i])] = c.values(static_cast<Eigen::Index>(i), ia);
    }
    Spectrum sh = dft(Signal(g, std::move(x)));
    sh.samples = sh.samples.cwiseProduct(dilated_spectrum(w, a)) * (kSqrt2Pi / g.dt());
    out += idft(sh).samples * (db * c.scales.log_weight() / (a * w.c_psi));
  }
  return Signal(g, std::move(out));
}

LinearOperator wavelet_resolution_check(const Wavelet& w, const RVector& b_values,
                                        const ScaleGrid& scales) {
  const auto& g = w.base.grid();
  const auto n = static_cast<Eigen::Index>(g.n());
  if (b_values.size() == 0 || scales.size() == 0) return LinearOperator::zero(g);
  check_scales(w, scales);
  grid_indices(g, b_values);
  const double db = spacing(g, b_values);
  CMatrix r = CMatrix::Zero(n, n);
  CMatrix atoms(n, b_values.size());
  for (Eigen::Index ia = 0; ia < static_cast<Eigen::Index>(scales.size()); ++ia) {
    const double a = scales.a_values()[ia];
    const CVector psi = dilated_spectrum(w, a);
    for (Eigen::Index i = 0; i < b_values.size(); ++i) {
      CVector sh(n);
      for (Eigen::Index k = 0; k < n; ++k) {
        sh[k] = psi[k] * std::polar(1.0, -g.omega(static_cast<std::size_t>(k)) * b_values[i]);
      }
      atoms.col(i) = idft(Spectrum{g, std::move(sh)}).samples;
    }
    r += (g.dt() * db * scales.log_weight() / (a * w.c_psi)) * (atoms * atoms.adjoint());
  }
  r = 0.5 * (r + r.adjoint()).eval();
  return LinearOperator(g, std::move(r), true);
}

double wavelet_energy(const WaveletCoeffs& c, const Wavelet& w) {
  const double db = spacing(w.base.grid(), c.b_values);
  double acc = 0.0;
  for (Eigen::Index ia = 0; ia < c.values.cols(); ++ia) {
    acc += c.values.col(ia).squaredNorm() / c.scales.a_values()[ia];
  }
  return acc * db * c.scales.log_weight() / w.c_psi;
}

}  // namespace tfq
