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

#include "tfq/quantwh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>

#include "tfq/error.hpp"
#include "tfq/fft.hpp"
#include "tfq/fourier.hpp"

namespace tfq {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
const double kSqrt2Pi = std::sqrt(kTwoPi);

std::span<cplx> as_span(CVector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

Eigen::Index ei(std::size_t i) { return static_cast<Eigen::Index>(i); }

// Index of lag m (mod n) -> lag time; the Nyquist lag is reported as -span/2.
double lag_time(const UniformGrid& g, std::size_t m) {
  return static_cast<double>(g.signed_lag(static_cast<long>(m))) * g.dt();
}

// Circular convolution (x (*) y)[j] = sum_i x[i] y[j - i].
CVector circular_convolve(CVector x, CVector y) {
  const auto n = static_cast<double>(x.size());
  fft::forward(as_span(x));
  fft::forward(as_span(y));
  CVector z = x.cwiseProduct(y);
  fft::backward(as_span(z));
  return z / n;
}

// x[k' mod n] = values at ascending index k (k' = k - n/2).
CVector to_fft_order(const CVector& ascending) {
  const auto n = ascending.size();
  CVector out(n);
  for (Eigen::Index k = 0; k < n; ++k) out[(k + n / 2) % n] = ascending[k];
  return out;
}

// (2 pi)^{-1/2} sum_k e^{-i omega_k y_m} v_k domega at lag index m.
CVector partial_ft_from_samples(const UniformGrid& g, const CVector& ascending) {
  CVector x = to_fft_order(ascending);
  fft::forward(as_span(x));
  return x * (g.domega() / kSqrt2Pi);
}

CVector partial_ft_row(const Symbol2D& f, double b, const UniformGrid& g) {
  const auto n = ei(g.n());
  if (const auto& ft = f.partial_ft_omega()) {
    CVector out(n);
    for (Eigen::Index m = 0; m < n; ++m) {
      if (m == n / 2) {
        const double y = 0.5 * g.span();
        out[m] = 0.5 * ((*ft)(b, -y) + (*ft)(b, y));
      } else {
        out[m] = (*ft)(b, lag_time(g, static_cast<std::size_t>(m)));
      }
    }
    return out;
  }
  CVector v(n);
  for (Eigen::Index k = 0; k < n; ++k) v[k] = f(b, g.omega(static_cast<std::size_t>(k)));
  return partial_ft_from_samples(g, v);
}

// w[d] = psi(d dt) on the circle, so that psi(t_j - t_i) = w[j - i].
CVector circulant_probe(const Probe& p) { return p.shifted(p.grid().t0()); }

LinearOperator finish(const UniformGrid& g, CMatrix m, double tol = 1e-8) {
  LinearOperator op(g, std::move(m));
  if (op.hermiticity_defect() <= tol) {
    CMatrix h = 0.5 * (op.matrix() + op.matrix().adjoint());
    return LinearOperator(g, std::move(h), true);
  }
  return op;
}

// Gabor-route assembly from f_hat(b_i, lag m) with b_i = t_i:
//   A[j, j+m] = dt^2 / sqrt(2 pi) sum_i F(i, m) w[j-i] conj(w[j+m-i]).
CMatrix gabor_kernel_matrix(const Probe& p, const CMatrix& fhat) {
  const auto& g = p.grid();
  const auto n = ei(g.n());
  const CVector w = circulant_probe(p);
  const double scale = g.dt() * g.dt() / kSqrt2Pi;
  CMatrix a(n, n);
  CVector h(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index d = 0; d < n; ++d) h[d] = w[d] * std::conj(w[(d + m) % n]);
    const CVector row = circular_convolve(fhat.col(m), h);
    for (Eigen::Index j = 0; j < n; ++j) a(j, (j + m) % n) = scale * row[j];
  }
  return a;
}

void check_grid(const UniformGrid& a, const UniformGrid& b) {
  if (!(a == b)) throw GridError("operands live on different grids");
}

}  // namespace

// ---------------------------------------------------------------------------
// Symbols and weights

Symbol2D::Symbol2D(Fn f, std::string label, std::optional<Fn> partial_ft_omega)
    : f_(std::move(f)), label_(std::move(label)), ft_(std::move(partial_ft_omega)) {
  if (!ft_) return;
  const UniformGrid g = UniformGrid::centered(512, 0.05);
  const Symbol2D numeric(f_, label_);
  for (double b : {-2.0, -0.5, 0.0, 1.5}) {
    const CVector ref = partial_ft_row(numeric, b, g);
    const double scale = std::max(1.0, ref.cwiseAbs().maxCoeff());
    for (std::size_t m = 0; m < g.n(); ++m) {
      if (std::abs(g.signed_lag(static_cast<long>(m))) > static_cast<long>(g.n() / 4)) continue;
      const double err = std::abs((*ft_)(b, lag_time(g, m)) - ref[ei(m)]);
      if (err > 1e-6 * scale) {
        throw SymbolError("closed-form partial Fourier transform of '" + label_ +
                          "' disagrees with the FFT (error " + std::to_string(err) + ")");
      }
    }
  }
}

Symbol2D Symbol2D::one() {
  return Symbol2D([](double, double) { return cplx(1.0); }, "one");
}
Symbol2D Symbol2D::b() {
  return Symbol2D([](double b, double) { return cplx(b); }, "b");
}
Symbol2D Symbol2D::omega() {
  return Symbol2D([](double, double w) { return cplx(w); }, "omega");
}
Symbol2D Symbol2D::b2() {
  return Symbol2D([](double b, double) { return cplx(b * b); }, "b2");
}
Symbol2D Symbol2D::omega2() {
  return Symbol2D([](double, double w) { return cplx(w * w); }, "omega2");
}
Symbol2D Symbol2D::bw() {
  return Symbol2D([](double b, double w) { return cplx(b * w); }, "bw");
}
Symbol2D Symbol2D::harmonic() {
  return Symbol2D([](double b, double w) { return cplx(b * b + w * w); }, "harmonic");
}

Symbol2D Symbol2D::builtin(const std::string& name) {
  if (name == "one") return one();
  if (name == "b") return b();
  if (name == "omega") return omega();
  if (name == "b2") return b2();
  if (name == "omega2") return omega2();
  if (name == "bw") return bw();
  if (name == "harmonic") return harmonic();
  throw SymbolError("unknown symbol '" + name + "'");
}

Symbol2D Symbol2D::from_samples(const TFLattice& lat, const CMatrix& values, std::string label) {
  if (values.rows() != lat.b_values.size() || values.cols() != lat.omega_values.size()) {
    throw SymbolError("symbol samples do not match the lattice shape");
  }
  if (lat.nb() < 2 || lat.nomega() < 2) throw SymbolError("symbol lattice needs two nodes per axis");
  const double b0 = lat.b_values[0], w0 = lat.omega_values[0];
  const double db = lat.db, dw = lat.domega;
  const auto nb = values.rows(), nw = values.cols();
  auto eval = [=](double b, double w) -> cplx {
    const double x = (b - b0) / db, y = (w - w0) / dw;
    if (x < 0.0 || y < 0.0 || x > static_cast<double>(nb - 1) || y > static_cast<double>(nw - 1)) {
      return 0.0;
    }
    const auto i = std::min(static_cast<Eigen::Index>(x), nb - 2);
    const auto k = std::min(static_cast<Eigen::Index>(y), nw - 2);
    const double fx = x - static_cast<double>(i), fy = y - static_cast<double>(k);
    return (1 - fx) * (1 - fy) * values(i, k) + fx * (1 - fy) * values(i + 1, k) +
           (1 - fx) * fy * values(i, k + 1) + fx * fy * values(i + 1, k + 1);
  };
  return Symbol2D(eval, std::move(label));
}

ApodizationWeight::ApodizationWeight(Fn pi, std::string label)
    : pi_(std::move(pi)), label_(std::move(label)) {
  const cplx p00 = pi_(0.0, 0.0);
  if (std::abs(p00 - 1.0) > 1e-9) {
    throw Error("apodization weight '" + label_ + "' violates Pi(0,0) = 1");
  }
}

ApodizationWeight ApodizationWeight::weyl() {
  return ApodizationWeight([](double, double) { return cplx(1.0); }, "weyl");
}

ApodizationWeight ApodizationWeight::born_jordan() {
  return ApodizationWeight(
      [](double b, double w) {
        const double x = b * w;
        return cplx(std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x);
      },
      "born-jordan");
}

ApodizationWeight ApodizationWeight::from_probe(const Probe& p) {
  Fn fn;
  if (const auto s = p.gaussian_sigma()) {
    const double sigma = *s;
    fn = [sigma](double b, double w) {
      return cplx(std::exp(-b * b / (4.0 * sigma * sigma) - sigma * sigma * w * w / 4.0));
    };
  } else {
    fn = [p](double b, double w) {
      const auto& g = p.grid();
      const CVector moved = p.shifted(-b);  // psi(t + b)
      cplx acc = 0.0;
      for (std::size_t j = 0; j < g.n(); ++j) {
        acc += std::conj(p.base().samples[ei(j)]) * moved[ei(j)] * std::polar(1.0, -w * g.t(j));
      }
      return acc * g.dt() * std::polar(1.0, -0.5 * w * b);
    };
  }
  ApodizationWeight out(fn, "apodized:" + p.label());
  out.probe_ = p;
  return out;
}

FiducialOperator FiducialOperator::rank_one(const Probe& p) {
  const CVector& psi = p.base().samples;
  return {p.grid().dt() * psi * psi.adjoint(), "rank-one:" + p.label()};
}

FiducialOperator FiducialOperator::parity(const UniformGrid& g) {
  // (P s)(t_j) = s(-t_j) through the trigonometric interpolant.
  const auto n = ei(g.n());
  CMatrix analysis(n, n), synthesis(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double w = g.omega(static_cast<std::size_t>(k));
    for (Eigen::Index j = 0; j < n; ++j) {
      const double t = g.t(static_cast<std::size_t>(j));
      analysis(k, j) = std::polar(g.dt() / kSqrt2Pi, -w * t);
      synthesis(j, k) = std::polar(g.domega() / kSqrt2Pi, -w * t);
    }
  }
  return {2.0 * synthesis * analysis, "parity"};
}

cplx FiducialOperator::apodization(const UniformGrid& g, double b, double omega) const {
  const CMatrix u = wh_displacement({0.0, -b, -omega}, g).matrix();
  return (u.cwiseProduct(matrix.transpose())).sum();
}

// ---------------------------------------------------------------------------
// Gabor-kernel route

LinearOperator quantize_gabor(const Symbol2D& f, const Probe& p) {
  const auto& g = p.grid();
  const auto n = ei(g.n());
  CMatrix fhat(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    fhat.row(i) = partial_ft_row(f, g.t(static_cast<std::size_t>(i)), g).transpose();
  }
  return finish(g, gabor_kernel_matrix(p, fhat));
}

LinearOperator quantize_time_symbol(const std::function<cplx(double)>& u, const Probe& p) {
  const auto& g = p.grid();
  const auto n = ei(g.n());
  CVector uv(n);
  for (Eigen::Index i = 0; i < n; ++i) uv[i] = u(g.t(static_cast<std::size_t>(i)));
  const CVector w = circulant_probe(p);
  const CVector diag = circular_convolve(uv, w.cwiseAbs2().cast<cplx>().eval()) * g.dt();
  return finish(g, CMatrix(diag.asDiagonal()));
}

LinearOperator quantize_freq_samples(const CVector& v, const Probe& p) {
  const auto& g = p.grid();
  const auto n = ei(g.n());
  if (v.size() != n) throw GridError("frequency symbol length does not match the grid");
  const CVector vhat = partial_ft_from_samples(g, v);
  const CVector& r = p.autocorr_lag();
  const double scale = g.dt() / kSqrt2Pi;
  CMatrix a(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      a(j, k) = scale * r[(j - k + n) % n] * vhat[(k - j + n) % n];
    }
  }
  return finish(g, std::move(a));
}

LinearOperator quantize_freq_symbol(const std::function<cplx(double)>& v, const Probe& p) {
  const auto& g = p.grid();
  CVector vs(ei(g.n()));
  for (std::size_t k = 0; k < g.n(); ++k) vs[ei(k)] = v(g.omega(k));
  return quantize_freq_samples(vs, p);
}

LinearOperator quantize_separable(const std::function<cplx(double)>& u,
                                  const std::function<cplx(double)>& v, const Probe& p) {
  const auto& g = p.grid();
  const auto n = ei(g.n());
  CVector vs(n);
  for (Eigen::Index k = 0; k < n; ++k) vs[k] = v(g.omega(static_cast<std::size_t>(k)));
  const CVector vhat = partial_ft_from_samples(g, vs);
  CMatrix fhat(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    fhat.row(i) = u(g.t(static_cast<std::size_t>(i))) * vhat.transpose();
  }
  return finish(g, gabor_kernel_matrix(p, fhat));
}

LinearOperator quantize_signal_self(const Signal& s, const Probe& p) {
  const auto& g = p.grid();
  check_grid(g, s.grid);
  const CVector w = circulant_probe(p);
  const CVector diag = circular_convolve(s.samples, w.cwiseAbs2().cast<cplx>().eval()) * g.dt();
  return finish(g, CMatrix(diag.asDiagonal()));
}

LinearOperator quantize_spectrum(const Signal& s, const Probe& p) {
  check_grid(p.grid(), s.grid);
  return quantize_freq_samples(dft(s).samples, p);
}

Signal quantize_gabor_coeffs(const Signal& s, const Probe& p) {
  const auto& g = p.grid();
  check_grid(g, s.grid);
  const auto n = ei(g.n());
  CVector out = CVector::Zero(n);
  for (std::size_t i = 0; i < g.n(); ++i) {
    const CVector psi_b = p.shifted(g.t(i));
    Spectrum h = dft(Signal(g, psi_b.conjugate().cwiseProduct(s.samples)));
    // FT of a self-convolution is sqrt(2 pi) h_hat^2.
    h.samples = kSqrt2Pi * h.samples.cwiseProduct(h.samples);
    out += psi_b.cwiseProduct(idft(h).samples) * g.dt();
  }
  return Signal(g, std::move(out));
}

// ---------------------------------------------------------------------------
// Portraits

namespace {

struct KernelNode {
  double db;
  double dw;
  double weight;  // kernel value times the node measure / 2 pi
};

CMatrix portrait_from_nodes(const Symbol2D& f, const std::vector<KernelNode>& nodes,
                            const TFLattice& lat) {
  CMatrix out(lat.b_values.size(), lat.omega_values.size());
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index k = 0; k < out.cols(); ++k) {
      const double b = lat.b_values[i], w = lat.omega_values[k];
      cplx acc = 0.0;
      for (const auto& nd : nodes) acc += nd.weight * f(b + nd.db, w + nd.dw);
      out(i, k) = acc;
    }
  }
  return out;
}

std::vector<KernelNode> gaussian_nodes(double sigma) {
  // |<psi_{b w}|psi_{b' w'}>|^2 = e^{-db^2/(2 sigma^2)} e^{-sigma^2 dw^2/2}
  constexpr int kHalf = 32;
  const double hb = sigma / 4.0, hw = 1.0 / (4.0 * sigma);
  std::vector<KernelNode> nodes;
  nodes.reserve((2 * kHalf + 1) * (2 * kHalf + 1));
  for (int i = -kHalf; i <= kHalf; ++i) {
    for (int k = -kHalf; k <= kHalf; ++k) {
      const double x = i * hb, y = k * hw;
      const double kern = std::exp(-x * x / (2 * sigma * sigma) - sigma * sigma * y * y / 2);
      nodes.push_back({x, y, kern * hb * hw / kTwoPi});
    }
  }
  return nodes;
}

}  // namespace

CMatrix gaussian_portrait(const Symbol2D& f, double sigma, const TFLattice& lat) {
  if (!(sigma > 0.0)) throw Error("portrait width must be positive");
  return portrait_from_nodes(f, gaussian_nodes(sigma), lat);
}

CMatrix semiclassical_portrait(const Symbol2D& f, const Probe& p, const TFLattice& lat) {
  if (const auto s = p.gaussian_sigma()) return gaussian_portrait(f, *s, lat);
  // Numeric ambiguity |<psi|psi_{db,dw}>|^2 on a dense grid lattice.
  const TFLattice amb_lat = TFLattice::default_for(p);
  const GaborCoeffs amb = gabor_transform(p.base(), p, amb_lat);
  const RVector a2 = amb.values.cwiseAbs2().reshaped();
  const double peak = a2.maxCoeff();
  std::vector<KernelNode> nodes;
  for (Eigen::Index k = 0; k < amb.values.cols(); ++k) {
    for (Eigen::Index i = 0; i < amb.values.rows(); ++i) {
      const double v = std::norm(amb.values(i, k));
      if (v <= 1e-14 * peak) continue;
      nodes.push_back({amb_lat.b_values[i], amb_lat.omega_values[k], v * amb_lat.weight()});
    }
  }
  return portrait_from_nodes(f, nodes, lat);
}

std::vector<double> classical_limit_scan(const Symbol2D& f, const std::vector<double>& sigmas,
                                         const TFLattice& lat) {
  const Eigen::Index nb = lat.b_values.size(), nw = lat.omega_values.size();
  TFLattice inner = lat;
  inner.b_values = lat.b_values.segment(nb / 4, nb / 2);
  inner.omega_values = lat.omega_values.segment(nw / 4, nw / 2);
  std::vector<double> out;
  out.reserve(sigmas.size());
  for (double sigma : sigmas) {
    const CMatrix fc = gaussian_portrait(f, sigma, inner);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < fc.rows(); ++i) {
      for (Eigen::Index k = 0; k < fc.cols(); ++k) {
        acc += std::norm(fc(i, k) - f(inner.b_values[i], inner.omega_values[k]));
      }
    }
    out.push_back(std::sqrt(acc * lat.db * lat.domega));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Symplectic Fourier transform

TFLattice symplectic_lattice(std::size_t n, double db) {
  if (n < 2 || n % 2 != 0) throw Error("symplectic lattice size must be even");
  if (!(db > 0.0)) throw Error("symplectic lattice spacing must be positive");
  TFLattice lat;
  lat.db = db;
  lat.domega = kTwoPi / (static_cast<double>(n) * db);
  lat.b_values.resize(ei(n));
  lat.omega_values.resize(ei(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double c = static_cast<double>(i) - static_cast<double>(n / 2);
    lat.b_values[ei(i)] = c * lat.db;
    lat.omega_values[ei(i)] = c * lat.domega;
  }
  return lat;
}

namespace {

void check_symplectic(const TFLattice& lat) {
  const auto n = lat.nb();
  if (n < 2 || n != lat.nomega() || n % 2 != 0) {
    throw Error("symplectic transform needs an even square lattice");
  }
  const double nn = static_cast<double>(n);
  if (std::abs(nn * lat.db * lat.domega - kTwoPi) > 1e-9 * kTwoPi) {
    throw Error("symplectic transform needs N db domega = 2 pi");
  }
  if (std::abs(lat.b_values[0] + 0.5 * nn * lat.db) > 1e-9 * lat.db ||
      std::abs(lat.omega_values[0] + 0.5 * nn * lat.domega) > 1e-9 * lat.domega) {
    throw Error("symplectic transform needs a centered lattice");
  }
}

// y_k = sum_i e^{sign 2 pi i (k - N/2)(i - N/2)/N} x_i, one FFT with the centering signs.
CVector centered_dft(CVector x, int sign) {
  const auto n = x.size();
  for (Eigen::Index i = 1; i < n; i += 2) x[i] = -x[i];
  if (sign > 0) {
    fft::backward(as_span(x));
  } else {
    fft::forward(as_span(x));
  }
  const cplx c = std::polar(1.0, sign * kPi * static_cast<double>(n) / 2.0);
  for (Eigen::Index k = 0; k < n; ++k) x[k] *= (k % 2 ? -c : c);
  return x;
}

}  // namespace

CMatrix symplectic_fourier(const CMatrix& f, const TFLattice& lat) {
  check_symplectic(lat);
  const auto n = ei(lat.nb());
  if (f.rows() != n || f.cols() != n) throw Error("symbol samples do not match the lattice");
  // F(i,k) = (1/N) sum_{k'} e^{-2 pi i i_s k'_s / N} sum_{i'} e^{2 pi i k_s i'_s / N} f(i',k')
  CMatrix g(n, n);  // g(k, k')
  for (Eigen::Index c = 0; c < n; ++c) g.col(c) = centered_dft(f.col(c), +1);
  CMatrix out(n, n);  // out(i, k)
  for (Eigen::Index k = 0; k < n; ++k) out.col(k) = centered_dft(g.row(k).transpose(), -1);
  return out / static_cast<double>(n);
}

// ---------------------------------------------------------------------------
// Apodization route

namespace {

// Pi(y, omega_k) on the ascending frequency grid for lag y = lag dt.
CVector pi_row(const ApodizationWeight& pi, const UniformGrid& g, long lag) {
  const auto n = ei(g.n());
  const double y = static_cast<double>(lag) * g.dt();
  CVector row(n);
  if (const auto& p = pi.probe()) {
    // <psi|U(0,-y,-w)|psi> = e^{-i w y/2} int conj(psi(t)) psi(t + y) e^{-i w t} dt
    const CVector moved = p->shifted(-y);
    const Spectrum sp = dft(Signal(g, p->base().samples.conjugate().cwiseProduct(moved)));
    for (Eigen::Index k = 0; k < n; ++k) {
      const double w = g.omega(static_cast<std::size_t>(k));
      row[k] = kSqrt2Pi * sp.samples[k] * std::polar(1.0, -0.5 * w * y);
    }
    return row;
  }
  for (Eigen::Index k = 0; k < n; ++k) row[k] = pi(y, g.omega(static_cast<std::size_t>(k)));
  return row;
}

}  // namespace

LinearOperator quantize_with_apodization(const Symbol2D& f, const ApodizationWeight& pi,
                                         const UniformGrid& grid) {
  if (pi.probe()) check_grid(pi.probe()->grid(), grid);
  const auto& g = grid;
  const long n = static_cast<long>(g.n());
  const Eigen::Index nn = n;
  const double dt = g.dt(), dw = g.domega();

  // gh(h, m) = sum_k e^{i y_m omega_k} f(b'_h, omega_k) domega on the half-sample grid.
  CMatrix gh(2 * nn, nn);
  for (Eigen::Index h = 0; h < 2 * nn; ++h) {
    const double b = g.t0() + 0.5 * static_cast<double>(h) * dt;
    CVector x(nn);
    for (Eigen::Index k = 0; k < nn; ++k) x[k] = f(b, g.omega(static_cast<std::size_t>(k)));
    x = to_fft_order(x);
    fft::backward(as_span(x));
    gh.row(h) = (x * dw).transpose();
  }

  // K(y, x_l) = (1/2 pi) sum_k Pi(y, omega_k) e^{i omega_k x_l} domega, lags -n/2..n/2.
  CMatrix kern(nn + 1, nn);
  for (long lag = -n / 2; lag <= n / 2; ++lag) {
    CVector x = to_fft_order(pi_row(pi, g, lag));
    fft::backward(as_span(x));
    kern.row(lag + n / 2) = (x * (dw / kTwoPi)).transpose();
  }
  const double kmax = kern.cwiseAbs().maxCoeff();
  std::vector<std::vector<long>> support(static_cast<std::size_t>(n + 1));
  for (long r = 0; r <= n; ++r) {
    for (long l = 0; l < n; ++l) {
      if (std::abs(kern(r, l)) > 1e-17 * kmax) support[static_cast<std::size_t>(r)].push_back(l);
    }
  }

  // A_jk = dt^2/(2 pi) sum_l gh(2j - lag - 2 x_l/dt, lag) K(lag, x_l), lag = j - k.
  const double scale = dt * dt / kTwoPi;
  auto contribution = [&](long j, long lag) {
    const auto& sup = support[static_cast<std::size_t>(lag + n / 2)];
    const long m = ((lag % n) + n) % n;
    cplx acc = 0.0;
    for (long l : sup) {
      const long xl = g.signed_lag(l);
      const long h = (((2 * j - lag - 2 * xl) % (2 * n)) + 2 * n) % (2 * n);
      acc += gh(h, m) * kern(lag + n / 2, l);
    }
    return scale * acc;
  };
  CMatrix a(nn, nn);
  for (long j = 0; j < n; ++j) {
    for (long k = 0; k < n; ++k) {
      const long lag = g.signed_lag(j - k);
      if (lag == -n / 2) {
        a(j, k) = 0.5 * (contribution(j, lag) + contribution(j, -lag));
      } else {
        a(j, k) = contribution(j, lag);
      }
    }
  }
  return finish(g, std::move(a));
}

LinearOperator quantize_with_apodization_lattice(const Symbol2D& f, const ApodizationWeight& pi,
                                                 const UniformGrid& grid, const TFLattice& lat) {
  check_symplectic(lat);
  const auto n = ei(lat.nb());
  CMatrix fs(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) fs(i, k) = f(lat.b_values[i], lat.omega_values[k]);
  }
  const CMatrix ft = symplectic_fourier(fs, lat);
  CMatrix c(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      // F_s[f](-b, -omega); the node -b_0 aliases to b_0.
      c(i, k) = ft((n - i) % n, (n - k) % n) * pi(lat.b_values[i], lat.omega_values[k]) *
                lat.weight();
    }
  }
  const double total = c.cwiseAbs().sum();
  double tail = 0.0;
  const Eigen::Index edge = std::max<Eigen::Index>(1, n / 8);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      if (i < edge || i >= n - edge || k < edge || k >= n - edge) tail += std::abs(c(i, k));
    }
  }
  if (total > 0.0 && tail > 1e-4 * total) {
    throw TruncationError("apodized integrand does not decay on the lattice: tail fraction " +
                          std::to_string(tail / total));
  }
  // U(0,b,w) = e^{-i w b/2} e^{i w T} e^{-i b Omega}: for each w the b-sum is one
  // circulant with Fourier multiplier sum_i c e^{-i w b_i/2} e^{-i b_i omega_q}.
  const double cmax = c.cwiseAbs().maxCoeff();
  const auto ng = ei(grid.n());
  CMatrix a = CMatrix::Zero(ng, ng);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double w = lat.omega_values[k];
    const double ck = c.col(k).cwiseAbs().maxCoeff();
    if (ck <= 1e-16 * cmax) continue;
    if (std::abs(w) > grid.omega_max()) {
      if (ck > 1e-12 * cmax) throw TruncationError("apodized integrand reaches beyond the grid band");
      continue;
    }
    CVector mult = CVector::Zero(ng);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(c(i, k)) <= 1e-16 * cmax) continue;
      const double b = lat.b_values[i];
      const cplx ci = c(i, k) * std::polar(1.0, -0.5 * w * b);
      for (Eigen::Index q = 0; q < ng; ++q) {
        mult[q] += ci * std::polar(1.0, -b * grid.omega(static_cast<std::size_t>(q)));
      }
    }
    CVector col = to_fft_order(mult);
    fft::backward(as_span(col));
    col /= static_cast<double>(ng);
    for (Eigen::Index j = 0; j < ng; ++j) {
      const cplx ph = std::polar(1.0, w * grid.t(static_cast<std::size_t>(j)));
      for (Eigen::Index l = 0; l < ng; ++l) a(j, l) += ph * col[(j - l + ng) % ng];
    }
  }
  return finish(grid, std::move(a));
}

LinearOperator weyl_via_displaced_parity(const Symbol2D& f, const UniformGrid& grid) {
  const auto& g = grid;
  const long n = static_cast<long>(g.n());
  const Eigen::Index nn = n;
  const double dt = g.dt();
  // (P_{b,w} s)(t) = e^{2 i w (t - b)} s(2b - t). With b_h = t0 + h dt/2, 2b_h - t_j is
  // the grid time t_{h-j}. Each reflection is used once, b_h in the central half.
  CMatrix a = CMatrix::Zero(nn, nn);
  for (long h = n / 2; h < 3 * n / 2; ++h) {
    const double b = g.t0() + 0.5 * static_cast<double>(h) * dt;
    CVector x(nn);
    for (Eigen::Index k = 0; k < nn; ++k) x[k] = f(b, g.omega(static_cast<std::size_t>(k)));
    x = to_fft_order(x);
    fft::backward(as_span(x));  // x[m] = sum_k f e^{i omega_k m dt}
    for (long j = 0; j < n; ++j) {
      const long l = ((h - j) % n + n) % n;
      const long m = ((2 * j - h) % n + n) % n;  // 2 (t_j - b) = (2j - h) dt
      // weight 2 * (dt/2) * domega / 2 pi
      a(j, l) += x[m] * (dt * g.domega() / kTwoPi);
    }
  }
  return finish(g, std::move(a));
}

CMatrix portrait_convolution_form(const Symbol2D& f, const ApodizationWeight& pi,
                                  const TFLattice& lat) {
  check_symplectic(lat);
  const auto n = ei(lat.nb());
  CMatrix pp(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const double b = lat.b_values[i], w = lat.omega_values[k];
      pp(i, k) = pi(b, w) * pi(-b, -w);
    }
  }
  // F_s[Pi Pi~] equals F_s[Pi] * F_s[Pi~] / 2 pi by the convolution theorem.
  const CMatrix kern = symplectic_fourier(pp, lat);
  const double kmax = kern.cwiseAbs().maxCoeff();
  std::vector<KernelNode> nodes;
  std::vector<cplx> weights;
  CMatrix out = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      if (std::abs(kern(i, k)) <= 1e-15 * kmax) continue;
      nodes.push_back({lat.b_values[i], lat.omega_values[k], 0.0});
      weights.push_back(kern(i, k) * lat.weight());
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      cplx acc = 0.0;
      for (std::size_t q = 0; q < nodes.size(); ++q) {
        acc += weights[q] * f(lat.b_values[i] - nodes[q].db, lat.omega_values[k] - nodes[q].dw);
      }
      out(i, k) = acc;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Constants and comparisons

double measure_cst1(const Probe& p) {
  const auto& g = p.grid();
  return -g.times().dot(p.intensity()) * g.dt();
}

cplx measure_cst2(const Probe& p) {
  const auto& g = p.grid();
  const CMatrix diff = quantize_gabor(Symbol2D::omega(), p).matrix() - frequency_operator(g).matrix();
  cplx num = 0.0;
  double den = 0.0;
  for (const auto& v : gaussian_test_vectors(g)) {
    num += v.samples.dot(diff * v.samples);
    den += v.samples.squaredNorm();
  }
  return num / den;
}

double interior_max_abs_diff(const CMatrix& a, const CMatrix& b) {
  const Eigen::Index n = a.rows();
  const Eigen::Index lo = n / 4, len = n / 2;
  return (a.block(lo, lo, len, len) - b.block(lo, lo, len, len)).cwiseAbs().maxCoeff();
}

double test_vector_residual(const CMatrix& a, const CMatrix& b, const UniformGrid& g) {
  double worst = 0.0;
  const CMatrix d = a - b;
  for (const auto& v : gaussian_test_vectors(g)) {
    worst = std::max(worst, (d * v.samples).norm() / v.samples.norm());
  }
  return worst;
}

}  // namespace tfq
