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

#include "tfq/quantaffine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tfq/error.hpp"

namespace tfq {
namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);

Eigen::Index ei(std::size_t n) { return static_cast<Eigen::Index>(n); }

// Same 4-point Lagrange rule as HalfLineSignal::at. Returns false when x is
// off the grid (the row is then zero).
bool lagrange_weights(const HalfLineGrid& g, double x, long& i0, double w[4]) {
  const double u = (x - g.x_min()) / g.dx();
  const long m = static_cast<long>(g.m());
  if (!(x > 0.0) || u > static_cast<double>(m - 1) || !std::isfinite(u)) return false;
  i0 = std::clamp(static_cast<long>(std::floor(u)) - 1, 0L, m - 4);
  const double s = u - static_cast<double>(i0);
  w[0] = -(s - 1) * (s - 2) * (s - 3) / 6.0;
  w[1] = s * (s - 2) * (s - 3) / 2.0;
  w[2] = -s * (s - 1) * (s - 3) / 2.0;
  w[3] = s * (s - 1) * (s - 2) / 6.0;
  return true;
}

// U+(b,a) on samples, without the support check.
CVector uir_samples(const HalfLineSignal& phi, double b, double a) {
  const auto& g = phi.grid;
  CVector out(ei(g.m()));
  const double amp = 1.0 / std::sqrt(a);
  for (Eigen::Index j = 0; j < out.size(); ++j) {
    const double x = g.x(static_cast<std::size_t>(j));
    out[j] = std::polar(amp, b * x) * phi.at(x / a);
  }
  return out;
}

LinearOperator finish(const HalfLineGrid& g, CMatrix m, double tol = 1e-8) {
  LinearOperator op(g, std::move(m));
  if (op.hermiticity_defect() <= tol) {
    CMatrix h = 0.5 * (op.matrix() + op.matrix().adjoint());
    return LinearOperator(g, std::move(h), true);
  }
  return op;
}

// Trapezoid sum of (2 pi)^{-1/2} e^{-iby} f(b) over b in [-64, 64].
cplx numeric_partial_ft(const std::function<cplx(double)>& f, double y) {
  constexpr double kB = 64.0;
  constexpr double kDb = 1.0 / 32.0;
  const int nb = static_cast<int>(2.0 * kB / kDb);
  cplx acc{0.0, 0.0};
  for (int i = 0; i <= nb; ++i) {
    const double b = -kB + i * kDb;
    const double wgt = (i == 0 || i == nb) ? 0.5 : 1.0;
    acc += wgt * std::polar(1.0, -b * y) * f(b);
  }
  return acc * kDb / kSqrt2Pi;
}

struct TailSum {
  double total = 0.0;
  double tail = 0.0;  // larger of the two outermost octaves
};

TailSum tail_sum(const std::vector<double>& abs_terms, std::size_t per_octave) {
  TailSum t;
  for (double v : abs_terms) t.total += v;
  const std::size_t k = std::min(per_octave, abs_terms.size() / 2);
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    lo += abs_terms[i];
    hi += abs_terms[abs_terms.size() - 1 - i];
  }
  t.tail = std::max(lo, hi);
  return t;
}

std::size_t per_octave(const ScaleGrid& q) {
  return static_cast<std::size_t>(std::max(1.0, std::round(std::log(2.0) / std::log(q.q()))));
}

}  // namespace

AffineElement AffineElement::operator*(const AffineElement& o) const {
  return {b + o.b / a, a * o.a};
}

AffineElement AffineElement::inverse() const { return {-a * b, 1.0 / a}; }

HalfLineSignal affine_uir_apply(const AffineElement& g, const HalfLineSignal& phi) {
  if (!(g.a > 0.0) || !std::isfinite(g.a) || !std::isfinite(g.b)) {
    throw Error("affine_uir_apply: a must be positive and finite");
  }
  const auto& hg = phi.grid;
  double total = 0.0, escaped = 0.0;
  for (Eigen::Index j = 0; j < phi.samples.size(); ++j) {
    const double p = std::norm(phi.samples[j]);
    const double y = g.a * hg.x(static_cast<std::size_t>(j));
    total += p;
    if (y < hg.x_min() || y > hg.x_max()) escaped += p;
  }
  if (total > 0.0 && escaped > 1e-8 * total) {
    throw SupportError("affine_uir_apply: dilated signal leaves the grid");
  }
  return HalfLineSignal(hg, uir_samples(phi, g.b, g.a));
}

ScaleGrid default_q_grid() { return ScaleGrid(std::pow(2.0, -10.0), std::pow(2.0, 1.0 / 16.0), 289); }

AffineWeight::AffineWeight(std::optional<Fn> weight, std::optional<Fn> partial_ft,
                           std::string label)
    : weight_(std::move(weight)), label_(std::move(label)) {
  if (!weight_ && !partial_ft) {
    throw WeightError("AffineWeight: need the weight or its partial transform");
  }
  if (partial_ft) {
    ft_ = std::move(*partial_ft);
    if (weight_) {
      const Fn w = *weight_;
      for (double y : {-2.5, -1.0, -0.3}) {
        for (double a : {0.5, 1.0, 2.0}) {
          const cplx ref = numeric_partial_ft([&](double b) { return w(b, a); }, y);
          const cplx got = ft_(y, a);
          if (std::abs(ref - got) > 1e-6 * std::max(1.0, std::abs(ref))) {
            throw WeightError("AffineWeight: closed-form partial transform of '" + label_ +
                              "' disagrees with quadrature");
          }
        }
      }
    }
  } else {
    const Fn w = *weight_;
    ft_ = [w](double y, double a) {
      return numeric_partial_ft([&](double b) { return w(b, a); }, y);
    };
  }
  c_ = resolution_constant(*this);
}

cplx AffineWeight::weight(double b, double a) const {
  if (weight_) return (*weight_)(b, a);
  // Inverse partial transform over y in [-64, 64].
  const Fn ft = ft_;
  return std::conj(numeric_partial_ft([&](double y) { return std::conj(ft(y, a)); }, b));
}

AffineWeight AffineWeight::dilated(double lambda) const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw WeightError("dilated: lambda must be > 0");
  AffineWeight out = *this;
  const Fn ft = ft_;
  out.ft_ = [ft, lambda](double y, double a) { return ft(y / lambda, a) / lambda; };
  if (weight_) {
    const Fn w = *weight_;
    out.weight_ = [w, lambda](double b, double a) { return w(lambda * b, a); };
  }
  if (phi_fn_) {
    const auto f = *phi_fn_;
    const double amp = 1.0 / std::sqrt(lambda);
    out.phi_fn_ = [f, amp, lambda](double x) { return amp * f(x / lambda); };
    out.phi_ = HalfLineSignal::from_function(phi_->grid, *out.phi_fn_);
  }
  out.label_ = label_ + "@dilated";
  out.c_ = resolution_constant(out);
  return out;
}

AffineWeight AffineWeight::scaled(double alpha) const {
  if (!(alpha > 0.0)) throw WeightError("scaled: alpha must be > 0");
  AffineWeight out = *this;
  const Fn ft = ft_;
  out.ft_ = [ft, alpha](double y, double a) { return alpha * ft(y, a); };
  if (weight_) {
    const Fn w = *weight_;
    out.weight_ = [w, alpha](double b, double a) { return alpha * w(b, a); };
  }
  out.phi_.reset();
  out.phi_fn_.reset();
  out.c_ = c_ * alpha;
  return out;
}

AffineWeight AffineWeight::from_partial_ft_samples(const RVector& y, const RVector& a,
                                                   const CMatrix& values, std::string label) {
  if (y.size() < 2 || a.size() < 2 || values.rows() != y.size() || values.cols() != a.size()) {
    throw WeightError("from_partial_ft_samples: shape mismatch");
  }
  for (Eigen::Index i = 1; i < y.size(); ++i) {
    if (!(y[i] > y[i - 1])) throw WeightError("from_partial_ft_samples: y must increase");
  }
  for (Eigen::Index i = 1; i < a.size(); ++i) {
    if (!(a[i] > a[i - 1])) throw WeightError("from_partial_ft_samples: a must increase");
  }
  if (!values.allFinite()) throw WeightError("from_partial_ft_samples: non-finite sample");
  Fn ft = [y, a, values](double yy, double aa) -> cplx {
    if (yy < y[0] || yy > y[y.size() - 1] || aa < a[0] || aa > a[a.size() - 1]) return {0.0, 0.0};
    const auto locate = [](const RVector& v, double x) {
      const auto* it = std::upper_bound(v.data(), v.data() + v.size(), x);
      auto i = static_cast<Eigen::Index>(it - v.data()) - 1;
      i = std::clamp<Eigen::Index>(i, 0, v.size() - 2);
      return std::pair{i, (x - v[i]) / (v[i + 1] - v[i])};
    };
    const auto [i, s] = locate(y, yy);
    const auto [k, t] = locate(a, aa);
    return (1 - s) * (1 - t) * values(i, k) + s * (1 - t) * values(i + 1, k) +
           (1 - s) * t * values(i, k + 1) + s * t * values(i + 1, k + 1);
  };
  return AffineWeight(std::nullopt, std::move(ft), std::move(label));
}

AffineWeight make_wavelet_weight(std::function<cplx(double)> phi, const HalfLineSignal& samples,
                                 std::string label) {
  AffineWeight::Fn ft = [phi](double y, double a) -> cplx {
    if (!(y < 0.0)) return {0.0, 0.0};
    return kSqrt2Pi / a * phi(-y) * std::conj(phi(-y / a));
  };
  AffineWeight w(std::nullopt, std::move(ft), std::move(label));
  // varpi(b,a) = a^{-1} int_0^inf e^{-ibu} phi(u) conj(phi(u/a)) du on the grid.
  const HalfLineGrid g = samples.grid;
  w.weight_ = [phi, g](double b, double a) -> cplx {
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < g.m(); ++j) {
      const double u = g.x(j);
      acc += std::polar(1.0, -b * u) * phi(u) * std::conj(phi(u / a));
    }
    return acc * g.dx() / a;
  };
  w.phi_ = samples;
  w.phi_fn_ = std::move(phi);
  return w;
}

AffineWeight wavelet_weight_from_probe(const HalfLineSignal& phi) {
  if (!(phi.norm() > 0.0)) throw WeightError("wavelet_weight_from_probe: zero fiducial");
  const HalfLineSignal p = phi;
  return make_wavelet_weight([p](double x) { return p.at(x); }, phi, "wavelet");
}

AffineWeight wavelet_weight_from_function(std::function<cplx(double)> phi, const HalfLineGrid& g,
                                          std::string label) {
  HalfLineSignal s = HalfLineSignal::from_function(g, phi);
  if (!(s.norm() > 0.0)) throw WeightError("wavelet_weight_from_function: zero fiducial");
  std::function<cplx(double)> f = [phi](double x) { return x > 0.0 ? phi(x) : cplx{}; };
  return make_wavelet_weight(std::move(f), s, std::move(label));
}

cplx bump_function(double x) {
  // int_0^inf x^4 e^{-2x} dx = 3/4.
  return x > 0.0 ? cplx{x * x * std::exp(-x) / std::sqrt(0.75), 0.0} : cplx{};
}

HalfLineSignal bump_fiducial(const HalfLineGrid& g) {
  HalfLineSignal s = HalfLineSignal::from_function(g, bump_function);
  s.samples /= s.norm();
  return s;
}

namespace {

// Log-normal bumps and their exact derivatives, sharing the normalization.
void make_test_vectors(const HalfLineGrid& g, std::vector<HalfLineSignal>* vals,
                       std::vector<HalfLineSignal>* ders) {
  constexpr double kLogWidth = 0.2;
  for (double frac : {0.12, 0.15, 0.18}) {
    const double xc = frac * g.x_max();
    for (double k : {0.0, 2.0}) {
      const auto f = [&](double x) {
        const double l = std::log(x / xc) / kLogWidth;
        return std::polar(std::exp(-0.5 * l * l), k * x);
      };
      HalfLineSignal s = HalfLineSignal::from_function(g, f);
      const double nrm = s.norm();
      s.samples /= nrm;
      if (ders) {
        HalfLineSignal d = HalfLineSignal::from_function(g, [&](double x) {
          const double l = std::log(x / xc) / kLogWidth;
          return f(x) * cplx{-l / (kLogWidth * x), k} / nrm;
        });
        ders->push_back(std::move(d));
      }
      if (vals) vals->push_back(std::move(s));
    }
  }
}

}  // namespace

std::vector<HalfLineSignal> affine_test_vectors(const HalfLineGrid& g) {
  std::vector<HalfLineSignal> out;
  make_test_vectors(g, &out, nullptr);
  return out;
}

std::vector<HalfLineSignal> affine_test_vector_derivatives(const HalfLineGrid& g) {
  std::vector<HalfLineSignal> out;
  make_test_vectors(g, nullptr, &out);
  return out;
}

double resolution_constant(const AffineWeight& w, const ScaleGrid& q) {
  const double lq = q.log_weight();
  cplx acc{0.0, 0.0};
  std::vector<double> mags;
  mags.reserve(q.size());
  for (double qq : q.a_values()) {
    const cplx v = w.partial_ft(-qq, 1.0);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw WeightError("resolution_constant: non-finite weight value");
    }
    acc += v;
    mags.push_back(std::abs(v));
  }
  const cplx c = kSqrt2Pi * lq * acc;
  if (!(c.real() > 0.0)) {
    throw AdmissibilityError("resolution_constant: c is not positive for weight '" + w.label() + "'");
  }
  if (std::abs(c.imag()) > 1e-8 * c.real()) {
    throw AdmissibilityError("resolution_constant: c is not real for weight '" + w.label() + "'");
  }
  const TailSum ts = tail_sum(mags, per_octave(q));
  if (ts.tail > 1e-4 * ts.total) {
    throw AdmissibilityError("resolution_constant: integral not converged on the scale range");
  }
  return c.real();
}

LinearOperator fiducial_operator(const AffineWeight& w, const HalfLineGrid& grid,
                                 KernelSign sign) {
  const auto m = ei(grid.m());
  const double sgn = sign == KernelSign::kMinus ? -1.0 : 1.0;
  CMatrix k(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double x = grid.x(static_cast<std::size_t>(j));
    for (Eigen::Index l = 0; l < m; ++l) {
      const double r = x / grid.x(static_cast<std::size_t>(l));
      k(j, l) = r * w.partial_ft(sgn * x, r);
    }
  }
  if (!k.allFinite()) throw WeightError("fiducial_operator: non-finite kernel value");
  k *= grid.dx() / kSqrt2Pi;
  return finish(grid, std::move(k));
}

LinearOperator fiducial_operator_direct(const AffineWeight& w, const HalfLineGrid& grid,
                                        const RVector& b_values, const ScaleGrid& scales) {
  if (b_values.size() < 2) throw Error("fiducial_operator_direct: need at least two b nodes");
  const double db = b_values[1] - b_values[0];
  for (Eigen::Index i = 1; i < b_values.size(); ++i) {
    if (std::abs(b_values[i] - b_values[i - 1] - db) > 1e-9 * std::abs(db)) {
      throw Error("fiducial_operator_direct: b lattice must be uniform");
    }
  }
  const auto m = ei(grid.m());
  RVector s(m);
  for (Eigen::Index j = 0; j < m; ++j) s[j] = std::sqrt(grid.x(static_cast<std::size_t>(j)) / (2 * kPi));
  CMatrix acc = CMatrix::Zero(m, m);
  const double lq = scales.log_weight();
  CVector wb(b_values.size());
  for (double a : scales.a_values()) {
    for (Eigen::Index i = 0; i < b_values.size(); ++i) wb[i] = w.weight(b_values[i], a);
    const double da = a * lq;
    for (Eigen::Index j = 0; j < m; ++j) {
      const double x = grid.x(static_cast<std::size_t>(j));
      long i0 = 0;
      double lw[4];
      if (!lagrange_weights(grid, x / a, i0, lw)) continue;
      cplx v{0.0, 0.0};
      for (Eigen::Index i = 0; i < b_values.size(); ++i) v += wb[i] * std::polar(1.0, b_values[i] * x);
      const cplx row = da * db * s[j] * v / std::sqrt(a);
      for (int t = 0; t < 4; ++t) acc(j, i0 + t) += row * lw[t] * s[i0 + t];
    }
  }
  return finish(grid, std::move(acc));
}

RVector full_band_b_lattice(const HalfLineGrid& grid) {
  const auto nb = ei(2 * grid.m());
  const double db = 2 * kPi / (static_cast<double>(nb) * grid.dx());
  RVector b(nb);
  for (Eigen::Index i = 0; i < nb; ++i) b[i] = -kPi / grid.dx() + static_cast<double>(i) * db;
  return b;
}

ScaleGrid affine_default_scales(const AffineWeight& w, const HalfLineGrid& grid) {
  const ScaleGrid probe(std::pow(2.0, -12.0), std::pow(2.0, 1.0 / 16.0), 24 * 16 + 1);
  double peak = 0.0;
  std::vector<double> mag;
  for (double u : probe.a_values()) {
    mag.push_back(std::abs(w.partial_ft(-u, 1.0)));
    peak = std::max(peak, mag.back());
  }
  if (peak == 0.0) throw AdmissibilityError("affine_default_scales: fiducial diagonal vanishes");
  double u_lo = 0.0, u_hi = 0.0;
  for (std::size_t i = 0; i < mag.size(); ++i) {
    if (mag[i] > 1e-12 * peak) {
      if (u_lo == 0.0) u_lo = probe.a_values()[ei(i)];
      u_hi = probe.a_values()[ei(i)];
    }
  }
  const double a_min = grid.x_min() / u_hi;
  const double a_max = grid.x_max() / u_lo;
  const double q = std::pow(2.0, 1.0 / 16.0);
  const auto n = static_cast<std::size_t>(std::ceil(std::log2(a_max / a_min) * 16.0)) + 1;
  return ScaleGrid(a_min, q, n);
}

LinearOperator affine_resolution_check(const AffineWeight& w, const RVector& b_values,
                                       const ScaleGrid& scales, const HalfLineGrid& grid) {
  if (b_values.size() == 0 || scales.size() == 0) return LinearOperator::zero(grid);
  if (b_values.size() < 2) throw Error("affine_resolution_check: need at least two b nodes");
  const double db = b_values[1] - b_values[0];
  const auto m = ei(grid.m());
  // B(l dx) = sum_b db e^{i b l dx}, l in (-m, m).
  CVector bker(2 * m - 1);
  for (Eigen::Index l = -(m - 1); l < m; ++l) {
    cplx acc{0.0, 0.0};
    for (Eigen::Index i = 0; i < b_values.size(); ++i) {
      acc += std::polar(1.0, b_values[i] * static_cast<double>(l) * grid.dx());
    }
    bker[l + m - 1] = acc * db;
  }
  const double lq = scales.log_weight();
  CMatrix r = CMatrix::Zero(m, m);
  for (double a : scales.a_values()) {
    const double pref = a * lq / w.c() * grid.dx() / a / kSqrt2Pi;
    for (Eigen::Index j = 0; j < m; ++j) {
      const double x = grid.x(static_cast<std::size_t>(j));
      for (Eigen::Index k = 0; k < m; ++k) {
        const cplx bk = bker[j - k + m - 1];
        if (std::abs(bk) < 1e-13) continue;
        const double ratio = x / grid.x(static_cast<std::size_t>(k));
        r(j, k) += pref * bk * ratio * w.partial_ft(-x / a, ratio);
      }
    }
  }
  return finish(grid, std::move(r));
}

HalfPlaneSymbol::HalfPlaneSymbol(Fn f, Fn partial_ft_b, std::string label)
    : f_(std::move(f)), ft_(std::move(partial_ft_b)), label_(std::move(label)) {
  for (double y : {-2.0, -0.7, 0.4, 1.5}) {
    for (double a : {0.5, 1.0, 2.0}) {
      const cplx ref = numeric_partial_ft([&](double b) { return f_(b, a); }, y);
      const cplx got = (*ft_)(y, a);
      if (std::abs(ref - got) > 1e-6 * std::max(1.0, std::abs(ref))) {
        throw SymbolError("HalfPlaneSymbol: partial transform of '" + label_ +
                          "' disagrees with quadrature");
      }
    }
  }
}

HalfPlaneSymbol HalfPlaneSymbol::affine_in_b(Fa u0, Fa u1, std::string label) {
  HalfPlaneSymbol s;
  s.f_ = [u0, u1](double b, double a) { return u0(a) + b * u1(a); };
  s.u0_ = std::move(u0);
  s.u1_ = std::move(u1);
  s.label_ = std::move(label);
  return s;
}

HalfPlaneSymbol HalfPlaneSymbol::one() {
  return affine_in_b([](double) { return cplx{1.0, 0.0}; }, [](double) { return cplx{}; }, "one");
}

HalfPlaneSymbol HalfPlaneSymbol::a() {
  return affine_in_b([](double a) { return cplx{a, 0.0}; }, [](double) { return cplx{}; }, "a");
}

HalfPlaneSymbol HalfPlaneSymbol::b() {
  return affine_in_b([](double) { return cplx{}; }, [](double) { return cplx{1.0, 0.0}; }, "b");
}

cplx HalfPlaneSymbol::operator()(double b, double a) const { return f_(b, a); }

HalfPlaneSymbol HalfPlaneSymbol::transformed(const AffineElement& g) const {
  const double b0 = g.b, a0 = g.a;
  if (u0_) {
    const Fa u0 = *u0_, u1 = *u1_;
    return affine_in_b([=](double a) { return u0(a / a0) - a0 * b0 * u1(a / a0); },
                       [=](double a) { return a0 * u1(a / a0); }, label_ + "@moved");
  }
  HalfPlaneSymbol s;
  const Fn f = f_;
  s.f_ = [=](double b, double a) { return f(a0 * (b - b0), a / a0); };
  if (ft_) {
    const Fn ft = *ft_;
    s.ft_ = [=](double y, double a) { return std::polar(1.0 / a0, -y * b0) * ft(y / a0, a / a0); };
  }
  s.label_ = label_ + "@moved";
  return s;
}

CMatrix sinc_derivative(const HalfLineGrid& g) {
  const auto m = ei(g.m());
  CMatrix d = CMatrix::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index k = 0; k < m; ++k) {
      if (j == k) continue;
      const auto l = j - k;
      d(j, k) = ((l % 2 == 0) ? 1.0 : -1.0) / (static_cast<double>(l) * g.dx());
    }
  }
  return d;
}

LinearOperator affine_quantize(const HalfPlaneSymbol& f, const AffineWeight& w,
                               const HalfLineGrid& grid, const ScaleGrid& q) {
  const auto m = ei(grid.m());
  const double lq = q.log_weight();
  const auto po = per_octave(q);
  const RVector& qs = q.a_values();
  const auto nq = qs.size();
  CVector w1(nq), dw1(nq);
  for (Eigen::Index i = 0; i < nq; ++i) {
    w1[i] = w.partial_ft(-qs[i], 1.0);
    // Fourth-order central difference in a.
    constexpr double kEps = 1e-3;
    const auto at = [&](double a) { return w.partial_ft(-qs[i], a); };
    dw1[i] = (at(1.0 - 2 * kEps) - 8.0 * at(1.0 - kEps) + 8.0 * at(1.0 + kEps) - at(1.0 + 2 * kEps)) /
             (12.0 * kEps);
  }
  const double pref = kSqrt2Pi * lq / w.c();
  // Tails are judged against the largest integral seen, so negligible
  // entries do not trip the check.
  std::vector<double> mags(static_cast<std::size_t>(nq));
  double worst_tail = 0.0, largest = 0.0;
  const auto record_tail = [&]() {
    const TailSum ts = tail_sum(mags, po);
    worst_tail = std::max(worst_tail, ts.tail);
    largest = std::max(largest, ts.total);
  };
  const auto check_tail = [&]() {
    if (worst_tail > 1e-4 * largest) {
      throw TruncationError("affine_quantize: q integral not converged for symbol '" +
                            f.label() + "'");
    }
  };
  // (sqrt(2 pi)/c) int dq/q kernel(q) u(x/q).
  const auto qsum = [&](const CVector& kernel, const HalfPlaneSymbol::Fa& u, double x) {
    cplx acc{0.0, 0.0};
    for (Eigen::Index i = 0; i < nq; ++i) {
      const cplx t = kernel[i] * u(x / qs[i]);
      mags[static_cast<std::size_t>(i)] = std::abs(t);
      acc += t;
    }
    record_tail();
    return pref * acc;
  };

  if (f.is_affine_in_b()) {
    const auto& u0 = *f.u0();
    const auto& u1 = *f.u1();
    CVector d(m), h(m), extra(m);
    bool has_b = false;
    for (Eigen::Index j = 0; j < m; ++j) {
      const double x = grid.x(static_cast<std::size_t>(j));
      d[j] = qsum(w1, u0, x);
      h[j] = qsum(w1, u1, x);
      const double ex = 1e-3 * x;
      const cplx dh = (qsum(w1, u1, x - 2 * ex) - 8.0 * qsum(w1, u1, x - ex) +
                       8.0 * qsum(w1, u1, x + ex) - qsum(w1, u1, x + 2 * ex)) /
                      (12.0 * ex);
      const cplx gr = qsum(w1 + dw1, u1, x);
      extra[j] = cplx{0.0, 1.0} * (0.5 * dh + gr / x);
      if (std::abs(h[j]) > 0.0 || std::abs(extra[j]) > 0.0) has_b = true;
    }
    check_tail();
    CMatrix a = d.asDiagonal();
    if (has_b) {
      const CMatrix dm = sinc_derivative(grid);
      a += cplx{0.0, -0.5} * (h.asDiagonal() * dm + dm * h.asDiagonal());
      a += CMatrix(extra.asDiagonal());
    }
    return finish(grid, std::move(a));
  }

  if (!f.partial_ft_b()) {
    throw SymbolError("affine_quantize: symbol '" + f.label() +
                      "' needs a closed-form partial transform or must be affine in b");
  }
  const auto& fhat = *f.partial_ft_b();
  CMatrix a(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double x = grid.x(static_cast<std::size_t>(j));
    for (Eigen::Index k = 0; k < m; ++k) {
      const double xp = grid.x(static_cast<std::size_t>(k));
      const double r = x / xp;
      cplx acc{0.0, 0.0};
      for (Eigen::Index i = 0; i < nq; ++i) {
        const cplx t = w.partial_ft(-qs[i], r) * fhat(xp - x, x / qs[i]);
        mags[static_cast<std::size_t>(i)] = std::abs(t);
        acc += t;
      }
      record_tail();
      a(j, k) = grid.dx() * lq / w.c() * r * acc;
    }
  }
  check_tail();
  return finish(grid, std::move(a));
}

double measure_cst4(const AffineWeight& w, const ScaleGrid& q) {
  cplx num{0.0, 0.0}, den{0.0, 0.0};
  for (double qq : q.a_values()) {
    const cplx v = w.partial_ft(-qq, 1.0);
    num += v / qq;
    den += v;
  }
  return (num / den).real();
}

cplx measure_cst3(const AffineWeight& w, const HalfLineGrid& grid) {
  const CMatrix r = affine_quantize(HalfPlaneSymbol::b(), w, grid).matrix() +
                    cplx{0.0, 1.0} * sinc_derivative(grid);
  cplx num{0.0, 0.0};
  double den = 0.0;
  for (const auto& v : affine_test_vectors(grid)) {
    num += v.samples.dot(r * v.samples);
    den += v.samples.squaredNorm();
  }
  return num / den;
}

AffineWeight calibrate(const AffineWeight& w) { return w.dilated(measure_cst4(w)); }

double affine_test_vector_residual(const CMatrix& a, const CMatrix& b, const HalfLineGrid& g) {
  double worst = 0.0;
  for (const auto& v : affine_test_vectors(g)) {
    worst = std::max(worst, ((a - b) * v.samples).norm() / v.samples.norm());
  }
  return worst;
}

double affine_covariance_check(const HalfPlaneSymbol& f, const AffineWeight& w, double b0,
                               double a0, const HalfLineGrid& grid) {
  if (!(a0 > 0.0)) throw Error("affine_covariance_check: a0 must be positive");
  const AffineElement g{b0, a0};
  const AffineElement gi = g.inverse();
  const CMatrix a = affine_quantize(f, w, grid).matrix();
  const CMatrix moved = affine_quantize(f.transformed(g), w, grid).matrix();
  // U A U^dag = A' is tested as U A = A' U when a0 >= 1 and as A U^dag = U^dag A'
  // otherwise, so the interpolated dilation always stretches.
  const AffineElement h = a0 >= 1.0 ? g : gi;
  const CMatrix& first = a0 >= 1.0 ? a : moved;
  const CMatrix& second = a0 >= 1.0 ? moved : a;
  double worst = 0.0;
  for (const auto& v : affine_test_vectors(grid)) {
    const HalfLineSignal fv(grid, first * v.samples);
    const CVector lhs = uir_samples(fv, h.b, h.a);
    const CVector rhs = second * uir_samples(v, h.b, h.a);
    worst = std::max(worst, (lhs - rhs).norm() / v.samples.norm());
  }
  return worst;
}

double affine_ccr_check(const AffineWeight& w, const HalfLineGrid& grid) {
  const CMatrix aa = affine_quantize(HalfPlaneSymbol::a(), w, grid).matrix();
  const CMatrix ab = affine_quantize(HalfPlaneSymbol::b(), w, grid).matrix();
  const CMatrix c = aa * ab - ab * aa;
  const CMatrix target = cplx{0.0, 1.0} * CMatrix::Identity(c.rows(), c.cols());
  return affine_test_vector_residual(c, target, grid);
}

cplx affine_commutator_scalar(const AffineWeight& w, const HalfLineGrid& grid) {
  const CMatrix aa = affine_quantize(HalfPlaneSymbol::a(), w, grid).matrix();
  const CMatrix ab = affine_quantize(HalfPlaneSymbol::b(), w, grid).matrix();
  const CMatrix c = aa * ab - ab * aa;
  cplx num{0.0, 0.0};
  double den = 0.0;
  for (const auto& v : affine_test_vectors(grid)) {
    num += v.samples.dot(c * v.samples);
    den += v.samples.squaredNorm();
  }
  return num / (cplx{0.0, 1.0} * den);
}

}  // namespace tfq
