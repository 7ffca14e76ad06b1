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

#ifndef TFQ_QUANTAFFINE_HPP_
#define TFQ_QUANTAFFINE_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tfq/grid.hpp"
#include "tfq/linear_operator.hpp"
#include "tfq/wavelet.hpp"

namespace tfq {

/// (b, a) in the affine group acting as x -> b + x/a.
struct AffineElement {
  double b = 0.0;
  double a = 1.0;

  /// (b1 + b2/a1, a1 a2).
  AffineElement operator*(const AffineElement& o) const;
  /// (-a b, 1/a).
  AffineElement inverse() const;
};

/// U+(b,a) phi(x) = e^{ibx} a^{-1/2} phi(x/a), cubic interpolation. Throws
/// SupportError when more than 1e-8 of the mass of phi maps off the grid.
HalfLineSignal affine_uir_apply(const AffineElement& g, const HalfLineSignal& phi);

/// Geometric quadrature nodes with ratio 2^{1/16} on [2^-10, 2^8].
ScaleGrid default_q_grid();

/// Weight varpi(b,a) on the half-plane, held through its partial Fourier
/// transform varpi_hat(y,a) = (2 pi)^{-1/2} int e^{-iby} varpi(b,a) db.
class AffineWeight {
 public:
  using Fn = std::function<cplx(double, double)>;

  /// At least one of `weight` and `partial_ft` is required. When both are
  /// given they must agree (1e-6) on a test set, else WeightError. The
  /// resolution constant is computed here; AdmissibilityError if it is not
  /// finite and positive.
  AffineWeight(std::optional<Fn> weight, std::optional<Fn> partial_ft, std::string label);

  cplx partial_ft(double y, double a) const { return ft_(y, a); }
  /// varpi(b,a); numeric from varpi_hat if no closed form was given.
  cplx weight(double b, double a) const;
  bool has_weight() const noexcept { return weight_.has_value(); }

  const std::string& label() const noexcept { return label_; }
  double c() const noexcept { return c_; }
  /// Fiducial phi for wavelet weights.
  const std::optional<HalfLineSignal>& fiducial() const noexcept { return phi_; }

  /// varpi_hat'(y,a) = varpi_hat(y/lambda, a) / lambda.
  AffineWeight dilated(double lambda) const;
  AffineWeight scaled(double alpha) const;

  /// Bilinear interpolation of varpi_hat samples; zero outside the rectangle.
  static AffineWeight from_partial_ft_samples(const RVector& y, const RVector& a,
                                              const CMatrix& values, std::string label);

 private:
  friend AffineWeight make_wavelet_weight(std::function<cplx(double)> phi,
                                          const HalfLineSignal& samples, std::string label);
  std::optional<Fn> weight_;
  Fn ft_;
  std::string label_;
  double c_ = 0.0;
  std::optional<HalfLineSignal> phi_;
  std::optional<std::function<cplx(double)>> phi_fn_;
};

AffineWeight make_wavelet_weight(std::function<cplx(double)> phi, const HalfLineSignal& samples,
                                 std::string label);

/// varpi_hat(y,a) = sqrt(2 pi) a^{-1} phi(-y) conj(phi(-y/a)) (zero for y >= 0).
AffineWeight wavelet_weight_from_probe(const HalfLineSignal& phi);

/// Same weight with phi given in closed form (exact off-grid values).
AffineWeight wavelet_weight_from_function(std::function<cplx(double)> phi, const HalfLineGrid& g,
                                          std::string label);

/// x^2 e^{-x} normalized on the half-line.
cplx bump_function(double x);
/// bump_function sampled and renormalized on the grid.
HalfLineSignal bump_fiducial(const HalfLineGrid& g);

/// Log-normal bumps well inside the grid, for interior comparisons.
/// Centres 0.12, 0.15 and 0.18 of x_max, log-width 0.2, carriers 0 and 2.
std::vector<HalfLineSignal> affine_test_vectors(const HalfLineGrid& g);
/// Exact d/dx of affine_test_vectors, same order and normalization.
std::vector<HalfLineSignal> affine_test_vector_derivatives(const HalfLineGrid& g);

/// c = sqrt(2 pi) int dq/q varpi_hat(-q, 1) on `q`. AdmissibilityError when the
/// value is not positive, has imaginary part above 1e-8 relative, or when more
/// than 1e-4 of it sits in the outermost octave on either side.
double resolution_constant(const AffineWeight& w, const ScaleGrid& q = default_q_grid());

/// Argument-sign reading of the fiducial kernel.
enum class KernelSign {
  kMinus,  // (2 pi)^{-1/2} (x/x') varpi_hat(-x, x/x')
  kPlus,   // (2 pi)^{-1/2} (x/x') varpi_hat(+x, x/x')
};

/// M(x,x') from the closed kernel, dx-weighted. WeightError on non-finite values.
LinearOperator fiducial_operator(const AffineWeight& w, const HalfLineGrid& grid,
                                 KernelSign sign = KernelSign::kMinus);

/// M = int C^{-1} U+(b,a) C^{-1} varpi(b,a) db da, summed over a b-lattice and
/// a scale grid (da = a ln q), with C phi = sqrt(2 pi / x) phi.
LinearOperator fiducial_operator_direct(const AffineWeight& w, const HalfLineGrid& grid,
                                        const RVector& b_values, const ScaleGrid& scales);

/// b-lattice spanning [-pi/dx, pi/dx) with 2m nodes.
RVector full_band_b_lattice(const HalfLineGrid& grid);
/// Scale grid (ratio 2^{1/16}) covering x/u for x on the grid and u in the
/// support of the fiducial diagonal.
ScaleGrid affine_default_scales(const AffineWeight& w, const HalfLineGrid& grid);

/// R = sum U+ M U+^dag db da / c.
LinearOperator affine_resolution_check(const AffineWeight& w, const RVector& b_values,
                                       const ScaleGrid& scales, const HalfLineGrid& grid);

/// Symbol f(b,a) on the half-plane. Either affine in b, f = u0(a) + b u1(a),
/// or with a closed-form partial transform f_hat(y,a) in b.
class HalfPlaneSymbol {
 public:
  using Fn = std::function<cplx(double, double)>;
  using Fa = std::function<cplx(double)>;

  /// General symbol with closed-form f_hat, validated (1e-6) against
  /// quadrature at construction; SymbolError on mismatch.
  HalfPlaneSymbol(Fn f, Fn partial_ft_b, std::string label);
  /// f = u0(a) + b u1(a).
  static HalfPlaneSymbol affine_in_b(Fa u0, Fa u1, std::string label);

  static HalfPlaneSymbol one();
  static HalfPlaneSymbol a();
  static HalfPlaneSymbol b();

  cplx operator()(double b, double a) const;
  const std::string& label() const noexcept { return label_; }
  bool is_affine_in_b() const noexcept { return u0_.has_value(); }
  const std::optional<Fa>& u0() const noexcept { return u0_; }
  const std::optional<Fa>& u1() const noexcept { return u1_; }
  const std::optional<Fn>& partial_ft_b() const noexcept { return ft_; }

  /// f((b0,a0)^{-1}(b,a)) = f(a0 (b - b0), a / a0).
  HalfPlaneSymbol transformed(const AffineElement& g) const;

 private:
  HalfPlaneSymbol() = default;
  Fn f_;
  std::optional<Fn> ft_;
  std::optional<Fa> u0_, u1_;
  std::string label_;
};

/// A_f from the q-integral kernel on `q`. The b-terms of symbols affine in b use
/// the sinc differentiation matrix. TruncationError when the q-integrand tail
/// exceeds 1e-4.
LinearOperator affine_quantize(const HalfPlaneSymbol& f, const AffineWeight& w,
                               const HalfLineGrid& grid, const ScaleGrid& q = default_q_grid());

/// D_jk = (-1)^{j-k} / ((j-k) dx), D_jj = 0.
CMatrix sinc_derivative(const HalfLineGrid& g);

/// Cst4 = int dq/q^2 varpi_hat(-q,1) / int dq/q varpi_hat(-q,1).
double measure_cst4(const AffineWeight& w, const ScaleGrid& q = default_q_grid());
/// Scalar c minimizing ||(A_b + i D - c) v|| over the affine test vectors.
cplx measure_cst3(const AffineWeight& w, const HalfLineGrid& grid);

/// Weight dilated so that Cst4 = 1 (Cst3 is reported, not adjusted).
AffineWeight calibrate(const AffineWeight& w);

/// max over test vectors of ||(U A_f U^dag - A_{U f}) v|| / ||v||.
double affine_covariance_check(const HalfPlaneSymbol& f, const AffineWeight& w, double b0,
                               double a0, const HalfLineGrid& grid);

/// max over test vectors of ||([A_a, A_b] - i) v|| / ||v||.
double affine_ccr_check(const AffineWeight& w, const HalfLineGrid& grid);

/// Projection <v, [A_a, A_b] v> / (i ||v||^2) averaged over the test vectors.
cplx affine_commutator_scalar(const AffineWeight& w, const HalfLineGrid& grid);

/// max over test vectors of ||(A - B) v|| / ||v||.
double affine_test_vector_residual(const CMatrix& a, const CMatrix& b, const HalfLineGrid& g);

}  // namespace tfq

#endif  // TFQ_QUANTAFFINE_HPP_
