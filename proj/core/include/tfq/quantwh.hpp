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

#ifndef TFQ_QUANTWH_HPP_
#define TFQ_QUANTWH_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tfq/gabor.hpp"
#include "tfq/grid.hpp"
#include "tfq/linear_operator.hpp"

namespace tfq {

/// Classical symbol f(b, omega) with an optional closed-form partial Fourier
/// transform f_hat(b, y) = (2 pi)^{-1/2} int e^{-i omega y} f(b, omega) domega.
class Symbol2D {
 public:
  using Fn = std::function<cplx(double, double)>;

  /// A supplied partial transform is checked against the FFT on a 512-point
  /// test grid; a mismatch above 1e-6 throws SymbolError.
  Symbol2D(Fn f, std::string label, std::optional<Fn> partial_ft_omega = std::nullopt);

  cplx operator()(double b, double omega) const { return f_(b, omega); }
  const std::string& label() const noexcept { return label_; }
  const std::optional<Fn>& partial_ft_omega() const noexcept { return ft_; }

  static Symbol2D one();
  static Symbol2D b();
  static Symbol2D omega();
  static Symbol2D b2();
  static Symbol2D omega2();
  static Symbol2D bw();
  static Symbol2D harmonic();  // b^2 + omega^2
  /// `one`, `b`, `omega`, `b2`, `omega2`, `bw`, `harmonic`; throws SymbolError otherwise.
  static Symbol2D builtin(const std::string& name);

  /// Bilinear interpolation of samples on a lattice (rows b, columns omega);
  /// zero outside the sampled rectangle.
  static Symbol2D from_samples(const TFLattice& lat, const CMatrix& values, std::string label);

 private:
  Fn f_;
  std::string label_;
  std::optional<Fn> ft_;
};

/// Pi(b, omega) with Pi(0, 0) = 1.
class ApodizationWeight {
 public:
  using Fn = std::function<cplx(double, double)>;

  /// Throws Error when |Pi(0,0) - 1| > 1e-9.
  ApodizationWeight(Fn pi, std::string label);

  cplx operator()(double b, double omega) const { return pi_(b, omega); }
  const std::string& label() const noexcept { return label_; }
  /// Set for weights built from a probe.
  const std::optional<Probe>& probe() const noexcept { return probe_; }

  static ApodizationWeight weyl();         // Pi = 1
  static ApodizationWeight born_jordan();  // Pi = sin(b omega) / (b omega)
  /// Pi_psi(b, omega) = <psi| U(0, -b, -omega) |psi>.
  static ApodizationWeight from_probe(const Probe& p);

 private:
  Fn pi_;
  std::string label_;
  std::optional<Probe> probe_;
};

/// Bounded trace-class operator Q0 on the grid.
struct FiducialOperator {
  CMatrix matrix;
  std::string label;

  /// |psi><psi| (trace 1).
  static FiducialOperator rank_one(const Probe& p);
  /// 2P, P the parity s(t) -> s(-t).
  static FiducialOperator parity(const UniformGrid& g);

  /// Tr(U(0, -b, -omega) Q0).
  cplx apodization(const UniformGrid& g, double b, double omega) const;
};

/// Gabor-kernel route: A_f = int f(b,omega) |psi_{b,omega}><psi_{b,omega}| db domega / 2 pi,
/// with b summed over the grid times.
LinearOperator quantize_gabor(const Symbol2D& f, const Probe& p);

/// Diagonal operator (|psi|^2 * u)(t).
LinearOperator quantize_time_symbol(const std::function<cplx(double)>& u, const Probe& p);

/// Convolution operator with kernel (2 pi)^{-1/2} R_psi(t - t') v_hat(t' - t).
LinearOperator quantize_freq_symbol(const std::function<cplx(double)>& v, const Probe& p);
/// Same with v sampled on the ascending grid frequencies.
LinearOperator quantize_freq_samples(const CVector& v, const Probe& p);

/// Symbol u(b) v(omega).
LinearOperator quantize_separable(const std::function<cplx(double)>& u,
                                  const std::function<cplx(double)>& v, const Probe& p);

/// Symbol f(b, omega) = s(b): diag(|psi|^2 * s).
LinearOperator quantize_signal_self(const Signal& s, const Probe& p);

/// Symbol f(b, omega) = s_hat(omega).
LinearOperator quantize_spectrum(const Signal& s, const Probe& p);

/// (A_S s)(t) for the symbol S(b,omega) = <psi_{b,omega}|s>, evaluated as
/// int db psi(t - b) [(conj(psi_b) s) * (conj(psi_b) s)](t) with b on the grid.
Signal quantize_gabor_coeffs(const Signal& s, const Probe& p);

/// f_check(b, omega) = int f(b', omega') |<psi_{b omega}|psi_{b' omega'}>|^2 db' domega' / 2 pi
/// sampled on `lat` (rows b, columns omega).
CMatrix semiclassical_portrait(const Symbol2D& f, const Probe& p, const TFLattice& lat);

/// Portrait for the analytic Gaussian probe of width sigma (no grid needed).
CMatrix gaussian_portrait(const Symbol2D& f, double sigma, const TFLattice& lat);

/// ||f_check_sigma - f|| (lattice L2 over the central half of both axes) per sigma.
std::vector<double> classical_limit_scan(const Symbol2D& f, const std::vector<double>& sigmas,
                                         const TFLattice& lat);

/// Centered N x N lattice with N db domega = 2 pi.
TFLattice symplectic_lattice(std::size_t n, double db);

/// F_s[f](b, omega) = int e^{-i(b omega' - b' omega)} f(b', omega') db' domega' / 2 pi on a
/// symplectic lattice. Throws Error for other lattices.
CMatrix symplectic_fourier(const CMatrix& f, const TFLattice& lat);

/// A_f = int U(0,b,omega) F_s[f](-b,-omega) Pi(b,omega) db domega / 2 pi, assembled in
/// the position representation on the grid (exact lattice delta for Pi = 1).
LinearOperator quantize_with_apodization(const Symbol2D& f, const ApodizationWeight& pi,
                                         const UniformGrid& grid);

/// Same integral as a literal sum of displacement operators over a symplectic
/// lattice. Throws TruncationError when more than 1e-4 of the integrand mass
/// sits on the outer eighth of the lattice.
LinearOperator quantize_with_apodization_lattice(const Symbol2D& f, const ApodizationWeight& pi,
                                                 const UniformGrid& grid, const TFLattice& lat);

/// Weyl operator as sum f(b,omega) 2 P_{b,omega} db domega / 2 pi over displaced
/// parities, b on the half-sample grid.
LinearOperator weyl_via_displaced_parity(const Symbol2D& f, const UniformGrid& grid);

/// f convolved with the kernel F_s[Pi Pi~], Pi~(b,omega) = Pi(-b,-omega), on a
/// symplectic lattice.
CMatrix portrait_convolution_form(const Symbol2D& f, const ApodizationWeight& pi,
                                  const TFLattice& lat);

/// Cst1 = -int b |psi(b)|^2 db.
double measure_cst1(const Probe& p);
/// Scalar c minimizing ||(A_omega - Omega - c) v|| over the Gaussian test vectors.
cplx measure_cst2(const Probe& p);

/// max |A_ij - B_ij| over the central half of the index range.
double interior_max_abs_diff(const CMatrix& a, const CMatrix& b);
/// max over Gaussian test vectors of ||(A - B) v|| / ||v||.
double test_vector_residual(const CMatrix& a, const CMatrix& b, const UniformGrid& g);

}  // namespace tfq

#endif  // TFQ_QUANTWH_HPP_
