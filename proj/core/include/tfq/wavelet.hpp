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

#ifndef TFQ_WAVELET_HPP_
#define TFQ_WAVELET_HPP_

#include <cmath>

#include "tfq/grid.hpp"
#include "tfq/linear_operator.hpp"

namespace tfq {

/// a_j = a_min q^j, j = 0..m-1. Node weight of da/a^2 at a_j is ln(q)/a_j.
class ScaleGrid {
 public:
  ScaleGrid(double a_min, double q, std::size_t m);
  /// `voices` scales per octave covering [a_min, a_min 2^octaves].
  static ScaleGrid octaves(double a_min, double octaves, std::size_t voices = 8);

  const RVector& a_values() const noexcept { return a_; }
  double a_min() const noexcept { return a_min_; }
  double q() const noexcept { return q_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(a_.size()); }
  double log_weight() const { return std::log(q_); }

 private:
  double a_min_;
  double q_;
  RVector a_;
};

/// Zero-mean probe with its admissibility constant.
struct Wavelet {
  Probe base;
  double c_psi;

  /// Validates the probe and computes c_psi.
  explicit Wavelet(Probe p);

  /// psi_hat(xi) by direct summation; 0 beyond the Nyquist frequency.
  cplx psi_hat(double xi) const;
  /// Standard deviation of |psi|^2.
  double rms_width() const;
};

struct WaveletCoeffs {
  RVector b_values;
  ScaleGrid scales;
  CMatrix values;  // rows b, columns a
};

/// 2 pi sum_{omega_k > 0} |psi_hat|^2 / omega_k domega. Throws AdmissibilityError
/// when |psi_hat(0)| > 1e-8, SymmetryError when the negative-frequency integral
/// differs by more than 1e-3 relative.
double admissibility_constant(const Probe& p);
/// Same integral for an unnormalized function (homogeneous of degree 2).
/// The zero-mean threshold is relative to max(1, ||psi||).
double admissibility_constant(const Signal& psi);

/// Mexican hat (1 - t^2/sigma^2) e^{-t^2/(2 sigma^2)}, normalized.
Probe mexican_hat(const UniformGrid& g, double sigma = 1.0);
/// Real Morlet (cos(omega0 t/sigma) - e^{-omega0^2/2}) e^{-t^2/(2 sigma^2)}, normalized.
Probe morlet(const UniformGrid& g, double omega0 = 6.0, double sigma = 1.0);

/// S(b,a) = <a^{-1/2} psi((t-b)/a) | s>. b_values must be grid times.
/// Throws Error when a_min w < 4 dt or a_max w > span/8 (w = rms width).
WaveletCoeffs cwt(const Signal& s, const Wavelet& w, const RVector& b_values,
                  const ScaleGrid& scales);

/// (1/c_psi) sum_{b,a} S(b,a) psi_{b,a} db ln(q)/a.
Signal icwt(const WaveletCoeffs& c, const Wavelet& w);

/// (1/c_psi) sum_{b,a} |psi_{b,a}><psi_{b,a}| db ln(q)/a as a dense matrix.
LinearOperator wavelet_resolution_check(const Wavelet& w, const RVector& b_values,
                                        const ScaleGrid& scales);

/// (1/c_psi) sum |S|^2 db ln(q)/a.
double wavelet_energy(const WaveletCoeffs& c, const Wavelet& w);

}  // namespace tfq

#endif  // TFQ_WAVELET_HPP_
