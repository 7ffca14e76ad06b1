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

#ifndef TFQ_GABOR_HPP_
#define TFQ_GABOR_HPP_

#include "tfq/fourier.hpp"
#include "tfq/grid.hpp"
#include "tfq/linear_operator.hpp"

namespace tfq {

/// Uniform (b, omega) lattice with node weight db * domega / (2 pi).
struct TFLattice {
  RVector b_values;
  RVector omega_values;
  double db = 0.0;
  double domega = 0.0;

  double weight() const;
  std::size_t nb() const { return static_cast<std::size_t>(b_values.size()); }
  std::size_t nomega() const { return static_cast<std::size_t>(omega_values.size()); }

  /// b on every `b_stride`-th grid time, omega on every `omega_stride`-th
  /// grid frequency (full band, starting at -pi/dt).
  static TFLattice on_grid(const UniformGrid& g, std::size_t b_stride, std::size_t omega_stride);

  /// db <= sigma/4 and domega <= 1/(4 sigma), with sigma the probe width, as
  /// power-of-two multiples of the grid spacings (at least one spacing).
  static TFLattice default_for(const Probe& p);

  /// Lattice with no nodes.
  static TFLattice empty();
};

struct GaborCoeffs {
  TFLattice lattice;
  CMatrix values;  // rows b, columns omega
};

/// Phase-space point with Heisenberg phase.
struct WHGroupElement {
  double varsigma = 0.0;
  double b = 0.0;
  double omega = 0.0;

  WHGroupElement operator*(const WHGroupElement& o) const;
  WHGroupElement inverse() const;
};

/// RMS width of the probe intensity (exact sigma for Gaussian probes).
double probe_width(const Probe& p);

/// e^{i omega t} psi(t - b). Throws Error for |omega| > pi/dt.
Signal gabor_atom(const Probe& p, double b, double omega);

GaborCoeffs gabor_transform(const Signal& s, const Probe& p, const TFLattice& lat);

/// sum_{b,omega} S(b,omega) psi_{b,omega} db domega / (2 pi).
Signal gabor_reconstruct(const GaborCoeffs& c, const Probe& p);

/// sum |psi_{b,omega}><psi_{b,omega}| db domega / (2 pi) as a dense matrix.
LinearOperator resolution_of_identity_matrix(const Probe& p, const TFLattice& lat);

/// U(varsigma,b,omega) = e^{i varsigma} e^{-i omega b/2} e^{i omega T} e^{-i b Omega}.
LinearOperator wh_displacement(const WHGroupElement& g, const UniformGrid& grid);
/// Same action without forming the matrix.
Signal apply_wh_displacement(const WHGroupElement& g, const Signal& s);

/// Phase convention in the covariance comparison.
enum class CovariancePhase {
  kMinus,  // e^{-i(omega - omega0/2) b0}: the identity satisfied by U
  kPlus,   // e^{+i(omega - omega0/2) b0}
};

/// max over lattice nodes of
///   |S[U(0,b0,omega0) s](b,omega) - phase * S[s](b - b0, omega - omega0)|.
/// Throws Error unless b0/db and omega0/domega are integers.
double covariance_check(const Signal& s, const Probe& p, double b0, double omega0,
                        const TFLattice& lat, CovariancePhase phase = CovariancePhase::kMinus);

}  // namespace tfq

#endif  // TFQ_GABOR_HPP_
