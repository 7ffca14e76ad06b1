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

#ifndef TFQ_GRID_HPP_
#define TFQ_GRID_HPP_

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tfq {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Uniform periodic time grid t_j = t0 + j*dt, j = 0..n-1.
///
/// The grid is a circle: shifts and convolutions wrap around. The induced
/// angular-frequency grid is omega_k = k' * 2 pi / (n dt) with k' in
/// [-n/2, n/2); spectra are stored in ascending-omega order, so storage index
/// k holds k' = k - n/2.
class UniformGrid {
 public:
  UniformGrid(std::size_t n, double t0, double dt);

  /// Grid symmetric about t = 0 (t0 = -n dt / 2).
  static UniformGrid centered(std::size_t n, double dt);

  std::size_t n() const noexcept { return n_; }
  double t0() const noexcept { return t0_; }
  double dt() const noexcept { return dt_; }
  double span() const noexcept { return static_cast<double>(n_) * dt_; }
  double t(std::size_t j) const noexcept { return t0_ + static_cast<double>(j) * dt_; }

  double domega() const noexcept;
  /// Nyquist magnitude pi / dt.
  double omega_max() const noexcept;
  /// Angular frequency at ascending storage index k.
  double omega(std::size_t k) const noexcept;

  /// Signed alias of a lag index in [-n/2, n/2).
  long signed_lag(long m) const noexcept;

  RVector times() const;
  RVector omegas() const;

  bool operator==(const UniformGrid& o) const noexcept;

 private:
  std::size_t n_;
  double t0_;
  double dt_;
};

/// Complex finite-energy signal sampled on a UniformGrid.
struct Signal {
  UniformGrid grid;
  CVector samples;

  Signal(UniformGrid g, CVector s);
  explicit Signal(UniformGrid g);  // zero signal

  static Signal from_function(const UniformGrid& g, const std::function<cplx(double)>& f);

  double energy() const;
  double norm() const;
  std::size_t size() const noexcept { return static_cast<std::size_t>(samples.size()); }
};

/// <x|y> = sum_j conj(x_j) y_j dt. Throws GridError on grid mismatch.
cplx inner_product(const Signal& x, const Signal& y);

/// Samples of x(t_j - b) on the periodic grid. Integer multiples of dt are
/// exact circular shifts; fractional shifts use spectral interpolation.
CVector shift_samples(const UniformGrid& g, const CVector& x, double b);

/// Unit-norm window with cached autocorrelation and intensity profile.
class Probe {
 public:
  /// Normalizes `base` on its grid. Throws GridError for a zero signal.
  explicit Probe(Signal base, std::string label = "custom",
                 std::optional<double> gaussian_sigma = std::nullopt);

  const Signal& base() const noexcept { return base_; }
  const UniformGrid& grid() const noexcept { return base_.grid; }
  const std::string& label() const noexcept { return label_; }

  /// R_psi_psi(t_j) on the grid times.
  const Signal& autocorr() const noexcept { return autocorr_; }
  /// R_psi_psi at lag m*dt, stored at index m mod n.
  const CVector& autocorr_lag() const noexcept { return autocorr_lag_; }
  /// |psi(t_j)|^2.
  const RVector& intensity() const noexcept { return intensity_; }

  /// Set when the probe is the centered Gaussian of this width; enables
  /// closed-form overlaps downstream.
  std::optional<double> gaussian_sigma() const noexcept { return sigma_; }

  /// Samples of psi(t_j - b).
  CVector shifted(double b) const { return shift_samples(grid(), base_.samples, b); }

 private:
  Signal base_;
  std::string label_;
  std::optional<double> sigma_;
  Signal autocorr_;
  CVector autocorr_lag_;
  RVector intensity_;
};

/// Normalized centered Gaussian pi^{-1/4} sigma^{-1/2} exp(-t^2/(2 sigma^2)).
/// Requires 4 dt <= sigma <= n dt / 8.
Probe make_gaussian_probe(const UniformGrid& g, double sigma);

/// R(t_j) = int psi(t') conj(psi(t' - t_j)) dt' via |psi_hat|^2.
Signal autocorrelation(const Probe& p);

/// Half-line grid x_j = x_min + j dx, all x > 0 (positive frequencies).
class HalfLineGrid {
 public:
  /// Default x_min = dx / 2.
  HalfLineGrid(std::size_t m, double dx, std::optional<double> x_min = std::nullopt);

  std::size_t m() const noexcept { return m_; }
  double dx() const noexcept { return dx_; }
  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x(m_ - 1); }
  double x(std::size_t j) const noexcept { return x_min_ + static_cast<double>(j) * dx_; }
  RVector xs() const;

  bool operator==(const HalfLineGrid& o) const noexcept;

 private:
  std::size_t m_;
  double dx_;
  double x_min_;
};

/// Signal on L^2(R_+^*, dx).
struct HalfLineSignal {
  HalfLineGrid grid;
  CVector samples;

  HalfLineSignal(HalfLineGrid g, CVector s);
  static HalfLineSignal from_function(const HalfLineGrid& g,
                                      const std::function<cplx(double)>& f);

  double norm() const;
  /// Cubic (4-point Lagrange) interpolation; zero outside [x_min, x_max].
  cplx at(double x) const;
};

cplx inner_product(const HalfLineSignal& x, const HalfLineSignal& y);

}  // namespace tfq

#endif  // TFQ_GRID_HPP_
