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

#ifndef TFQ_FOURIER_HPP_
#define TFQ_FOURIER_HPP_

#include <vector>

#include "tfq/grid.hpp"
#include "tfq/linear_operator.hpp"

namespace tfq {

/// s_hat on the induced frequency grid of `grid`, ascending omega.
struct Spectrum {
  UniformGrid grid;
  CVector samples;

  double energy() const;  // sum |s_hat_k|^2 domega
};

/// s_hat(omega_k) = dt / sqrt(2 pi) * sum_j exp(-i omega_k t_j) s_j.
Spectrum dft(const Signal& s);
/// Exact inverse of dft.
Signal idft(const Spectrum& sp);

/// Unitary matrix F_kj = exp(-i omega_k t_j) / sqrt(n) (rows ascending omega).
CMatrix dft_matrix(const UniformGrid& g);

/// T = diag(t_j).
LinearOperator time_operator(const UniformGrid& g);
/// Omega = F^dag diag(omega_k) F.
LinearOperator frequency_operator(const UniformGrid& g);

/// Discretized spectral decompositions, assembled term by term:
///   T = sum_j t_j |delta_j><delta_j| dt,  Omega = sum_k omega_k |chi_k><chi_k| domega.
LinearOperator time_operator_spectral_sum(const UniformGrid& g);
LinearOperator frequency_operator_spectral_sum(const UniformGrid& g);

/// exp(i sigma Omega) = F^dag diag(exp(i sigma omega_k)) F; acts as s(t) -> s(t + sigma).
LinearOperator exp_i_frequency(const UniformGrid& g, double sigma);
/// exp(i tau T) = diag(exp(i tau t_j)).
LinearOperator exp_i_time(const UniformGrid& g, double tau);

/// Delta_s T * Delta_s Omega for the normalized state s / ||s||.
/// Throws Error for a zero signal.
double uncertainty_product(const Signal& s);

/// Mean and standard deviation of T and Omega in the state s / ||s||.
struct Moments {
  double mean_t;
  double sd_t;
  double mean_omega;
  double sd_omega;
};
Moments time_frequency_moments(const Signal& s);

/// Well-localized Gaussian test vectors: centers in the central half of the
/// time window, carriers in the central half of the frequency band.
std::vector<Signal> gaussian_test_vectors(const UniformGrid& g);

/// max over test vectors v of
///   || (e^{i sigma Omega} e^{i tau T} - e^{i sigma tau} e^{i tau T} e^{i sigma Omega}) v || / ||v||.
double weyl_relation_check(double sigma, double tau, const UniformGrid& g);

/// || ([T, Omega] - i) s || / ||s||.
double ccr_residual(const Signal& s);

}  // namespace tfq

#endif  // TFQ_FOURIER_HPP_
