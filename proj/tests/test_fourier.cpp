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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tfq/error.hpp"
#include "tfq/fourier.hpp"

namespace tfq {
namespace {

constexpr double kPi = std::numbers::pi;
const UniformGrid kGrid = UniformGrid::centered(512, 0.05);

Signal gaussian(const UniformGrid& g, double sigma, double t0 = 0.0, double k = 0.0) {
  return Signal::from_function(g, [=](double t) {
    return std::exp(-(t - t0) * (t - t0) / (2 * sigma * sigma)) * std::polar(1.0, k * t);
  });
}

// Random spectrum confined to the central half of the band.
Signal random_band_limited(const UniformGrid& g, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Spectrum sp{g, CVector::Zero(static_cast<Eigen::Index>(g.n()))};
  for (std::size_t k = g.n() / 4; k < 3 * g.n() / 4; ++k) sp.samples[static_cast<Eigen::Index>(k)] = {nd(rng), nd(rng)};
  return idft(sp);
}

TEST(Dft, GaussianClosedForm) {
  for (double sigma : {0.5, 1.0, 2.0}) {
    const Spectrum sp = dft(gaussian(kGrid, sigma));
    double err = 0.0;
    for (std::size_t k = 0; k < kGrid.n(); ++k) {
      const double w = kGrid.omega(k);
      err = std::max(err, std::abs(sp.samples[static_cast<Eigen::Index>(k)] - sigma * std::exp(-sigma * sigma * w * w / 2)));
    }
    // Window truncation at sigma = 2 leaves e^{-L^2/(8 sigma^2)} ~ 1e-9.
    EXPECT_LE(err, sigma < 2 ? 1e-12 : 1e-9) << "sigma " << sigma;
  }
}

TEST(Dft, TranslationBecomesModulation) {
  const double b = 1.5;
  const Spectrum a = dft(gaussian(kGrid, 1.0));
  const Spectrum s = dft(gaussian(kGrid, 1.0, b));
  for (std::size_t k = 0; k < kGrid.n(); k += 7) {
    const auto i = static_cast<Eigen::Index>(k);
    EXPECT_NEAR(std::abs(s.samples[i] - std::polar(1.0, -kGrid.omega(k) * b) * a.samples[i]), 0.0, 1e-12);
  }
}

TEST(Dft, PlancherelPropertyRandomSignals) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const Signal s = random_band_limited(kGrid, rng);
    ASSERT_LE(std::abs(dft(s).energy() / s.energy() - 1.0), 1e-10);
  }
}

TEST(Dft, InverseRoundTrip) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  Signal s(kGrid);
  for (Eigen::Index j = 0; j < s.samples.size(); ++j) s.samples[j] = {nd(rng), nd(rng)};
  EXPECT_LE((idft(dft(s)).samples - s.samples).norm() / s.samples.norm(), 1e-13);
}

TEST(Dft, MatrixIsUnitaryAndMatchesTransform) {
  const auto g = UniformGrid::centered(64, 0.1);
  const CMatrix f = dft_matrix(g);
  EXPECT_LE((f.adjoint() * f - CMatrix::Identity(64, 64)).norm(), 1e-12);
  const Signal s = gaussian(g, 0.7, 0.3, 2.0);
  const CVector via_matrix = f * s.samples * std::sqrt(g.span() * g.dt() / (2 * kPi));
  EXPECT_LE((via_matrix - dft(s).samples).norm(), 1e-12);
}

TEST(Operators, SpectralSumsMatchDirectForms) {
  const auto g = UniformGrid::centered(64, 0.1);
  EXPECT_LE((time_operator(g).matrix() - time_operator_spectral_sum(g).matrix()).norm(), 1e-12);
  EXPECT_LE((frequency_operator(g).matrix() - frequency_operator_spectral_sum(g).matrix()).norm(), 1e-9);
  EXPECT_LE(time_operator(g).hermiticity_defect(), 1e-15);
  EXPECT_LE(frequency_operator(g).hermiticity_defect(), 1e-12);
}

TEST(Operators, FrequencyExponentialTranslates) {
  const double sigma = 0.8;
  const Signal s = gaussian(kGrid, 1.0, 0.5);
  const Signal shifted = exp_i_frequency(kGrid, sigma).apply(s);
  const Signal expect = gaussian(kGrid, 1.0, 0.5 - sigma);
  EXPECT_LE((shifted.samples - expect.samples).norm() / s.samples.norm(), 1e-10);
}

TEST(Operators, WeylRelationOnCommensurateShifts) {
  // sigma on the time grid and tau on the frequency grid make both exponentials exact.
  const double sigma = 20 * kGrid.dt();
  const double tau = 6 * kGrid.domega();
  EXPECT_LE(weyl_relation_check(sigma, tau, kGrid), 1e-10);
}

TEST(Operators, CcrOnGaussians) {
  for (double sigma : {0.5, 1.0, 2.0}) EXPECT_LE(ccr_residual(gaussian(kGrid, sigma)), 1e-6) << sigma;
}

TEST(Operators, CcrFailsForBoundaryMass) {
  // A signal with mass at the window edge sees the periodic wrap of T.
  const Signal s = gaussian(kGrid, 1.0, kGrid.t(kGrid.n() - 1));
  EXPECT_GT(ccr_residual(s), 1e-2);
}

TEST(Uncertainty, GaussiansSaturateBound) {
  for (double sigma : {0.5, 1.0, 2.0}) {
    EXPECT_NEAR(uncertainty_product(gaussian(kGrid, sigma)), 0.5, 1e-6) << sigma;
    const Moments m = time_frequency_moments(gaussian(kGrid, sigma, 1.0, 3.0));
    EXPECT_NEAR(m.mean_t, 1.0, 1e-10);
    EXPECT_NEAR(m.mean_omega, 3.0, 1e-10);
    EXPECT_NEAR(m.sd_t, sigma / std::sqrt(2.0), 1e-8);
    EXPECT_NEAR(m.sd_omega, 1.0 / (sigma * std::sqrt(2.0)), 1e-8);
  }
}

TEST(Uncertainty, RandomLocalizedSignalsObeyBound) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    // Random superposition of localized Gaussians stays clear of the window edges.
    Signal s(kGrid);
    for (int c = 0; c < 4; ++c) s.samples += gaussian(kGrid, 0.6 + 0.4 * (u(rng) + 1), 3 * u(rng), 4 * u(rng)).samples * cplx{u(rng), u(rng)};
    EXPECT_GE(uncertainty_product(s), 0.5 * (1 - 1e-12));
  }
}

TEST(Uncertainty, ZeroSignalThrows) {
  EXPECT_THROW(uncertainty_product(Signal(kGrid)), Error);
}

}  // namespace
}  // namespace tfq
