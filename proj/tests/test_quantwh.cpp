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

#include "tfq/error.hpp"
#include "tfq/fourier.hpp"
#include "tfq/gabor.hpp"
#include "tfq/quantwh.hpp"

namespace tfq {
namespace {

constexpr double kPi = std::numbers::pi;

CMatrix eye(Eigen::Index n) { return CMatrix::Identity(n, n); }

class DefaultScale : public ::testing::Test {
 protected:
  UniformGrid g = UniformGrid::centered(512, 0.05);
  Probe p = make_gaussian_probe(g, 1.0);
};

// A smaller grid for the quadratic-cost routes.
class SmallScale : public ::testing::Test {
 protected:
  UniformGrid g = UniformGrid::centered(128, 0.1);
  Probe p = make_gaussian_probe(g, 1.0);
};

TEST(Symbol2D, BuiltinNames) {
  for (const char* name : {"one", "b", "omega", "b2", "omega2", "bw", "harmonic"}) {
    EXPECT_EQ(Symbol2D::builtin(name).label(), name);
  }
  EXPECT_THROW(Symbol2D::builtin("nope"), SymbolError);
  EXPECT_EQ(Symbol2D::harmonic()(2.0, 3.0), cplx{13.0});
}

TEST(Symbol2D, WrongPartialTransformRejected) {
  // f = exp(-w^2/2) has f_hat = exp(-y^2/2); a doubled transform must fail.
  const auto f = [](double, double w) { return cplx{std::exp(-w * w / 2)}; };
  EXPECT_NO_THROW(Symbol2D(f, "gauss", [](double, double y) { return cplx{std::exp(-y * y / 2)}; }));
  EXPECT_THROW(Symbol2D(f, "gauss", [](double, double y) { return cplx{2 * std::exp(-y * y / 2)}; }), SymbolError);
}

TEST_F(DefaultScale, IdentitySymbolGivesIdentity) {
  const CMatrix a = quantize_gabor(Symbol2D::one(), p).matrix();
  EXPECT_LE((a - eye(a.rows())).cwiseAbs().maxCoeff(), 1e-12);
}

TEST_F(DefaultScale, SquaredTimeDiagonal) {
  const CMatrix a = quantize_gabor(Symbol2D::b2(), p).matrix();
  double err = 0.0;
  for (std::size_t j = g.n() / 4; j < 3 * g.n() / 4; ++j) {
    const auto i = static_cast<Eigen::Index>(j);
    err = std::max(err, std::abs(a(i, i) - (g.t(j) * g.t(j) + 0.5)));
  }
  EXPECT_LE(err, 1e-8);
}

TEST_F(DefaultScale, CoordinatesQuantizeToTimeAndFrequency) {
  EXPECT_LE(test_vector_residual(quantize_gabor(Symbol2D::b(), p).matrix(), time_operator(g).matrix(), g), 1e-6);
  EXPECT_LE(test_vector_residual(quantize_gabor(Symbol2D::omega(), p).matrix(), frequency_operator(g).matrix(), g), 1e-6);
  EXPECT_NEAR(measure_cst1(p), 0.0, 1e-12);
  EXPECT_LE(std::abs(measure_cst2(p)), 1e-6);
}

TEST_F(DefaultScale, OffCenterProbeShiftsTime) {
  // Probe centered at t = 0.5: A_b = T + Cst1 with Cst1 = -0.5.
  const Probe q(Signal::from_function(g, [](double t) { return cplx{std::exp(-(t - 0.5) * (t - 0.5) / 2)}; }));
  EXPECT_NEAR(measure_cst1(q), -0.5, 1e-10);
  // A_b is diagonal; away from the periodic wrap it is exactly t + Cst1.
  const CMatrix a = quantize_gabor(Symbol2D::b(), q).matrix();
  double err = 0.0;
  for (std::size_t j = g.n() / 4; j < 3 * g.n() / 4; ++j) {
    const auto i = static_cast<Eigen::Index>(j);
    err = std::max(err, std::abs(a(i, i) - (g.t(j) + measure_cst1(q))));
  }
  EXPECT_LE(err, 1e-10);
  EXPECT_LE((a - a.diagonal().asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST_F(DefaultScale, FrequencySymbolRouteMatchesGaborKernel) {
  const auto v = [](double w) { return cplx{w * w}; };
  const CMatrix direct = quantize_gabor(Symbol2D::omega2(), p).matrix();
  EXPECT_LE((quantize_freq_symbol(v, p).matrix() - direct).cwiseAbs().maxCoeff(), 1e-8);
  const CMatrix sampled = quantize_freq_samples(g.omegas().cast<cplx>().array().square().matrix(), p).matrix();
  EXPECT_LE((sampled - direct).cwiseAbs().maxCoeff(), 1e-8);
}

TEST_F(DefaultScale, SeparableSymbolIsProductFormula) {
  const auto u = [](double b) { return cplx{b}; };
  const auto v = [](double w) { return cplx{w}; };
  EXPECT_LE((quantize_separable(u, v, p).matrix() - quantize_gabor(Symbol2D::bw(), p).matrix()).cwiseAbs().maxCoeff(), 1e-8);
}

TEST_F(DefaultScale, TimeSymbolIsSmoothedMultiplication) {
  const CMatrix a = quantize_time_symbol([](double b) { return cplx{b * b}; }, p).matrix();
  EXPECT_LE((a - a.diagonal().asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_NEAR(a(256, 256).real(), 0.5, 1e-8);
}

TEST_F(DefaultScale, SelfQuantizationOfSignalAndSpectrum) {
  const Signal s = Signal::from_function(g, [](double t) { return std::polar(std::exp(-t * t / 4), t); });
  const CMatrix self = quantize_signal_self(s, p).matrix();
  const CMatrix via_time = quantize_time_symbol([](double t) { return std::polar(std::exp(-t * t / 4), t); }, p).matrix();
  EXPECT_LE((self - via_time).cwiseAbs().maxCoeff(), 1e-8);
  const CMatrix spec = quantize_spectrum(s, p).matrix();
  EXPECT_LE((spec - quantize_freq_samples(dft(s).samples, p).matrix()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST_F(DefaultScale, GaborCoefficientSymbolIsLinearInSignal) {
  const Signal s = Signal::from_function(g, [](double t) { return cplx{std::exp(-t * t / 4)}; });
  const Signal a = quantize_gabor_coeffs(s, p);
  const Signal b = quantize_gabor_coeffs(Signal(g, CVector(2.0 * s.samples)), p);
  // Quadratic in s: doubling s quadruples A_S s.
  EXPECT_LE((b.samples - 4.0 * a.samples).norm(), 1e-10 * b.samples.norm());
}

TEST(Apodization, WeightsAndNormalization) {
  EXPECT_EQ(ApodizationWeight::weyl()(3.0, -2.0), cplx{1.0});
  EXPECT_NEAR(ApodizationWeight::born_jordan()(0.5, 2.0).real(), std::sin(1.0), 1e-15);
  EXPECT_NEAR(std::abs(ApodizationWeight::born_jordan()(0.0, 0.0) - 1.0), 0.0, 1e-15);
  EXPECT_THROW(ApodizationWeight([](double, double) { return cplx{2.0}; }, "bad"), Error);
}

TEST(Apodization, GaussianProbeClosedForm) {
  // Pi_psi for the unit Gaussian: exp(-b^2/4 - w^2/4) up to the Heisenberg phase, take modulus.
  const auto g = UniformGrid::centered(512, 0.05);
  const auto pi = ApodizationWeight::from_probe(make_gaussian_probe(g, 1.0));
  for (double b : {0.0, 0.5, 1.5}) {
    for (double w : {0.0, -1.0, 2.0}) EXPECT_NEAR(std::abs(pi(b, w)), std::exp(-(b * b + w * w) / 4), 1e-10);
  }
}

TEST(Apodization, FiducialOperatorsReproduceWeights) {
  const auto g = UniformGrid::centered(128, 0.1);
  const Probe p = make_gaussian_probe(g, 1.0);
  const auto rank_one = FiducialOperator::rank_one(p);
  const auto pi = ApodizationWeight::from_probe(p);
  const auto parity = FiducialOperator::parity(g);
  for (double b : {0.0, 0.4, -1.2}) {
    for (double w : {0.0, 10 * g.domega(), -7 * g.domega()}) {
      EXPECT_NEAR(std::abs(rank_one.apodization(g, b, w) - pi(b, w)), 0.0, 1e-10);
    }
  }
  EXPECT_NEAR(std::abs(rank_one.matrix.trace() - 1.0), 0.0, 1e-12);
  // (2P)^2 = 4 and 2P is hermitian.
  EXPECT_LE((parity.matrix * parity.matrix - 4.0 * eye(128)).norm(), 1e-12);
  EXPECT_LE((parity.matrix - parity.matrix.adjoint()).norm(), 1e-12);
}

TEST(SymplecticFourier, IsAnInvolution) {
  const TFLattice lat = symplectic_lattice(32, std::sqrt(2 * kPi / 32));
  CMatrix f(32, 32);
  for (Eigen::Index i = 0; i < 32; ++i) {
    for (Eigen::Index k = 0; k < 32; ++k) {
      const double b = lat.b_values[i], w = lat.omega_values[k];
      f(i, k) = std::exp(-(b * b + 2 * w * w) / 2) * std::polar(1.0, 0.3 * b);
    }
  }
  EXPECT_LE((symplectic_fourier(symplectic_fourier(f, lat), lat) - f).norm() / f.norm(), 1e-12);
  EXPECT_THROW(symplectic_fourier(f, TFLattice::on_grid(UniformGrid::centered(32, 0.1), 1, 2)), Error);
}

TEST_F(DefaultScale, ApodizedRouteMatchesGaborKernel) {
  const auto pi = ApodizationWeight::from_probe(p);
  for (const char* name : {"one", "b", "omega", "b2", "omega2", "bw"}) {
    const Symbol2D f = Symbol2D::builtin(name);
    EXPECT_LE(interior_max_abs_diff(quantize_with_apodization(f, pi, g).matrix(), quantize_gabor(f, p).matrix()), 1e-6) << name;
  }
}

TEST_F(SmallScale, WeylRouteReproducesCoordinates) {
  const auto weyl = ApodizationWeight::weyl();
  EXPECT_LE(test_vector_residual(quantize_with_apodization(Symbol2D::b(), weyl, g).matrix(), time_operator(g).matrix(), g), 1e-6);
  EXPECT_LE(test_vector_residual(quantize_with_apodization(Symbol2D::omega(), weyl, g).matrix(), frequency_operator(g).matrix(), g), 1e-6);
}

TEST_F(SmallScale, DisplacedParityIsWeyl) {
  const CMatrix a = weyl_via_displaced_parity(Symbol2D::b2(), g).matrix();
  const CMatrix b = quantize_with_apodization(Symbol2D::b2(), ApodizationWeight::weyl(), g).matrix();
  EXPECT_LE(interior_max_abs_diff(a, b), 1e-6);
}

TEST_F(SmallScale, BornJordanIsHermitianForRealSymbols) {
  for (const char* name : {"b", "omega", "b2", "bw", "harmonic"}) {
    EXPECT_LE(quantize_with_apodization(Symbol2D::builtin(name), ApodizationWeight::born_jordan(), g).hermiticity_defect(), 1e-8) << name;
  }
}

TEST(BornJordan, AgreesWithWeylOnLowDegreeMonomials) {
  // Pi = sinc(b w) has vanishing derivatives through second order at the
  // origin, so b^2, w^2 and b w quantize as under Weyl. The discrete b w
  // operator converges to Weyl at rate 1/n.
  double previous = 0.0;
  for (std::size_t n : {256u, 512u}) {
    const auto g = UniformGrid::centered(n, 0.05);
    const auto weyl = ApodizationWeight::weyl(), bj = ApodizationWeight::born_jordan();
    for (const char* name : {"b2", "omega2"}) {
      const Symbol2D f = Symbol2D::builtin(name);
      EXPECT_LE(interior_max_abs_diff(quantize_with_apodization(f, bj, g).matrix(), quantize_with_apodization(f, weyl, g).matrix()), 1e-10) << name;
    }
    const double d = interior_max_abs_diff(quantize_with_apodization(Symbol2D::bw(), bj, g).matrix(),
                                           quantize_with_apodization(Symbol2D::bw(), weyl, g).matrix());
    if (previous > 0.0) {
      EXPECT_LT(d, 0.6 * previous);
    }
    previous = d;
  }
  EXPECT_LE(previous, 5e-3);
}

TEST_F(SmallScale, LatticeSumMatchesPositionAssembly) {
  const Symbol2D f([](double b, double w) { return cplx{std::exp(-(b * b + w * w) / 2)}; }, "gauss2d");
  const auto pi = ApodizationWeight::from_probe(p);
  const TFLattice lat = symplectic_lattice(128, std::sqrt(2 * kPi / 128));
  const CMatrix a = quantize_with_apodization_lattice(f, pi, g, lat).matrix();
  const CMatrix b = quantize_with_apodization(f, pi, g).matrix();
  // Entries near the band edge differ between the two assemblies; smooth
  // vectors see the same operator.
  EXPECT_LE(test_vector_residual(a, b, g), 1e-8);
}

TEST_F(SmallScale, LatticeSumFlagsTruncation) {
  // A narrow symbol has a wide symplectic transform that overflows the lattice.
  const Symbol2D wide([](double b, double w) { return cplx{std::exp(-8 * (b * b + w * w))}; }, "narrow");
  const TFLattice lat = symplectic_lattice(16, std::sqrt(2 * kPi / 16));
  EXPECT_THROW(quantize_with_apodization_lattice(wide, ApodizationWeight::weyl(), g, lat), TruncationError);
}

class Portrait : public ::testing::Test {
 protected:
  TFLattice lat = symplectic_lattice(64, std::sqrt(2 * kPi / 64));
};

TEST_F(Portrait, GaussianClosedForms) {
  for (double sigma : {0.5, 1.0, 2.0}) {
    const CMatrix b2 = gaussian_portrait(Symbol2D::b2(), sigma, lat);
    const CMatrix w2 = gaussian_portrait(Symbol2D::omega2(), sigma, lat);
    double eb = 0.0, ew = 0.0;
    for (Eigen::Index i = 16; i < 48; ++i) {
      for (Eigen::Index k = 16; k < 48; ++k) {
        const double b = lat.b_values[i], w = lat.omega_values[k];
        eb = std::max(eb, std::abs(b2(i, k) - (b * b + sigma * sigma)));
        ew = std::max(ew, std::abs(w2(i, k) - (w * w + 1 / (sigma * sigma))));
      }
    }
    EXPECT_LE(eb, 1e-6) << sigma;
    EXPECT_LE(ew, 1e-6) << sigma;
  }
}

TEST_F(Portrait, GridQuadratureAgreesWithClosedForm) {
  const auto g = UniformGrid::centered(512, 0.05);
  const CMatrix num = semiclassical_portrait(Symbol2D::b2(), make_gaussian_probe(g, 1.0), lat);
  const CMatrix ref = gaussian_portrait(Symbol2D::b2(), 1.0, lat);
  EXPECT_LE((num - ref).block(16, 16, 32, 32).cwiseAbs().maxCoeff(), 1e-6);
}

TEST_F(Portrait, ConvolutionFormMatchesGaussianPortrait) {
  const auto g = UniformGrid::centered(512, 0.05);
  const CMatrix conv = portrait_convolution_form(Symbol2D::harmonic(), ApodizationWeight::from_probe(make_gaussian_probe(g, 1.0)), lat);
  const CMatrix ref = gaussian_portrait(Symbol2D::harmonic(), 1.0, lat);
  EXPECT_LE((conv - ref).block(16, 16, 32, 32).cwiseAbs().maxCoeff(), 1e-6);
}

TEST_F(Portrait, NoClassicalLimit) {
  const auto d = classical_limit_scan(Symbol2D::harmonic(), {0.25, 1.0, 4.0}, lat);
  EXPECT_GT(d[0], d[1]);
  EXPECT_GT(d[2], d[1]);
}

}  // namespace
}  // namespace tfq
