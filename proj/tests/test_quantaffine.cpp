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
#include "tfq/quantaffine.hpp"
#include "tfq/wavelet.hpp"

namespace tfq {
namespace {

constexpr double kPi = std::numbers::pi;

CMatrix eye(Eigen::Index n) { return CMatrix::Identity(n, n); }

double max_over_vectors(const CMatrix& a, const std::vector<HalfLineSignal>& vs,
                        const std::vector<HalfLineSignal>& want) {
  double worst = 0.0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    worst = std::max(worst, (a * vs[i].samples - want[i].samples).norm() / vs[i].samples.norm());
  }
  return worst;
}

TEST(AffineGroup, Axioms) {
  const AffineElement x{0.3, 2.0}, y{-1.0, 0.5}, z{0.7, 3.0};
  const auto close = [](const AffineElement& a, const AffineElement& b) {
    return std::abs(a.b - b.b) < 1e-12 && std::abs(a.a - b.a) < 1e-12;
  };
  EXPECT_TRUE(close((x * y) * z, x * (y * z)));
  EXPECT_TRUE(close(x * x.inverse(), AffineElement{}));
  EXPECT_TRUE(close(x.inverse() * x, AffineElement{}));
  // Acting on points: (b, a) maps x to b + x / a.
  const auto act = [](const AffineElement& g, double p) { return g.b + p / g.a; };
  EXPECT_NEAR(act(x * y, 1.7), act(x, act(y, 1.7)), 1e-12);
}

class FineHalfLine : public ::testing::Test {
 protected:
  HalfLineGrid g{1024, 0.01};
  HalfLineSignal phi = HalfLineSignal::from_function(g, [](double x) {
    const double l = std::log(x / 1.5);
    return cplx{std::exp(-l * l / (2 * 0.25 * 0.25))};
  });
};

TEST_F(FineHalfLine, RepresentationIsUnitary) {
  for (const AffineElement& e : {AffineElement{1.5, 1.3}, AffineElement{-2.0, 0.8}}) {
    EXPECT_NEAR(affine_uir_apply(e, phi).norm() / phi.norm(), 1.0, 1e-6);
  }
}

TEST_F(FineHalfLine, RepresentationComposes) {
  const AffineElement x{1.5, 1.3}, y{-0.7, 0.9};
  const HalfLineSignal lhs = affine_uir_apply(x, affine_uir_apply(y, phi));
  const HalfLineSignal rhs = affine_uir_apply(x * y, phi);
  EXPECT_LE((lhs.samples - rhs.samples).norm() / phi.norm(), 1e-6);
  const HalfLineSignal back = affine_uir_apply(x.inverse(), affine_uir_apply(x, phi));
  EXPECT_LE((back.samples - phi.samples).norm() / phi.norm(), 1e-6);
}

TEST_F(FineHalfLine, ModulationClosedForm) {
  // Pure modulation (b, 1) multiplies by e^{ibx}.
  const HalfLineSignal out = affine_uir_apply(AffineElement{2.5, 1.0}, phi);
  for (std::size_t j = 0; j < g.m(); j += 13) {
    const auto i = static_cast<Eigen::Index>(j);
    EXPECT_NEAR(std::abs(out.samples[i] - std::polar(1.0, 2.5 * g.x(j)) * phi.samples[i]), 0.0, 1e-12);
  }
}

TEST_F(FineHalfLine, DilationOffTheGridIsRejected) {
  EXPECT_THROW(affine_uir_apply(AffineElement{0.0, 10.0}, phi), SupportError);
}

class BumpWeight : public ::testing::Test {
 protected:
  HalfLineGrid g{256, 0.08};
  AffineWeight w = wavelet_weight_from_function(bump_function, g, "bump");
};

TEST_F(BumpWeight, ResolutionConstantIsPi) {
  // 2 pi int x^3 e^{-2x} dx / 0.75 = pi.
  EXPECT_NEAR(w.c(), kPi, 1e-9);
  EXPECT_NEAR(resolution_constant(w), kPi, 1e-9);
}

TEST_F(BumpWeight, ScalingIsLinear) {
  EXPECT_NEAR(w.scaled(2.5).c(), 2.5 * w.c(), 1e-9);
}

TEST_F(BumpWeight, Cst4AndCalibration) {
  // int x^2 e^{-2x} / int x^3 e^{-2x} = (1/4) / (3/8).
  EXPECT_NEAR(measure_cst4(w), 2.0 / 3.0, 1e-8);
  EXPECT_NEAR(measure_cst4(w.dilated(2.0)), 2.0 / 3.0 / 2.0, 1e-7);
  EXPECT_NEAR(measure_cst4(calibrate(w)), 1.0, 1e-3);
  EXPECT_LE(std::abs(measure_cst3(w, g)), 1e-6);
}

TEST_F(BumpWeight, FiducialKernelSign) {
  const CMatrix m = fiducial_operator(w, g).matrix();
  const HalfLineSignal phi = bump_fiducial(g);
  const CMatrix outer = phi.samples * phi.samples.adjoint() * g.dx();
  EXPECT_LE((m - outer).cwiseAbs().maxCoeff(), 1e-8 * outer.cwiseAbs().maxCoeff());
  EXPECT_NEAR(m.trace().real(), 1.0, 1e-6);
  // The other sign reading vanishes for a weight supported on y < 0.
  EXPECT_LE(fiducial_operator(w, g, KernelSign::kPlus).matrix().cwiseAbs().maxCoeff(), 1e-14);
}

TEST_F(BumpWeight, ProbeAndFunctionWeightsAgree) {
  const AffineWeight sampled = wavelet_weight_from_probe(bump_fiducial(g));
  EXPECT_NEAR(sampled.c(), w.c(), 1e-4);
  EXPECT_NEAR(measure_cst4(sampled), measure_cst4(w), 1e-4);
}

TEST_F(BumpWeight, WeightAndTransformConsistency) {
  const auto ft = [this](double y, double a) { return w.partial_ft(y, a); };
  EXPECT_NO_THROW(AffineWeight(std::nullopt, ft, "ft-only"));
  const auto wrong = [this](double b, double a) { return 2.0 * w.weight(b, a); };
  EXPECT_THROW(AffineWeight(wrong, ft, "mismatch"), WeightError);
}

TEST(AffineWeight, ZeroOnTheRayIsNotAdmissible) {
  const auto ft = [](double y, double a) { return y > 0 ? cplx{std::exp(-y) * a} : cplx{}; };
  EXPECT_THROW(AffineWeight(std::nullopt, ft, "zero"), AdmissibilityError);
}

TEST(AffineWeight, SlowDecayFailsTailCheck) {
  // varpi_hat(-q, 1) ~ 1 / (1 + q^{0.2}) makes the dq/q integral diverge at small q.
  const auto ft = [](double y, double) { return y < 0 ? cplx{1.0 / (1.0 + std::pow(-y, 0.2))} : cplx{}; };
  EXPECT_THROW(AffineWeight(std::nullopt, ft, "slow"), AdmissibilityError);
}

TEST(AffineWeight, BridgeToWaveletAdmissibility) {
  // phi = psi_hat on x > 0 for the unit Mexican hat gives c = c_psi = (4/3) sqrt(pi).
  const double norm = std::sqrt(4.0 / (3.0 * std::sqrt(kPi)));
  const HalfLineGrid g(512, 0.02);
  const AffineWeight w = wavelet_weight_from_function(
      [norm](double x) { return cplx{norm * x * x * std::exp(-x * x / 2)}; }, g, "mexican-hat");
  EXPECT_NEAR(w.c(), 4.0 / 3.0 * std::sqrt(kPi), 1e-8);
  const Wavelet psi(mexican_hat(UniformGrid::centered(1024, 0.05)));
  EXPECT_NEAR(w.c() / psi.c_psi, 1.0, 1e-5);
}

TEST(AffineWeight, SampledTransformInterpolates) {
  // Nodes cluster at y = 0 so the linear interpolant near the origin keeps
  // the small-q tail of the resolution integral negligible.
  RVector y(41), a = RVector::LinSpaced(5, 0.5, 2.5);
  for (Eigen::Index i = 0; i < 41; ++i) y[i] = -6.0 * std::pow((40.0 - static_cast<double>(i)) / 40.0, 2);
  CMatrix v(41, 5);
  for (Eigen::Index i = 0; i < 41; ++i) {
    for (Eigen::Index k = 0; k < 5; ++k) v(i, k) = cplx{y[i] * y[i] * std::exp(y[i]) * a[k], 0.0};
  }
  const AffineWeight w = AffineWeight::from_partial_ft_samples(y, a, v, "table");
  EXPECT_NEAR(std::abs(w.partial_ft(y[3], a[2]) - v(3, 2)), 0.0, 1e-12);
  EXPECT_EQ(w.partial_ft(1.0, 1.0), cplx{});
  EXPECT_EQ(w.partial_ft(-2.0, 9.0), cplx{});
}

TEST_F(BumpWeight, DirectAssemblyMatchesClosedKernel) {
  const HalfLineGrid coarse(96, 0.08);
  const AffineWeight wc = wavelet_weight_from_function(bump_function, coarse, "bump");
  const CMatrix direct = fiducial_operator_direct(wc, coarse, full_band_b_lattice(coarse), affine_default_scales(wc, coarse)).matrix();
  const CMatrix plus = fiducial_operator(wc, coarse, KernelSign::kPlus).matrix();
  const CMatrix minus = fiducial_operator(wc, coarse).matrix();
  EXPECT_LE(affine_test_vector_residual(direct, minus, coarse), 1e-3);
  EXPECT_GT(affine_test_vector_residual(direct, plus, coarse), 0.1);
}

TEST_F(BumpWeight, ResolutionOfIdentityRefines) {
  const ScaleGrid dense = affine_default_scales(w, g);
  const double a_max = dense.a_values()[static_cast<Eigen::Index>(dense.size() - 1)];
  const auto deviation = [&](double ratio) {
    const auto n = static_cast<std::size_t>(std::ceil(std::log(a_max / dense.a_min()) / std::log(ratio))) + 1;
    const CMatrix r = affine_resolution_check(w, full_band_b_lattice(g), ScaleGrid(dense.a_min(), ratio, n), g).matrix();
    return affine_test_vector_residual(r, eye(r.rows()), g);
  };
  const double fine = deviation(std::pow(2.0, 1.0 / 16)), mid = deviation(std::sqrt(2.0)), coarse = deviation(2.0);
  EXPECT_LE(fine, 2e-2);
  EXPECT_LT(mid, coarse);
  EXPECT_LE(fine, mid);
  EXPECT_EQ(affine_resolution_check(w, RVector(), dense, g).matrix().cwiseAbs().maxCoeff(), 0.0);
}

TEST_F(BumpWeight, IdentitySymbol) {
  const CMatrix a = affine_quantize(HalfPlaneSymbol::one(), w, g).matrix();
  EXPECT_LE(affine_test_vector_residual(a, eye(a.rows()), g), 2e-2);
}

TEST_F(BumpWeight, DilationSymbolIsDiagonalAndLinear) {
  // A_a = diag(x Cst4): exactly x after calibration.
  const CMatrix raw = affine_quantize(HalfPlaneSymbol::a(), w, g).matrix();
  const CMatrix cal = affine_quantize(HalfPlaneSymbol::a(), calibrate(w), g).matrix();
  EXPECT_EQ((raw - CMatrix(raw.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 0.0);
  for (std::size_t j = 20; j < 120; ++j) {
    const auto i = static_cast<Eigen::Index>(j);
    EXPECT_NEAR(raw(i, i).real(), 2.0 / 3.0 * g.x(j), 1e-3 * g.x(j));
    EXPECT_NEAR(cal(i, i).real(), g.x(j), 1e-3 * g.x(j));
  }
}

TEST_F(BumpWeight, MomentumSymbolIsDerivative) {
  const CMatrix a = affine_quantize(HalfPlaneSymbol::b(), w, g).matrix();
  auto want = affine_test_vector_derivatives(g);
  for (auto& d : want) d.samples *= cplx{0.0, -1.0};
  EXPECT_LE(max_over_vectors(a, affine_test_vectors(g), want), 1e-3);
  EXPECT_LE((a - a.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST_F(BumpWeight, WeakCommutationRelation) {
  const AffineWeight cal = calibrate(w);
  EXPECT_LE(affine_ccr_check(cal, g), 1e-2);
  const cplx s = affine_commutator_scalar(cal, g);
  EXPECT_NEAR(s.real(), 1.0, 1e-2);
}

TEST_F(BumpWeight, Covariance) {
  for (const HalfPlaneSymbol& f : {HalfPlaneSymbol::one(), HalfPlaneSymbol::a()}) {
    EXPECT_LE(affine_covariance_check(f, w, 0.5, 2.0, g), 1e-2) << f.label();
    EXPECT_LE(affine_covariance_check(f, w, 0.0, 0.5, g), 1e-2) << f.label();
  }
}

TEST_F(BumpWeight, GeneralSymbolRoute) {
  // f(b, a) = e^{-b^2/2} g(a): f_hat(y, a) = e^{-y^2/2} g(a).
  const auto ga = [](double a) { return std::exp(-(a - 1) * (a - 1)); };
  const HalfPlaneSymbol f([ga](double b, double a) { return cplx{std::exp(-b * b / 2) * ga(a)}; },
                          [ga](double y, double a) { return cplx{std::exp(-y * y / 2) * ga(a)}; }, "gauss");
  const LinearOperator a = affine_quantize(f, w, g);
  EXPECT_LE(a.hermiticity_defect(), 1e-8);
  EXPECT_THROW(HalfPlaneSymbol([](double, double) { return cplx{1.0}; },
                               [](double y, double) { return cplx{std::exp(-y * y)}; }, "bad"),
               SymbolError);
}

TEST(HalfPlaneSymbol, TransformRule) {
  const AffineElement g0{0.5, 2.0};
  for (const HalfPlaneSymbol& f : {HalfPlaneSymbol::one(), HalfPlaneSymbol::a(), HalfPlaneSymbol::b()}) {
    const HalfPlaneSymbol t = f.transformed(g0);
    for (double b : {-1.0, 0.3}) {
      for (double a : {0.5, 3.0}) {
        EXPECT_NEAR(std::abs(t(b, a) - f(g0.a * (b - g0.b), a / g0.a)), 0.0, 1e-12) << f.label();
      }
    }
  }
}

TEST(SincDerivative, AntisymmetricAndAccurate) {
  const HalfLineGrid g(400, 0.05);
  const CMatrix d = sinc_derivative(g);
  EXPECT_LE((d + d.transpose()).cwiseAbs().maxCoeff(), 0.0);
  const auto f = HalfLineSignal::from_function(g, [](double x) { return cplx{std::exp(-(x - 10) * (x - 10))}; });
  const CVector df = d * f.samples;
  double err = 0.0;
  for (std::size_t j = 0; j < g.m(); ++j) {
    const double x = g.x(j);
    err = std::max(err, std::abs(df[static_cast<Eigen::Index>(j)] - (-2 * (x - 10) * std::exp(-(x - 10) * (x - 10)))));
  }
  EXPECT_LE(err, 1e-8);
}

}  // namespace
}  // namespace tfq
