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
#include "tfq/gabor.hpp"

namespace tfq {
namespace {

const UniformGrid kGrid = UniformGrid::centered(512, 0.05);

Signal gaussian(const UniformGrid& g, double sigma, double t0 = 0.0, double k = 0.0) {
  return Signal::from_function(g, [=](double t) {
    return std::exp(-(t - t0) * (t - t0) / (2 * sigma * sigma)) * std::polar(1.0, k * t);
  });
}

Signal chirp(const UniformGrid& g) {
  return Signal::from_function(g, [](double t) { return std::exp(-t * t / 8) * std::polar(1.0, 2 * t + 0.4 * t * t); });
}

double lattice_energy(const GaborCoeffs& c) { return c.values.squaredNorm() * c.lattice.weight(); }

TEST(TFLattice, DefaultSpacingBounds) {
  const Probe p = make_gaussian_probe(kGrid, 1.0);
  const TFLattice lat = TFLattice::default_for(p);
  EXPECT_LE(lat.db, 0.25 + 1e-12);
  EXPECT_LE(lat.domega, 0.25 + 1e-12);
  EXPECT_GE(lat.db, kGrid.dt() - 1e-12);
  EXPECT_NEAR(lat.weight(), lat.db * lat.domega / (2 * std::numbers::pi), 1e-15);
}

TEST(GaborTransform, EnergyIdentity) {
  const Probe p = make_gaussian_probe(kGrid, 1.0);
  const TFLattice lat = TFLattice::default_for(p);
  for (const Signal& s : {gaussian(kGrid, 1.3, 0.5, 1.0), chirp(kGrid)}) {
    EXPECT_LE(std::abs(lattice_energy(gabor_transform(s, p, lat)) / s.energy() - 1), 1e-6);
  }
}

TEST(GaborTransform, ReconstructionRoundTrip) {
  const Probe p = make_gaussian_probe(kGrid, 1.0);
  const TFLattice lat = TFLattice::default_for(p);
  const Signal g = gaussian(kGrid, 1.3, 0.5, 1.0);
  const Signal c = chirp(kGrid);
  EXPECT_LE((gabor_reconstruct(gabor_transform(g, p, lat), p).samples - g.samples).norm() / g.samples.norm(), 1e-6);
  EXPECT_LE((gabor_reconstruct(gabor_transform(c, p, lat), p).samples - c.samples).norm() / c.samples.norm(), 1e-4);
}

TEST(GaborTransform, CoefficientOfGaussianAtomClosedForm) {
  // <psi_{b,w}|psi> for the unit Gaussian probe: exp(-b^2/(4 s^2) - s^2 w^2/4) e^{-i w b/2}.
  const double sigma = 1.0;
  const Probe p = make_gaussian_probe(kGrid, sigma);
  const TFLattice lat = TFLattice::default_for(p);
  const GaborCoeffs c = gabor_transform(p.base(), p, lat);
  double err = 0.0;
  for (std::size_t i = 0; i < lat.nb(); i += 5) {
    for (std::size_t k = 0; k < lat.nomega(); k += 5) {
      const double b = lat.b_values[static_cast<Eigen::Index>(i)], w = lat.omega_values[static_cast<Eigen::Index>(k)];
      const cplx expect = std::exp(-b * b / (4 * sigma * sigma) - sigma * sigma * w * w / 4) * std::polar(1.0, -w * b / 2);
      err = std::max(err, std::abs(c.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) - expect));
    }
  }
  EXPECT_LE(err, 1e-9);
}

TEST(GaborTransform, EmptyLatticeHasNoCoefficients) {
  const Probe p = make_gaussian_probe(kGrid, 1.0);
  const GaborCoeffs c = gabor_transform(gaussian(kGrid, 1.0), p, TFLattice::empty());
  EXPECT_EQ(c.values.size(), 0);
}

TEST(GaborAtom, RejectsFrequenciesBeyondNyquist) {
  const Probe p = make_gaussian_probe(kGrid, 1.0);
  EXPECT_THROW(gabor_atom(p, 0.0, 1.01 * kGrid.omega_max()), Error);
  EXPECT_NEAR(gabor_atom(p, 1.0, 3.0).norm(), 1.0, 1e-12);
}

TEST(Resolution, DenseLatticeResolvesIdentity) {
  const auto g = UniformGrid::centered(256, 0.05);
  const Probe p = make_gaussian_probe(g, 1.0);
  const LinearOperator r = resolution_of_identity_matrix(p, TFLattice::default_for(p));
  const double n = static_cast<double>(g.n());
  EXPECT_LE((r.matrix() - CMatrix::Identity(r.matrix().rows(), r.matrix().cols())).norm() / std::sqrt(n), 1e-6);
}

TEST(Resolution, CoarseLatticeIsNotIdentity) {
  const auto g = UniformGrid::centered(256, 0.05);
  const Probe p = make_gaussian_probe(g, 1.0);
  const LinearOperator r = resolution_of_identity_matrix(p, TFLattice::on_grid(g, 64, 64));
  EXPECT_GT((r.matrix() - CMatrix::Identity(256, 256)).norm() / 16.0, 1e-2);
}

TEST(WHGroup, Axioms) {
  const WHGroupElement x{0.3, 1.0, -2.0}, y{-1.1, 0.5, 0.7}, z{0.2, -0.4, 1.5};
  const auto close = [](const WHGroupElement& a, const WHGroupElement& b) {
    return std::abs(a.varsigma - b.varsigma) < 1e-12 && std::abs(a.b - b.b) < 1e-12 && std::abs(a.omega - b.omega) < 1e-12;
  };
  EXPECT_TRUE(close((x * y) * z, x * (y * z)));
  EXPECT_TRUE(close(x * x.inverse(), WHGroupElement{}));
  EXPECT_TRUE(close(x.inverse() * x, WHGroupElement{}));
}

TEST(WHGroup, DisplacementRepresentsGroupLaw) {
  // Commensurate elements so that shifts and modulations are exact on the grid.
  const WHGroupElement x{0.0, 10 * kGrid.dt(), 4 * kGrid.domega()};
  const WHGroupElement y{0.0, -6 * kGrid.dt(), 7 * kGrid.domega()};
  const Signal s = gaussian(kGrid, 1.0, 0.2, 0.5);
  const Signal lhs = apply_wh_displacement(x, apply_wh_displacement(y, s));
  const Signal rhs = apply_wh_displacement(x * y, s);
  EXPECT_LE((lhs.samples - rhs.samples).norm() / s.samples.norm(), 1e-10);
}

TEST(WHGroup, MatrixMatchesActionAndIsUnitary) {
  const auto g = UniformGrid::centered(64, 0.1);
  const WHGroupElement x{0.4, 3 * g.dt(), 2 * g.domega()};
  const LinearOperator u = wh_displacement(x, g);
  EXPECT_LE((u.matrix().adjoint() * u.matrix() - CMatrix::Identity(64, 64)).norm(), 1e-10);
  const Signal s = gaussian(g, 0.5, 0.1, 1.0);
  EXPECT_LE((u.apply(s).samples - apply_wh_displacement(x, s).samples).norm(), 1e-10);
}

TEST(Covariance, MinusPhaseHoldsPlusPhaseFails) {
  const Probe p = make_gaussian_probe(kGrid, 1.0);
  const TFLattice lat = TFLattice::default_for(p);
  const Signal s = chirp(kGrid);
  const double b0 = 4 * lat.db, w0 = 3 * lat.domega;
  EXPECT_LE(covariance_check(s, p, b0, w0, lat, CovariancePhase::kMinus), 1e-8);
  EXPECT_GT(covariance_check(s, p, b0, w0, lat, CovariancePhase::kPlus), 1e-2);
}

TEST(Covariance, RejectsIncommensurateShift) {
  const Probe p = make_gaussian_probe(kGrid, 1.0);
  const TFLattice lat = TFLattice::default_for(p);
  EXPECT_THROW(covariance_check(chirp(kGrid), p, 0.37 * lat.db, 0.0, lat), Error);
}

TEST(ProbeWidth, GaussianIsSigma) {
  EXPECT_NEAR(probe_width(make_gaussian_probe(kGrid, 0.7)), 0.7, 1e-12);
}

}  // namespace
}  // namespace tfq
