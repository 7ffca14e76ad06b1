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

#include "suite.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "tfq/fourier.hpp"
#include "tfq/gabor.hpp"
#include "tfq/io.hpp"
#include "tfq/quantaffine.hpp"
#include "tfq/quantwh.hpp"
#include "tfq/wavelet.hpp"

namespace tfq::suite {
namespace {

constexpr double kPi = std::numbers::pi;

// Shared fixtures at the default scale (n = 512, dt = 0.05, sigma = 1),
// built on first use.
class Context {
 public:
  explicit Context(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  const UniformGrid& grid() const { return grid_; }
  const Probe& probe() {
    if (!probe_) probe_ = make_gaussian_probe(grid_, 1.0);
    return *probe_;
  }
  const TFLattice& lattice() {
    if (!lattice_) lattice_ = TFLattice::default_for(probe());
    return *lattice_;
  }
  const CMatrix& gabor(const Symbol2D& f) {
    auto it = gabor_.find(f.label());
    if (it == gabor_.end()) it = gabor_.emplace(f.label(), quantize_gabor(f, probe()).matrix()).first;
    return it->second;
  }
  const CMatrix& time_op() {
    if (!t_) t_ = time_operator(grid_).matrix();
    return *t_;
  }
  const CMatrix& freq_op() {
    if (!w_) w_ = frequency_operator(grid_).matrix();
    return *w_;
  }
  const HalfLineGrid& half_grid() const { return half_; }
  const AffineWeight& weight() {
    if (!weight_) weight_ = wavelet_weight_from_function(bump_function, half_, "wavelet:bump");
    return *weight_;
  }
  const AffineWeight& calibrated() {
    if (!calibrated_) calibrated_ = calibrate(weight());
    return *calibrated_;
  }
  const TFLattice& portrait_lattice() {
    if (!portrait_) portrait_ = symplectic_lattice(64, std::sqrt(2 * kPi / 64));
    return *portrait_;
  }

  Signal gaussian_signal() const {
    return Signal::from_function(grid_, [](double t) {
      return std::polar(std::exp(-(t - 2.0) * (t - 2.0) / 3.0), 0.7 * t);
    });
  }
  Signal chirp_signal() const {
    return Signal::from_function(grid_, [](double t) {
      return std::polar(std::exp(-t * t / 8.0), 0.5 * t * t);
    });
  }

 private:
  std::uint64_t seed_;
  UniformGrid grid_ = UniformGrid::centered(512, 0.05);
  HalfLineGrid half_{256, 0.08};
  std::optional<Probe> probe_;
  std::optional<TFLattice> lattice_;
  std::map<std::string, CMatrix> gabor_;
  std::optional<CMatrix> t_, w_;
  std::optional<AffineWeight> weight_, calibrated_;
  std::optional<TFLattice> portrait_;
};

struct Check {
  const char* name;
  int criterion;
  double tolerance;
  Compare compare;
  std::function<double(Context&)> run;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double l2_rel(const CVector& a, const CVector& b) { return (a - b).norm() / b.norm(); }

// Superposition of 1-3 Gaussian packets in the central half of the window.
Signal random_packets(const UniformGrid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> count(1, 3);
  const double half = g.span() / 4;
  const int k = count(rng);
  std::vector<std::array<double, 5>> packets;
  for (int i = 0; i < k; ++i) {
    packets.push_back({half * u(rng), 0.5 + 0.75 * (u(rng) + 1.0), 5.0 * u(rng), u(rng), u(rng)});
  }
  return Signal::from_function(g, [&](double t) {
    cplx acc{0.0, 0.0};
    for (const auto& p : packets) {
      const double x = (t - p[0]) / p[1];
      acc += cplx{p[3], p[4]} * std::polar(std::exp(-0.5 * x * x), p[2] * t);
    }
    return acc;
  });
}

double central_diag_b2(Context& c) {
  const CMatrix& a = c.gabor(Symbol2D::b2());
  const auto& g = c.grid();
  double worst = 0.0;
  for (std::size_t j = g.n() / 4; j < 3 * g.n() / 4; ++j) {
    const double t = g.t(j);
    const auto i = static_cast<Eigen::Index>(j);
    worst = std::max(worst, std::abs(a(i, i) - (t * t + 0.5)));
  }
  return worst;
}

// max |P - closed| over the central half of both lattice axes.
double portrait_interior_error(const CMatrix& p, const TFLattice& lat,
                               const std::function<double(double, double)>& closed) {
  const auto nb = static_cast<Eigen::Index>(lat.nb()), nw = static_cast<Eigen::Index>(lat.nomega());
  double worst = 0.0;
  for (Eigen::Index i = nb / 4; i < 3 * nb / 4; ++i) {
    for (Eigen::Index k = nw / 4; k < 3 * nw / 4; ++k) {
      worst = std::max(worst, std::abs(p(i, k) - closed(lat.b_values[i], lat.omega_values[k])));
    }
  }
  return worst;
}

double affine_resolution_deviation(Context& c, double ratio) {
  const auto& w = c.weight();
  const auto& g = c.half_grid();
  const ScaleGrid dense = affine_default_scales(w, g);
  const double a_max = dense.a_values()[static_cast<Eigen::Index>(dense.size() - 1)];
  const auto n = static_cast<std::size_t>(std::ceil(std::log(a_max / dense.a_min()) / std::log(ratio))) + 1;
  const LinearOperator r = affine_resolution_check(w, full_band_b_lattice(g), ScaleGrid(dense.a_min(), ratio, n), g);
  return affine_test_vector_residual(r.matrix(), CMatrix::Identity(r.matrix().rows(), r.matrix().cols()), g);
}

const std::vector<Check>& checks() {
  static const std::vector<Check> table = {
      {"plancherel", 1, 1e-10, Compare::kAtMost,
       [](Context& c) {
         std::mt19937_64 rng(c.seed());
         std::normal_distribution<double> nd;
         const auto& g = c.grid();
         const auto n = static_cast<Eigen::Index>(g.n());
         double worst = 0.0;
         for (int trial = 0; trial < 100; ++trial) {
           Spectrum sp{g, CVector::Zero(n)};
           for (Eigen::Index k = n / 2 - n / 8; k <= n / 2 + n / 8; ++k) sp.samples[k] = {nd(rng), nd(rng)};
           const Signal s = idft(sp);
           worst = std::max(worst, std::abs(dft(s).energy() / s.energy() - 1.0));
         }
         return worst;
       }},
      {"gabor_energy_gaussian", 2, 1e-6, Compare::kAtMost,
       [](Context& c) {
         const Signal s = c.gaussian_signal();
         const auto co = gabor_transform(s, c.probe(), c.lattice());
         return rel(co.values.squaredNorm() * c.lattice().weight(), s.energy());
       }},
      {"gabor_energy_chirp", 2, 1e-6, Compare::kAtMost,
       [](Context& c) {
         const Signal s = c.chirp_signal();
         const auto co = gabor_transform(s, c.probe(), c.lattice());
         return rel(co.values.squaredNorm() * c.lattice().weight(), s.energy());
       }},
      {"gabor_recon_gaussian", 2, 1e-6, Compare::kAtMost,
       [](Context& c) {
         const Signal s = c.gaussian_signal();
         const Signal r = gabor_reconstruct(gabor_transform(s, c.probe(), c.lattice()), c.probe());
         return l2_rel(r.samples, s.samples);
       }},
      {"gabor_recon_chirp", 2, 1e-4, Compare::kAtMost,
       [](Context& c) {
         const Signal s = c.chirp_signal();
         const Signal r = gabor_reconstruct(gabor_transform(s, c.probe(), c.lattice()), c.probe());
         return l2_rel(r.samples, s.samples);
       }},
      {"gabor_resolution", 3, 1e-6, Compare::kAtMost,
       [](Context&) {
         const auto g = UniformGrid::centered(256, 0.05);
         const Probe p = make_gaussian_probe(g, 1.0);
         const CMatrix r = resolution_of_identity_matrix(p, TFLattice::default_for(p)).matrix();
         return (r - CMatrix::Identity(r.rows(), r.cols())).norm() / std::sqrt(256.0);
       }},
      {"gabor_covariance", 4, 1e-8, Compare::kAtMost,
       [](Context& c) {
         const Signal s = c.gaussian_signal();
         const auto& lat = c.lattice();
         double worst = 0.0;
         for (auto [kb, kw] : {std::pair{4, 0}, {0, 4}, {4, 4}, {-2, 3}}) {
           worst = std::max(worst, covariance_check(s, c.probe(), kb * lat.db, kw * lat.domega, lat));
         }
         return worst;
       }},
      {"ccr", 5, 1e-6, Compare::kAtMost,
       [](Context& c) {
         double worst = 0.0;
         for (double sigma : {0.5, 1.0, 2.0}) {
           worst = std::max(worst, ccr_residual(make_gaussian_probe(c.grid(), sigma).base()));
         }
         return worst;
       }},
      {"uncertainty_gaussian", 5, 1e-6, Compare::kAtMost,
       [](Context& c) {
         double worst = 0.0;
         for (double sigma : {0.5, 1.0, 2.0}) {
           worst = std::max(worst, std::abs(uncertainty_product(make_gaussian_probe(c.grid(), sigma).base()) - 0.5));
         }
         return worst;
       }},
      {"uncertainty_random", 5, 0.5 * (1.0 - 1e-12), Compare::kAtLeast,
       [](Context& c) {
         std::mt19937_64 rng(c.seed() ^ 0x9e3779b97f4a7c15ULL);
         double lowest = 1e300;
         for (int trial = 0; trial < 50; ++trial) {
           lowest = std::min(lowest, uncertainty_product(random_packets(c.grid(), rng)));
         }
         return lowest;
       }},
      {"quantized_time", 6, 1e-6, Compare::kAtMost,
       [](Context& c) { return test_vector_residual(c.gabor(Symbol2D::b()), c.time_op(), c.grid()); }},
      {"quantized_frequency", 6, 1e-6, Compare::kAtMost,
       [](Context& c) { return test_vector_residual(c.gabor(Symbol2D::omega()), c.freq_op(), c.grid()); }},
      {"cst1", 6, 1e-10, Compare::kAtMost, [](Context& c) { return std::abs(measure_cst1(c.probe())); }},
      {"cst2", 6, 1e-10, Compare::kAtMost, [](Context& c) { return std::abs(measure_cst2(c.probe())); }},
      {"identity_symbol", 7, 1e-12, Compare::kAtMost,
       [](Context& c) {
         const CMatrix& a = c.gabor(Symbol2D::one());
         return (a - CMatrix::Identity(a.rows(), a.cols())).cwiseAbs().maxCoeff();
       }},
      {"b2_diagonal", 7, 1e-8, Compare::kAtMost, central_diag_b2},
      {"gaussian_autocorrelation", 7, 1e-8, Compare::kAtMost,
       [](Context& c) {
         const Signal& r = c.probe().autocorr();
         double worst = 0.0;
         for (std::size_t j = 0; j < r.size(); ++j) {
           const double t = r.grid.t(j);
           worst = std::max(worst, std::abs(r.samples[static_cast<Eigen::Index>(j)] - std::exp(-t * t / 4.0)));
         }
         return worst;
       }},
      {"frequency_route", 7, 1e-8, Compare::kAtMost,
       [](Context& c) {
         const CMatrix a = quantize_freq_symbol([](double w) { return cplx{w, 0.0}; }, c.probe()).matrix();
         const CMatrix b = quantize_freq_symbol([](double w) { return cplx{w * w, 0.0}; }, c.probe()).matrix();
         return std::max((a - c.gabor(Symbol2D::omega())).cwiseAbs().maxCoeff(),
                         (b - c.gabor(Symbol2D::omega2())).cwiseAbs().maxCoeff());
       }},
      {"portrait_oracle", 8, 1e-6, Compare::kAtMost,
       [](Context& c) {
         const auto& lat = c.portrait_lattice();
         return std::max(
             portrait_interior_error(gaussian_portrait(Symbol2D::b2(), 1.0, lat), lat,
                                     [](double b, double) { return b * b + 1.0; }),
             portrait_interior_error(gaussian_portrait(Symbol2D::omega2(), 1.0, lat), lat,
                                     [](double, double w) { return w * w + 1.0; }));
       }},
      {"portrait_b2", 8, 1e-6, Compare::kAtMost,
       [](Context& c) {
         const auto& lat = c.portrait_lattice();
         return portrait_interior_error(semiclassical_portrait(Symbol2D::b2(), c.probe(), lat), lat,
                                        [](double b, double) { return b * b + 1.0; });
       }},
      {"portrait_omega2", 8, 1e-6, Compare::kAtMost,
       [](Context& c) {
         const auto& lat = c.portrait_lattice();
         return portrait_interior_error(semiclassical_portrait(Symbol2D::omega2(), c.probe(), lat), lat,
                                        [](double, double w) { return w * w + 1.0; });
       }},
      {"no_classical_limit_narrow", 8, 1.0, Compare::kAbove,
       [](Context& c) {
         const auto d = classical_limit_scan(Symbol2D::harmonic(), {0.25, 1.0}, c.portrait_lattice());
         return d[0] / d[1];
       }},
      {"no_classical_limit_wide", 8, 1.0, Compare::kAbove,
       [](Context& c) {
         const auto d = classical_limit_scan(Symbol2D::harmonic(), {4.0, 1.0}, c.portrait_lattice());
         return d[0] / d[1];
       }},
      {"apodized_route", 9, 1e-6, Compare::kAtMost,
       [](Context& c) {
         const auto pi = ApodizationWeight::from_probe(c.probe());
         double worst = 0.0;
         for (const auto& f : {Symbol2D::one(), Symbol2D::b(), Symbol2D::omega(), Symbol2D::b2(),
                               Symbol2D::omega2(), Symbol2D::bw()}) {
           const CMatrix a = quantize_with_apodization(f, pi, c.grid()).matrix();
           worst = std::max(worst, interior_max_abs_diff(a, c.gabor(f)));
         }
         return worst;
       }},
      {"weyl_route", 9, 1e-6, Compare::kAtMost,
       [](Context& c) {
         const auto pi = ApodizationWeight::weyl();
         const CMatrix b = quantize_with_apodization(Symbol2D::b(), pi, c.grid()).matrix();
         const CMatrix w = quantize_with_apodization(Symbol2D::omega(), pi, c.grid()).matrix();
         return std::max(test_vector_residual(b, c.time_op(), c.grid()),
                         test_vector_residual(w, c.freq_op(), c.grid()));
       }},
      {"born_jordan_hermitian", 9, 1e-8, Compare::kAtMost,
       [](Context& c) {
         const auto pi = ApodizationWeight::born_jordan();
         double worst = 0.0;
         for (const auto& f : {Symbol2D::harmonic(), Symbol2D::bw(), Symbol2D::b2()}) {
           worst = std::max(worst, quantize_with_apodization(f, pi, c.grid()).hermiticity_defect());
         }
         return worst;
       }},
      {"cwt_energy", 10, 2e-2, Compare::kAtMost,
       [](Context&) {
         const auto g = UniformGrid::centered(2048, 0.025);
         const Wavelet w(mexican_hat(g));
         const Signal s = Signal::from_function(g, [](double t) { return std::polar(std::exp(-t * t / 18.0), 2.0 * t); });
         const auto co = cwt(s, w, g.times(), ScaleGrid::octaves(0.1, 5, 8));
         return rel(wavelet_energy(co, w), s.energy());
       }},
      {"cwt_inversion", 10, 1e-2, Compare::kAtMost,
       [](Context&) {
         const auto g = UniformGrid::centered(2048, 0.025);
         const Wavelet w(mexican_hat(g));
         const Signal s = Signal::from_function(g, [](double t) { return std::polar(std::exp(-t * t / 18.0), 2.0 * t); });
         const Signal r = icwt(cwt(s, w, g.times(), ScaleGrid::octaves(0.1, 5, 8)), w);
         return l2_rel(r.samples, s.samples);
       }},
      {"cpsi_homogeneity", 10, 1e-10, Compare::kAtMost,
       [](Context&) {
         const auto g = UniformGrid::centered(2048, 0.025);
         const Signal psi = mexican_hat(g).base();
         const Signal scaled(g, CVector(psi.samples * cplx{3.0, -1.0}));
         return rel(admissibility_constant(scaled), 10.0 * admissibility_constant(psi));
       }},
      {"affine_identity", 11, 2e-2, Compare::kAtMost,
       [](Context& c) {
         const CMatrix a = affine_quantize(HalfPlaneSymbol::one(), c.weight(), c.half_grid()).matrix();
         return affine_test_vector_residual(a, CMatrix::Identity(a.rows(), a.cols()), c.half_grid());
       }},
      {"affine_resolution", 11, 2e-2, Compare::kAtMost,
       [](Context& c) { return affine_resolution_deviation(c, std::pow(2.0, 1.0 / 16.0)); }},
      {"affine_refinement", 11, 1.0, Compare::kBelow,
       [](Context& c) {
         return affine_resolution_deviation(c, std::sqrt(2.0)) / affine_resolution_deviation(c, 2.0);
       }},
      {"affine_cst4", 11, 1e-3, Compare::kAtMost,
       [](Context& c) { return std::abs(measure_cst4(c.calibrated()) - 1.0); }},
      {"affine_dilation_diagonal", 11, 1e-3, Compare::kAtMost,
       [](Context& c) {
         const CMatrix a = affine_quantize(HalfPlaneSymbol::a(), c.calibrated(), c.half_grid()).matrix();
         const CVector d = a.diagonal();
         const CMatrix off = a - CMatrix(d.asDiagonal());
         const RVector x = c.half_grid().xs();
         const double slope = (x.dot(d.real())) / x.squaredNorm();
         const double fit = (d.real() - slope * x).cwiseAbs().maxCoeff() / d.cwiseAbs().maxCoeff();
         return std::max(off.norm() / d.norm(), fit);
       }},
      {"affine_derivative", 11, 1e-3, Compare::kAtMost,
       [](Context& c) {
         const CMatrix a = affine_quantize(HalfPlaneSymbol::b(), c.weight(), c.half_grid()).matrix();
         const auto vs = affine_test_vectors(c.half_grid());
         const auto ds = affine_test_vector_derivatives(c.half_grid());
         double worst = 0.0;
         for (std::size_t i = 0; i < vs.size(); ++i) {
           const CVector want = cplx{0.0, -1.0} * ds[i].samples;
           worst = std::max(worst, (a * vs[i].samples - want).norm() / vs[i].samples.norm());
         }
         return worst;
       }},
      {"affine_ccr", 11, 1e-2, Compare::kAtMost,
       [](Context& c) { return affine_ccr_check(c.calibrated(), c.half_grid()); }},
      {"affine_covariance", 11, 1e-2, Compare::kAtMost,
       [](Context& c) {
         return std::max(affine_covariance_check(HalfPlaneSymbol::one(), c.weight(), 0.5, 2.0, c.half_grid()),
                         affine_covariance_check(HalfPlaneSymbol::a(), c.weight(), 0.5, 2.0, c.half_grid()));
       }},
  };
  return table;
}

bool compare(double v, double tol, Compare cmp) {
  if (!std::isfinite(v)) return false;
  switch (cmp) {
    case Compare::kAtMost: return v <= tol;
    case Compare::kAtLeast: return v >= tol;
    case Compare::kBelow: return v < tol;
    case Compare::kAbove: return v > tol;
  }
  return false;
}

const char* op_text(Compare cmp) {
  switch (cmp) {
    case Compare::kAtMost: return "<=";
    case Compare::kAtLeast: return ">=";
    case Compare::kBelow: return "<";
    case Compare::kAbove: return ">";
  }
  return "?";
}

}  // namespace

bool Report::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

std::string Report::csv() const {
  std::ostringstream os;
  os << "check,value,tolerance,status\n";
  for (const auto& r : rows) {
    os << r.name << ',' << io::fmt(r.value) << ',' << io::fmt(r.tolerance) << ','
       << (r.pass ? "PASS" : "FAIL") << '\n';
  }
  return os.str();
}

std::string Report::summary() const {
  std::ostringstream os;
  std::size_t passed = 0;
  for (const auto& r : rows) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-4s %-28s %.3e %s %.1e", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                  r.value, op_text(r.compare), r.tolerance);
    os << buf;
    if (!r.note.empty()) os << "  (" << r.note << ')';
    os << '\n';
    passed += r.pass;
  }
  os << (pass() ? "OK" : "FAILED") << ": " << passed << '/' << rows.size() << " checks passed\n";
  return os.str();
}

std::vector<std::string> check_names() {
  std::vector<std::string> out;
  for (const auto& c : checks()) out.emplace_back(c.name);
  return out;
}

Report run(const Options& opt) {
  const auto names = check_names();
  const auto known = [&](const std::string& n) { return std::find(names.begin(), names.end(), n) != names.end(); };
  for (const auto& n : opt.only) {
    if (!known(n)) throw std::invalid_argument("unknown check '" + n + "'");
  }
  for (const auto& [n, v] : opt.tolerance_overrides) {
    if (!known(n)) throw std::invalid_argument("unknown check '" + n + "' in tolerance override");
  }
  Context ctx(opt.seed);
  Report rep;
  for (const auto& c : checks()) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), c.name) == opt.only.end()) continue;
    CheckRow row;
    row.name = c.name;
    row.criterion = c.criterion;
    row.compare = c.compare;
    const auto ov = opt.tolerance_overrides.find(c.name);
    row.tolerance = ov == opt.tolerance_overrides.end() ? c.tolerance : ov->second;
    try {
      row.value = c.run(ctx);
    } catch (const std::exception& e) {
      row.value = std::nan("");
      row.note = e.what();
    }
    row.pass = compare(row.value, row.tolerance, row.compare);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace tfq::suite
