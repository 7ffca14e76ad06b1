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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "suite.hpp"
#include "tfq/error.hpp"
#include "tfq/fourier.hpp"
#include "tfq/gabor.hpp"
#include "tfq/io.hpp"
#include "tfq/quantaffine.hpp"
#include "tfq/quantwh.hpp"
#include "tfq/wavelet.hpp"

namespace tfq::cli {
namespace fs = std::filesystem;
namespace {

const char* const kWhSymbols = "one, b, omega, b2, omega2, bw, harmonic, or a .csv path";
const char* const kRoutes = "gabor, weyl, born-jordan, apodized:<probe>, affine:<weight>";

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double number(const std::string& what, const std::string& v) {
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw UsageError(what + ": not a number: '" + v + "'");
  return d;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

UniformGrid grid_from(const RunConfig& cfg) {
  const auto n = static_cast<std::size_t>(cfg.get_u64("grid.n", 512));
  const double dt = cfg.get_double("grid.dt", 0.05);
  if (cfg.has("grid.t0")) return UniformGrid(n, cfg.get_double("grid.t0", 0.0), dt);
  return UniformGrid::centered(n, dt);
}

// gaussian[:sigma], mexican-hat[:sigma], morlet[:omega0[:sigma]].
Probe probe_from(const std::string& spec, const UniformGrid& g) {
  const auto p = split(spec, ':');
  const auto arg = [&](std::size_t i, double fallback) {
    return p.size() > i ? number("probe '" + spec + "'", p[i]) : fallback;
  };
  if (p.empty()) throw UsageError("empty probe name");
  if (p[0] == "gaussian") return make_gaussian_probe(g, arg(1, 1.0));
  if (p[0] == "mexican-hat") return mexican_hat(g, arg(1, 1.0));
  if (p[0] == "morlet") return morlet(g, arg(1, 6.0), arg(2, 1.0));
  throw UsageError("unknown probe '" + spec + "'; valid: gaussian[:sigma], mexican-hat[:sigma], morlet[:omega0[:sigma]]");
}

Symbol2D wh_symbol(const std::string& name) {
  if (name.empty()) throw UsageError(std::string("no symbol given; valid: ") + kWhSymbols);
  if (ends_with(name, ".csv")) return io::read_symbol_csv(fs::path(name));
  try {
    return Symbol2D::builtin(name);
  } catch (const SymbolError&) {
    throw UsageError("unknown symbol '" + name + "'; valid: " + kWhSymbols);
  }
}

HalfPlaneSymbol affine_symbol(const std::string& name) {
  if (name == "one") return HalfPlaneSymbol::one();
  if (name == "a") return HalfPlaneSymbol::a();
  if (name == "b") return HalfPlaneSymbol::b();
  throw UsageError("unknown affine symbol '" + name + "'; valid: one, a, b");
}

// wavelet:bump, wavelet:mexican-hat, custom:<csv>.
AffineWeight affine_weight(const std::string& spec, const HalfLineGrid& g) {
  if (spec == "wavelet:bump") return wavelet_weight_from_function(bump_function, g, spec);
  if (spec == "wavelet:mexican-hat") {
    // Positive-frequency half of the Mexican hat spectrum, normalized on x > 0.
    const double c = std::sqrt(8.0 / (3.0 * std::sqrt(std::numbers::pi)));
    return wavelet_weight_from_function(
        [c](double x) { return cplx{c * x * x * std::exp(-0.5 * x * x), 0.0}; }, g, spec);
  }
  if (spec.rfind("custom:", 0) == 0) return io::read_weight_csv(fs::path(spec.substr(7)));
  throw UsageError("unknown affine weight '" + spec + "'; valid: wavelet:bump, wavelet:mexican-hat, custom:<csv>");
}

fs::path out_dir(const RunConfig& cfg) {
  fs::path dir = cfg.get("out", "tfq-out");
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_out(const fs::path& p, bool binary = false) {
  std::ofstream f(p, binary ? std::ios::binary | std::ios::out : std::ios::out);
  if (!f) throw Error("cannot write '" + p.string() + "'");
  return f;
}

Signal load_signal(const RunConfig& cfg) {
  const std::string in = cfg.get("input", "");
  if (in.empty()) throw UsageError("no input signal given (--input)");
  std::string lower = in;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ends_with(lower, ".wav")) return io::wav_to_signal(io::read_wav_pcm16(fs::path(in), cfg.get_bool("downmix", false)));
  return io::read_signal_csv(fs::path(in));
}

void write_operator_files(const fs::path& dir, const CMatrix& m) {
  auto csv = open_out(dir / "operator.csv");
  io::write_operator_csv(csv, m);
  auto bin = open_out(dir / "operator.bin", true);
  io::write_operator_binary(bin, m);
}

}  // namespace

int cmd_analyze(const RunConfig& cfg, std::ostream& log) {
  const Signal s = load_signal(cfg);
  const fs::path dir = out_dir(cfg);
  const std::string transform = cfg.get("transform", "gabor");
  if (transform == "gabor") {
    const Probe p = probe_from(cfg.get("probe", "gaussian:1"), s.grid);
    const auto bs = cfg.get_u64("lattice.b_stride", 0), ws = cfg.get_u64("lattice.omega_stride", 0);
    TFLattice lat = TFLattice::default_for(p);
    if (bs || ws) {
      lat = TFLattice::on_grid(s.grid, bs ? bs : static_cast<std::size_t>(std::lround(lat.db / s.grid.dt())),
                               ws ? ws : static_cast<std::size_t>(std::lround(lat.domega / s.grid.domega())));
    }
    const GaborCoeffs c = gabor_transform(s, p, lat);
    auto csv = open_out(dir / "spectrogram.csv");
    io::write_spectrogram_csv(csv, c);
    auto pgm = open_out(dir / "spectrogram.pgm", true);
    io::write_spectrogram_pgm(pgm, c);
    const double e = c.values.squaredNorm() * lat.weight();
    log << "transform gabor, lattice " << lat.nb() << " x " << lat.nomega() << '\n';
    log << "energy residual " << io::fmt(std::abs(e / s.energy() - 1.0)) << '\n';
    return kOk;
  }
  if (transform == "cwt") {
    const Wavelet w(probe_from(cfg.get("wavelet", "mexican-hat"), s.grid));
    const double width = w.rms_width();
    const double a_min = cfg.get_double("scales.a_min", 4.0 * s.grid.dt() / width * (1.0 + 1e-9));
    const auto voices = static_cast<std::size_t>(cfg.get_u64("scales.voices", 8));
    double octaves = cfg.get_double("scales.octaves", 5.0);
    const double room = std::log2(s.grid.span() / 8.0 / (width * a_min));
    if (octaves > room) {
      octaves = std::floor(room * static_cast<double>(voices)) / static_cast<double>(voices);
      log << "scale range capped at " << io::fmt(octaves) << " octaves by the window length\n";
    }
    const ScaleGrid scales = ScaleGrid::octaves(a_min, octaves, voices);
    const auto stride = static_cast<Eigen::Index>(std::max<std::uint64_t>(1, cfg.get_u64("cwt.b_stride", 1)));
    const RVector t = s.grid.times();
    RVector b((t.size() + stride - 1) / stride);
    for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = t[i * stride];
    const WaveletCoeffs c = cwt(s, w, b, scales);
    auto csv = open_out(dir / "scalogram.csv");
    io::write_scalogram_csv(csv, c);
    auto pgm = open_out(dir / "scalogram.pgm", true);
    io::write_scalogram_pgm(pgm, c);
    log << "transform cwt, " << b.size() << " shifts x " << scales.size() << " scales\n";
    log << "energy residual " << io::fmt(std::abs(wavelet_energy(c, w) / s.energy() - 1.0)) << '\n';
    return kOk;
  }
  throw UsageError("unknown transform '" + transform + "'; valid: gabor, cwt");
}

int cmd_quantize(const RunConfig& cfg, std::ostream& log) {
  const std::string route = cfg.get("route", "gabor");
  const std::string name = cfg.get("symbol", "");
  const fs::path dir = out_dir(cfg);
  if (route.rfind("affine:", 0) == 0) {
    const HalfPlaneSymbol f = affine_symbol(name);
    const HalfLineGrid g(static_cast<std::size_t>(cfg.get_u64("affine.m", 256)), cfg.get_double("affine.dx", 0.08));
    AffineWeight w = affine_weight(route.substr(7), g);
    if (cfg.get_bool("affine.calibrate", false)) w = calibrate(w);
    if (cfg.has("apply")) throw UsageError("--apply is only available for time-frequency routes");
    const LinearOperator a = affine_quantize(f, w, g);
    write_operator_files(dir, a.matrix());
    log << "route " << route << ", symbol " << f.label() << ", dimension " << a.size() << '\n';
    log << "resolution constant " << io::fmt(w.c()) << ", Cst4 " << io::fmt(measure_cst4(w)) << '\n';
    log << "hermiticity defect " << io::fmt(a.hermiticity_defect()) << '\n';
    if (name == "one") {
      const CMatrix id = CMatrix::Identity(a.matrix().rows(), a.matrix().cols());
      log << "identity deviation " << io::fmt(affine_test_vector_residual(a.matrix(), id, g)) << '\n';
    }
    return kOk;
  }
  const Symbol2D f = wh_symbol(name);
  const UniformGrid g = grid_from(cfg);
  std::optional<LinearOperator> a;
  if (route == "gabor") {
    a = quantize_gabor(f, probe_from(cfg.get("probe", "gaussian:1"), g));
  } else if (route == "weyl") {
    a = quantize_with_apodization(f, ApodizationWeight::weyl(), g);
  } else if (route == "born-jordan") {
    a = quantize_with_apodization(f, ApodizationWeight::born_jordan(), g);
  } else if (route.rfind("apodized:", 0) == 0) {
    a = quantize_with_apodization(f, ApodizationWeight::from_probe(probe_from(route.substr(9), g)), g);
  } else {
    throw UsageError("unknown route '" + route + "'; valid: " + kRoutes);
  }
  write_operator_files(dir, a->matrix());
  log << "route " << route << ", symbol " << f.label() << ", dimension " << a->size() << '\n';
  log << "hermiticity defect " << io::fmt(a->hermiticity_defect()) << '\n';
  if (cfg.has("apply")) {
    const Signal s = io::read_signal_csv(fs::path(cfg.get("apply", "")));
    if (!(s.grid == g)) throw UsageError("--apply signal grid differs from the operator grid");
    auto out = open_out(dir / "action.csv");
    io::write_signal_csv(out, a->apply(s));
    log << "wrote action on " << cfg.get("apply", "") << '\n';
  }
  return kOk;
}

int cmd_portrait(const RunConfig& cfg, std::ostream& log) {
  const Symbol2D f = wh_symbol(cfg.get("symbol", ""));
  const UniformGrid g = grid_from(cfg);
  const auto n = static_cast<std::size_t>(cfg.get_u64("portrait.n", 64));
  const double db = cfg.get_double("portrait.db", std::sqrt(2.0 * std::numbers::pi / static_cast<double>(n)));
  const TFLattice lat = symplectic_lattice(n, db);
  const auto sigmas = cfg.get_doubles("sigmas", {0.25, 0.5, 1.0, 2.0});
  const fs::path dir = out_dir(cfg);
  for (double sigma : sigmas) {
    const CMatrix p = semiclassical_portrait(f, make_gaussian_probe(g, sigma), lat);
    const std::string stem = "portrait_sigma_" + io::fmt(sigma);
    auto csv = open_out(dir / (stem + ".csv"));
    csv << "b,omega,re,im\n";
    Eigen::MatrixXd img(p.cols(), p.rows());
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      for (Eigen::Index k = 0; k < p.cols(); ++k) {
        csv << io::fmt(lat.b_values[i]) << ',' << io::fmt(lat.omega_values[k]) << ',' << io::fmt(p(i, k).real())
            << ',' << io::fmt(p(i, k).imag()) << '\n';
        img(p.cols() - 1 - k, i) = std::abs(p(i, k));
      }
    }
    auto pgm = open_out(dir / (stem + ".pgm"), true);
    io::write_pgm(pgm, img);
  }
  const auto d = classical_limit_scan(f, sigmas, lat);
  auto table = open_out(dir / "d_table.csv");
  table << "sigma,d\n";
  log << "sigma        d(sigma)\n";
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    table << io::fmt(sigmas[i]) << ',' << io::fmt(d[i]) << '\n';
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-12g %.6e\n", sigmas[i], d[i]);
    log << buf;
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& log) {
  suite::Options opt;
  opt.seed = cfg.get_u64("seed", opt.seed);
  opt.tolerance_overrides = cfg.tolerances();
  for (const auto& name : split(cfg.get("only", ""), ',')) {
    if (!name.empty()) opt.only.push_back(name);
  }
  suite::Report rep;
  try {
    rep = suite::run(opt);
  } catch (const std::invalid_argument& e) {
    std::string names;
    for (const auto& n : suite::check_names()) names += (names.empty() ? "" : ", ") + n;
    throw UsageError(std::string(e.what()) + "; valid: " + names);
  }
  const fs::path dir = out_dir(cfg);
  auto csv = open_out(dir / "report.csv");
  csv << rep.csv();
  log << rep.summary();
  return rep.pass() ? kOk : kVerifyFailed;
}

}  // namespace tfq::cli
