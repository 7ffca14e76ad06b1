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

#include "tfq/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <vector>

#include "tfq/error.hpp"

namespace tfq::io {
namespace {

constexpr std::array<char, 8> kOpMagic = {'T', 'F', 'Q', 'O', 'P', '1', '\0', '\0'};

std::string trim(std::string s) {
  const auto issp = [](unsigned char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && issp(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && issp(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || s.empty()) {
    throw ParseError("not a number: '" + s + "'", line);
  }
  if (!std::isfinite(v)) throw ParseError("non-finite value: '" + s + "'", line);
  return v;
}

// Rows of `ncol` numbers after a header that must equal `header`.
std::vector<std::vector<double>> read_table(std::istream& in, const std::vector<std::string>& header) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    auto fields = split(t);
    if (!have_header) {
      if (fields != header) {
        std::string want;
        for (const auto& h : header) want += (want.empty() ? "" : ",") + h;
        throw ParseError("expected header '" + want + "'", lineno);
      }
      have_header = true;
      continue;
    }
    if (fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                           std::to_string(fields.size()),
                       lineno);
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_double(f, lineno));
    rows.push_back(std::move(row));
  }
  if (!have_header) throw ParseError("empty file", lineno);
  if (rows.empty()) throw ParseError("no data rows", lineno);
  return rows;
}

std::ifstream open_in(const std::filesystem::path& p, bool binary = false) {
  std::ifstream f(p, binary ? std::ios::binary : std::ios::in);
  if (!f) throw ParseError("cannot open '" + p.string() + "'", 0);
  return f;
}

// Sorted unique values; rows are then indexed by exact match.
std::vector<double> unique_sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void check_uniform(const std::vector<double>& v, const char* what) {
  if (v.size() < 2) return;
  const double d = v[1] - v[0];
  for (std::size_t i = 2; i < v.size(); ++i) {
    if (std::abs(v[i] - v[i - 1] - d) > 1e-9 * std::abs(d)) {
      throw ParseError(std::string(what) + " values are not uniformly spaced", 0);
    }
  }
}

// Samples (col0, col1) -> complex on a full rectangle.
struct Rect {
  std::vector<double> u, v;
  CMatrix values;
};

Rect to_rect(const std::vector<std::vector<double>>& rows, const char* what) {
  std::vector<double> us, vs;
  for (const auto& r : rows) {
    us.push_back(r[0]);
    vs.push_back(r[1]);
  }
  Rect out{unique_sorted(us), unique_sorted(vs), {}};
  const auto nu = static_cast<Eigen::Index>(out.u.size());
  const auto nv = static_cast<Eigen::Index>(out.v.size());
  if (rows.size() != static_cast<std::size_t>(nu * nv)) {
    throw ParseError(std::string(what) + ": samples do not fill a rectangular lattice", 0);
  }
  out.values = CMatrix::Constant(nu, nv, cplx{std::nan(""), 0.0});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto iu = std::lower_bound(out.u.begin(), out.u.end(), rows[i][0]) - out.u.begin();
    const auto iv = std::lower_bound(out.v.begin(), out.v.end(), rows[i][1]) - out.v.begin();
    if (!std::isnan(out.values(iu, iv).real())) {
      throw ParseError(std::string(what) + ": duplicate lattice node", i + 2);
    }
    out.values(iu, iv) = {rows[i][2], rows[i][3]};
  }
  return out;
}

RVector to_rvector(const std::vector<double>& v) {
  return Eigen::Map<const RVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

template <class T>
void put_le(std::ostream& out, T v) {
  static_assert(std::endian::native == std::endian::little, "little-endian host required");
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get_le(std::istream& in, const char* what) {
  static_assert(std::endian::native == std::endian::little, "little-endian host required");
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) {
    throw ParseError(std::string("truncated ") + what, 0);
  }
  return v;
}

}  // namespace

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Signal read_signal_csv(std::istream& in) {
  const auto rows = read_table(in, {"t", "re", "im"});
  if (rows.size() < 2) throw ParseError("signal needs at least two samples", 2);
  const double t0 = rows[0][0];
  const double dt = rows[1][0] - t0;
  if (!(dt > 0.0)) throw ParseError("times must increase", 3);
  CVector s(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (j > 0 && std::abs(rows[j][0] - rows[j - 1][0] - dt) > 1e-9 * dt) {
      throw ParseError("non-uniform time spacing", j + 2);
    }
    s[static_cast<Eigen::Index>(j)] = {rows[j][1], rows[j][2]};
  }
  return Signal(UniformGrid(rows.size(), t0, dt), std::move(s));
}

Signal read_signal_csv(const std::filesystem::path& path) {
  auto f = open_in(path);
  return read_signal_csv(f);
}

void write_signal_csv(std::ostream& out, const Signal& s) {
  out << "t,re,im\n";
  for (std::size_t j = 0; j < s.size(); ++j) {
    const cplx v = s.samples[static_cast<Eigen::Index>(j)];
    out << fmt(s.grid.t(j)) << ',' << fmt(v.real()) << ',' << fmt(v.imag()) << '\n';
  }
}

void write_signal_csv(const std::filesystem::path& path, const Signal& s) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write '" + path.string() + "'");
  write_signal_csv(f, s);
}

void write_half_line_csv(std::ostream& out, const HalfLineSignal& s) {
  out << "x,re,im\n";
  for (std::size_t j = 0; j < s.grid.m(); ++j) {
    const cplx v = s.samples[static_cast<Eigen::Index>(j)];
    out << fmt(s.grid.x(j)) << ',' << fmt(v.real()) << ',' << fmt(v.imag()) << '\n';
  }
}

void write_operator_csv(std::ostream& out, const CMatrix& m) {
  out << "row,col,re,im\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      const cplx v = m(i, k);
      if (std::abs(v) > 1e-14) {
        out << i << ',' << k << ',' << fmt(v.real()) << ',' << fmt(v.imag()) << '\n';
      }
    }
  }
}

CMatrix read_operator_csv(std::istream& in, std::size_t n) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto fields = split(t);
    if (!have_header) {
      if (fields != std::vector<std::string>{"row", "col", "re", "im"}) {
        throw ParseError("expected header 'row,col,re,im'", lineno);
      }
      have_header = true;
      continue;
    }
    if (fields.size() != 4) throw ParseError("expected 4 fields", lineno);
    const double r = parse_double(fields[0], lineno);
    const double c = parse_double(fields[1], lineno);
    if (r < 0 || c < 0 || r >= static_cast<double>(n) || c >= static_cast<double>(n) ||
        r != std::floor(r) || c != std::floor(c)) {
      throw ParseError("index out of range", lineno);
    }
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = {parse_double(fields[2], lineno),
                                                                     parse_double(fields[3], lineno)};
  }
  if (!have_header) throw ParseError("empty file", lineno);
  return m;
}

void write_operator_binary(std::ostream& out, const CMatrix& m) {
  if (m.rows() != m.cols()) throw Error("write_operator_binary: matrix must be square");
  out.write(kOpMagic.data(), kOpMagic.size());
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      put_le<double>(out, m(i, k).real());
      put_le<double>(out, m(i, k).imag());
    }
  }
}

CMatrix read_operator_binary(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kOpMagic) {
    throw ParseError("bad operator magic", 0);
  }
  const auto n = get_le<std::uint64_t>(in, "operator header");
  if (n > (1u << 16)) throw ParseError("operator dimension too large", 0);
  const auto ni = static_cast<Eigen::Index>(n);
  CMatrix m(ni, ni);
  for (Eigen::Index i = 0; i < ni; ++i) {
    for (Eigen::Index k = 0; k < ni; ++k) {
      const double re = get_le<double>(in, "operator body");
      const double im = get_le<double>(in, "operator body");
      m(i, k) = {re, im};
    }
  }
  return m;
}

void write_pgm(std::ostream& out, const Eigen::MatrixXd& image) {
  const double peak = image.size() ? image.maxCoeff() : 0.0;
  out << "P5\n" << image.cols() << ' ' << image.rows() << "\n255\n";
  for (Eigen::Index r = 0; r < image.rows(); ++r) {
    for (Eigen::Index c = 0; c < image.cols(); ++c) {
      const double v = peak > 0.0 ? std::clamp(image(r, c) / peak, 0.0, 1.0) : 0.0;
      out.put(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * v))));
    }
  }
}

void write_spectrogram_csv(std::ostream& out, const GaborCoeffs& c) {
  out << "b,omega,re,im,abs2\n";
  for (Eigen::Index i = 0; i < c.values.rows(); ++i) {
    for (Eigen::Index k = 0; k < c.values.cols(); ++k) {
      const cplx v = c.values(i, k);
      out << fmt(c.lattice.b_values[i]) << ',' << fmt(c.lattice.omega_values[k]) << ','
          << fmt(v.real()) << ',' << fmt(v.imag()) << ',' << fmt(std::norm(v)) << '\n';
    }
  }
}

void write_spectrogram_pgm(std::ostream& out, const GaborCoeffs& c) {
  const auto nb = c.values.rows(), nw = c.values.cols();
  Eigen::MatrixXd img(nw, nb);
  for (Eigen::Index k = 0; k < nw; ++k) {
    for (Eigen::Index i = 0; i < nb; ++i) img(nw - 1 - k, i) = std::norm(c.values(i, k));
  }
  write_pgm(out, img);
}

void write_scalogram_csv(std::ostream& out, const WaveletCoeffs& c) {
  out << "b,a,re,im,abs2\n";
  const RVector& a = c.scales.a_values();
  for (Eigen::Index i = 0; i < c.values.rows(); ++i) {
    for (Eigen::Index k = 0; k < c.values.cols(); ++k) {
      const cplx v = c.values(i, k);
      out << fmt(c.b_values[i]) << ',' << fmt(a[k]) << ',' << fmt(v.real()) << ',' << fmt(v.imag())
          << ',' << fmt(std::norm(v)) << '\n';
    }
  }
}

void write_scalogram_pgm(std::ostream& out, const WaveletCoeffs& c) {
  const auto nb = c.values.rows(), na = c.values.cols();
  Eigen::MatrixXd img(na, nb);
  for (Eigen::Index k = 0; k < na; ++k) {
    for (Eigen::Index i = 0; i < nb; ++i) img(na - 1 - k, i) = std::norm(c.values(i, k));
  }
  write_pgm(out, img);
}

WavData read_wav_pcm16(std::istream& in, bool downmix) {
  std::array<char, 4> id{};
  const auto read_id = [&](const char* what) {
    if (!in.read(id.data(), 4)) throw ParseError(std::string("truncated WAV ") + what, 0);
    return std::string(id.data(), 4);
  };
  if (read_id("header") != "RIFF") throw ParseError("not a RIFF file", 0);
  get_le<std::uint32_t>(in, "WAV header");
  if (read_id("header") != "WAVE") throw ParseError("not a WAVE file", 0);
  std::uint16_t channels = 0, bits = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  for (;;) {
    const std::string chunk = read_id("chunk");
    const auto size = get_le<std::uint32_t>(in, "chunk size");
    if (chunk == "fmt ") {
      if (size < 16) throw ParseError("short fmt chunk", 0);
      const auto format = get_le<std::uint16_t>(in, "fmt chunk");
      channels = get_le<std::uint16_t>(in, "fmt chunk");
      rate = get_le<std::uint32_t>(in, "fmt chunk");
      get_le<std::uint32_t>(in, "fmt chunk");
      get_le<std::uint16_t>(in, "fmt chunk");
      bits = get_le<std::uint16_t>(in, "fmt chunk");
      in.ignore(size - 16 + (size & 1));
      if (format != 1 || bits != 16) throw ParseError("only PCM 16-bit WAV is supported", 0);
      if (channels == 0 || rate == 0) throw ParseError("invalid WAV format fields", 0);
      if (channels > 1 && !downmix) {
        throw ParseError("WAV has " + std::to_string(channels) +
                             " channels; only mono is supported (use --downmix to average channels)",
                         0);
      }
      have_fmt = true;
    } else if (chunk == "data") {
      if (!have_fmt) throw ParseError("WAV data chunk before fmt chunk", 0);
      const std::size_t frames = size / (2u * channels);
      if (frames == 0) throw ParseError("WAV has no samples", 0);
      WavData w;
      w.sample_rate = rate;
      w.samples.resize(static_cast<Eigen::Index>(frames));
      for (std::size_t f = 0; f < frames; ++f) {
        double acc = 0.0;
        for (std::uint16_t c = 0; c < channels; ++c) acc += get_le<std::int16_t>(in, "WAV samples");
        w.samples[static_cast<Eigen::Index>(f)] = acc / channels / 32768.0;
      }
      return w;
    } else {
      in.ignore(size + (size & 1));
      if (!in) throw ParseError("truncated WAV chunk '" + chunk + "'", 0);
    }
  }
}

WavData read_wav_pcm16(const std::filesystem::path& path, bool downmix) {
  auto f = open_in(path, true);
  return read_wav_pcm16(f, downmix);
}

void write_wav_pcm16(std::ostream& out, const WavData& w) {
  const auto n = static_cast<std::uint32_t>(w.samples.size());
  out.write("RIFF", 4);
  put_le<std::uint32_t>(out, 36 + 2 * n);
  out.write("WAVEfmt ", 8);
  put_le<std::uint32_t>(out, 16);
  put_le<std::uint16_t>(out, 1);
  put_le<std::uint16_t>(out, 1);
  put_le<std::uint32_t>(out, w.sample_rate);
  put_le<std::uint32_t>(out, 2 * w.sample_rate);
  put_le<std::uint16_t>(out, 2);
  put_le<std::uint16_t>(out, 16);
  out.write("data", 4);
  put_le<std::uint32_t>(out, 2 * n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const double v = std::clamp(w.samples[i], -1.0, 32767.0 / 32768.0);
    put_le<std::int16_t>(out, static_cast<std::int16_t>(std::lround(v * 32768.0)));
  }
}

Signal wav_to_signal(const WavData& w) {
  if (w.sample_rate == 0 || w.samples.size() == 0) throw Error("wav_to_signal: empty WAV data");
  const auto len = static_cast<std::size_t>(w.samples.size());
  const std::size_t n = std::bit_ceil(std::max<std::size_t>(len, 2));
  const std::size_t offset = (n - len) / 2;
  CVector s = CVector::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < len; ++j) {
    s[static_cast<Eigen::Index>(offset + j)] = w.samples[static_cast<Eigen::Index>(j)];
  }
  return Signal(UniformGrid::centered(n, 1.0 / w.sample_rate), std::move(s));
}

Symbol2D read_symbol_csv(std::istream& in, std::string label) {
  const Rect r = to_rect(read_table(in, {"b", "omega", "re", "im"}), "symbol");
  if (r.u.size() < 2 || r.v.size() < 2) throw ParseError("symbol lattice needs at least 2x2 nodes", 0);
  check_uniform(r.u, "b");
  check_uniform(r.v, "omega");
  TFLattice lat;
  lat.b_values = to_rvector(r.u);
  lat.omega_values = to_rvector(r.v);
  lat.db = r.u[1] - r.u[0];
  lat.domega = r.v[1] - r.v[0];
  return Symbol2D::from_samples(lat, r.values, std::move(label));
}

Symbol2D read_symbol_csv(const std::filesystem::path& path) {
  auto f = open_in(path);
  return read_symbol_csv(f, "csv:" + path.filename().string());
}

AffineWeight read_weight_csv(std::istream& in, std::string label) {
  const Rect r = to_rect(read_table(in, {"y", "a", "re", "im"}), "weight");
  if (r.u.size() < 2 || r.v.size() < 2) throw ParseError("weight lattice needs at least 2x2 nodes", 0);
  return AffineWeight::from_partial_ft_samples(to_rvector(r.u), to_rvector(r.v), r.values,
                                               std::move(label));
}

AffineWeight read_weight_csv(const std::filesystem::path& path) {
  auto f = open_in(path);
  return read_weight_csv(f, "custom:" + path.filename().string());
}

}  // namespace tfq::io
