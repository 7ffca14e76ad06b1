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
#include <sstream>

#include "tfq/error.hpp"
#include "tfq/io.hpp"

namespace tfq {
namespace {

Signal sample_signal() {
  return Signal::from_function(UniformGrid::centered(64, 0.1), [](double t) { return std::polar(std::exp(-t * t), 0.7 * t); });
}

std::size_t parse_error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    io::read_signal_csv(in);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

TEST(Fmt, RoundTripsDoubles) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) EXPECT_EQ(std::stod(io::fmt(v)), v);
}

TEST(SignalCsv, RoundTripIsBitExact) {
  const Signal s = sample_signal();
  std::stringstream buf;
  io::write_signal_csv(buf, s);
  const Signal r = io::read_signal_csv(buf);
  EXPECT_EQ(r.grid.n(), s.grid.n());
  EXPECT_NEAR(r.grid.dt(), s.grid.dt(), 1e-15);
  EXPECT_EQ(r.samples, s.samples);
}

TEST(SignalCsv, MalformedInputReportsLine) {
  EXPECT_EQ(parse_error_line("t,re,im\n0,1,0\n0.1,x,0\n"), 3u);
  EXPECT_EQ(parse_error_line("t,re,im\n0,1,0\n0.1,1\n"), 3u);
  EXPECT_EQ(parse_error_line("time,value\n"), 1u);
  // Non-uniform spacing.
  EXPECT_EQ(parse_error_line("t,re,im\n0,1,0\n0.1,1,0\n0.25,1,0\n"), 4u);
  EXPECT_THROW(io::read_signal_csv(std::filesystem::path("/nonexistent/file.csv")), ParseError);
}

TEST(OperatorFiles, CsvAndBinaryRoundTrip) {
  CMatrix m = CMatrix::Zero(5, 5);
  m(0, 0) = {1.0, -2.0};
  m(3, 1) = {1.0 / 3.0, 0.0};
  m(4, 4) = {0.0, 1e-3};
  std::stringstream csv, bin;
  io::write_operator_csv(csv, m);
  EXPECT_EQ(io::read_operator_csv(csv, 5), m);
  io::write_operator_binary(bin, m);
  EXPECT_EQ(io::read_operator_binary(bin), m);
  std::stringstream bad("NOTMAGIC........");
  EXPECT_THROW(io::read_operator_binary(bad), ParseError);
}

TEST(Pgm, HeaderAndScaling) {
  Eigen::MatrixXd img(2, 3);
  img << 0, 1, 2, 3, 4, 8;
  std::stringstream out;
  io::write_pgm(out, img);
  const std::string s = out.str();
  ASSERT_EQ(s.rfind("P5\n3 2\n255\n", 0), 0u);
  const std::string pixels = s.substr(s.size() - 6);
  EXPECT_EQ(static_cast<unsigned char>(pixels[0]), 0);
  EXPECT_EQ(static_cast<unsigned char>(pixels[5]), 255);
}

TEST(Wav, RoundTripAndPadding) {
  io::WavData w;
  w.sample_rate = 8000;
  w.samples = RVector::LinSpaced(100, -0.5, 0.5);
  std::stringstream buf;
  io::write_wav_pcm16(buf, w);
  const io::WavData r = io::read_wav_pcm16(buf);
  EXPECT_EQ(r.sample_rate, 8000u);
  ASSERT_EQ(r.samples.size(), 100);
  EXPECT_LE((r.samples - w.samples).cwiseAbs().maxCoeff(), 1.0 / 32768);
  const Signal s = io::wav_to_signal(r);
  EXPECT_EQ(s.grid.n(), 128u);
  EXPECT_DOUBLE_EQ(s.grid.dt(), 1.0 / 8000);
  EXPECT_EQ(s.samples[0], cplx{});
}

TEST(Wav, StereoNeedsDownmix) {
  // Minimal stereo PCM16 file with two frames.
  std::string d = "RIFF";
  const auto u32 = [&](std::uint32_t v) { for (int i = 0; i < 4; ++i) d.push_back(static_cast<char>((v >> (8 * i)) & 0xff)); };
  const auto u16 = [&](std::uint16_t v) { d.push_back(static_cast<char>(v & 0xff)); d.push_back(static_cast<char>(v >> 8)); };
  u32(36 + 8);
  d += "WAVEfmt ";
  u32(16); u16(1); u16(2); u32(8000); u32(8000 * 4); u16(4); u16(16);
  d += "data";
  u32(8);
  u16(16384); u16(0); u16(static_cast<std::uint16_t>(-16384)); u16(0);
  std::istringstream a(d), b(d);
  EXPECT_THROW(io::read_wav_pcm16(a), ParseError);
  const io::WavData mono = io::read_wav_pcm16(b, true);
  ASSERT_EQ(mono.samples.size(), 2);
  EXPECT_NEAR(mono.samples[0], 0.25, 1e-12);
  EXPECT_NEAR(mono.samples[1], -0.25, 1e-12);
}

TEST(SymbolCsv, BilinearSamples) {
  std::stringstream in;
  in << "b,omega,re,im\n";
  for (double b : {-1.0, 0.0, 1.0}) {
    for (double w : {-2.0, 0.0, 2.0}) in << b << ',' << w << ',' << b + w << ",0\n";
  }
  const Symbol2D f = io::read_symbol_csv(in, "table");
  EXPECT_NEAR(f(0.5, 1.0).real(), 1.5, 1e-12);
  EXPECT_EQ(f(3.0, 0.0), cplx{});
  std::stringstream hole("b,omega,re,im\n0,0,1,0\n0,1,1,0\n1,0,1,0\n");
  EXPECT_THROW(io::read_symbol_csv(hole, "hole"), ParseError);
}

}  // namespace
}  // namespace tfq
