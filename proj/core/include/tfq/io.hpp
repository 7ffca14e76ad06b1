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

#ifndef TFQ_IO_HPP_
#define TFQ_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "tfq/gabor.hpp"
#include "tfq/grid.hpp"
#include "tfq/linear_operator.hpp"
#include "tfq/quantaffine.hpp"
#include "tfq/quantwh.hpp"
#include "tfq/wavelet.hpp"

namespace tfq::io {

/// Shortest round-trip rendering, "%.17g".
std::string fmt(double v);

// Signals: header `t,re,im`, one row per sample. The grid is inferred from
// the first two times; every spacing must match within 1e-9 relative.
Signal read_signal_csv(std::istream& in);
Signal read_signal_csv(const std::filesystem::path& path);
void write_signal_csv(std::ostream& out, const Signal& s);
void write_signal_csv(const std::filesystem::path& path, const Signal& s);

/// Half-line signals as `x,re,im`.
void write_half_line_csv(std::ostream& out, const HalfLineSignal& s);

// Operators: CSV `row,col,re,im` with entries of modulus > 1e-14, and a raw
// little-endian binary: magic "TFQOP1\0\0", uint64 n, then n*n (re, im)
// float64 pairs in row-major order.
void write_operator_csv(std::ostream& out, const CMatrix& m);
/// Size must be given since zero rows are omitted from the file.
CMatrix read_operator_csv(std::istream& in, std::size_t n);
void write_operator_binary(std::ostream& out, const CMatrix& m);
CMatrix read_operator_binary(std::istream& in);

/// Binary 8-bit PGM; `image` rows are written top to bottom, scaled linearly
/// so that the maximum maps to 255.
void write_pgm(std::ostream& out, const Eigen::MatrixXd& image);

/// `b,omega,re,im,abs2` in row-major (b, then omega) order.
void write_spectrogram_csv(std::ostream& out, const GaborCoeffs& c);
/// |S|^2 with rows of descending omega and columns of ascending b.
void write_spectrogram_pgm(std::ostream& out, const GaborCoeffs& c);
/// `b,a,re,im,abs2`.
void write_scalogram_csv(std::ostream& out, const WaveletCoeffs& c);
/// |S|^2 with rows of descending a.
void write_scalogram_pgm(std::ostream& out, const WaveletCoeffs& c);

struct WavData {
  std::uint32_t sample_rate = 0;
  RVector samples;  // in [-1, 1)
};

/// RIFF/WAVE, PCM 16-bit. Multi-channel input is rejected unless `downmix`
/// (channel average) is set.
WavData read_wav_pcm16(std::istream& in, bool downmix = false);
WavData read_wav_pcm16(const std::filesystem::path& path, bool downmix = false);
/// Test helper: mono PCM16 writer.
void write_wav_pcm16(std::ostream& out, const WavData& w);

/// Centered grid with dt = 1/rate, zero-padded symmetrically to the next
/// power of two.
Signal wav_to_signal(const WavData& w);

/// `b,omega,re,im` on a full rectangular lattice, any row order.
Symbol2D read_symbol_csv(std::istream& in, std::string label);
Symbol2D read_symbol_csv(const std::filesystem::path& path);

/// `y,a,re,im` samples of the partial transform on a full rectangle.
AffineWeight read_weight_csv(std::istream& in, std::string label);
AffineWeight read_weight_csv(const std::filesystem::path& path);

}  // namespace tfq::io

#endif  // TFQ_IO_HPP_
