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

#include <benchmark/benchmark.h>

#include <cmath>

#include "tfq/fourier.hpp"
#include "tfq/gabor.hpp"
#include "tfq/quantaffine.hpp"
#include "tfq/quantwh.hpp"
#include "tfq/wavelet.hpp"

namespace {

using namespace tfq;

Signal chirp(const UniformGrid& g) {
  return Signal::from_function(g, [](double t) { return std::polar(std::exp(-t * t / 8), 2 * t + 0.3 * t * t); });
}

void BM_Dft(benchmark::State& state) {
  const auto g = UniformGrid::centered(static_cast<std::size_t>(state.range(0)), 0.05);
  const Signal s = chirp(g);
  for (auto _ : state) benchmark::DoNotOptimize(dft(s));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Dft)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oNLogN);

void BM_GaborTransform(benchmark::State& state) {
  const auto g = UniformGrid::centered(static_cast<std::size_t>(state.range(0)), 0.05);
  const Probe p = make_gaussian_probe(g, 1.0);
  const TFLattice lat = TFLattice::default_for(p);
  const Signal s = chirp(g);
  for (auto _ : state) benchmark::DoNotOptimize(gabor_transform(s, p, lat));
}
BENCHMARK(BM_GaborTransform)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_QuantizeGabor(benchmark::State& state) {
  const auto g = UniformGrid::centered(static_cast<std::size_t>(state.range(0)), 0.05);
  const Probe p = make_gaussian_probe(g, 1.0);
  const Symbol2D f = Symbol2D::harmonic();
  for (auto _ : state) benchmark::DoNotOptimize(quantize_gabor(f, p));
}
BENCHMARK(BM_QuantizeGabor)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_QuantizeApodized(benchmark::State& state) {
  const auto g = UniformGrid::centered(static_cast<std::size_t>(state.range(0)), 0.05);
  const auto pi = ApodizationWeight::born_jordan();
  const Symbol2D f = Symbol2D::bw();
  for (auto _ : state) benchmark::DoNotOptimize(quantize_with_apodization(f, pi, g));
}
BENCHMARK(BM_QuantizeApodized)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_GaussianPortrait(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const TFLattice lat = symplectic_lattice(n, std::sqrt(2 * std::acos(-1.0) / static_cast<double>(n)));
  const Symbol2D f = Symbol2D::harmonic();
  for (auto _ : state) benchmark::DoNotOptimize(gaussian_portrait(f, 1.0, lat));
}
BENCHMARK(BM_GaussianPortrait)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Cwt(benchmark::State& state) {
  const auto g = UniformGrid::centered(2048, 0.025);
  const Wavelet w(mexican_hat(g));
  const Signal s = chirp(g);
  const ScaleGrid scales = ScaleGrid::octaves(0.1, 5, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cwt(s, w, g.times(), scales));
}
BENCHMARK(BM_Cwt)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_AffineQuantize(benchmark::State& state) {
  const HalfLineGrid g(static_cast<std::size_t>(state.range(0)), 0.08);
  const AffineWeight w = wavelet_weight_from_function(bump_function, g, "bump");
  const HalfPlaneSymbol f = HalfPlaneSymbol::a();
  for (auto _ : state) benchmark::DoNotOptimize(affine_quantize(f, w, g));
}
BENCHMARK(BM_AffineQuantize)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
