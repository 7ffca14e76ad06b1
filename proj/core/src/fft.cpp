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

#include "tfq/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace tfq::fft {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

// FFTW planning is not thread-safe; execution with new-array execute is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

const PlanPair& plans_for(int n) {
  static std::map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(planner_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  fftw_complex* buf = fftw_alloc_complex(static_cast<std::size_t>(n));
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  PlanPair p;
  p.forward = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, flags);
  p.backward = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, flags);
  fftw_free(buf);
  return cache.emplace(n, p).first->second;
}

void run(std::span<std::complex<double>> data, bool fwd) {
  if (data.empty()) return;
  const auto& p = plans_for(static_cast<int>(data.size()));
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(fwd ? p.forward : p.backward, ptr, ptr);
}

}  // namespace

void forward(std::span<std::complex<double>> data) { run(data, true); }
void backward(std::span<std::complex<double>> data) { run(data, false); }

}  // namespace tfq::fft
