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

#ifndef TFQ_FFT_HPP_
#define TFQ_FFT_HPP_

#include <complex>
#include <span>

namespace tfq::fft {

// In-place unnormalized transforms with the usual sign conventions:
//   forward:  X_k = sum_j x_j exp(-2 pi i jk/n)
//   backward: x_j = sum_k X_k exp(+2 pi i jk/n)
// Plans are cached per length; execution is safe from multiple threads.
void forward(std::span<std::complex<double>> data);
void backward(std::span<std::complex<double>> data);

}  // namespace tfq::fft

#endif  // TFQ_FFT_HPP_
