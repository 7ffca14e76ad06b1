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

#ifndef TFQ_ERROR_HPP_
#define TFQ_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tfq {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Grid construction / grid mismatch / unresolvable probe widths.
class GridError : public Error {
 public:
  using Error::Error;
};

// Wavelet or affine weight fails an admissibility condition (zero mean,
// finite positive resolution constant).
class AdmissibilityError : public Error {
 public:
  using Error::Error;
};

// |psi_hat(omega)| is not even in omega.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

// A closed-form partial Fourier transform disagrees with the numeric one.
class SymbolError : public Error {
 public:
  using Error::Error;
};

// A truncated integral still carries too much mass in its tail.
class TruncationError : public Error {
 public:
  using Error::Error;
};

// A dilated half-line signal leaves the sampled window.
class SupportError : public Error {
 public:
  using Error::Error;
};

// Non-finite affine weight kernel value.
class WeightError : public Error {
 public:
  using Error::Error;
};

// Malformed input file; carries the 1-based line number (0 when unknown).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace tfq

#endif  // TFQ_ERROR_HPP_
