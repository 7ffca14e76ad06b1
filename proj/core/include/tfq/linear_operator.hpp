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

#ifndef TFQ_LINEAR_OPERATOR_HPP_
#define TFQ_LINEAR_OPERATOR_HPP_

#include <variant>

#include "tfq/grid.hpp"

namespace tfq {

/// Domain an operator acts on: a periodic time grid or a half-line grid.
using Domain = std::variant<UniformGrid, HalfLineGrid>;

bool same_domain(const Domain& a, const Domain& b);
std::size_t domain_size(const Domain& d);

/// Dense complex matrix realizing an operator on a discretized domain.
/// Matrix entries already carry the quadrature weight, so (A s)_j =
/// sum_k A_jk s_k.
class LinearOperator {
 public:
  LinearOperator(Domain domain, CMatrix matrix, bool hermitian = false);

  static LinearOperator identity(const Domain& d);
  static LinearOperator zero(const Domain& d);

  const Domain& domain() const noexcept { return domain_; }
  const CMatrix& matrix() const noexcept { return matrix_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  bool hermitian() const noexcept { return hermitian_; }

  /// Sets the hermitian flag; throws Error if max|M - M^dag| > 1e-9 max|M|.
  void mark_hermitian();

  /// max|M - M^dag| / max|M| (0 for the zero matrix).
  double hermiticity_defect() const;

  CVector apply(const CVector& v) const;
  Signal apply(const Signal& s) const;
  HalfLineSignal apply(const HalfLineSignal& s) const;

  LinearOperator adjoint() const;
  LinearOperator compose(const LinearOperator& rhs) const;  // this * rhs

  LinearOperator operator+(const LinearOperator& rhs) const;
  LinearOperator operator-(const LinearOperator& rhs) const;
  LinearOperator operator*(cplx alpha) const;

 private:
  Domain domain_;
  CMatrix matrix_;
  bool hermitian_;
};

/// AB - BA. Throws GridError on domain mismatch.
LinearOperator commutator(const LinearOperator& a, const LinearOperator& b);

/// Largest singular value by power iteration on A^dag A (50 iterations,
/// relative tolerance 1e-9), deterministic start vector.
double operator_norm_estimate(const CMatrix& a, int iterations = 50, double tol = 1e-9);

}  // namespace tfq

#endif  // TFQ_LINEAR_OPERATOR_HPP_
