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

#include "tfq/linear_operator.hpp"

#include <cmath>

#include "tfq/error.hpp"

namespace tfq {

bool same_domain(const Domain& a, const Domain& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& ga) {
        using T = std::decay_t<decltype(ga)>;
        return ga == std::get<T>(b);
      },
      a);
}

std::size_t domain_size(const Domain& d) {
  return std::visit(
      [](const auto& g) -> std::size_t {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, UniformGrid>) {
          return g.n();
        } else {
          return g.m();
        }
      },
      d);
}

LinearOperator::LinearOperator(Domain domain, CMatrix matrix, bool hermitian)
    : domain_(std::move(domain)), matrix_(std::move(matrix)), hermitian_(false) {
  const auto n = static_cast<Eigen::Index>(domain_size(domain_));
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw GridError("operator matrix shape does not match its domain");
  }
  if (hermitian) mark_hermitian();
}

LinearOperator LinearOperator::identity(const Domain& d) {
  const auto n = static_cast<Eigen::Index>(domain_size(d));
  return LinearOperator(d, CMatrix::Identity(n, n), true);
}

LinearOperator LinearOperator::zero(const Domain& d) {
  const auto n = static_cast<Eigen::Index>(domain_size(d));
  return LinearOperator(d, CMatrix::Zero(n, n), true);
}

double LinearOperator::hermiticity_defect() const {
  const double scale = matrix_.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() / scale;
}

void LinearOperator::mark_hermitian() {
  const double d = hermiticity_defect();
  if (d > 1e-9) {
    throw Error("operator flagged hermitian but defect is " + std::to_string(d));
  }
  hermitian_ = true;
}

CVector LinearOperator::apply(const CVector& v) const {
  if (v.size() != matrix_.cols()) throw GridError("apply: vector length mismatch");
  return matrix_ * v;
}

Signal LinearOperator::apply(const Signal& s) const {
  if (!same_domain(domain_, Domain(s.grid))) throw GridError("apply: grid mismatch");
  return Signal(s.grid, matrix_ * s.samples);
}

HalfLineSignal LinearOperator::apply(const HalfLineSignal& s) const {
  if (!same_domain(domain_, Domain(s.grid))) throw GridError("apply: half-line grid mismatch");
  return HalfLineSignal(s.grid, matrix_ * s.samples);
}

LinearOperator LinearOperator::adjoint() const {
  LinearOperator r(domain_, matrix_.adjoint());
  r.hermitian_ = hermitian_;
  return r;
}

LinearOperator LinearOperator::compose(const LinearOperator& rhs) const {
  if (!same_domain(domain_, rhs.domain_)) throw GridError("compose: domain mismatch");
  return LinearOperator(domain_, matrix_ * rhs.matrix_);
}

LinearOperator LinearOperator::operator+(const LinearOperator& rhs) const {
  if (!same_domain(domain_, rhs.domain_)) throw GridError("operator+: domain mismatch");
  return LinearOperator(domain_, matrix_ + rhs.matrix_);
}

LinearOperator LinearOperator::operator-(const LinearOperator& rhs) const {
  if (!same_domain(domain_, rhs.domain_)) throw GridError("operator-: domain mismatch");
  return LinearOperator(domain_, matrix_ - rhs.matrix_);
}

LinearOperator LinearOperator::operator*(cplx alpha) const {
  return LinearOperator(domain_, matrix_ * alpha);
}

LinearOperator commutator(const LinearOperator& a, const LinearOperator& b) {
  if (!same_domain(a.domain(), b.domain())) throw GridError("commutator: domain mismatch");
  return LinearOperator(a.domain(), a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

double operator_norm_estimate(const CMatrix& a, int iterations, double tol) {
  const Eigen::Index n = a.cols();
  if (n == 0) return 0.0;
  CVector v(n);
  // Fixed, non-degenerate start vector keeps the estimate reproducible.
  for (Eigen::Index j = 0; j < n; ++j) {
    v[j] = cplx(1.0 + 0.5 * std::sin(1.3 * static_cast<double>(j)),
                0.25 * std::cos(0.7 * static_cast<double>(j)));
  }
  v.normalize();
  double est = 0.0;
  for (int it = 0; it < iterations; ++it) {
    CVector w = a.adjoint() * (a * v);
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    const double next = std::sqrt(nw);
    v = w / nw;
    if (it > 0 && std::abs(next - est) <= tol * next) return next;
    est = next;
  }
  return est;
}

}  // namespace tfq
