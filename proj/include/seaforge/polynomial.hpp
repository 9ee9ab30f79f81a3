// Copyright 2026 The seaforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SEAFORGE_POLYNOMIAL_HPP_
#define SEAFORGE_POLYNOMIAL_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/Polynomials>

namespace seaforge {

/*
 * Real polynomial in monomial basis, coefficients ascending by power:
 *
 *   p(s) = c[0] + c[1] s + ... + c[n] s^n
 *
 * Degrees stay small here (<= 12 after composition), so the monomial basis
 * is adequately conditioned.
 */
template <typename Scalar>
class Polynomial {
 public:
  using Coefficients = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Complex = std::complex<Scalar>;

  Polynomial() : c_(Coefficients::Zero(1)) {}
  explicit Polynomial(Coefficients c) : c_(std::move(c)) {
    if (c_.size() == 0) c_ = Coefficients::Zero(1);
  }
  Polynomial(std::initializer_list<Scalar> c) : c_(c.size() ? c.size() : 1) {
    c_.setZero();
    Eigen::Index i = 0;
    for (Scalar v : c) c_[i++] = v;
  }

  static Polynomial constant(Scalar v) { return Polynomial{v}; }
  // c * s^power
  static Polynomial monomial(Eigen::Index power, Scalar c) {
    Coefficients out = Coefficients::Zero(power + 1);
    out[power] = c;
    return Polynomial(std::move(out));
  }

  const Coefficients& coefficients() const { return c_; }
  Scalar operator[](Eigen::Index i) const {
    return i < c_.size() ? c_[i] : Scalar(0);
  }
  Eigen::Index size() const { return c_.size(); }

  // Highest power with a nonzero coefficient (0 for the zero polynomial).
  Eigen::Index degree() const {
    for (Eigen::Index i = c_.size() - 1; i > 0; --i)
      if (c_[i] != Scalar(0)) return i;
    return 0;
  }
  bool is_zero() const { return (c_.array() == Scalar(0)).all(); }
  Scalar leading() const { return c_[degree()]; }

  // Horner evaluation at a complex point.
  Complex operator()(const Complex& s) const {
    Complex acc(0);
    for (Eigen::Index i = c_.size() - 1; i >= 0; --i) acc = acc * s + c_[i];
    return acc;
  }
  Scalar operator()(Scalar x) const {
    Scalar acc(0);
    for (Eigen::Index i = c_.size() - 1; i >= 0; --i) acc = acc * x + c_[i];
    return acc;
  }

  Polynomial trimmed() const {
    return Polynomial(Coefficients(c_.head(degree() + 1)));
  }

  // Roots via the companion-matrix eigenproblem.
  std::vector<Complex> roots() const {
    const Polynomial t = trimmed();
    if (t.degree() == 0) return {};
    Eigen::PolynomialSolver<Scalar, Eigen::Dynamic> solver;
    solver.compute(t.c_);
    const auto& r = solver.roots();
    return std::vector<Complex>(r.data(), r.data() + r.size());
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) {
      Coefficients grown = Coefficients::Zero(o.c_.size());
      grown.head(c_.size()) = c_;
      c_.swap(grown);
    }
    c_.head(o.c_.size()) += o.c_;
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) { return *this += (-o); }
  Polynomial& operator*=(Scalar k) {
    c_ *= k;
    return *this;
  }
  Polynomial operator-() const { return Polynomial(Coefficients(-c_)); }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, Scalar k) { return a *= k; }
  friend Polynomial operator*(Scalar k, Polynomial a) { return a *= k; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Coefficients out = Coefficients::Zero(a.c_.size() + b.c_.size() - 1);
    for (Eigen::Index i = 0; i < a.c_.size(); ++i)
      out.segment(i, b.c_.size()) += a.c_[i] * b.c_;
    return Polynomial(std::move(out));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    const Eigen::Index n = std::max(a.size(), b.size());
    for (Eigen::Index i = 0; i < n; ++i)
      if (a[i] != b[i]) return false;
    return true;
  }

 private:
  Coefficients c_;
};

// Synthetic division by (s - r) for real r. The remainder is returned through
// `remainder` and dropped from the quotient.
template <typename Scalar>
Polynomial<Scalar> deflate_real(const Polynomial<Scalar>& p, Scalar r,
                                Scalar* remainder = nullptr) {
  const auto c = p.trimmed().coefficients();
  const Eigen::Index n = c.size() - 1;
  if (n == 0) {
    if (remainder) *remainder = c[0];
    return Polynomial<Scalar>::constant(Scalar(0));
  }
  typename Polynomial<Scalar>::Coefficients q(n);
  Scalar carry = c[n];
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    q[i] = carry;
    carry = c[i] + carry * r;
  }
  if (remainder) *remainder = carry;
  return Polynomial<Scalar>(std::move(q));
}

// Division by the real quadratic s^2 + a1 s + a0 (a complex-conjugate pair).
template <typename Scalar>
Polynomial<Scalar> deflate_quadratic(const Polynomial<Scalar>& p, Scalar a1,
                                     Scalar a0) {
  auto c = p.trimmed().coefficients();
  const Eigen::Index n = c.size() - 1;
  if (n < 2) return Polynomial<Scalar>::constant(Scalar(0));
  typename Polynomial<Scalar>::Coefficients q =
      Polynomial<Scalar>::Coefficients::Zero(n - 1);
  for (Eigen::Index i = n; i >= 2; --i) {
    const Scalar k = c[i];
    q[i - 2] = k;
    c[i - 1] -= k * a1;
    c[i - 2] -= k * a0;
  }
  return Polynomial<Scalar>(std::move(q));
}

}  // namespace seaforge

#endif  // SEAFORGE_POLYNOMIAL_HPP_
