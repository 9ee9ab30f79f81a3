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

#ifndef SEAFORGE_FREQUENCY_MODEL_HPP_
#define SEAFORGE_FREQUENCY_MODEL_HPP_

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "seaforge/polynomial.hpp"

namespace seaforge {

// One term p(s) e^{-sT} of a quasi-polynomial.
template <typename Scalar>
struct DelayTerm {
  Polynomial<Scalar> poly;
  Scalar delay = Scalar(0);
};

// Sum of delayed polynomial terms. Terms with equal delays are merged.
template <typename Scalar>
class QuasiPolynomial {
 public:
  using Complex = std::complex<Scalar>;

  QuasiPolynomial() = default;
  QuasiPolynomial(Polynomial<Scalar> p, Scalar delay = Scalar(0)) {  // NOLINT
    add(std::move(p), delay);
  }

  QuasiPolynomial& add(const Polynomial<Scalar>& p, Scalar delay = Scalar(0)) {
    for (auto& t : terms_) {
      if (t.delay == delay) {
        t.poly += p;
        return *this;
      }
    }
    terms_.push_back({p, delay});
    return *this;
  }
  // c s^power e^{-s delay}
  QuasiPolynomial& add_term(Eigen::Index power, Scalar c,
                            Scalar delay = Scalar(0)) {
    return add(Polynomial<Scalar>::monomial(power, c), delay);
  }

  const std::vector<DelayTerm<Scalar>>& terms() const { return terms_; }

  bool has_delay() const {
    for (const auto& t : terms_)
      if (t.delay != Scalar(0) && !t.poly.is_zero()) return true;
    return false;
  }

  // Sum of the polynomial parts; exact when has_delay() is false.
  Polynomial<Scalar> collapsed() const {
    Polynomial<Scalar> out;
    for (const auto& t : terms_) out += t.poly;
    return out;
  }

  // Coefficient of s^power as a function of s (delays evaluated at s).
  Complex coefficient(Eigen::Index power, const Complex& s) const {
    Complex acc(0);
    for (const auto& t : terms_) acc += t.poly[power] * delay_factor(s, t.delay);
    return acc;
  }

  Complex operator()(const Complex& s) const {
    Complex acc(0);
    for (const auto& t : terms_) acc += t.poly(s) * delay_factor(s, t.delay);
    return acc;
  }

  // e^{-sT}. On the imaginary axis the factor is built from the angle alone,
  // so its magnitude is one to rounding.
  static Complex delay_factor(const Complex& s, Scalar delay) {
    if (delay == Scalar(0)) return Complex(1);
    if (s.real() == Scalar(0)) return std::polar(Scalar(1), -s.imag() * delay);
    return std::exp(-s * delay);
  }

 private:
  std::vector<DelayTerm<Scalar>> terms_;
};

// Delay-free rational function num(s)/den(s).
template <typename Scalar>
struct RationalFunction {
  using Complex = std::complex<Scalar>;
  Polynomial<Scalar> num;
  Polynomial<Scalar> den;

  Complex operator()(const Complex& s) const { return num(s) / den(s); }

  // Removes roots shared by numerator and denominator. A numerator root r is
  // treated as shared when |den(r)| is below `tol` relative to the size of
  // den's terms at |r|.
  RationalFunction cancel_common_roots(Scalar tol = Scalar(1e-8)) const {
    RationalFunction out{num.trimmed(), den.trimmed()};
    bool changed = true;
    while (changed && out.num.degree() > 0 && out.den.degree() > 0) {
      changed = false;
      for (const Complex& r : out.num.roots()) {
        const Scalar scale = term_scale(out.den, std::abs(r));
        if (std::abs(out.den(r)) > tol * scale) continue;
        if (std::abs(r.imag()) <= tol * std::max(Scalar(1), std::abs(r))) {
          out.num = deflate_real(out.num, r.real());
          out.den = deflate_real(out.den, r.real());
        } else {
          const Scalar a1 = -2 * r.real();
          const Scalar a0 = std::norm(r);
          out.num = deflate_quadratic(out.num, a1, a0);
          out.den = deflate_quadratic(out.den, a1, a0);
        }
        changed = true;
        break;
      }
    }
    return out;
  }

  // Denominator scaled to a monic polynomial; numerator scaled alike.
  RationalFunction monic() const {
    const Scalar lead = den.trimmed().leading();
    return {num * (Scalar(1) / lead), den.trimmed() * (Scalar(1) / lead)};
  }

 private:
  static Scalar term_scale(const Polynomial<Scalar>& p, Scalar x) {
    Scalar acc(0), xp(1);
    for (Eigen::Index i = 0; i < p.size(); ++i, xp *= x) acc += std::abs(p[i]) * xp;
    return acc > Scalar(0) ? acc : Scalar(1);
  }
};

/*
 * Frequency-domain model H(s) kept as an immutable expression tree over
 * quasi-rational leaves (ratios of delayed polynomials). Pure delays stay
 * symbolic, never rationalized, so evaluation on s = jw is exact.
 *
 *   leaf      N(s)/D(s), N and D quasi-polynomials
 *   sum       A + B
 *   product   A * B
 *   feedback  F / (1 + L)
 *   pointwise arbitrary evaluator (numerical loop solves)
 *
 * Copies share structure; all members are const after construction, so one
 * model may be evaluated from many threads.
 */
template <typename Scalar>
class FrequencyModel {
 public:
  using Complex = std::complex<Scalar>;
  using Evaluator = std::function<Complex(const Complex&)>;

  static FrequencyModel quasi_rational(QuasiPolynomial<Scalar> num,
                                       QuasiPolynomial<Scalar> den) {
    return FrequencyModel(Leaf{std::move(num), std::move(den)});
  }
  static FrequencyModel rational(Polynomial<Scalar> num, Polynomial<Scalar> den,
                                 Scalar delay = Scalar(0)) {
    return quasi_rational(QuasiPolynomial<Scalar>(std::move(num), delay),
                          QuasiPolynomial<Scalar>(std::move(den)));
  }
  static FrequencyModel constant(Scalar k) {
    return rational(Polynomial<Scalar>::constant(k),
                    Polynomial<Scalar>::constant(Scalar(1)));
  }
  static FrequencyModel delay(Scalar T) {
    return rational(Polynomial<Scalar>::constant(Scalar(1)),
                    Polynomial<Scalar>::constant(Scalar(1)), T);
  }
  // First-order low-pass 2 pi f / (s + 2 pi f).
  static FrequencyModel low_pass(Scalar cutoff_hz) {
    const Scalar a = Scalar(2 * M_PI) * cutoff_hz;
    return rational(Polynomial<Scalar>{a}, Polynomial<Scalar>{a, Scalar(1)});
  }
  static FrequencyModel differentiator() {
    return rational(Polynomial<Scalar>{Scalar(0), Scalar(1)},
                    Polynomial<Scalar>::constant(Scalar(1)));
  }
  static FrequencyModel pointwise(Evaluator f) {
    return FrequencyModel(Pointwise{std::move(f)});
  }
  static FrequencyModel feedback(const FrequencyModel& forward,
                                 const FrequencyModel& loop) {
    return FrequencyModel(Feedback{forward.node_, loop.node_});
  }

  friend FrequencyModel operator+(const FrequencyModel& a,
                                  const FrequencyModel& b) {
    return FrequencyModel(Sum{a.node_, b.node_});
  }
  friend FrequencyModel operator*(const FrequencyModel& a,
                                  const FrequencyModel& b) {
    return FrequencyModel(Product{a.node_, b.node_});
  }
  friend FrequencyModel operator*(Scalar k, const FrequencyModel& a) {
    return constant(k) * a;
  }

  Complex evaluate(const Complex& s) const { return eval(*node_, s); }
  // H(jw)
  Complex at(Scalar omega) const { return evaluate(Complex(Scalar(0), omega)); }

  // Collapses the tree into num/den when no delay or pointwise node remains.
  // Shared denominators in sums and feedback loops are not multiplied out.
  std::optional<RationalFunction<Scalar>> to_rational() const {
    return reduce(*node_);
  }

 private:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;
  struct Leaf {
    QuasiPolynomial<Scalar> num, den;
  };
  struct Sum {
    NodePtr a, b;
  };
  struct Product {
    NodePtr a, b;
  };
  struct Feedback {
    NodePtr forward, loop;
  };
  struct Pointwise {
    Evaluator f;
  };
  struct Node {
    std::variant<Leaf, Sum, Product, Feedback, Pointwise> v;
  };

  template <typename T>
  explicit FrequencyModel(T node)
      : node_(std::make_shared<const Node>(Node{std::move(node)})) {}

  static Complex eval(const Node& n, const Complex& s) {
    return std::visit(
        [&s](const auto& x) -> Complex {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Leaf>) {
            return x.num(s) / x.den(s);
          } else if constexpr (std::is_same_v<T, Sum>) {
            return eval(*x.a, s) + eval(*x.b, s);
          } else if constexpr (std::is_same_v<T, Product>) {
            return eval(*x.a, s) * eval(*x.b, s);
          } else if constexpr (std::is_same_v<T, Feedback>) {
            return eval(*x.forward, s) / (Scalar(1) + eval(*x.loop, s));
          } else {
            return x.f(s);
          }
        },
        n.v);
  }

  static std::optional<RationalFunction<Scalar>> reduce(const Node& n) {
    using R = RationalFunction<Scalar>;
    return std::visit(
        [](const auto& x) -> std::optional<R> {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Leaf>) {
            if (x.num.has_delay() || x.den.has_delay()) return std::nullopt;
            return R{x.num.collapsed(), x.den.collapsed()};
          } else if constexpr (std::is_same_v<T, Pointwise>) {
            return std::nullopt;
          } else {
            const Node* lhs;
            const Node* rhs;
            if constexpr (std::is_same_v<T, Feedback>) {
              lhs = x.forward.get();
              rhs = x.loop.get();
            } else {
              lhs = x.a.get();
              rhs = x.b.get();
            }
            auto p = reduce(*lhs);
            auto q = reduce(*rhs);
            if (!p || !q) return std::nullopt;
            if constexpr (std::is_same_v<T, Sum>) {
              if (p->den == q->den) return R{p->num + q->num, p->den};
              return R{p->num * q->den + q->num * p->den, p->den * q->den};
            } else if constexpr (std::is_same_v<T, Product>) {
              return R{p->num * q->num, p->den * q->den};
            } else {
              // F/(1+L) = Fn Ld / (Fd (Ld + Ln))
              if (p->den == q->den) return R{p->num, q->den + q->num};
              return R{p->num * q->den, p->den * (q->den + q->num)};
            }
          }
        },
        n.v);
  }

  NodePtr node_;
};

using FrequencyModeld = FrequencyModel<double>;

}  // namespace seaforge

#endif  // SEAFORGE_FREQUENCY_MODEL_HPP_
