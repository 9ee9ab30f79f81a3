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

#ifndef SEAFORGE_NEWTON_HPP_
#define SEAFORGE_NEWTON_HPP_

#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace seaforge {

struct NewtonOptions {
  int max_iterations = 100;
  double step_tolerance = 1e-12;      // relative step norm
  double residual_tolerance = 1e-10;  // max-norm of F
  int divergence_window = 5;          // consecutive residual increases
  int max_halvings = 30;
};

enum class NewtonStatus { converged, max_iterations, diverged, non_finite };

template <typename Scalar, int N>
struct NewtonResult {
  Eigen::Matrix<Scalar, N, 1> x;
  Scalar residual_norm;
  int iterations;
  NewtonStatus status;
};

// Central-difference Jacobian of f at x.
template <typename Scalar, int N, typename F>
Eigen::Matrix<Scalar, N, N> finite_difference_jacobian(
    F&& f, const Eigen::Matrix<Scalar, N, 1>& x) {
  const Scalar base = std::cbrt(std::numeric_limits<Scalar>::epsilon());
  Eigen::Matrix<Scalar, N, N> jac(x.size(), x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const Scalar h = base * std::max(std::abs(x[j]), Scalar(1e-3));
    Eigen::Matrix<Scalar, N, 1> xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    jac.col(j) = (f(xp) - f(xm)) / (xp[j] - xm[j]);
  }
  return jac;
}

// Damped Newton iteration for f(x) = 0 with a finite-difference Jacobian.
// Each step is halved until the residual max-norm decreases; a step that
// cannot be made to decrease it is taken anyway and counted toward the
// divergence window.
template <typename Scalar, int N, typename F>
NewtonResult<Scalar, N> damped_newton(F&& f, Eigen::Matrix<Scalar, N, 1> x,
                                      const NewtonOptions& opt = {}) {
  using Vec = Eigen::Matrix<Scalar, N, 1>;
  Vec fx = f(x);
  Scalar norm = fx.template lpNorm<Eigen::Infinity>();
  int rising = 0;
  for (int it = 0; it < opt.max_iterations; ++it) {
    if (!std::isfinite(norm)) return {x, norm, it, NewtonStatus::non_finite};
    if (norm < opt.residual_tolerance)
      return {x, norm, it, NewtonStatus::converged};

    const auto jac = finite_difference_jacobian<Scalar, N>(f, x);
    const Vec step = jac.fullPivLu().solve(-fx);
    if (!step.allFinite()) return {x, norm, it, NewtonStatus::non_finite};

    Scalar lambda = 1;
    Vec trial = x + step;
    Vec ft = f(trial);
    Scalar tnorm = ft.template lpNorm<Eigen::Infinity>();
    for (int h = 0; h < opt.max_halvings && !(tnorm < norm); ++h) {
      lambda /= 2;
      trial = x + lambda * step;
      ft = f(trial);
      tnorm = ft.template lpNorm<Eigen::Infinity>();
    }
    rising = tnorm > norm ? rising + 1 : 0;
    if (rising >= opt.divergence_window)
      return {trial, tnorm, it + 1, NewtonStatus::diverged};

    const Scalar rel_step =
        (lambda * step).norm() / std::max(x.norm(), Scalar(1e-300));
    x = trial;
    fx = ft;
    norm = tnorm;
    if (rel_step < opt.step_tolerance) {
      return {x, norm, it + 1,
              norm < opt.residual_tolerance ? NewtonStatus::converged
                                            : NewtonStatus::max_iterations};
    }
  }
  return {x, norm, opt.max_iterations,
          norm < opt.residual_tolerance ? NewtonStatus::converged
                                        : NewtonStatus::max_iterations};
}

}  // namespace seaforge

#endif  // SEAFORGE_NEWTON_HPP_
