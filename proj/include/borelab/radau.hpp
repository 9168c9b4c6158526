#pragma once

// Three-stage Radau IIA collocation method (order 5, stiffly accurate,
// L-stable) with adaptive step-size control by step doubling.
//
// The stage equations Z = h (A (x) I) F(y0 + Z) are solved with a damped
// Newton iteration on the 3N x 3N system using the analytic Jacobian of the
// right-hand side, refreshed at the start of each step.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

#include "borelab/error.hpp"

namespace borelab::ode {

struct RadauOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double initial_step = 1e-3;
  double max_step = 1.0;
  double min_step = 1e-14;
  int max_newton_iterations = 12;
  /// Newton stops once the scaled update norm drops below this fraction of
  /// the local error tolerance.
  double newton_tolerance = 1e-3;
};

/// Butcher tableau of the three-stage Radau IIA method.
struct RadauTableau {
  static constexpr double kSqrt6 = 2.449489742783178098197284;
  static constexpr double c[3] = {(4.0 - kSqrt6) / 10.0, (4.0 + kSqrt6) / 10.0, 1.0};
  static constexpr double a[3][3] = {
      {(88.0 - 7.0 * kSqrt6) / 360.0, (296.0 - 169.0 * kSqrt6) / 1800.0,
       (-2.0 + 3.0 * kSqrt6) / 225.0},
      {(296.0 + 169.0 * kSqrt6) / 1800.0, (88.0 + 7.0 * kSqrt6) / 360.0,
       (-2.0 - 3.0 * kSqrt6) / 225.0},
      {(16.0 - kSqrt6) / 36.0, (16.0 + kSqrt6) / 36.0, 1.0 / 9.0}};
};

template <int N>
class RadauIIA {
 public:
  using State = Eigen::Matrix<double, N, 1>;
  using Jacobian = Eigen::Matrix<double, N, N>;
  using Rhs = std::function<State(double, const State&)>;
  using JacobianFn = std::function<Jacobian(double, const State&)>;
  /// Called after every accepted step with (t, y). Returning false stops the
  /// integration.
  using Observer = std::function<bool(double, const State&)>;

  RadauIIA(Rhs rhs, JacobianFn jacobian, RadauOptions options = {})
      : rhs_(std::move(rhs)), jacobian_(std::move(jacobian)), options_(options) {}

  const RadauOptions& options() const { return options_; }

  /// One Radau IIA step of fixed size h from (t, y). Returns nullopt when the
  /// Newton iteration fails to converge.
  std::optional<State> step(double t, const State& y, double h) const {
    using Big = Eigen::Matrix<double, 3 * N, 1>;
    using BigMatrix = Eigen::Matrix<double, 3 * N, 3 * N>;

    const Jacobian jac = jacobian_(t, y);
    BigMatrix iteration_matrix = BigMatrix::Identity();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        iteration_matrix.template block<N, N>(i * N, j * N) -= h * RadauTableau::a[i][j] * jac;
    const Eigen::PartialPivLU<BigMatrix> lu(iteration_matrix);

    const State scale = (options_.atol + options_.rtol * y.array().abs()).matrix();
    auto residual = [&](const Big& z) {
      State f[3];
      for (int j = 0; j < 3; ++j)
        f[j] = rhs_(t + RadauTableau::c[j] * h, y + z.template segment<N>(j * N));
      Big r;
      for (int i = 0; i < 3; ++i) {
        State acc = State::Zero();
        for (int j = 0; j < 3; ++j) acc += RadauTableau::a[i][j] * f[j];
        r.template segment<N>(i * N) = z.template segment<N>(i * N) - h * acc;
      }
      return r;
    };
    auto scaled_norm = [&](const Big& d) {
      double sum = 0.0;
      for (int i = 0; i < 3; ++i)
        sum += (d.template segment<N>(i * N).array() / scale.array()).square().sum();
      return std::sqrt(sum / (3 * N));
    };

    // Stage predictor from the explicit Euler slope.
    const State f0 = rhs_(t, y);
    Big z;
    for (int i = 0; i < 3; ++i) z.template segment<N>(i * N) = RadauTableau::c[i] * h * f0;

    Big r = residual(z);
    if (!r.allFinite()) return std::nullopt;
    double r_norm = scaled_norm(r);
    for (int iter = 0; iter < options_.max_newton_iterations; ++iter) {
      const Big delta = lu.solve(-r);
      // Damping: halve the update until the residual decreases.
      double lambda = 1.0;
      Big trial;
      Big r_trial;
      double trial_norm = 0.0;
      for (int damp = 0; damp < 8; ++damp) {
        trial = z + lambda * delta;
        r_trial = residual(trial);
        trial_norm = r_trial.allFinite() ? scaled_norm(r_trial) : INFINITY;
        if (trial_norm < r_norm || trial_norm <= options_.newton_tolerance) break;
        lambda *= 0.5;
      }
      if (!std::isfinite(trial_norm)) return std::nullopt;
      z = trial;
      r = r_trial;
      r_norm = trial_norm;
      if (lambda * scaled_norm(delta) <= options_.newton_tolerance &&
          r_norm <= options_.newton_tolerance)
        return State(y + z.template segment<N>(2 * N));
    }
    return std::nullopt;
  }

  /// Integrates from t0 towards t_end with adaptive steps, invoking the
  /// observer after each accepted step. Returns the final (t, y).
  std::pair<double, State> integrate(double t0, const State& y0, double t_end,
                                     const Observer& observer) {
    double t = t0;
    State y = y0;
    const double direction = t_end >= t0 ? 1.0 : -1.0;
    double h = std::min(std::abs(options_.initial_step), options_.max_step);
    while (direction * (t_end - t) > 0.0) {
      h = std::min(h, std::abs(t_end - t));
      const auto [accepted, y_next, h_next] = attempt(t, y, direction * h);
      if (accepted) {
        t += direction * h;
        y = y_next;
        ++accepted_steps_;
        if (observer && !observer(t, y)) break;
      } else {
        ++rejected_steps_;
      }
      h = h_next;
      if (h < options_.min_step) {
        std::ostringstream os;
        os << "Radau IIA: step size underflow at t = " << t;
        throw StepFailure(os.str());
      }
    }
    return {t, y};
  }

  /// Flow map over a span dt (either sign), to the integrator's tolerance.
  State advance(double t0, const State& y0, double dt) {
    if (dt == 0.0) return y0;
    const double saved = options_.initial_step;
    options_.initial_step = std::min(std::abs(dt), options_.max_step);
    auto [t, y] = integrate(t0, y0, t0 + dt, nullptr);
    options_.initial_step = saved;
    return y;
  }

  long accepted_steps() const { return accepted_steps_; }
  long rejected_steps() const { return rejected_steps_; }

 private:
  struct Attempt {
    bool accepted;
    State y;
    double next_step;
  };

  // One full step against two half steps; the difference estimates the local
  // error of the two-half-step result as diff / (2^5 - 1).
  Attempt attempt(double t, const State& y, double h) const {
    const double size = std::abs(h);
    const auto full = step(t, y, h);
    std::optional<State> half;
    if (full) {
      const auto mid = step(t, y, 0.5 * h);
      if (mid) half = step(t + 0.5 * h, *mid, 0.5 * h);
    }
    if (!full || !half) return {false, y, 0.25 * size};

    const State scale =
        (options_.atol + options_.rtol * y.array().abs().max(half->array().abs())).matrix();
    const double err =
        std::sqrt(((*half - *full).array() / 31.0 / scale.array()).square().sum() / N);
    double factor = err > 0.0 ? 0.9 * std::pow(err, -1.0 / 6.0) : 4.0;
    factor = std::clamp(factor, 0.2, 4.0);
    const double next = std::min(size * factor, options_.max_step);
    if (err <= 1.0) return {true, *half, next};
    return {false, y, std::min(next, 0.9 * size)};
  }

  Rhs rhs_;
  JacobianFn jacobian_;
  RadauOptions options_;
  long accepted_steps_ = 0;
  long rejected_steps_ = 0;
};

}  // namespace borelab::ode
