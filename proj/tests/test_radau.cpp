#include <gtest/gtest.h>

#include <cmath>

#include "borelab/error.hpp"
#include "borelab/radau.hpp"

using namespace borelab;
using Radau1 = ode::RadauIIA<1>;
using Radau2 = ode::RadauIIA<2>;

namespace {

Radau2 oscillator(ode::RadauOptions opt = {}) {
  return Radau2(
      [](double, const Radau2::State& y) { return Radau2::State(y[1], -y[0]); },
      [](double, const Radau2::State&) {
        Radau2::Jacobian j;
        j << 0, 1, -1, 0;
        return j;
      },
      opt);
}

double fixed_step_error(double h) {
  auto r = oscillator();
  Radau2::State y(1.0, 0.0);
  const int n = static_cast<int>(std::lround(2.0 / h));
  for (int k = 0; k < n; ++k) y = *r.step(k * h, y, h);
  return std::hypot(y[0] - std::cos(2.0), y[1] + std::sin(2.0));
}

}  // namespace

TEST(Radau, FifthOrderConvergence) {
  const double e1 = fixed_step_error(0.2);
  const double e2 = fixed_step_error(0.1);
  const double order = std::log2(e1 / e2);
  EXPECT_GT(order, 4.6);
  EXPECT_LT(order, 5.6);
}

TEST(Radau, AdaptiveAccuracy) {
  auto r = oscillator();
  const auto [t, y] = r.integrate(0.0, Radau2::State(1.0, 0.0), 10.0, nullptr);
  EXPECT_DOUBLE_EQ(t, 10.0);
  EXPECT_NEAR(y[0], std::cos(10.0), 1e-8);
  EXPECT_NEAR(y[1], -std::sin(10.0), 1e-8);
}

TEST(Radau, BackwardIntegration) {
  auto r = oscillator();
  const auto y = r.advance(0.0, Radau2::State(1.0, 0.0), -3.0);
  EXPECT_NEAR(y[0], std::cos(3.0), 1e-8);
  EXPECT_NEAR(y[1], std::sin(3.0), 1e-8);
}

TEST(Radau, StiffProblemTakesFewSteps) {
  const double k = 1e6;
  ode::RadauOptions opt;
  opt.rtol = 1e-8;
  opt.atol = 1e-10;
  Radau1 r([k](double t, const Radau1::State& y) {
             return Radau1::State(-k * (y[0] - std::cos(t)) - std::sin(t));
           },
           [k](double, const Radau1::State&) { return Radau1::Jacobian(-k); }, opt);
  const auto [t, y] = r.integrate(0.0, Radau1::State(1.0), 2.0, nullptr);
  EXPECT_NEAR(y[0], std::cos(2.0), 1e-7);
  EXPECT_LT(r.accepted_steps() + r.rejected_steps(), 2000);
}

TEST(Radau, ObserverStopsIntegration) {
  auto r = oscillator();
  const auto [t, y] = r.integrate(0.0, Radau2::State(1.0, 0.0), 10.0,
                                  [](double, const Radau2::State& s) { return s[0] > 0.0; });
  EXPECT_LT(t, 10.0);
  EXPECT_LE(y[0], 0.0);
  EXPECT_GT(t, M_PI / 2 - 1.0);
}

TEST(Radau, BlowUpRaisesStepFailure) {
  Radau1 r([](double, const Radau1::State& y) { return Radau1::State(y[0] * y[0]); },
           [](double, const Radau1::State& y) { return Radau1::Jacobian(2 * y[0]); });
  EXPECT_THROW(r.integrate(0.0, Radau1::State(1.0), 2.0, nullptr), NumericalFailure);
}
