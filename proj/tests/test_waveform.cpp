#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "borelab/error.hpp"
#include "borelab/waveform.hpp"

using namespace borelab;
using namespace borelab::wave;

namespace {

double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double tail_root_oracle(double c) {
  return bisect([c](double u) { return u * u - 3 * c * u + 2 * (c * c - 1); }, 0.0, c);
}

std::vector<double> c_grid(int n = 1000) {
  std::vector<double> out;
  for (int k = 1; k <= n; ++k) out.push_back(1.0 + 9.0 * k / n);
  return out;
}

}  // namespace

TEST(Equilibria, TailAtTwoIsThreeMinusRootThree) {
  EXPECT_NEAR(equilibria(2.0).u_tail, 3.0 - std::sqrt(3.0), 1e-15);
}

TEST(Equilibria, MatchesBisectionOracle) {
  for (double c : {1.0001, 1.11, 1.2, 1.3, 2.0, 5.0, 10.0})
    EXPECT_NEAR(equilibria(c).u_tail, tail_root_oracle(c), 1e-13 * c) << c;
}

TEST(Equilibria, FrozenHighPrecisionValues) {
  const auto e = equilibria(1.2);
  EXPECT_NEAR(e.u_tail, 0.26377085042627836, 1e-15);
  EXPECT_NEAR(e.eta_tail, 0.28173748974423298, 1e-15);
  EXPECT_NEAR(equilibria(5.0).eta_tail, 12.430703308172536, 1e-12);
}

TEST(Equilibria, VietaOverGrid) {
  for (double c : c_grid()) {
    const auto e = equilibria(c);
    EXPECT_NEAR((e.u_minus + e.u_plus) / (3 * c), 1.0, 1e-12) << c;
    EXPECT_NEAR(e.u_minus * e.u_plus / (2 * (c * c - 1)), 1.0, 1e-12) << c;
    EXPECT_DOUBLE_EQ(e.u_tail, e.u_minus);
    EXPECT_NEAR(e.eta_tail, e.u_tail / (c - e.u_tail), 1e-13 * e.eta_tail);
    EXPECT_NEAR(e.u_inflect, c - std::cbrt(c), 1e-14 * c);
  }
}

TEST(Equilibria, CriticalSpeedIsDegenerate) {
  EXPECT_EQ(equilibria(1.0).u_tail, 0.0);
  EXPECT_THROW(equilibria(0.9), InvalidArgument);
}

TEST(Alpha, ExactAtTwo) { EXPECT_NEAR(alpha(2.0), 3.0, 1e-12); }

TEST(Alpha, FrozenAndFromRootOracle) {
  EXPECT_NEAR(alpha(1.3), 0.67578191546021227, 1e-14);
  for (double c : {1.05, 1.3, 2.5, 7.0}) {
    const double u = tail_root_oracle(c);
    EXPECT_NEAR(alpha(c), u - c + c / ((u - c) * (u - c)), 1e-11 * alpha(c));
  }
}

TEST(Alpha, RadicalFormAgreesAndIsPositive) {
  for (double c : c_grid()) {
    EXPECT_GT(alpha(c), 0.0);
    EXPECT_NEAR(alpha_radical_form(c) / alpha(c), 1.0, 1e-12) << c;
  }
}

TEST(Saddle, InviscidPairIsSymmetric) {
  const auto s = saddle_eigenvalues(make_params(2.0, 1.0, 0.0));
  EXPECT_NEAR(s.minus, -std::sqrt(3.0) / 2, 1e-15);
  EXPECT_NEAR(s.plus, std::sqrt(3.0) / 2, 1e-15);
}

TEST(Saddle, DissipativePairAndCharacteristicResidual) {
  const auto p = make_params(2.0, 1.0, 1.0);
  const auto s = saddle_eigenvalues(p);
  EXPECT_NEAR(s.minus, (1 - std::sqrt(13.0)) / 4, 1e-15);
  EXPECT_NEAR(s.plus, (1 + std::sqrt(13.0)) / 4, 1e-15);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uc(1.001, 10), ud(0.01, 3), ue(0, 3);
  for (int k = 0; k < 200; ++k) {
    const auto q = make_params(uc(rng), ud(rng), ue(rng));
    const auto e = saddle_eigenvalues(q);
    const double dc = q.delta_c();
    for (double l : {e.minus, e.plus}) {
      const double res = dc * q.c * l * l - q.epsilon * q.c * l - (q.c * q.c - 1);
      EXPECT_NEAR(res, 0.0, 1e-11 * (1 + dc * q.c * l * l));
    }
    EXPECT_LT(e.minus, 0.0);
    EXPECT_GT(e.plus, 0.0);
  }
}

TEST(Tail, PurelyImaginaryWithoutDissipation) {
  const auto sp = tail_eigenvalues(make_params(2.0, 0.5, 0.0));
  ASSERT_TRUE(sp.tail.is_complex());
  EXPECT_NEAR(sp.tail.plus().real(), 0.0, 1e-15);
  EXPECT_NEAR(sp.tail.plus().imag(), std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(sp.tail.minus().imag(), -std::sqrt(3.0), 1e-14);
}

TEST(Tail, RegularizedCaseIsRealPair) {
  const auto sp = tail_eigenvalues(make_params(1.3, 0.2, 1.2));
  ASSERT_FALSE(sp.tail.is_complex());
  EXPECT_GT(sp.discriminant, 0.0);
  EXPECT_NEAR(sp.discriminant, 1.44 - 4 * 0.2 * 1.3 * alpha(1.3), 1e-14);
  ASSERT_TRUE(sp.triangle_slope.has_value());
  EXPECT_NEAR(*sp.triangle_slope, 0.2 * 1.3 * sp.tail.minus().real(), 1e-15);
}

TEST(Tail, CharacteristicResidualProperty) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uc(1.001, 10), ud(0.01, 3), ue(0, 6);
  for (int k = 0; k < 300; ++k) {
    const auto q = make_params(uc(rng), ud(rng), ue(rng));
    const auto sp = tail_eigenvalues(q);
    const double a = alpha(q.c);
    for (auto l : {sp.tail.plus(), sp.tail.minus()}) {
      const auto res = q.delta_c() * l * l - q.epsilon * l + a;
      EXPECT_LT(std::abs(res), 1e-10 * (1 + q.delta_c() * std::norm(l)));
    }
    EXPECT_EQ(sp.tail.is_complex(), classify_regime(q).kind == RegimeKind::Oscillatory);
    EXPECT_GE(sp.tail.plus().real(), 0.0);
  }
}

TEST(Regime, FixedExamples) {
  EXPECT_EQ(classify_regime(make_params(1.3, 0.2, 1.2)).kind, RegimeKind::Regularized);
  EXPECT_EQ(classify_regime(make_params(1.11, 1.0 / 3, 0.06)).kind, RegimeKind::Oscillatory);
  EXPECT_EQ(classify_regime(make_params(2.0, 0.5, 0.3)).kind, RegimeKind::Oscillatory);
  const auto r = classify_regime(make_params(1.3, 0.2, 1.2));
  EXPECT_DOUBLE_EQ(r.criterion_lhs, 1.44);
  EXPECT_NEAR(r.criterion_rhs, 4 * 0.2 * 1.3 * alpha(1.3), 1e-15);
}

TEST(Regime, CriticalEpsilonValuesAndBoundary) {
  EXPECT_NEAR(critical_epsilon(2.0, 0.5), std::sqrt(12.0), 1e-14);
  EXPECT_NEAR(critical_epsilon(1.3, 0.2), std::sqrt(0.8 * 1.3 * alpha(1.3)), 1e-15);
  for (double c : {1.01, 1.3, 2.0, 5.0})
    for (double d : {0.1, 1.0 / 3, 1.0}) {
      const double es = critical_epsilon(c, d);
      EXPECT_EQ(classify_regime(make_params(c, d, es)).kind, RegimeKind::Regularized);
      EXPECT_EQ(classify_regime(make_params(c, d, es * (1 - 1e-9))).kind,
                RegimeKind::Oscillatory);
    }
}

TEST(Regime, MonotoneInEpsilonProperty) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> uc(1.001, 10), ud(0.01, 3), ue(0, 10);
  for (int k = 0; k < 500; ++k) {
    const double c = uc(rng), d = ud(rng), e1 = ue(rng), e2 = ue(rng);
    const double lo = std::min(e1, e2), hi = std::max(e1, e2);
    if (classify_regime(make_params(c, d, lo)).kind == RegimeKind::Regularized) {
      EXPECT_EQ(classify_regime(make_params(c, d, hi)).kind, RegimeKind::Regularized);
    }
  }
}

TEST(Params, InvalidInputsRejected) {
  EXPECT_THROW(make_params(0.9, 0.5, 0.1), InvalidArgument);
  EXPECT_THROW(make_params(1.0, 0.5, 0.1), InvalidArgument);
  EXPECT_THROW(make_params(2.0, 0.0, 0.1), InvalidArgument);
  EXPECT_THROW(make_params(2.0, 0.5, -0.1), InvalidArgument);
  EXPECT_THROW(make_params(NAN, 0.5, 0.1), InvalidArgument);
  EXPECT_THROW(make_params(2.0, INFINITY, 0.1), InvalidArgument);
}

TEST(Potential, ShapeAtTwo) {
  const auto p = make_params(2.0, 0.5, 0.0);
  const double u0 = equilibria(2.0).u_tail;
  EXPECT_EQ(potential(0.0, p), 0.0);
  EXPECT_LT(potential(u0, p), 0.0);
  EXPECT_NEAR(potential_derivative(u0, p), 0.0, 1e-13);
  EXPECT_GT(potential(u0 - 1e-3, p), potential(u0, p));
  EXPECT_GT(potential(u0 + 1e-3, p), potential(u0, p));
  EXPECT_THROW(potential(2.0, p), SingularInput);
}

TEST(Potential, DerivativeMatchesCentralDifference) {
  const auto p = make_params(1.7, 0.4, 0.2);
  for (double u : {-0.3, 0.1, 0.5, 1.0, 1.5}) {
    const double h = 1e-5;
    const double fd = (potential(u + h, p) - potential(u - h, p)) / (2 * h);
    EXPECT_NEAR(potential_derivative(u, p), fd, 1e-7);
  }
}

TEST(Potential, LiapunovAtTailEqualsPotential) {
  const auto p = make_params(2.0, 0.5, 0.3);
  const double u0 = equilibria(2.0).u_tail;
  EXPECT_DOUBLE_EQ(liapunov({u0, 0.0}, p), potential(u0, p));
  EXPECT_DOUBLE_EQ(liapunov({0.3, 0.4}, p), 0.08 + potential(0.3, p));
}

TEST(SolitaryAmplitude, BisectionOracle) {
  for (double c : {1.05, 1.2, 2.0, 5.0}) {
    const auto p = make_params(c, 0.5, 0.0);
    const double u0 = equilibria(c).u_tail;
    const double ub =
        bisect([&](double u) { return potential(u, p); }, u0 + 1e-9 * c, c - 1e-12 * c);
    EXPECT_NEAR(solitary_amplitude(c), ub, 1e-10 * c) << c;
    EXPECT_GT(solitary_amplitude(c), u0);
    EXPECT_LT(solitary_amplitude(c), c);
  }
  EXPECT_NEAR(solitary_amplitude(2.0), 1.6936667992158894, 1e-13);
  EXPECT_NEAR(eta_from_u(solitary_amplitude(1.2), 1.2), 0.47572969626178626, 1e-12);
}

TEST(EtaFromU, Basics) {
  EXPECT_NEAR(eta_from_u(equilibria(1.2).u_tail, 1.2), 0.28173748974423298, 1e-15);
  EXPECT_THROW(eta_from_u(1.2, 1.2), SingularInput);
}

TEST(DissipationIntegral, ZeroAtCriticalPositiveAbove) {
  EXPECT_EQ(dissipation_integral_rhs(1.0), 0.0);
  for (double c : c_grid()) EXPECT_GT(dissipation_integral_rhs(c), 0.0) << c;
}

TEST(DissipationIntegral, FrozenValues) {
  EXPECT_NEAR(dissipation_integral_rhs(2.0), 6 - 2 * std::sqrt(3.0) - 2 * std::log1p(std::sqrt(3.0)),
              1e-14);
  EXPECT_NEAR(dissipation_integral_rhs(2.0), 0.52579330737748339, 1e-14);
  EXPECT_NEAR(dissipation_integral_rhs(1.1), 5.8320076674902004e-4, 1e-16);
  EXPECT_NEAR(dissipation_integral_rhs(1.2), 4.5973562130840011e-3, 1e-16);
  EXPECT_NEAR(dissipation_integral_rhs(5.0), 28.661751202550347, 1e-12);
  EXPECT_NEAR(dissipation_integral_rhs(10.0), 294.01633414696154, 1e-10);
}

TEST(SpeedAmplitude, SeriesValue) {
  EXPECT_NEAR(speed_from_amplitude_series(0.2), 1 + 0.1 - 5.0 / 24 * 0.04 + 79.0 / 720 * 0.008,
              1e-15);
  EXPECT_NEAR(speed_from_amplitude_series(0.2), 1.0925444, 1e-7);
}

TEST(SpeedAmplitude, ClosedFormNearSeries) {
  for (int k = 1; k <= 500; ++k) {
    const double e = 0.5 * k / 500;
    EXPECT_LE(std::abs(speed_from_amplitude(e) - speed_from_amplitude_series(e)),
              0.5 * std::pow(e, 4))
        << e;
  }
}

TEST(SpeedAmplitude, InverseOfSolitaryAmplitude) {
  for (double c : {1.01, 1.0925444, 1.2, 1.4, 2.0}) {
    const double eb = eta_from_u(solitary_amplitude(c), c);
    EXPECT_NEAR(speed_from_amplitude(eb), c, 1e-11 * c);
  }
  const double eb = eta_from_u(solitary_amplitude(1.0925444), 1.0925444);
  EXPECT_NEAR(eb, 0.2, 0.2 * 0.2 * 0.2 * 0.2 * 5);
}

TEST(Froude, RoundTrips) {
  EXPECT_EQ(froude_from_tail(0.0), 1.0);
  EXPECT_NEAR(froude_from_tail(equilibria(1.2).eta_tail), 1.2, 1e-12);
  EXPECT_NEAR(froude_from_tail(std::sqrt(3.0)), 2.0, 1e-12);
  for (double c : c_grid()) EXPECT_NEAR(froude_from_tail(equilibria(c).eta_tail), c, 1e-12 * c);
  EXPECT_THROW(froude_from_tail(-0.1), InvalidArgument);
}

TEST(Froude, EmpiricalBoreRelation) {
  EXPECT_EQ(bore_speed_t1994(0.0), 1.0);
  EXPECT_NEAR(bore_speed_t1994(0.2), std::sqrt(1.32), 1e-15);
  for (double c : c_grid()) {
    const double e = bore_tail_t1994(c);
    EXPECT_NEAR(bore_speed_t1994(e), c, 1e-12 * c);
    EXPECT_GT(e, 0.0);
  }
  // An approximation: it overestimates the speed of this model's bore.
  EXPECT_NEAR(bore_speed_t1994(equilibria(1.2).eta_tail), 1.2092535884503466, 1e-12);
  EXPECT_GT(bore_speed_t1994(std::sqrt(3.0)), 2.25);
}

TEST(Froude, BranchesOrdered) {
  for (int k = 1; k <= 400; ++k) {
    const double c = 1.0 + 0.4 * k / 400;
    EXPECT_LT(equilibria(c).eta_tail, eta_from_u(solitary_amplitude(c), c)) << c;
  }
}
