#include "borelab/waveform.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "borelab/error.hpp"

namespace borelab::wave {
namespace {

// c^2 - 1 without cancellation near criticality.
double supercriticality(double c) { return (c - 1.0) * (c + 1.0); }

void require_at_least_critical(double c, const char* what) {
  if (!(c >= 1.0) || !std::isfinite(c)) {
    std::ostringstream os;
    os << what << ": phase speed must satisfy c >= 1 (got c = " << c << ")";
    throw InvalidArgument(os.str());
  }
}

void require_supercritical(double c, const char* what) {
  if (!(c > 1.0) || !std::isfinite(c)) {
    std::ostringstream os;
    os << what << ": phase speed must satisfy c > 1 (got c = " << c << ")";
    throw InvalidArgument(os.str());
  }
}

// -log1p(-x) - x = x^2/2 + x^3/3 + ...
double log_excess(double x) {
  if (std::abs(x) < 0.05) {
    double term = x * x;
    double sum = 0.0;
    for (int k = 2; k < 40; ++k) {
      const double add = term / k;
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
      term *= x;
    }
    return sum;
  }
  return -std::log1p(-x) - x;
}

// g(u) = G(u) / (delta c).
double reduced_potential(double u, double c) {
  if (u == c) throw SingularInput("potential: singular at u = c");
  const double cubic = u * u * u / 6.0 - 0.5 * c * u * u;
  if (u < c) return cubic + c * log_excess(u / c);
  return cubic - u + c * std::log(c / (u - c));
}

// g(u) / u^2 for 0 < u < c, evaluated without the O(u^2) cancellation
// between -c u^2 / 2 and the logarithm.
double scaled_reduced_potential(double u, double c) {
  const double x = u / c;
  if (x < 0.05) {
    // h(x)/x^2 = 1/2 + x/3 + x^2/4 + ...; the 1/2 combines with -c/2.
    double term = x;
    double tail = 0.0;
    for (int k = 3; k < 40; ++k) {
      const double add = term / k;
      tail += add;
      if (add < 1e-18 * tail) break;
      term *= x;
    }
    return u / 6.0 - supercriticality(c) / (2.0 * c) + tail / c;
  }
  return reduced_potential(u, c) / (u * u);
}

// g'(u) / u = u/2 - (c^2 - 1)/c + u / (c (c - u)).
double scaled_reduced_slope(double u, double c) {
  return 0.5 * u - supercriticality(c) / c + u / (c * (c - u));
}

double criterion_rhs(double c, double delta) { return 4.0 * delta * c * alpha(c); }

}  // namespace

void WaveParams::validate() const {
  require_supercritical(c, "wave parameters");
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    std::ostringstream os;
    os << "wave parameters: dispersion must satisfy delta > 0 (got delta = " << delta << ")";
    throw InvalidArgument(os.str());
  }
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    std::ostringstream os;
    os << "wave parameters: dissipation must satisfy epsilon >= 0 (got epsilon = " << epsilon
       << ")";
    throw InvalidArgument(os.str());
  }
}

WaveParams make_params(double c, double delta, double epsilon) {
  WaveParams p{c, delta, epsilon};
  p.validate();
  return p;
}

Equilibria equilibria(double c) {
  require_at_least_critical(c, "equilibria");
  const double s = std::sqrt(c * c + 8.0);
  Equilibria eq;
  eq.u_plus = 0.5 * (3.0 * c + s);
  // Product of the roots is 2(c^2 - 1); avoids cancellation in 3c - s.
  eq.u_minus = 2.0 * supercriticality(c) / eq.u_plus;
  eq.u_tail = eq.u_minus;
  // c - u0 = (s - c)/2 = 4/(s + c).
  eq.eta_tail = eq.u_tail * (s + c) / 4.0;
  eq.u_inflect = c - std::cbrt(c);
  return eq;
}

Equilibria equilibria(const WaveParams& params) {
  params.validate();
  return equilibria(params.c);
}

double alpha(double c) {
  require_at_least_critical(c, "alpha");
  const double gap = 4.0 / (std::sqrt(c * c + 8.0) + c);  // c - u0
  return -gap + c / (gap * gap);
}

double alpha_radical_form(double c) {
  require_at_least_critical(c, "alpha");
  const double r = c - std::sqrt(c * c + 8.0);
  return 0.5 * r + 4.0 * c / (r * r);
}

SaddleEigenvalues saddle_eigenvalues(const WaveParams& params) {
  params.validate();
  const double dc = params.delta_c();
  const double eps = params.epsilon;
  const double root = std::sqrt(eps * eps + 4.0 * params.delta * supercriticality(params.c));
  SaddleEigenvalues ev;
  ev.plus = (eps + root) / (2.0 * dc);
  // Product of the roots is -(c^2 - 1) / (delta c^2).
  ev.minus = -supercriticality(params.c) / (params.delta * params.c * params.c) / ev.plus;
  return ev;
}

std::complex<double> TailEigenvalues::plus() const {
  if (const auto* z = std::get_if<ComplexConjugate>(&value)) return {z->re, z->im};
  return {std::get<RealPair>(value).plus, 0.0};
}

std::complex<double> TailEigenvalues::minus() const {
  if (const auto* z = std::get_if<ComplexConjugate>(&value)) return {z->re, -z->im};
  return {std::get<RealPair>(value).minus, 0.0};
}

Spectrum tail_eigenvalues(const WaveParams& params) {
  params.validate();
  const auto saddle = saddle_eigenvalues(params);
  const double dc = params.delta_c();
  const double eps = params.epsilon;

  Spectrum sp;
  sp.lambda_minus = saddle.minus;
  sp.lambda_plus = saddle.plus;
  sp.alpha = alpha(params.c);
  sp.discriminant = eps * eps - criterion_rhs(params.c, params.delta);

  if (sp.discriminant < 0.0) {
    sp.tail.value = TailEigenvalues::ComplexConjugate{eps / (2.0 * dc),
                                                      std::sqrt(-sp.discriminant) / (2.0 * dc)};
  } else {
    TailEigenvalues::RealPair pair;
    pair.plus = (eps + std::sqrt(sp.discriminant)) / (2.0 * dc);
    // Product of the roots is alpha / (delta c).
    pair.minus = sp.alpha / dc / pair.plus;
    sp.tail.value = pair;
    sp.triangle_slope = dc * pair.minus;
  }
  return sp;
}

const char* to_string(RegimeKind kind) {
  return kind == RegimeKind::Oscillatory ? "Oscillatory" : "Regularized";
}

Regime classify_regime(const WaveParams& params) {
  params.validate();
  Regime r;
  r.criterion_lhs = params.epsilon * params.epsilon;
  r.criterion_rhs = criterion_rhs(params.c, params.delta);
  r.kind = r.criterion_lhs < r.criterion_rhs ? RegimeKind::Oscillatory : RegimeKind::Regularized;
  return r;
}

double critical_epsilon(double c, double delta) {
  make_params(c, delta, 0.0);
  const double rhs = criterion_rhs(c, delta);
  double eps = std::sqrt(rhs);
  // Snap to the first double whose square is not below the criterion.
  while (eps * eps < rhs) eps = std::nextafter(eps, std::numeric_limits<double>::infinity());
  while (eps > 0.0) {
    const double below = std::nextafter(eps, 0.0);
    if (below * below < rhs) break;
    eps = below;
  }
  return eps;
}

double potential(double u, const WaveParams& params) {
  params.validate();
  return params.delta_c() * reduced_potential(u, params.c);
}

double potential_derivative(double u, const WaveParams& params) {
  params.validate();
  const double c = params.c;
  if (u == c) throw SingularInput("potential derivative: singular at u = c");
  return params.delta_c() * u * (0.5 * u - c + 1.0 / (c - u));
}

double liapunov(const PhasePoint& state, const WaveParams& params) {
  return 0.5 * state.v * state.v + potential(state.u, params);
}

double dissipation_integral_rhs(double c) {
  require_at_least_critical(c, "dissipation integral");
  const double s = std::sqrt(c * c + 8.0);
  const double u0 = equilibria(c).u_tail;
  // c(c + s)/4 - 1 = (c^2 - 1)(1 + (c^2 + 9)/(c s + 3)) / 4
  const double log_arg_minus_one =
      supercriticality(c) * (1.0 + (c * c + 9.0) / (c * s + 3.0)) / 4.0;
  return (2.0 + c * c) * u0 / 3.0 - c * std::log1p(log_arg_minus_one);
}

double solitary_amplitude(double c) {
  require_supercritical(c, "solitary amplitude");
  const double u0 = equilibria(c).u_tail;
  double lo = u0 * (1.0 + 1e-12);
  double hi = c * (1.0 - 1e-12);
  const double f_lo = scaled_reduced_potential(lo, c);
  const double f_hi = scaled_reduced_potential(hi, c);
  if (!(f_lo < 0.0 && f_hi > 0.0)) {
    std::ostringstream os;
    os << "solitary amplitude: root of G not bracketed on (u0, c) for c = " << c;
    throw NonConvergence(os.str());
  }

  // Safeguarded Newton on G(u)/u^2: a bisection step replaces Newton whenever
  // the Newton iterate leaves the bracket or does not halve the last step.
  auto slope_at = [c](double u, double f) { return (scaled_reduced_slope(u, c) - 2.0 * f) / u; };
  double x = 0.5 * (lo + hi);
  double f = scaled_reduced_potential(x, c);
  double df = slope_at(x, f);
  double step_old = hi - lo;
  double step = step_old;
  for (int iter = 0; iter < 300; ++iter) {
    const bool outside = ((x - hi) * df - f) * ((x - lo) * df - f) > 0.0;
    if (outside || std::abs(2.0 * f) > std::abs(step_old * df) || !std::isfinite(df)) {
      step_old = step;
      step = 0.5 * (hi - lo);
      x = lo + step;
    } else {
      step_old = step;
      step = f / df;
      x -= step;
    }
    if (std::abs(step) <= 2.0 * std::numeric_limits<double>::epsilon() * x) return x;
    f = scaled_reduced_potential(x, c);
    if (f == 0.0) return x;
    df = slope_at(x, f);
    if (f < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
  }
  std::ostringstream os;
  os << "solitary amplitude: Newton iteration did not converge for c = " << c;
  throw NonConvergence(os.str());
}

double solitary_amplitude(const WaveParams& params) {
  params.validate();
  return solitary_amplitude(params.c);
}

double eta_from_u(double u, double c) {
  if (u == c) throw SingularInput("eta reconstruction: singular at u = c");
  return u / (c - u);
}

double speed_from_amplitude(double eta_bar) {
  if (!(eta_bar > 0.0) || !std::isfinite(eta_bar)) {
    std::ostringstream os;
    os << "speed from amplitude: requires eta_bar > 0 (got " << eta_bar << ")";
    throw InvalidArgument(os.str());
  }
  const double e = eta_bar;
  // (1 + e) ln(1 + e) - e = sum_{k>=2} (-1)^k e^k / (k (k - 1))
  double excess = 0.0;
  if (e < 0.1) {
    double term = e * e;
    for (int k = 2; k < 60; ++k) {
      const double add = ((k % 2 == 0) ? term : -term) / (k * (k - 1.0));
      excess += add;
      if (std::abs(add) < 1e-18 * excess) break;
      term *= e;
    }
  } else {
    excess = (1.0 + e) * std::log1p(e) - e;
  }
  return std::sqrt(6.0) * (1.0 + e) / std::sqrt(3.0 + 2.0 * e) * std::sqrt(excess) / e;
}

double speed_from_amplitude_series(double eta_bar) {
  const double e = eta_bar;
  return 1.0 + e * (0.5 + e * (-5.0 / 24.0 + e * (79.0 / 720.0)));
}

namespace {

void require_tail(double eta_tail, const char* what) {
  if (!(eta_tail >= 0.0) || !std::isfinite(eta_tail)) {
    std::ostringstream os;
    os << what << ": requires eta_tail >= 0 (got " << eta_tail << ")";
    throw InvalidArgument(os.str());
  }
}

}  // namespace

// u0 = eta0 c / (1 + eta0) in u^2 - 3cu + 2(c^2 - 1) = 0 leaves
// c^2 (2 + eta0) = 2 (1 + eta0)^2.
double froude_from_tail(double eta_tail) {
  require_tail(eta_tail, "froude from tail");
  return (1.0 + eta_tail) * std::sqrt(2.0 / (2.0 + eta_tail));
}

double bore_speed_t1994(double eta_tail) {
  require_tail(eta_tail, "bore speed");
  return std::sqrt(1.0 + eta_tail * (1.5 + 0.5 * eta_tail));
}

double bore_tail_t1994(double c) {
  require_at_least_critical(c, "bore tail");
  return 2.0 * supercriticality(c) / (1.5 + std::sqrt(0.25 + 2.0 * c * c));
}

}  // namespace borelab::wave
