#pragma once

// Closed-form quantities of the traveling-wave problem for the dissipative
// Peregrine system
//
//   eta_t + u_x + (eta u)_x = 0
//   u_t + eta_x + u u_x - delta u_xxt - epsilon u_xx = 0
//
// in the scaled variables (depth 1, g = 1). A traveling wave
// (eta, u)(x - c t) with c > 1 connects (eta0, u0) at -inf to rest at +inf.

#include <complex>
#include <optional>
#include <variant>

namespace borelab::wave {

/// Relative tolerance used for every closed-form identity in this module.
inline constexpr double kRelTol = 1e-12;

/// Phase speed, dispersion and dissipation of one traveling-wave problem.
struct WaveParams {
  double c = 0.0;
  double delta = 0.0;
  double epsilon = 0.0;

  /// Throws InvalidArgument unless c > 1, delta > 0, epsilon >= 0.
  void validate() const;

  double delta_c() const { return delta * c; }
};

/// Checked construction.
WaveParams make_params(double c, double delta, double epsilon);

/// State (u, v) of the first-order profile system, v = delta c u'.
struct PhasePoint {
  double u = 0.0;
  double v = 0.0;
};

struct Equilibria {
  double u_zero = 0.0;
  double u_minus = 0.0;
  double u_plus = 0.0;
  double u_tail = 0.0;     ///< u0 = u_minus, the limit at xi -> -inf
  double eta_tail = 0.0;   ///< eta0 = u0 / (c - u0)
  double u_inflect = 0.0;  ///< u_c = c - c^(1/3), inflection of the potential
};

/// Roots of u^2 - 3cu + 2(c^2 - 1). Requires c >= 1 (c = 1 is the degenerate
/// critical case where u_tail = 0).
Equilibria equilibria(double c);
Equilibria equilibria(const WaveParams& params);

/// alpha(c) = u0 - c + c / (u0 - c)^2, the restoring coefficient at (u0, 0).
double alpha(double c);
/// Same quantity through the form written with c - sqrt(c^2 + 8).
double alpha_radical_form(double c);

struct SaddleEigenvalues {
  double minus = 0.0;
  double plus = 0.0;
};

/// Eigenvalues of the linearization at the origin; always a saddle.
SaddleEigenvalues saddle_eigenvalues(const WaveParams& params);

/// Eigenvalues of the linearization at (u0, 0). Real in the regularized
/// regime, a complex-conjugate pair in the oscillatory regime.
struct RealEigenpair {
  double minus = 0.0;
  double plus = 0.0;
};

struct ComplexEigenpair {
  double re = 0.0;
  double im = 0.0;  ///< >= 0; the pair is re +/- i im
};

struct TailEigenvalues {
  using RealPair = RealEigenpair;
  using ComplexConjugate = ComplexEigenpair;
  std::variant<RealPair, ComplexConjugate> value;

  bool is_complex() const { return std::holds_alternative<ComplexConjugate>(value); }
  std::complex<double> plus() const;
  std::complex<double> minus() const;
};

struct Spectrum {
  double lambda_minus = 0.0;
  double lambda_plus = 0.0;
  TailEigenvalues tail;
  double alpha = 0.0;
  double discriminant = 0.0;            ///< epsilon^2 - 4 delta c alpha(c)
  std::optional<double> triangle_slope; ///< m = delta c Lambda_-, real case only
};

Spectrum tail_eigenvalues(const WaveParams& params);

enum class RegimeKind { Oscillatory, Regularized };

const char* to_string(RegimeKind kind);

struct Regime {
  RegimeKind kind = RegimeKind::Oscillatory;
  double criterion_lhs = 0.0;  ///< epsilon^2
  double criterion_rhs = 0.0;  ///< 4 delta c alpha(c)
};

/// Oscillatory iff epsilon^2 < 4 delta c alpha(c).
Regime classify_regime(const WaveParams& params);

/// Smallest epsilon classified Regularized: 2 sqrt(delta c alpha(c)).
double critical_epsilon(double c, double delta);

/// G(u) = delta c [u^3/6 - c u^2/2 - u + c ln(c/|c-u|)], with G(0) = 0.
/// Throws SingularInput at u == c.
double potential(double u, const WaveParams& params);
/// dG/du.
double potential_derivative(double u, const WaveParams& params);

/// V = v^2/2 + G(u); non-increasing along the reversed flow.
double liapunov(const PhasePoint& state, const WaveParams& params);

/// f(c) = epsilon * integral of (u')^2 over the whole profile. Requires c >= 1.
double dissipation_integral_rhs(double c);

/// Positive root u_bar in (u0, c) of G. Depends on c only.
double solitary_amplitude(double c);
double solitary_amplitude(const WaveParams& params);

/// eta = u / (c - u). Throws SingularInput at u == c.
double eta_from_u(double u, double c);

/// Closed-form solitary-wave speed for amplitude eta_bar > 0.
double speed_from_amplitude(double eta_bar);
/// Cubic truncation 1 + e/2 - 5e^2/24 + 79e^3/720.
double speed_from_amplitude_series(double eta_bar);

/// c = (1 + eta0) sqrt(2 / (2 + eta0)); exact inverse of equilibria(c).eta_tail.
double froude_from_tail(double eta_tail);

/// The empirical bore relation c = sqrt(1 + 3/2 eta0 + 1/2 eta0^2). An
/// approximation only; it does not invert equilibria(c).eta_tail.
double bore_speed_t1994(double eta_tail);
/// Positive root of the quadratic above: eta0 as a function of c.
double bore_tail_t1994(double c);

}  // namespace borelab::wave
