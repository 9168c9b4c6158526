#pragma once

#include <optional>
#include <vector>

#include "borelab/profile.hpp"

namespace borelab::tw {

enum class ObservedRegime { Monotone, Oscillatory };

const char* to_string(ObservedRegime kind);

struct Extremum {
  double xi = 0.0;
  double u = 0.0;
};

/// Extrema and inflections are ordered by increasing xi. Tail rates are the
/// slopes of log|u| (right tail, negative) and of log|u - u0| or its extremum
/// envelope (left tail, positive) against xi.
struct ShapeReport {
  ObservedRegime regime_observed = ObservedRegime::Monotone;
  std::vector<Extremum> maxima;
  std::vector<Extremum> minima;
  std::vector<Extremum> inflections;
  double tail_decay_rate_plus = 0.0;
  double tail_decay_rate_minus = 0.0;
  std::optional<double> tail_frequency;
};

/// Throws InsufficientSamples when either tail offers fewer than 4 points.
ShapeReport shape_report(const Profile& profile);

/// |epsilon * integral (v/(delta c))^2 - f(c)| / f(c), trapezoidal rule.
double verify_energy_identity(const Profile& profile);

struct InvariantCheck {
  bool pass = true;
  /// Smallest signed margin over all samples and constraints (negative means
  /// violated before slack).
  double worst_margin = 0.0;
  std::size_t violations = 0;
};

/// Regularized regime only (throws WrongRegime otherwise): v <= 0,
/// 0 <= u <= u0 (1 + 1e-9) and v >= m (u - u0) with m = delta c Lambda_-.
InvariantCheck verify_triangle_invariant(const Profile& profile);

/// lower <= v <= upper with the a priori bounds of the existence proof.
/// Requires epsilon > 0.
InvariantCheck verify_v_bounds(const Profile& profile);
double v_lower_bound(const WaveParams& params);
double v_upper_bound(const WaveParams& params);

/// V = v^2/2 + G(u) is non-decreasing in xi (non-increasing in the reversed
/// variable) up to ten times the local error tolerance.
InvariantCheck verify_liapunov(const Profile& profile);

/// Number of transversal crossings between non-adjacent segments of the
/// (u, v) polyline.
std::size_t count_self_intersections(const Profile& profile);

}  // namespace borelab::tw
