#pragma once

// Heteroclinic traveling-wave profile of the first-order system
//
//   u' = v / (delta c)
//   v' = c u + u / (u - c) - u^2 / 2 + epsilon v / (delta c)
//
// computed by seeding on the stable manifold of the saddle at the origin and
// integrating towards xi = -inf with the Radau IIA method.

#include <array>
#include <vector>

#include "borelab/waveform.hpp"

namespace borelab::tw {

using wave::PhasePoint;
using wave::WaveParams;

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// (u', v'). Throws SingularInput at u == c.
PhasePoint vector_field(const PhasePoint& state, const WaveParams& params);
Matrix2 jacobian(const PhasePoint& state, const WaveParams& params);

/// (s, s delta c lambda_-). Requires 0 < s < 0.01 u0.
PhasePoint seed_on_stable_manifold(const WaveParams& params, double s);

struct ProfileOptions {
  double seed_offset = 0.0;  ///< 0 selects 1e-8 u0
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_span = 1e4;
  double tail_tol = 1e-8;
  double max_step = 0.0;  ///< 0 selects 0.02 / (fastest linear rate)

  /// Throws InvalidArgument when a field is outside its documented range.
  void validate() const;
};

struct Profile {
  std::vector<double> xi;  ///< strictly increasing
  std::vector<double> u;
  std::vector<double> v;
  std::vector<double> eta;
  WaveParams params;
  ProfileOptions options;  ///< with defaults resolved
  double seed_offset = 0.0;

  std::size_t size() const { return xi.size(); }
  PhasePoint state(std::size_t i) const { return {u[i], v[i]}; }
};

/// Requires epsilon > 0: without dissipation the orbit leaving the saddle is
/// homoclinic (a solitary wave) and never reaches (u0, 0).
Profile integrate_profile(const WaveParams& params, const ProfileOptions& options = {});

/// Fills eta = u / (c - u). Throws SingularInput if any u >= c.
void reconstruct_eta(Profile& profile);

/// Flow of the profile system over dxi (either sign) from state, to the
/// tolerances stored in options.
PhasePoint advance(const PhasePoint& state, double dxi, const WaveParams& params,
                   const ProfileOptions& options);

/// Cubic Hermite interpolation of (u, v) at xi using the vector field for the
/// slopes. Outside the sampled range the linear tail asymptotics are used.
PhasePoint interpolate(const Profile& profile, double xi);

/// Index of the sample interval [xi[i], xi[i+1]] containing x, clamped.
std::size_t locate(const std::vector<double>& grid, double x);

}  // namespace borelab::tw
