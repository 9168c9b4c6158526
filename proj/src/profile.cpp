#include "borelab/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "borelab/error.hpp"
#include "borelab/radau.hpp"

namespace borelab::tw {
namespace {

using Solver = ode::RadauIIA<2>;
using State = Solver::State;

// Right-hand side of the system in tau = -xi. Returns NaN at the pole so that
// a Newton iterate straying onto it is rejected rather than thrown.
State reversed_rhs(const State& y, const WaveParams& p) {
  const double dc = p.delta_c();
  const double u = y(0);
  const double v = y(1);
  if (u == p.c) return State::Constant(std::nan(""));
  return State(-v / dc, -(p.c * u + u / (u - p.c) - 0.5 * u * u + p.epsilon * v / dc));
}

Solver::Jacobian reversed_jacobian(const State& y, const WaveParams& p) {
  const double dc = p.delta_c();
  const double u = y(0);
  const double gap = u - p.c;
  Solver::Jacobian j;
  j << 0.0, -1.0 / dc, -(p.c - p.c / (gap * gap) - u), -p.epsilon / dc;
  return j;
}

ode::RadauOptions radau_options(const ProfileOptions& o) {
  ode::RadauOptions r;
  r.rtol = o.rtol;
  r.atol = o.atol;
  r.max_step = o.max_step;
  r.initial_step = std::min(1e-3, o.max_step);
  return r;
}

Solver make_solver(const WaveParams& params, const ProfileOptions& options, double sign) {
  return Solver(
      [params, sign](double, const State& y) -> State { return sign * reversed_rhs(y, params); },
      [params, sign](double, const State& y) -> Solver::Jacobian {
        return sign * reversed_jacobian(y, params);
      },
      radau_options(options));
}

ProfileOptions resolve(const WaveParams& params, const ProfileOptions& in) {
  ProfileOptions o = in;
  const double u0 = wave::equilibria(params).u_tail;
  if (o.seed_offset == 0.0) o.seed_offset = 1e-8 * u0;
  if (o.max_step == 0.0) {
    const auto sp = wave::tail_eigenvalues(params);
    const double fastest = std::max({std::abs(sp.lambda_minus), sp.lambda_plus,
                                     std::abs(sp.tail.plus()), std::abs(sp.tail.minus())});
    o.max_step = 0.02 / fastest;
  }
  return o;
}

struct Sample {
  double xi;
  double u;
  double v;
};

void check_pole(double u, double c, double xi) {
  if (std::abs(u - c) < 1e-9) {
    std::ostringstream os;
    os << "profile integration: orbit reached the singular line u = c at xi = " << xi;
    throw SingularityApproach(os.str());
  }
}

}  // namespace

PhasePoint vector_field(const PhasePoint& s, const WaveParams& p) {
  if (s.u == p.c) throw SingularInput("vector field: singular at u = c");
  const double dc = p.delta_c();
  return {s.v / dc, p.c * s.u + s.u / (s.u - p.c) - 0.5 * s.u * s.u + p.epsilon * s.v / dc};
}

Matrix2 jacobian(const PhasePoint& s, const WaveParams& p) {
  if (s.u == p.c) throw SingularInput("jacobian: singular at u = c");
  const double dc = p.delta_c();
  const double gap = s.u - p.c;
  return {{{0.0, 1.0 / dc}, {p.c - p.c / (gap * gap) - s.u, p.epsilon / dc}}};
}

PhasePoint seed_on_stable_manifold(const WaveParams& params, double s) {
  const double u0 = wave::equilibria(params).u_tail;
  if (!(s > 0.0) || !(s < 0.01 * u0)) {
    std::ostringstream os;
    os << "seed offset must satisfy 0 < s < 0.01 u0 = " << 0.01 * u0 << " (got " << s << ")";
    throw InvalidArgument(os.str());
  }
  const double lm = wave::saddle_eigenvalues(params).minus;
  return {s, s * params.delta_c() * lm};
}

void ProfileOptions::validate() const {
  auto fail = [](const char* what, double value) {
    std::ostringstream os;
    os << "profile options: " << what << " (got " << value << ")";
    throw InvalidArgument(os.str());
  };
  if (!(seed_offset >= 0.0)) fail("seed_offset must be >= 0", seed_offset);
  if (!(rtol > 0.0 && rtol < 1e-2)) fail("rtol must lie in (0, 1e-2)", rtol);
  if (!(atol > 0.0 && atol < 1e-2)) fail("atol must lie in (0, 1e-2)", atol);
  if (!(max_span > 0.0)) fail("max_span must be > 0", max_span);
  if (!(tail_tol > 0.0 && tail_tol < 1e-2)) fail("tail_tol must lie in (0, 1e-2)", tail_tol);
  if (!(max_step >= 0.0)) fail("max_step must be >= 0", max_step);
}

Profile integrate_profile(const WaveParams& params, const ProfileOptions& options) {
  params.validate();
  options.validate();
  if (!(params.epsilon > 0.0)) {
    throw InvalidArgument(
        "profile integration requires epsilon > 0; at epsilon = 0 the orbit is homoclinic");
  }
  const ProfileOptions opts = resolve(params, options);
  const auto eq = wave::equilibria(params);
  const double u0 = eq.u_tail;
  const double c = params.c;
  const auto regime = wave::classify_regime(params);
  const auto saddle = wave::saddle_eigenvalues(params);
  const PhasePoint seed = seed_on_stable_manifold(params, opts.seed_offset);

  std::vector<Sample> samples;
  samples.push_back({0.0, seed.u, seed.v});

  // Backward in xi (forward in tau = -xi) towards (u0, 0).
  {
    Solver solver = make_solver(params, opts, 1.0);
    std::vector<double> peaks;
    double last_v = seed.v;
    bool done = false;
    auto observer = [&](double tau, const State& y) {
      const double xi = -tau;
      check_pole(y(0), c, xi);
      if (!std::isfinite(y(0)) || !std::isfinite(y(1))) {
        throw StepFailure("profile integration: non-finite state");
      }
      samples.push_back({xi, y(0), y(1)});
      const double dev = std::abs(y(0) - u0);
      if (regime.kind == wave::RegimeKind::Regularized) {
        done = dev + std::abs(y(1)) < opts.tail_tol;
      } else {
        if ((last_v < 0.0) != (y(1) < 0.0)) peaks.push_back(dev);
        const std::size_t k = peaks.size();
        done = k >= 3 && peaks[k - 1] < peaks[k - 2] && peaks[k - 2] < peaks[k - 3] &&
               peaks[k - 1] < opts.tail_tol;
        // Near the node/spiral boundary the rotation is slow; stop once the
        // orbit is well inside the tolerance ball.
        if (!done && k >= 1) done = dev + std::abs(y(1)) < 1e-2 * opts.tail_tol;
      }
      last_v = y(1);
      return !done;
    };
    solver.integrate(0.0, State(seed.u, seed.v), opts.max_span, observer);
    if (!done) {
      std::ostringstream os;
      os << "profile integration: tail tolerance " << opts.tail_tol
         << " not reached within max_span = " << opts.max_span;
      throw SpanExceeded(os.str());
    }
  }

  // Short forward stretch resolving the decay to rest. The unstable direction
  // amplifies integration error by exp(lambda_+ xi), which bounds its length.
  {
    const double span =
        std::min(std::log(10.0) / std::abs(saddle.minus), std::log(1e4) / saddle.plus);
    Solver solver = make_solver(params, opts, -1.0);
    auto observer = [&](double xi, const State& y) {
      samples.push_back({xi, y(0), y(1)});
      return true;
    };
    solver.integrate(0.0, State(seed.u, seed.v), span, observer);
  }

  std::sort(samples.begin(), samples.end(),
            [](const Sample& a, const Sample& b) { return a.xi < b.xi; });

  Profile profile;
  profile.params = params;
  profile.options = opts;
  profile.seed_offset = opts.seed_offset;
  profile.xi.reserve(samples.size());
  profile.u.reserve(samples.size());
  profile.v.reserve(samples.size());
  for (const auto& s : samples) {
    profile.xi.push_back(s.xi);
    profile.u.push_back(s.u);
    profile.v.push_back(s.v);
  }

  // Translate so that xi = 0 at the rightmost downward crossing of u0/2.
  const double half = 0.5 * u0;
  std::size_t k = profile.size() - 1;
  while (k > 0 && !(profile.u[k - 1] >= half && profile.u[k] < half)) --k;
  if (k == 0) throw NumericalFailure("profile integration: no crossing of u0/2 found");
  double a = 0.0;
  double b = profile.xi[k] - profile.xi[k - 1];
  const PhasePoint base = profile.state(k - 1);
  double fa = base.u - half;
  double fb = profile.u[k] - half;
  double shift = profile.xi[k - 1];
  for (int iter = 0; iter < 50; ++iter) {
    const double x = a - fa * (b - a) / (fb - fa);
    const double fx = advance(base, x, params, opts).u - half;
    shift = profile.xi[k - 1] + x;
    if (std::abs(fx) < 1e-14 * u0 || std::abs(b - a) < 1e-14) break;
    a = b;
    fa = fb;
    b = x;
    fb = fx;
    if (fa == fb) break;
  }
  for (auto& x : profile.xi) x -= shift;

  reconstruct_eta(profile);
  return profile;
}

void reconstruct_eta(Profile& profile) {
  const double c = profile.params.c;
  profile.eta.resize(profile.u.size());
  for (std::size_t i = 0; i < profile.u.size(); ++i) {
    if (!(profile.u[i] < c)) {
      std::ostringstream os;
      os << "eta reconstruction: sample " << i << " has u = " << profile.u[i] << " >= c";
      throw SingularInput(os.str());
    }
    profile.eta[i] = wave::eta_from_u(profile.u[i], c);
  }
}

PhasePoint advance(const PhasePoint& state, double dxi, const WaveParams& params,
                   const ProfileOptions& options) {
  if (dxi == 0.0) return state;
  ProfileOptions opts = options;
  if (opts.max_step == 0.0) opts = resolve(params, options);
  // The solver runs in tau = -xi.
  Solver solver = make_solver(params, opts, 1.0);
  const State y = solver.advance(0.0, State(state.u, state.v), -dxi);
  return {y(0), y(1)};
}

std::size_t locate(const std::vector<double>& grid, double x) {
  if (grid.size() < 2) return 0;
  auto it = std::upper_bound(grid.begin(), grid.end(), x);
  std::size_t i = it == grid.begin() ? 0 : static_cast<std::size_t>(it - grid.begin()) - 1;
  return std::min(i, grid.size() - 2);
}

PhasePoint interpolate(const Profile& profile, double xi) {
  const auto& p = profile.params;
  if (xi <= profile.xi.front()) {
    const double u0 = wave::equilibria(p).u_tail;
    const auto tail = wave::tail_eigenvalues(p).tail;
    // Slowest decaying mode towards -inf.
    const double rate = tail.is_complex() ? tail.plus().real() : tail.minus().real();
    const double scale = std::exp(rate * (xi - profile.xi.front()));
    return {u0 + (profile.u.front() - u0) * scale, profile.v.front() * scale};
  }
  if (xi >= profile.xi.back()) {
    const double rate = wave::saddle_eigenvalues(p).minus;
    const double scale = std::exp(rate * (xi - profile.xi.back()));
    return {profile.u.back() * scale, profile.v.back() * scale};
  }
  const std::size_t i = locate(profile.xi, xi);
  const double h = profile.xi[i + 1] - profile.xi[i];
  const double t = (xi - profile.xi[i]) / h;
  const PhasePoint d0 = vector_field(profile.state(i), p);
  const PhasePoint d1 = vector_field(profile.state(i + 1), p);
  const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
  const double h10 = t * (1.0 - t) * (1.0 - t);
  const double h01 = t * t * (3.0 - 2.0 * t);
  const double h11 = t * t * (t - 1.0);
  return {h00 * profile.u[i] + h10 * h * d0.u + h01 * profile.u[i + 1] + h11 * h * d1.u,
          h00 * profile.v[i] + h10 * h * d0.v + h01 * profile.v[i + 1] + h11 * h * d1.v};
}

}  // namespace borelab::tw
