#include <algorithm>
#include <cmath>
#include <sstream>

#include "borelab/error.hpp"
#include "borelab/pde.hpp"

namespace borelab::pde {
namespace {

void axpy(Field& out, const Field& a, double h, const Field& b) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + h * b[i];
}

void check_state(const FieldPair& s) {
  for (std::size_t i = 0; i < s.eta.size(); ++i) {
    if (!std::isfinite(s.eta[i]) || !std::isfinite(s.u[i])) {
      std::ostringstream os;
      os << "time stepping: non-finite value at index " << i << ", t = " << s.t;
      throw Instability(os.str());
    }
    if (!(1.0 + s.eta[i] > 0.0)) {
      std::ostringstream os;
      os << "time stepping: depth 1 + eta lost positivity at index " << i << ", t = " << s.t;
      throw Instability(os.str());
    }
  }
}

double max_abs(const Field& f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

const char* to_string(System s) {
  switch (s) {
    case System::PeregrineDissipative:
      return "peregrine-dissipative";
    case System::PeregrineInviscid:
      return "peregrine-inviscid";
    case System::ShallowWater:
      return "shallow-water";
  }
  return "?";
}

System system_from_string(const std::string& s) {
  if (s == "peregrine-dissipative") return System::PeregrineDissipative;
  if (s == "peregrine-inviscid") return System::PeregrineInviscid;
  if (s == "shallow-water") return System::ShallowWater;
  throw InvalidArgument("unknown system '" + s +
                        "' (expected peregrine-dissipative, peregrine-inviscid or shallow-water)");
}

void RunConfig::validate() const {
  grid.validate();
  if (!(dt > 0.0)) throw InvalidArgument("run config: dt must be > 0");
  if (!(t_end >= 0.0)) throw InvalidArgument("run config: t_end must be >= 0");
  if (system != System::ShallowWater && !(delta >= 0.0))
    throw InvalidArgument("run config: delta must be >= 0");
  if (!(epsilon >= 0.0)) throw InvalidArgument("run config: epsilon must be >= 0");
  for (double t : snapshot_times)
    if (!(t >= 0.0 && t <= t_end + 0.5 * dt))
      throw InvalidArgument("run config: snapshot times must lie in [0, t_end]");
}

void check_cfl(const RunConfig& config, const FieldPair& state) {
  double max_eta = 0.0;
  for (double e : state.eta) max_eta = std::max(max_eta, e);
  const double speed = 1.0 + max_abs(state.u) + std::sqrt(1.0 + max_eta);
  const double bound = 0.9 * config.grid.dx() / speed;
  if (config.dt > bound) {
    std::ostringstream os;
    os << "run config: dt = " << config.dt << " violates the CFL bound " << bound;
    throw InvalidArgument(os.str());
  }
}

FieldPair semidiscrete_rhs_peregrine(const FieldPair& s, double delta, double epsilon,
                                     const Grid& grid) {
  grid.validate();
  if (s.eta.size() != grid.n || s.u.size() != grid.n)
    throw GridMismatch("peregrine rhs: state size does not match grid");
  for (double e : s.eta)
    if (!(1.0 + e > 0.0)) throw Instability("peregrine rhs: vacuum state 1 + eta <= 0");
  FieldPair rate;
  rate.eta.resize(grid.n);
  rate.u.resize(grid.n);
  Field flux(grid.n);
  Field a;
  Field b;
  for (std::size_t i = 0; i < grid.n; ++i) flux[i] = s.u[i] * (1.0 + s.eta[i]);
  d1(flux, rate.eta, grid, Parity::Odd);
  for (double& v : rate.eta) v = -v;
  d1(s.eta, a, grid, Parity::Even);
  d1(s.u, b, grid, Parity::Odd);
  d2(s.u, flux, grid, Parity::Odd);
  for (std::size_t i = 0; i < grid.n; ++i)
    rate.u[i] = -a[i] - s.u[i] * b[i] + epsilon * flux[i];
  Helmholtz(delta, grid, Parity::Odd).solve_in_place(rate.u);
  return rate;
}

Stepper::Stepper(const RunConfig& config) : config_(config) {
  config_.validate();
  if (config_.system == System::PeregrineInviscid) config_.epsilon = 0.0;
  const std::size_t n = config_.grid.n;
  if (config_.system != System::ShallowWater) helmholtz_.emplace(config_.delta, config_.grid);
  for (auto& k : k_) {
    k.eta.resize(n);
    k.u.resize(n);
  }
  stage_.eta.resize(n);
  stage_.u.resize(n);
  work_a_.resize(n);
  work_b_.resize(n);
  if (config_.system == System::ShallowWater) {
    flux_eta_.resize(n + 1);
    flux_u_.resize(n + 1);
  }
}

void Stepper::rhs(const FieldPair& s, FieldPair& rate) {
  const Grid& g = config_.grid;
  const std::size_t n = g.n;
  for (std::size_t i = 0; i < n; ++i) work_a_[i] = s.u[i] * (1.0 + s.eta[i]);
  d1(work_a_, rate.eta, g, Parity::Odd);
  for (double& v : rate.eta) v = -v;
  d1(s.eta, work_a_, g, Parity::Even);
  d1(s.u, work_b_, g, Parity::Odd);
  for (std::size_t i = 0; i < n; ++i) rate.u[i] = -work_a_[i] - s.u[i] * work_b_[i];
  if (config_.epsilon != 0.0) {
    d2(s.u, work_a_, g, Parity::Odd);
    for (std::size_t i = 0; i < n; ++i) rate.u[i] += config_.epsilon * work_a_[i];
  }
  helmholtz_->solve_in_place(rate.u);
}

void Stepper::step_rk4(FieldPair& y) {
  const double h = config_.dt;
  rhs(y, k_[0]);
  axpy(stage_.eta, y.eta, 0.5 * h, k_[0].eta);
  axpy(stage_.u, y.u, 0.5 * h, k_[0].u);
  rhs(stage_, k_[1]);
  axpy(stage_.eta, y.eta, 0.5 * h, k_[1].eta);
  axpy(stage_.u, y.u, 0.5 * h, k_[1].u);
  rhs(stage_, k_[2]);
  axpy(stage_.eta, y.eta, h, k_[2].eta);
  axpy(stage_.u, y.u, h, k_[2].u);
  rhs(stage_, k_[3]);
  const double w = h / 6.0;
  for (std::size_t i = 0; i < y.eta.size(); ++i) {
    y.eta[i] += w * (k_[0].eta[i] + 2.0 * (k_[1].eta[i] + k_[2].eta[i]) + k_[3].eta[i]);
    y.u[i] += w * (k_[0].u[i] + 2.0 * (k_[1].u[i] + k_[2].u[i]) + k_[3].u[i]);
  }
}

// Cell averages of (eta, u) with fluxes (u (1 + eta), eta + u^2 / 2); the
// eigenvalues of the flux Jacobian are u +/- sqrt(1 + eta).
void Stepper::step_shallow_water(FieldPair& s) {
  const Grid& g = config_.grid;
  const long n = static_cast<long>(g.n);
  const bool periodic = g.boundary == Boundary::Periodic;
  auto state = [&](long i, double& eta, double& u) {
    if (i >= 0 && i < n) {
      eta = s.eta[i];
      u = s.u[i];
    } else if (periodic) {
      const long j = (i % n + n) % n;
      eta = s.eta[j];
      u = s.u[j];
    } else {
      const long j = i < 0 ? -1 - i : 2 * n - 1 - i;
      eta = s.eta[j];
      u = -s.u[j];
    }
  };
  // Interface fluxes F_{i - 1/2} for i = 0..n.
  Field& fe = flux_eta_;
  Field& fu = flux_u_;
  for (long i = 0; i <= n; ++i) {
    double el, ul, er, ur;
    state(i - 1, el, ul);
    state(i, er, ur);
    const double a =
        std::max(std::abs(ul) + std::sqrt(1.0 + el), std::abs(ur) + std::sqrt(1.0 + er));
    fe[i] = 0.5 * (ul * (1.0 + el) + ur * (1.0 + er)) - 0.5 * a * (er - el);
    fu[i] = 0.5 * (el + 0.5 * ul * ul + er + 0.5 * ur * ur) - 0.5 * a * (ur - ul);
  }
  const double r = config_.dt / g.dx();
  for (long i = 0; i < n; ++i) {
    s.eta[i] -= r * (fe[i + 1] - fe[i]);
    s.u[i] -= r * (fu[i + 1] - fu[i]);
  }
}

void Stepper::step(FieldPair& state) {
  if (state.eta.size() != config_.grid.n || state.u.size() != config_.grid.n)
    throw GridMismatch("step: state size does not match grid");
  if (config_.system == System::ShallowWater) {
    step_shallow_water(state);
  } else {
    step_rk4(state);
  }
  state.t += config_.dt;
  check_state(state);
}

void step(FieldPair& state, const RunConfig& config) {
  Stepper stepper(config);
  stepper.step(state);
}

std::vector<FieldPair> evolve(const RunConfig& config) {
  config.validate();
  return evolve(config, make_initial(config.ic, config.grid));
}

std::vector<FieldPair> evolve(const RunConfig& config, const FieldPair& initial) {
  config.validate();
  if (initial.eta.size() != config.grid.n || initial.u.size() != config.grid.n)
    throw GridMismatch("evolve: initial state size does not match grid");
  check_state(initial);
  check_cfl(config, initial);

  const long steps = std::lround(config.t_end / config.dt);
  std::vector<double> times = config.snapshot_times;
  if (times.empty()) times = config.t_end > 0.0 ? std::vector<double>{0.0, config.t_end}
                                                : std::vector<double>{0.0};
  std::vector<std::pair<long, std::size_t>> targets;
  for (std::size_t k = 0; k < times.size(); ++k)
    targets.emplace_back(std::min(steps, std::lround(times[k] / config.dt)), k);
  std::sort(targets.begin(), targets.end());

  std::vector<FieldPair> out(times.size());
  FieldPair state = initial;
  state.t = 0.0;
  Stepper stepper(config);
  std::size_t next = 0;
  for (long s = 0;; ++s) {
    while (next < targets.size() && targets[next].first == s) {
      out[targets[next].second] = state;
      out[targets[next].second].t = static_cast<double>(s) * config.dt;
      ++next;
    }
    if (next == targets.size() || s == steps) break;
    stepper.step(state);
  }
  return out;
}

double error_norm(const FieldPair& a, const FieldPair& b, const Grid& grid) {
  if (a.eta.size() != grid.n || b.eta.size() != grid.n || a.u.size() != grid.n ||
      b.u.size() != grid.n)
    throw GridMismatch("error norm: states do not match the grid");
  Field h(grid.n);
  Field w(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    h[i] = a.eta[i] - b.eta[i];
    w[i] = a.u[i] - b.u[i];
  }
  const Field wx = d1(w, grid, Parity::Odd);
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.n; ++i) sum += h[i] * h[i] + w[i] * w[i] + wx[i] * wx[i];
  return std::sqrt(sum * grid.dx());
}

double state_norm(const FieldPair& a, const Grid& grid) {
  FieldPair zero;
  zero.eta.assign(grid.n, 0.0);
  zero.u.assign(grid.n, 0.0);
  return error_norm(a, zero, grid);
}

double mass(const FieldPair& s, const Grid& grid) {
  double sum = 0.0;
  for (double e : s.eta) sum += e;
  return sum * grid.dx();
}

double energy(const FieldPair& s, const Grid& grid, double delta) {
  const Field ux = d1(s.u, grid, Parity::Odd);
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.n; ++i)
    sum += s.eta[i] * s.eta[i] + (1.0 + s.eta[i]) * s.u[i] * s.u[i] + delta * ux[i] * ux[i];
  return sum * grid.dx();
}

ShockState shallow_water_shock_reference(double c) {
  const auto eq = wave::equilibria(c);
  return {eq.eta_tail, eq.u_tail, c};
}

double front_position(const FieldPair& s, const Grid& grid, double level) {
  for (std::size_t i = grid.n - 1; i > 0; --i) {
    const double a = s.eta[i - 1];
    const double b = s.eta[i];
    if (a >= level && b < level) {
      const double x0 = grid.x(i - 1);
      return x0 + (a - level) / (a - b) * grid.dx();
    }
  }
  throw NumericalFailure("front position: no downward crossing of the level");
}

}  // namespace borelab::pde
