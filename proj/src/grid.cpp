#include <cmath>
#include <sstream>

#include "borelab/error.hpp"
#include "borelab/pde.hpp"

namespace borelab::pde {
namespace {

// Value of f at index i in [-2, n + 1] using the grid's boundary closure.
inline double ghost(const Field& f, long i, long n, Boundary b, Parity parity) {
  if (i >= 0 && i < n) return f[static_cast<std::size_t>(i)];
  if (b == Boundary::Periodic) return f[static_cast<std::size_t>((i % n + n) % n)];
  const long mirror = i < 0 ? -1 - i : 2 * n - 1 - i;
  const double value = f[static_cast<std::size_t>(mirror)];
  return parity == Parity::Even ? value : -value;
}

}  // namespace

const char* to_string(Boundary b) { return b == Boundary::Periodic ? "periodic" : "reflective"; }

double Grid::x(std::size_t i) const {
  const double offset = boundary == Boundary::Periodic ? 0.0 : 0.5;
  return x_min + (static_cast<double>(i) + offset) * dx();
}

std::vector<double> Grid::nodes() const {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = x(i);
  return out;
}

void Grid::validate() const {
  if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
    std::ostringstream os;
    os << "grid: requires x_min < x_max (got [" << x_min << ", " << x_max << "])";
    throw InvalidArgument(os.str());
  }
  if (n < 16) {
    std::ostringstream os;
    os << "grid: requires at least 16 points (got " << n << ")";
    throw InvalidArgument(os.str());
  }
}

Grid make_grid(double x_min, double x_max, std::size_t n, Boundary boundary) {
  Grid g{x_min, x_max, n, boundary};
  g.validate();
  return g;
}

Grid make_grid_spacing(double x_min, double x_max, double dx, Boundary boundary) {
  if (!(dx > 0.0)) throw InvalidArgument("grid: spacing must be positive");
  const double cells = (x_max - x_min) / dx;
  const double rounded = std::round(cells);
  if (std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells)) {
    std::ostringstream os;
    os << "grid: spacing " << dx << " does not divide the interval [" << x_min << ", " << x_max
       << "]";
    throw InvalidArgument(os.str());
  }
  return make_grid(x_min, x_max, static_cast<std::size_t>(rounded), boundary);
}

void d1(const Field& f, Field& out, const Grid& grid, Parity parity) {
  const long n = static_cast<long>(grid.n);
  if (static_cast<long>(f.size()) != n) throw GridMismatch("d1: field size does not match grid");
  out.resize(f.size());
  const double s = 1.0 / (12.0 * grid.dx());
  for (long i = 2; i < n - 2; ++i)
    out[i] = s * (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]);
  for (long i : {0L, 1L, n - 2, n - 1}) {
    const Boundary b = grid.boundary;
    out[i] = s * (-ghost(f, i + 2, n, b, parity) + 8.0 * ghost(f, i + 1, n, b, parity) -
                  8.0 * ghost(f, i - 1, n, b, parity) + ghost(f, i - 2, n, b, parity));
  }
}

Field d1(const Field& f, const Grid& grid, Parity parity) {
  Field out;
  d1(f, out, grid, parity);
  return out;
}

void d2(const Field& f, Field& out, const Grid& grid, Parity parity) {
  const long n = static_cast<long>(grid.n);
  if (static_cast<long>(f.size()) != n) throw GridMismatch("d2: field size does not match grid");
  out.resize(f.size());
  const double s = 1.0 / (grid.dx() * grid.dx());
  for (long i = 1; i < n - 1; ++i) out[i] = s * (f[i + 1] - 2.0 * f[i] + f[i - 1]);
  for (long i : {0L, n - 1}) {
    const Boundary b = grid.boundary;
    out[i] = s * (ghost(f, i + 1, n, b, parity) - 2.0 * f[i] + ghost(f, i - 1, n, b, parity));
  }
}

Field d2(const Field& f, const Grid& grid, Parity parity) {
  Field out;
  d2(f, out, grid, parity);
  return out;
}

Helmholtz::Helmholtz(double delta, const Grid& grid, Parity parity)
    : delta_(delta), grid_(grid), parity_(parity) {
  if (!(delta >= 0.0)) throw InvalidArgument("helmholtz: requires delta >= 0");
  grid.validate();
  if (delta == 0.0) return;
  const std::size_t n = grid.n;
  const double r = delta / (grid.dx() * grid.dx());
  off_ = -r;
  Field diag(n, 1.0 + 2.0 * r);
  if (grid.boundary == Boundary::Reflective) {
    const double end = parity == Parity::Even ? 1.0 + r : 1.0 + 3.0 * r;
    diag.front() = end;
    diag.back() = end;
  } else {
    // Cyclic system: rank-one correction with u = (gamma, 0, ..., 0, off),
    // v = (1, 0, ..., 0, off / gamma).
    periodic_gamma_ = -diag.front();
    diag.front() -= periodic_gamma_;
    diag.back() -= off_ * off_ / periodic_gamma_;
  }
  c_prime_.resize(n);
  denom_.resize(n);
  double m = diag[0];
  denom_[0] = 1.0 / m;
  c_prime_[0] = off_ / m;
  for (std::size_t i = 1; i < n; ++i) {
    m = diag[i] - off_ * c_prime_[i - 1];
    denom_[i] = 1.0 / m;
    c_prime_[i] = off_ / m;
  }
  if (grid.boundary == Boundary::Periodic) {
    periodic_z_.assign(n, 0.0);
    periodic_z_.front() = periodic_gamma_;
    periodic_z_.back() = off_;
    thomas(periodic_z_);
    periodic_factor_ =
        1.0 / (1.0 + periodic_z_.front() + off_ * periodic_z_.back() / periodic_gamma_);
  }
}

void Helmholtz::thomas(Field& d) const {
  const std::size_t n = d.size();
  d[0] *= denom_[0];
  for (std::size_t i = 1; i < n; ++i) d[i] = (d[i] - off_ * d[i - 1]) * denom_[i];
  for (std::size_t i = n - 1; i-- > 0;) d[i] -= c_prime_[i] * d[i + 1];
}

void Helmholtz::solve_in_place(Field& rhs) const {
  if (rhs.size() != grid_.n) throw GridMismatch("helmholtz: field size does not match grid");
  if (delta_ == 0.0) return;
  thomas(rhs);
  if (grid_.boundary == Boundary::Periodic) {
    const double fact =
        (rhs.front() + off_ * rhs.back() / periodic_gamma_) * periodic_factor_;
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] -= fact * periodic_z_[i];
  }
}

Field helmholtz_apply_inverse(const Field& rhs, double delta, const Grid& grid, Parity parity) {
  return Helmholtz(delta, grid, parity).solve(rhs);
}

FieldPair make_initial(const InitialCondition& ic, const Grid& grid) {
  grid.validate();
  FieldPair s;
  s.eta.resize(grid.n);
  s.u.assign(grid.n, 0.0);
  if (const auto* r = std::get_if<SmoothedRiemann>(&ic)) {
    if (!(r->eta_left > -1.0)) throw InvalidArgument("initial condition: eta_left must exceed -1");
    if (!(r->ramp_width > 0.0)) throw InvalidArgument("initial condition: ramp_width must be > 0");
    for (std::size_t i = 0; i < grid.n; ++i) {
      const double step = 0.5 * (1.0 - std::tanh(grid.x(i) / r->ramp_width));
      s.eta[i] = r->eta_left * step;
      s.u[i] = r->u_left * step;
    }
  } else {
    const auto& g = std::get<Gaussian>(ic);
    if (!(g.width > 0.0)) throw InvalidArgument("initial condition: width must be > 0");
    if (!(g.amplitude > -1.0)) throw InvalidArgument("initial condition: amplitude must exceed -1");
    for (std::size_t i = 0; i < grid.n; ++i) {
      const double z = grid.x(i) / g.width;
      s.eta[i] = g.amplitude * std::exp(-z * z);
    }
  }
  return s;
}

FieldPair inject_profile(const tw::Profile& profile, const Grid& grid, double x_offset) {
  grid.validate();
  FieldPair s;
  s.eta.resize(grid.n);
  s.u.resize(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double u = tw::interpolate(profile, grid.x(i) - x_offset).u;
    s.u[i] = u;
    s.eta[i] = wave::eta_from_u(u, profile.params.c);
  }
  return s;
}

}  // namespace borelab::pde
