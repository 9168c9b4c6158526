#pragma once

// Method-of-lines solver for the dissipative Peregrine system
//
//   eta_t + (u + eta u)_x = 0
//   (I - delta d_xx) u_t = -eta_x - u u_x + epsilon u_xx
//
// plus a first-order finite-volume solver for the shallow-water system it
// reduces to when delta = epsilon = 0.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "borelab/profile.hpp"

namespace borelab::pde {

enum class Boundary { Periodic, Reflective };

const char* to_string(Boundary b);

/// Periodic grids use nodes x_i = x_min + i dx (x_max is identified with
/// x_min). Reflective grids use cell centres x_i = x_min + (i + 1/2) dx with
/// walls at both ends.
struct Grid {
  double x_min = 0.0;
  double x_max = 0.0;
  std::size_t n = 0;
  Boundary boundary = Boundary::Periodic;

  double dx() const { return (x_max - x_min) / static_cast<double>(n); }
  double x(std::size_t i) const;
  std::vector<double> nodes() const;
  /// Throws InvalidArgument unless x_max > x_min and n >= 16.
  void validate() const;
  bool operator==(const Grid&) const = default;
};

Grid make_grid(double x_min, double x_max, std::size_t n, Boundary boundary);
/// n = round((x_max - x_min) / dx); throws unless dx divides the length.
Grid make_grid_spacing(double x_min, double x_max, double dx, Boundary boundary);

using Field = std::vector<double>;

struct FieldPair {
  Field eta;
  Field u;
  double t = 0.0;
};

/// Behaviour of a field under reflection at a wall: the surface elevation is
/// even, the velocity odd.
enum class Parity { Even, Odd };

/// Fourth-order central first difference.
void d1(const Field& f, Field& out, const Grid& grid, Parity parity);
Field d1(const Field& f, const Grid& grid, Parity parity);
/// Second-order central second difference.
void d2(const Field& f, Field& out, const Grid& grid, Parity parity);
Field d2(const Field& f, const Grid& grid, Parity parity);

/// Direct solver for (I - delta D2) z = rhs, factored once.
class Helmholtz {
 public:
  Helmholtz(double delta, const Grid& grid, Parity parity = Parity::Odd);
  void solve_in_place(Field& rhs) const;
  Field solve(Field rhs) const {
    solve_in_place(rhs);
    return rhs;
  }

 private:
  void thomas(Field& d) const;

  double delta_;
  Grid grid_;
  Parity parity_;
  double off_ = 0.0;
  Field c_prime_;   // modified super-diagonal of the forward sweep
  Field denom_;     // reciprocal pivots
  Field periodic_z_;  // Sherman-Morrison correction vector
  double periodic_gamma_ = 0.0;
  double periodic_factor_ = 0.0;
};

Field helmholtz_apply_inverse(const Field& rhs, double delta, const Grid& grid,
                              Parity parity = Parity::Odd);

enum class System { PeregrineDissipative, PeregrineInviscid, ShallowWater };

const char* to_string(System s);
System system_from_string(const std::string& s);

struct SmoothedRiemann {
  double eta_left = 0.2;
  double ramp_width = 2.0;
  /// Velocity on the left; 0 for the rest-to-rest experiment, u0 to pose a
  /// single classical shock.
  double u_left = 0.0;
};

struct Gaussian {
  double amplitude = 1.0;
  double width = 10.0;
};

using InitialCondition = std::variant<SmoothedRiemann, Gaussian>;

FieldPair make_initial(const InitialCondition& ic, const Grid& grid);

/// Samples a traveling-wave profile on the grid with xi = x - x_offset.
FieldPair inject_profile(const tw::Profile& profile, const Grid& grid, double x_offset);

struct RunConfig {
  System system = System::PeregrineDissipative;
  double delta = 1.0;
  double epsilon = 0.0;
  Grid grid;
  double dt = 0.025;
  double t_end = 0.0;
  InitialCondition ic = SmoothedRiemann{};
  std::vector<double> snapshot_times;  ///< empty means {0, t_end}

  /// Parameter checks that do not need the initial state.
  void validate() const;
};

/// dt <= 0.9 dx / (1 + max|u| + sqrt(1 + max eta)); throws InvalidArgument.
void check_cfl(const RunConfig& config, const FieldPair& state);

/// Rates (eta_t, u_t) of the semi-discrete Peregrine system.
FieldPair semidiscrete_rhs_peregrine(const FieldPair& state, double delta, double epsilon,
                                     const Grid& grid);

/// Time stepper bound to one configuration; owns its work buffers.
class Stepper {
 public:
  explicit Stepper(const RunConfig& config);
  /// One step of size config.dt: RK4 for the Peregrine systems, forward
  /// Euler with Rusanov fluxes for shallow water. Throws Instability on
  /// non-finite values or loss of positive depth.
  void step(FieldPair& state);
  const RunConfig& config() const { return config_; }

 private:
  void rhs(const FieldPair& s, FieldPair& rate);
  void step_rk4(FieldPair& state);
  void step_shallow_water(FieldPair& state);

  RunConfig config_;
  std::optional<Helmholtz> helmholtz_;
  FieldPair k_[4];
  FieldPair stage_;
  Field work_a_;
  Field work_b_;
  Field flux_eta_;
  Field flux_u_;
};

void step(FieldPair& state, const RunConfig& config);

/// Snapshots at the requested times (nearest step), deterministic.
std::vector<FieldPair> evolve(const RunConfig& config);
std::vector<FieldPair> evolve(const RunConfig& config, const FieldPair& initial);

/// sqrt(||a.eta - b.eta||^2 + ||a.u - b.u||^2 + ||D1(a.u - b.u)||^2).
double error_norm(const FieldPair& a, const FieldPair& b, const Grid& grid);
/// The same norm of a single state.
double state_norm(const FieldPair& a, const Grid& grid);

double mass(const FieldPair& s, const Grid& grid);
/// integral of eta^2 + (1 + eta) u^2 + delta u_x^2; reported, not asserted.
double energy(const FieldPair& s, const Grid& grid, double delta);

struct ErrorSeries {
  double epsilon = 0.0;
  std::vector<double> times;
  std::vector<double> y;
  double K = 0.0;  ///< least-squares slope of y against epsilon t
  double window_start = 0.0;
  double window_end = 0.0;
};

struct ErrorStudy {
  double initial_norm = 0.0;
  std::vector<ErrorSeries> series;
};

/// Runs epsilon = 0 once and each listed epsilon once (concurrently on up to
/// `threads` workers) and compares them at the snapshot times of base.
ErrorStudy error_study(const RunConfig& base, const std::vector<double>& epsilons,
                       unsigned threads = 0);

/// Fits y = K eps t over t >= 1 while y < 0.1 initial_norm.
void fit_error_law(ErrorSeries& series, double initial_norm);

struct ShockState {
  double eta_tail = 0.0;
  double u_tail = 0.0;
  double speed = 0.0;
};

/// Classical shallow-water shock with speed c connecting (eta0, u0) to rest.
ShockState shallow_water_shock_reference(double c);

/// Rightmost position where eta crosses `level` downward, linearly
/// interpolated between nodes. Throws NumericalFailure when there is none.
double front_position(const FieldPair& s, const Grid& grid, double level);

}  // namespace borelab::pde
