#include "borelab/shape.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "borelab/error.hpp"

namespace borelab::tw {
namespace {

// Root of g(advance(state_i, x)) for x in (0, h), where g changes sign over
// the sample interval. Illinois variant of regula falsi.
double refine(const Profile& p, std::size_t i, const std::function<double(const PhasePoint&)>& g) {
  const PhasePoint base = p.state(i);
  double a = 0.0;
  double b = p.xi[i + 1] - p.xi[i];
  double fa = g(base);
  double fb = g(p.state(i + 1));
  if (fa == 0.0) return p.xi[i];
  if (fb == 0.0) return p.xi[i + 1];
  int side = 0;
  double x = a;
  for (int iter = 0; iter < 60; ++iter) {
    x = (a * fb - b * fa) / (fb - fa);
    const double fx = g(advance(base, x, p.params, p.options));
    if (fx == 0.0 || std::abs(b - a) < 1e-12) break;
    if ((fx < 0.0) == (fb < 0.0)) {
      b = x;
      fb = fx;
      if (side == -1) fa *= 0.5;
      side = -1;
    } else {
      a = x;
      fa = fx;
      if (side == 1) fb *= 0.5;
      side = 1;
    }
    if (std::abs(b - a) < 1e-12) break;
  }
  return p.xi[i] + x;
}

struct Fit {
  double slope = 0.0;
  double intercept = 0.0;
};

Fit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

void require_tail(const std::vector<double>& x, const char* which) {
  if (x.size() < 4) {
    std::ostringstream os;
    os << "shape report: only " << x.size() << " samples available for the " << which
       << " tail fit (need 4)";
    throw InsufficientSamples(os.str());
  }
}

double slack(const Profile& p, std::size_t i) {
  const double size = std::hypot(p.u[i], p.v[i]);
  return 10.0 * (p.options.atol + p.options.rtol * size);
}

double tail_value(const Profile& p) { return wave::equilibria(p.params).u_tail; }

}  // namespace

const char* to_string(ObservedRegime kind) {
  return kind == ObservedRegime::Monotone ? "Monotone" : "Oscillatory";
}

ShapeReport shape_report(const Profile& p) {
  const std::size_t n = p.size();
  if (n < 8) throw InsufficientSamples("shape report: profile has fewer than 8 samples");
  const double u0 = tail_value(p);
  ShapeReport r;

  auto v_of = [](const PhasePoint& s) { return s.v; };
  auto vprime_of = [&p](const PhasePoint& s) { return vector_field(s, p.params).v; };

  std::vector<double> vprime(n);
  for (std::size_t i = 0; i < n; ++i) vprime[i] = vprime_of(p.state(i));

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double v0 = p.v[i];
    const double v1 = p.v[i + 1];
    if ((v0 > 0.0 && v1 <= 0.0) || (v0 < 0.0 && v1 >= 0.0)) {
      if (v1 == 0.0 && i + 2 < n && (p.v[i + 2] > 0.0) == (v0 > 0.0)) continue;
      const double xi = refine(p, i, v_of);
      const double u = interpolate(p, xi).u;
      (v0 > 0.0 ? r.maxima : r.minima).push_back({xi, u});
    }
    const double w0 = vprime[i];
    const double w1 = vprime[i + 1];
    if ((w0 > 0.0 && w1 <= 0.0) || (w0 < 0.0 && w1 >= 0.0)) {
      if (w1 == 0.0 && i + 2 < n && (vprime[i + 2] > 0.0) == (w0 > 0.0)) continue;
      const double xi = refine(p, i, vprime_of);
      r.inflections.push_back({xi, interpolate(p, xi).u});
    }
  }
  r.regime_observed = (r.maxima.empty() && r.minima.empty()) ? ObservedRegime::Monotone
                                                             : ObservedRegime::Oscillatory;

  // Right tail: pure exponential decay along the stable direction.
  {
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < n; ++i) {
      if (p.u[i] > 0.0 && p.u[i] < 1e-4 * u0) {
        x.push_back(p.xi[i]);
        y.push_back(std::log(p.u[i]));
      }
    }
    require_tail(x, "right");
    r.tail_decay_rate_plus = least_squares(x, y).slope;
  }

  // Left tail, restricted to the linear regime around (u0, 0).
  const double upper = 1e-3 * u0;
  const double lower = 10.0 * p.options.atol;
  if (r.regime_observed == ObservedRegime::Oscillatory) {
    std::vector<Extremum> all = r.maxima;
    all.insert(all.end(), r.minima.begin(), r.minima.end());
    std::sort(all.begin(), all.end(), [](const Extremum& a, const Extremum& b) { return a.xi < b.xi; });
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& e : all) {
      const double dev = std::abs(e.u - u0);
      if (dev < upper && dev > lower) {
        x.push_back(e.xi);
        y.push_back(std::log(dev));
      }
    }
    require_tail(x, "left");
    r.tail_decay_rate_minus = least_squares(x, y).slope;

    std::vector<double> peaks;
    for (const auto& e : r.maxima) {
      const double dev = e.u - u0;
      if (dev < upper && dev > lower) peaks.push_back(e.xi);
    }
    if (peaks.size() < 2) {
      peaks.clear();
      for (const auto& e : r.maxima) peaks.push_back(e.xi);
    }
    if (peaks.size() >= 2) {
      const double spacing = (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
      r.tail_frequency = 2.0 * M_PI / spacing;
    }
  } else {
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < n; ++i) {
      const double dev = std::abs(p.u[i] - u0);
      if (dev < upper && dev > lower) {
        x.push_back(p.xi[i]);
        y.push_back(std::log(dev));
      }
    }
    require_tail(x, "left");
    r.tail_decay_rate_minus = least_squares(x, y).slope;
  }
  return r;
}

double verify_energy_identity(const Profile& p) {
  if (!(p.params.epsilon > 0.0)) throw InvalidArgument("energy identity requires epsilon > 0");
  if (p.size() < 2) throw InsufficientSamples("energy identity: profile too short");
  const double dc = p.params.delta_c();
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const double a = p.v[i] / dc;
    const double b = p.v[i + 1] / dc;
    integral += 0.5 * (a * a + b * b) * (p.xi[i + 1] - p.xi[i]);
  }
  const double f = wave::dissipation_integral_rhs(p.params.c);
  return std::abs(p.params.epsilon * integral - f) / f;
}

InvariantCheck verify_triangle_invariant(const Profile& p) {
  const auto sp = wave::tail_eigenvalues(p.params);
  if (!sp.triangle_slope) {
    throw WrongRegime("triangle invariant applies to the regularized regime only");
  }
  const double m = *sp.triangle_slope;
  const double u0 = tail_value(p);
  InvariantCheck check;
  check.worst_margin = INFINITY;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double u = p.u[i];
    const double v = p.v[i];
    const double margin = std::min({-v, u, u0 * (1.0 + 1e-9) - u, v - m * (u - u0)});
    check.worst_margin = std::min(check.worst_margin, margin);
    if (margin < -slack(p, i)) ++check.violations;
  }
  check.pass = check.violations == 0;
  return check;
}

double v_lower_bound(const WaveParams& params) {
  params.validate();
  if (!(params.epsilon > 0.0)) throw InvalidArgument("v bounds require epsilon > 0");
  const double c = params.c;
  return -(params.delta_c() / params.epsilon) * (2.0 - 3.0 * std::cbrt(c * c) + c * c);
}

double v_upper_bound(const WaveParams& params) {
  params.validate();
  if (!(params.epsilon > 0.0)) throw InvalidArgument("v bounds require epsilon > 0");
  const double c = params.c;
  const double ubar = wave::solitary_amplitude(c);
  return (c / (c - ubar) + 0.5 * c * c) / (params.epsilon / params.delta_c());
}

InvariantCheck verify_v_bounds(const Profile& p) {
  const double lo = v_lower_bound(p.params);
  const double hi = v_upper_bound(p.params);
  InvariantCheck check;
  check.worst_margin = INFINITY;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double margin = std::min(p.v[i] - lo, hi - p.v[i]);
    check.worst_margin = std::min(check.worst_margin, margin);
    if (margin < -slack(p, i)) ++check.violations;
  }
  check.pass = check.violations == 0;
  return check;
}

InvariantCheck verify_liapunov(const Profile& p) {
  InvariantCheck check;
  check.worst_margin = INFINITY;
  double previous = wave::liapunov(p.state(0), p.params);
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const double next = wave::liapunov(p.state(i + 1), p.params);
    const double grad = std::hypot(wave::potential_derivative(p.u[i], p.params), p.v[i]);
    const double size = std::hypot(p.u[i], p.v[i]);
    const double tol =
        10.0 * (p.options.atol + p.options.rtol * std::max(std::abs(previous), grad * size));
    const double margin = next - previous;
    check.worst_margin = std::min(check.worst_margin, margin);
    if (margin < -tol) ++check.violations;
    previous = next;
  }
  check.pass = check.violations == 0;
  return check;
}

std::size_t count_self_intersections(const Profile& p) {
  const std::size_t n = p.size();
  if (n < 4) return 0;
  // Coordinates relative to the tail equilibrium keep the tight spiral turns
  // well conditioned.
  const double u0 = tail_value(p);
  std::vector<double> x(n);
  std::vector<double> y(n);
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = p.u[i] - u0;
    y[i] = p.v[i];
    xmin = std::min(xmin, x[i]);
    xmax = std::max(xmax, x[i]);
    ymin = std::min(ymin, y[i]);
    ymax = std::max(ymax, y[i]);
  }
  const double cells = std::max(1.0, std::floor(std::sqrt(static_cast<double>(n))));
  const double wx = std::max((xmax - xmin) / cells, 1e-300);
  const double wy = std::max((ymax - ymin) / cells, 1e-300);
  const long nc = static_cast<long>(cells);
  auto cell = [&](double v, double lo, double w) {
    return std::clamp(static_cast<long>((v - lo) / w), 0L, nc - 1);
  };

  std::unordered_map<long, std::vector<std::size_t>> buckets;
  for (std::size_t s = 0; s + 1 < n; ++s) {
    const long i0 = cell(std::min(x[s], x[s + 1]), xmin, wx);
    const long i1 = cell(std::max(x[s], x[s + 1]), xmin, wx);
    const long j0 = cell(std::min(y[s], y[s + 1]), ymin, wy);
    const long j1 = cell(std::max(y[s], y[s + 1]), ymin, wy);
    for (long i = i0; i <= i1; ++i)
      for (long j = j0; j <= j1; ++j) buckets[i * nc + j].push_back(s);
  }

  auto orient = [&](std::size_t a, std::size_t b, std::size_t c) {
    const double v = (x[b] - x[a]) * (y[c] - y[a]) - (y[b] - y[a]) * (x[c] - x[a]);
    return (v > 0.0) - (v < 0.0);
  };
  auto crosses = [&](std::size_t s, std::size_t t) {
    const int o1 = orient(s, s + 1, t);
    const int o2 = orient(s, s + 1, t + 1);
    const int o3 = orient(t, t + 1, s);
    const int o4 = orient(t, t + 1, s + 1);
    return o1 * o2 < 0 && o3 * o4 < 0;
  };

  std::vector<std::pair<std::size_t, std::size_t>> hits;
  for (const auto& [key, segs] : buckets) {
    for (std::size_t a = 0; a < segs.size(); ++a)
      for (std::size_t b = a + 1; b < segs.size(); ++b) {
        const std::size_t s = std::min(segs[a], segs[b]);
        const std::size_t t = std::max(segs[a], segs[b]);
        if (t <= s + 1) continue;
        if (crosses(s, t)) hits.emplace_back(s, t);
      }
  }
  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  return hits.size();
}

}  // namespace borelab::tw
