#include "borelab/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "borelab/error.hpp"

namespace borelab::config {
namespace {

bool same(const tw::ProfileOptions& a, const tw::ProfileOptions& b) {
  return a.seed_offset == b.seed_offset && a.rtol == b.rtol && a.atol == b.atol &&
         a.max_span == b.max_span && a.tail_tol == b.tail_tol && a.max_step == b.max_step;
}

bool same(const pde::InitialCondition& a, const pde::InitialCondition& b) {
  if (a.index() != b.index()) return false;
  if (const auto* r = std::get_if<pde::SmoothedRiemann>(&a)) {
    const auto& s = std::get<pde::SmoothedRiemann>(b);
    return r->eta_left == s.eta_left && r->ramp_width == s.ramp_width && r->u_left == s.u_left;
  }
  const auto& g = std::get<pde::Gaussian>(a);
  const auto& h = std::get<pde::Gaussian>(b);
  return g.amplitude == h.amplitude && g.width == h.width;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& key,
                       const std::string& what) {
  std::ostringstream os;
  os << source << ":" << line << ": ";
  if (!key.empty()) os << "key '" << key << "': ";
  os << what;
  throw InvalidArgument(os.str());
}

double parse_number(const std::string& text, const std::string& source, int line,
                    const std::string& key) {
  if (text.empty()) fail(source, line, key, "missing value");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v))
    fail(source, line, key, "expected a finite number, got '" + text + "'");
  return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& source, int line,
                               const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(trim(item), source, line, key));
  return out;
}

pde::SmoothedRiemann& riemann(Config& c) {
  if (!std::holds_alternative<pde::SmoothedRiemann>(c.ic)) c.ic = pde::SmoothedRiemann{};
  return std::get<pde::SmoothedRiemann>(c.ic);
}

pde::Gaussian& gaussian(Config& c) {
  if (!std::holds_alternative<pde::Gaussian>(c.ic)) c.ic = pde::Gaussian{};
  return std::get<pde::Gaussian>(c.ic);
}

Config wave_preset(double c, double delta, double epsilon, std::string note) {
  Config cfg;
  cfg.c = c;
  cfg.delta = delta;
  cfg.epsilon = epsilon;
  cfg.note = std::move(note);
  return cfg;
}

}  // namespace

bool Config::operator==(const Config& o) const {
  return preset == o.preset && note == o.note && c == o.c && delta == o.delta &&
         epsilon == o.epsilon && same(profile, o.profile) && system == o.system &&
         x_min == o.x_min && x_max == o.x_max && dx == o.dx && dt == o.dt && t_end == o.t_end &&
         boundary == o.boundary && same(ic, o.ic) && snapshot_interval == o.snapshot_interval &&
         epsilons == o.epsilons;
}

const std::vector<KeyInfo>& known_keys() {
  static const std::vector<KeyInfo> keys = {
      {"preset", "expand a bundled preset first; must precede every other key"},
      {"note", "free-text provenance note"},
      {"c", "phase speed, c > 1"},
      {"delta", "dispersion coefficient, > 0"},
      {"epsilon", "dissipation coefficient, >= 0"},
      {"seed_offset", "stable-manifold seed distance (0 = 1e-8 u0)"},
      {"rtol", "integrator relative tolerance (default 1e-10)"},
      {"atol", "integrator absolute tolerance (default 1e-12)"},
      {"max_span", "largest xi span before giving up (default 1e4)"},
      {"tail_tol", "tail stopping tolerance (default 1e-8)"},
      {"max_step", "largest integrator step (0 = automatic)"},
      {"system", "peregrine-dissipative | peregrine-inviscid | shallow-water"},
      {"x_min", "left end of the domain (default -800)"},
      {"x_max", "right end of the domain (default 800)"},
      {"dx", "grid spacing (default 0.25)"},
      {"dt", "time step (default 0.025)"},
      {"t_end", "final time (default 0)"},
      {"boundary", "periodic | reflective (default reflective)"},
      {"ic", "riemann | gaussian (default riemann)"},
      {"eta_left", "riemann: left elevation (default 0.2)"},
      {"ramp_width", "riemann: tanh ramp width (default 2)"},
      {"u_left", "riemann: left velocity (default 0)"},
      {"amplitude", "gaussian: peak elevation (default 1)"},
      {"width", "gaussian: e-folding half-width (default 10)"},
      {"snapshot_interval", "time between snapshots (0 = initial and final only)"},
      {"epsilons", "comma-separated dissipation values for error-study"},
  };
  return keys;
}

Config parse_config(const std::string& text, const std::string& source) {
  Config cfg;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  bool any_key = false;
  while (std::getline(in, raw)) {
    ++line;
    const std::string stripped = trim(raw);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) fail(source, line, "", "expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    auto num = [&]() { return parse_number(value, source, line, key); };

    if (key == "preset") {
      if (any_key) fail(source, line, key, "preset must be the first key");
      try {
        cfg = find_preset(value).config;
      } catch (const InvalidArgument& e) {
        fail(source, line, key, e.what());
      }
    } else if (key == "note") {
      cfg.note = value;
    } else if (key == "c") {
      cfg.c = num();
    } else if (key == "delta") {
      cfg.delta = num();
    } else if (key == "epsilon") {
      cfg.epsilon = num();
    } else if (key == "seed_offset") {
      cfg.profile.seed_offset = num();
    } else if (key == "rtol") {
      cfg.profile.rtol = num();
    } else if (key == "atol") {
      cfg.profile.atol = num();
    } else if (key == "max_span") {
      cfg.profile.max_span = num();
    } else if (key == "tail_tol") {
      cfg.profile.tail_tol = num();
    } else if (key == "max_step") {
      cfg.profile.max_step = num();
    } else if (key == "system") {
      try {
        cfg.system = pde::system_from_string(value);
      } catch (const InvalidArgument& e) {
        fail(source, line, key, e.what());
      }
    } else if (key == "x_min") {
      cfg.x_min = num();
    } else if (key == "x_max") {
      cfg.x_max = num();
    } else if (key == "dx") {
      cfg.dx = num();
    } else if (key == "dt") {
      cfg.dt = num();
    } else if (key == "t_end") {
      cfg.t_end = num();
    } else if (key == "boundary") {
      if (value == "periodic") {
        cfg.boundary = pde::Boundary::Periodic;
      } else if (value == "reflective") {
        cfg.boundary = pde::Boundary::Reflective;
      } else {
        fail(source, line, key, "expected periodic or reflective, got '" + value + "'");
      }
    } else if (key == "ic") {
      if (value == "riemann") {
        riemann(cfg);
      } else if (value == "gaussian") {
        gaussian(cfg);
      } else {
        fail(source, line, key, "expected riemann or gaussian, got '" + value + "'");
      }
    } else if (key == "eta_left") {
      riemann(cfg).eta_left = num();
    } else if (key == "ramp_width") {
      riemann(cfg).ramp_width = num();
    } else if (key == "u_left") {
      riemann(cfg).u_left = num();
    } else if (key == "amplitude") {
      gaussian(cfg).amplitude = num();
    } else if (key == "width") {
      gaussian(cfg).width = num();
    } else if (key == "snapshot_interval") {
      cfg.snapshot_interval = num();
    } else if (key == "epsilons") {
      cfg.epsilons = parse_list(value, source, line, key);
    } else {
      fail(source, line, key, "unknown key");
    }
    any_key = true;
  }
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path);
}

std::string format_double(double v) {
  char buf[40];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string export_config(const Config& c) {
  std::ostringstream os;
  auto put = [&os](const char* key, const std::string& value) {
    os << key << " = " << value << "\n";
  };
  auto num = [&](const char* key, double v) { put(key, format_double(v)); };
  if (!c.preset.empty()) put("preset", c.preset);
  if (!c.note.empty()) put("note", c.note);
  if (c.c) num("c", *c.c);
  if (c.delta) num("delta", *c.delta);
  if (c.epsilon) num("epsilon", *c.epsilon);
  num("seed_offset", c.profile.seed_offset);
  num("rtol", c.profile.rtol);
  num("atol", c.profile.atol);
  num("max_span", c.profile.max_span);
  num("tail_tol", c.profile.tail_tol);
  num("max_step", c.profile.max_step);
  if (c.system) put("system", pde::to_string(*c.system));
  num("x_min", c.x_min);
  num("x_max", c.x_max);
  num("dx", c.dx);
  num("dt", c.dt);
  num("t_end", c.t_end);
  put("boundary", pde::to_string(c.boundary));
  if (const auto* r = std::get_if<pde::SmoothedRiemann>(&c.ic)) {
    put("ic", "riemann");
    num("eta_left", r->eta_left);
    num("ramp_width", r->ramp_width);
    num("u_left", r->u_left);
  } else {
    const auto& g = std::get<pde::Gaussian>(c.ic);
    put("ic", "gaussian");
    num("amplitude", g.amplitude);
    num("width", g.width);
  }
  num("snapshot_interval", c.snapshot_interval);
  if (!c.epsilons.empty()) {
    std::string list;
    for (std::size_t i = 0; i < c.epsilons.size(); ++i) {
      if (i) list += ", ";
      list += format_double(c.epsilons[i]);
    }
    put("epsilons", list);
  }
  return os.str();
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = [] {
    const double third = 1.0 / 3.0;
    const char* assumed =
        "delta = 1/3 assumed (unit depth scaling)";
    std::vector<Preset> p;
    p.push_back({"fig1", "potential G(u) for c = 2, delta = 1/2",
                 wave_preset(2.0, 0.5, 0.0, "potential plot; epsilon irrelevant")});
    p.push_back({"fig2", "dissipation-dominated regularized shock",
                 wave_preset(1.3, 0.2, 1.2, "monotone profile inside the triangle")});
    p.push_back({"fig3-c2", "oscillatory profile at c = 2",
                 wave_preset(2.0, 0.5, 0.3, "delta and epsilon chosen here")});
    p.push_back({"fig3-c5", "oscillatory profile at c = 5",
                 wave_preset(5.0, 0.5, 0.3, "delta and epsilon chosen here")});
    p.push_back({"fig5", "undular bore, Froude 1.11", wave_preset(1.11, third, 0.06, assumed)});
    p.push_back({"fig6a", "undular bore, Froude 1.081", wave_preset(1.081, third, 0.05, assumed)});
    p.push_back({"fig6b", "undular bore, Froude 1.104", wave_preset(1.104, third, 0.05, assumed)});
    p.push_back({"fig6c", "undular bore, Froude 1.192", wave_preset(1.192, third, 0.05, assumed)});
    p.push_back({"fig9", "strongly damped bore, Froude 1.45", wave_preset(1.45, third, 0.6, assumed)});

    Config riemann;
    riemann.note = "smoothed Riemann data; eta_left and ramp width chosen here";
    riemann.delta = 1.0;
    riemann.epsilon = 0.1;
    riemann.system = pde::System::PeregrineDissipative;
    riemann.x_min = -800.0;
    riemann.x_max = 800.0;
    riemann.dx = 0.25;
    riemann.dt = 0.025;
    riemann.t_end = 200.0;
    riemann.boundary = pde::Boundary::Reflective;
    riemann.ic = pde::SmoothedRiemann{0.2, 2.0, 0.0};
    riemann.snapshot_interval = 10.0;
    riemann.epsilons = {0.1, 0.01};
    p.push_back({"sec4-riemann", "dissipative vs dispersive shock from Riemann data", riemann});

    Config gauss = riemann;
    gauss.note = "Gaussian hump exp(-x^2/100), periodic domain";
    gauss.boundary = pde::Boundary::Periodic;
    gauss.ic = pde::Gaussian{1.0, 10.0};
    p.push_back({"sec4-gaussian", "pulses generated by a Gaussian hump", gauss});

    for (auto& preset : p) preset.config.preset = preset.name;
    return p;
  }();
  return all;
}

const Preset& find_preset(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return p;
  std::string names;
  for (const auto& p : presets()) names += (names.empty() ? "" : ", ") + p.name;
  throw InvalidArgument("unknown preset '" + name + "' (available: " + names + ")");
}

wave::WaveParams wave_params(const Config& c) {
  if (!c.c || !c.delta || !c.epsilon)
    throw InvalidArgument("configuration lacks c, delta or epsilon");
  return wave::make_params(*c.c, *c.delta, *c.epsilon);
}

pde::RunConfig run_config(const Config& c) {
  if (!c.system) throw InvalidArgument("configuration lacks 'system'");
  pde::RunConfig r;
  r.system = *c.system;
  if (r.system != pde::System::ShallowWater) {
    if (!c.delta) throw InvalidArgument("configuration lacks 'delta'");
    r.delta = *c.delta;
  } else {
    r.delta = 0.0;
  }
  r.epsilon = (r.system == pde::System::PeregrineDissipative && c.epsilon) ? *c.epsilon : 0.0;
  if (r.system == pde::System::PeregrineDissipative && !c.epsilon)
    throw InvalidArgument("configuration lacks 'epsilon'");
  r.grid = pde::make_grid_spacing(c.x_min, c.x_max, c.dx, c.boundary);
  r.dt = c.dt;
  r.t_end = c.t_end;
  r.ic = c.ic;
  if (c.snapshot_interval < 0.0) throw InvalidArgument("snapshot_interval must be >= 0");
  if (c.snapshot_interval > 0.0) {
    const long count = static_cast<long>(std::floor(c.t_end / c.snapshot_interval + 1e-9));
    for (long k = 0; k <= count; ++k) r.snapshot_times.push_back(k * c.snapshot_interval);
    if (std::abs(r.snapshot_times.back() - c.t_end) > 0.5 * c.dt)
      r.snapshot_times.push_back(c.t_end);
  }
  r.validate();
  return r;
}

}  // namespace borelab::config
