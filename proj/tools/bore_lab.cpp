// bore-lab: traveling-wave and evolution experiments for the dissipative
// Peregrine system.
//
// Exit codes: 0 success, 2 invalid input or configuration, 3 numerical
// failure, 1 anything unexpected (for example an unwritable output path).

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "borelab/config.hpp"
#include "borelab/error.hpp"
#include "borelab/io.hpp"
#include "borelab/overlay.hpp"
#include "borelab/pde.hpp"
#include "borelab/shape.hpp"
#include "borelab/waveform.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace borelab;

namespace {

struct WaveFlags {
  std::string preset;
  std::string config_path;
  std::optional<double> c;
  std::optional<double> delta;
  std::optional<double> epsilon;
};

void add_wave_flags(CLI::App* cmd, WaveFlags& f) {
  cmd->add_option("--preset", f.preset, "start from a bundled preset");
  cmd->add_option("--config", f.config_path, "start from a configuration file");
  cmd->add_option("--c", f.c, "phase speed (c > 1)");
  cmd->add_option("--delta", f.delta, "dispersion coefficient (> 0)");
  cmd->add_option("--epsilon", f.epsilon, "dissipation coefficient (>= 0)");
}

config::Config base_config(const std::string& preset, const std::string& path) {
  if (!preset.empty() && !path.empty())
    throw InvalidArgument("use either --preset or --config, not both");
  if (!preset.empty()) return config::find_preset(preset).config;
  if (!path.empty()) return config::load_config(path);
  return {};
}

config::Config resolve(const WaveFlags& f) {
  config::Config cfg = base_config(f.preset, f.config_path);
  if (f.c) cfg.c = f.c;
  if (f.delta) cfg.delta = f.delta;
  if (f.epsilon) cfg.epsilon = f.epsilon;
  if (!cfg.c) throw InvalidArgument("missing phase speed: pass --c, --preset or --config");
  if (!cfg.delta) throw InvalidArgument("missing dispersion: pass --delta, --preset or --config");
  if (!cfg.epsilon) cfg.epsilon = 0.0;
  return cfg;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

json complex_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json classify_json(const wave::WaveParams& p) {
  const auto regime = wave::classify_regime(p);
  const auto eq = wave::equilibria(p);
  const auto sp = wave::tail_eigenvalues(p);
  const double ubar = wave::solitary_amplitude(p);
  json j;
  j["c"] = p.c;
  j["delta"] = p.delta;
  j["epsilon"] = p.epsilon;
  j["kind"] = wave::to_string(regime.kind);
  j["epsilon_squared"] = regime.criterion_lhs;
  j["criterion_rhs"] = regime.criterion_rhs;
  j["critical_epsilon"] = wave::critical_epsilon(p.c, p.delta);
  j["u0"] = eq.u_tail;
  j["eta0"] = eq.eta_tail;
  j["u_bar"] = ubar;
  j["eta_bar"] = wave::eta_from_u(ubar, p.c);
  j["lambda_minus"] = sp.lambda_minus;
  j["lambda_plus"] = sp.lambda_plus;
  j["Lambda_minus"] = complex_json(sp.tail.minus());
  j["Lambda_plus"] = complex_json(sp.tail.plus());
  j["alpha"] = sp.alpha;
  if (sp.triangle_slope) j["triangle_slope"] = *sp.triangle_slope;
  return j;
}

json extrema_json(const std::vector<tw::Extremum>& list) {
  json a = json::array();
  for (const auto& e : list) a.push_back({e.xi, e.u});
  return a;
}

unsigned default_threads() {
  if (const char* env = std::getenv("BORE_LAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
      throw InvalidArgument(std::string("BORE_LAB_THREADS must be a positive integer, got '") +
                            env + "'");
    return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// The initial feature sits at x = 0; waves must not reach the boundary.
void horizon_check(const pde::RunConfig& run) {
  const double distance = std::min(-run.grid.x_min, run.grid.x_max);
  if (!(run.t_end < distance / 3.0)) {
    std::ostringstream os;
    os << "horizon check failed: t_end = " << run.t_end
       << " must stay below (distance to boundary)/3 = " << distance / 3.0;
    throw InvalidArgument(os.str());
  }
}

std::string snapshot_name(const std::string& stem, std::size_t k) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%03zu.csv", stem.c_str(), k);
  return buf;
}

int cmd_classify(const WaveFlags& f) {
  const auto p = config::wave_params(resolve(f));
  std::cout << classify_json(p).dump(2) << "\n";
  return 0;
}

struct ProfileFlags {
  WaveFlags wave;
  std::string out;
  std::optional<double> seed_offset, rtol, atol, tail_tol, max_span;
};

int cmd_profile(const ProfileFlags& f) {
  config::Config cfg = resolve(f.wave);
  if (f.seed_offset) cfg.profile.seed_offset = *f.seed_offset;
  if (f.rtol) cfg.profile.rtol = *f.rtol;
  if (f.atol) cfg.profile.atol = *f.atol;
  if (f.tail_tol) cfg.profile.tail_tol = *f.tail_tol;
  if (f.max_span) cfg.profile.max_span = *f.max_span;
  const auto p = config::wave_params(cfg);
  const auto profile = tw::integrate_profile(p, cfg.profile);
  const auto report = tw::shape_report(profile);

  const fs::path prefix(f.out);
  const std::string stem = prefix.filename().string();
  {
    auto out = open_out(prefix.string() + ".csv");
    io::write_profile_csv(out, profile);
  }
  json j;
  j["params"] = {{"c", p.c}, {"delta", p.delta}, {"epsilon", p.epsilon}};
  j["regime_predicted"] = wave::to_string(wave::classify_regime(p).kind);
  j["regime_observed"] = tw::to_string(report.regime_observed);
  j["maxima"] = extrema_json(report.maxima);
  j["minima"] = extrema_json(report.minima);
  j["inflections"] = extrema_json(report.inflections);
  j["tail_decay_rate_plus"] = report.tail_decay_rate_plus;
  j["tail_decay_rate_minus"] = report.tail_decay_rate_minus;
  j["tail_frequency"] = report.tail_frequency ? json(*report.tail_frequency) : json(nullptr);
  j["max_u"] = *std::max_element(profile.u.begin(), profile.u.end());
  j["solitary_amplitude"] = wave::solitary_amplitude(p);
  j["energy_residual"] = tw::verify_energy_identity(profile);
  j["samples"] = profile.size();
  {
    auto out = open_out(prefix.string() + "_shape.json");
    out << j.dump(2) << "\n";
  }
  {
    auto out = open_out(prefix.string() + ".gp");
    out << "# gnuplot script; run from the directory holding " << stem << ".csv\n"
        << "set datafile separator ','\n"
        << "set terminal pngcairo size 1200,450\n"
        << "set output '" << stem << ".png'\n"
        << "set multiplot layout 1,2\n"
        << "set xlabel 'xi'\nset ylabel 'eta'\n"
        << "plot '" << stem << ".csv' using 1:4 with lines title 'eta'\n"
        << "set xlabel 'u'\nset ylabel 'v'\n"
        << "plot '" << stem << ".csv' using 2:3 with lines title 'orbit'\n"
        << "unset multiplot\n";
  }
  std::cout << prefix.string() << ".csv\n"
            << prefix.string() << "_shape.json\n"
            << prefix.string() << ".gp\n";
  return 0;
}

int cmd_speed_amplitude(double c_min, double c_max, int n, const std::string& out_path) {
  if (!(c_min > 1.0 && c_max > c_min))
    throw InvalidArgument("speed-amplitude requires 1 < c-min < c-max");
  if (n < 2) throw InvalidArgument("speed-amplitude requires --n >= 2");
  std::ostringstream os;
  os << "c,eta_tail,eta_solitary,eta_T1994_inverse\n";
  for (int k = 0; k < n; ++k) {
    const double c = c_min + (c_max - c_min) * k / (n - 1);
    const double eta_tail = wave::equilibria(c).eta_tail;
    const double eta_bar = wave::eta_from_u(wave::solitary_amplitude(c), c);
    os << io::format17(c) << ',' << io::format17(eta_tail) << ',' << io::format17(eta_bar) << ','
       << io::format17(wave::bore_tail_t1994(c)) << '\n';
  }
  if (out_path.empty() || out_path == "-") {
    std::cout << os.str();
  } else {
    auto out = open_out(out_path);
    out << os.str();
  }
  return 0;
}

struct RunFlags {
  std::string preset;
  std::string config_path;
  std::string out = "bore_lab_out";
  std::string reference;
  std::optional<double> t_end;
};

config::Config resolve_run(const RunFlags& f) {
  config::Config cfg = base_config(f.preset, f.config_path);
  if (f.preset.empty() && f.config_path.empty())
    throw InvalidArgument("pass --config or --preset");
  if (f.t_end) cfg.t_end = *f.t_end;
  return cfg;
}

int cmd_evolve(const RunFlags& f) {
  const config::Config cfg = resolve_run(f);
  const pde::RunConfig run = config::run_config(cfg);
  horizon_check(run);
  if (!f.reference.empty() && f.reference != "shallow-water")
    throw InvalidArgument("--reference accepts only 'shallow-water'");
  const auto snaps = pde::evolve(run);

  const fs::path dir(f.out);
  fs::create_directories(dir);
  json manifest;
  manifest["system"] = pde::to_string(run.system);
  manifest["delta"] = run.delta;
  manifest["epsilon"] = run.epsilon;
  manifest["dx"] = run.grid.dx();
  manifest["dt"] = run.dt;
  manifest["boundary"] = pde::to_string(run.grid.boundary);
  json list = json::array();
  for (std::size_t k = 0; k < snaps.size(); ++k) {
    const std::string name = snapshot_name("snapshot", k);
    auto out = open_out(dir / name);
    io::write_snapshot_csv(out, run.grid, snaps[k]);
    list.push_back({{"file", name},
                    {"t", snaps[k].t},
                    {"mass", pde::mass(snaps[k], run.grid)},
                    {"energy", pde::energy(snaps[k], run.grid, run.delta)}});
  }
  manifest["snapshots"] = list;

  if (!f.reference.empty()) {
    pde::RunConfig sw = run;
    sw.system = pde::System::ShallowWater;
    sw.epsilon = 0.0;
    const auto ref = pde::evolve(sw);
    json rlist = json::array();
    for (std::size_t k = 0; k < ref.size(); ++k) {
      const std::string name = snapshot_name("reference", k);
      auto out = open_out(dir / name);
      io::write_snapshot_csv(out, run.grid, ref[k]);
      rlist.push_back({{"file", name}, {"t", ref[k].t}});
    }
    json r;
    r["system"] = "shallow-water";
    r["snapshots"] = rlist;
    // Classical shock implied by the front speed between the last two snapshots.
    if (ref.size() >= 2 && ref.back().t > ref[ref.size() - 2].t && ref[ref.size() - 2].t > 0.0) {
      auto plateau = [&](const pde::FieldPair& s) {
        double m = 0.0;
        for (std::size_t i = 0; i < run.grid.n; ++i)
          if (run.grid.x(i) > 0.0) m = std::max(m, s.eta[i]);
        return m;
      };
      try {
        const auto& a = ref[ref.size() - 2];
        const auto& b = ref.back();
        const double level = 0.5 * plateau(b);
        const double speed = (pde::front_position(b, run.grid, level) -
                              pde::front_position(a, run.grid, level)) /
                             (b.t - a.t);
        if (speed > 1.0) {
          const auto shock = pde::shallow_water_shock_reference(speed);
          r["shock"] = {{"speed", shock.speed},
                        {"eta_tail", shock.eta_tail},
                        {"u_tail", shock.u_tail}};
        }
      } catch (const NumericalFailure&) {
      }
    }
    manifest["reference"] = r;
  }
  {
    auto out = open_out(dir / "manifest.json");
    out << manifest.dump(2) << "\n";
  }
  std::cout << (dir / "manifest.json").string() << "\n";
  return 0;
}

int cmd_error_study(const RunFlags& f, const std::vector<double>& eps_flag, bool eps_given,
                    std::optional<unsigned> threads) {
  config::Config cfg = resolve_run(f);
  if (eps_given) cfg.epsilons = eps_flag;
  if (cfg.epsilons.empty()) throw InvalidArgument("error-study needs a non-empty epsilon list");
  if (!cfg.system) cfg.system = pde::System::PeregrineDissipative;
  if (!cfg.epsilon) cfg.epsilon = cfg.epsilons.front();
  const pde::RunConfig run = config::run_config(cfg);
  horizon_check(run);
  const unsigned workers = threads ? *threads : default_threads();
  if (workers == 0) throw InvalidArgument("--threads must be positive");
  const auto study = pde::error_study(run, cfg.epsilons, workers);

  const fs::path dir(f.out);
  fs::create_directories(dir);
  json fits = json::array();
  for (std::size_t k = 0; k < study.series.size(); ++k) {
    const auto& s = study.series[k];
    const std::string name = snapshot_name("error", k);
    auto out = open_out(dir / name);
    io::write_error_series_csv(out, s);
    fits.push_back({{"epsilon", s.epsilon},
                    {"K", s.K},
                    {"window", {s.window_start, s.window_end}},
                    {"file", name}});
  }
  json j;
  j["initial_norm"] = study.initial_norm;
  j["fits"] = fits;
  {
    auto out = open_out(dir / "fit.json");
    out << j.dump(2) << "\n";
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_overlay(const std::string& profile_csv, const std::string& data_csv, double c,
                const std::string& out_path) {
  if (!(c > 1.0)) throw InvalidArgument("overlay requires --c > 1");
  const auto table = io::read_profile_csv(profile_csv);
  const auto data = overlay::read_series_csv(data_csv);
  const auto model = overlay::station_series(table.xi, table.eta, c);
  const auto r = overlay::compare(model, data);
  json j;
  j["c"] = c;
  j["shift"] = r.shift;
  j["rms"] = r.rms;
  j["crest_model"] = r.crest_model;
  j["crest_data"] = r.crest_data;
  j["crest_difference"] = r.crest_difference;
  j["samples"] = r.samples;
  if (!out_path.empty()) {
    auto out = open_out(out_path);
    out << j.dump(2) << "\n";
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_potential(const WaveFlags& f, double u_min, double u_max, int n,
                  const std::string& out_path) {
  const auto p = config::wave_params(resolve(f));
  if (n < 2) throw InvalidArgument("potential requires --n >= 2");
  if (!(u_max > u_min)) throw InvalidArgument("potential requires u-max > u-min");
  std::ostringstream os;
  os << "u,G\n";
  for (int k = 0; k < n; ++k) {
    const double u = u_min + (u_max - u_min) * k / (n - 1);
    if (std::abs(u - p.c) < 1e-12) continue;
    os << io::format17(u) << ',' << io::format17(wave::potential(u, p)) << '\n';
  }
  if (out_path.empty() || out_path == "-") {
    std::cout << os.str();
  } else {
    auto out = open_out(out_path);
    out << os.str();
  }
  return 0;
}

std::string keys_help() {
  std::string s = "Configuration keys (flat 'key = value', '#' starts a comment line):\n";
  for (const auto& k : config::known_keys()) s += "  " + std::string(k.key) + ": " + k.help + "\n";
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Traveling waves and evolution experiments for the dissipative Peregrine system"};
  app.require_subcommand(1);
  app.footer(keys_help());

  WaveFlags classify_flags;
  auto* classify = app.add_subcommand("classify", "regime, equilibria and eigenvalues as JSON");
  add_wave_flags(classify, classify_flags);

  ProfileFlags profile_flags;
  auto* profile = app.add_subcommand("profile", "integrate the traveling-wave profile");
  add_wave_flags(profile, profile_flags.wave);
  profile->add_option("--out", profile_flags.out, "output prefix")->required();
  profile->add_option("--seed-offset", profile_flags.seed_offset, "seed distance (default 1e-8 u0)");
  profile->add_option("--rtol", profile_flags.rtol, "relative tolerance (default 1e-10)");
  profile->add_option("--atol", profile_flags.atol, "absolute tolerance (default 1e-12)");
  profile->add_option("--tail-tol", profile_flags.tail_tol, "tail tolerance (default 1e-8)");
  profile->add_option("--max-span", profile_flags.max_span, "largest xi span (default 1e4)");

  double c_min = 1.0001, c_max = 1.4;
  int sa_n = 101;
  std::string sa_out;
  auto* sa = app.add_subcommand("speed-amplitude", "amplitude branches as functions of speed");
  sa->add_option("--c-min", c_min, "smallest speed")->capture_default_str();
  sa->add_option("--c-max", c_max, "largest speed")->capture_default_str();
  sa->add_option("--n", sa_n, "number of rows")->capture_default_str();
  sa->add_option("--out", sa_out, "CSV path (stdout when omitted)");

  RunFlags evolve_flags;
  auto* evolve = app.add_subcommand("evolve", "time-dependent run with snapshot output");
  evolve->add_option("--config", evolve_flags.config_path, "configuration file");
  evolve->add_option("--preset", evolve_flags.preset, "bundled preset");
  evolve->add_option("--out", evolve_flags.out, "output directory")->capture_default_str();
  evolve->add_option("--t-end", evolve_flags.t_end, "override the final time");
  evolve->add_option("--reference", evolve_flags.reference, "also run 'shallow-water'");

  RunFlags study_flags;
  std::vector<double> study_eps;
  std::optional<unsigned> study_threads;
  auto* study = app.add_subcommand("error-study", "distance between dissipative and inviscid runs");
  study->add_option("--config", study_flags.config_path, "configuration file");
  study->add_option("--preset", study_flags.preset, "bundled preset");
  study->add_option("--out", study_flags.out, "output directory")->capture_default_str();
  study->add_option("--t-end", study_flags.t_end, "override the final time");
  auto* eps_opt = study->add_option("--epsilons", study_eps, "dissipation values")->delimiter(',');
  study->add_option("--threads", study_threads,
                    "worker count (default BORE_LAB_THREADS or available parallelism)");

  std::string ov_profile, ov_data, ov_out;
  double ov_c = 0.0;
  auto* ov = app.add_subcommand("overlay", "compare a profile with a gauge record");
  ov->add_option("--profile", ov_profile, "profile CSV (xi,u,v,eta)")->required();
  ov->add_option("--data", ov_data, "gauge CSV (t,eta)")->required();
  ov->add_option("--c", ov_c, "Froude number of the profile")->required();
  ov->add_option("--out", ov_out, "report JSON path");

  auto* list = app.add_subcommand("presets", "list bundled presets");

  std::string export_preset, export_out;
  auto* exp = app.add_subcommand("config", "print a preset in configuration-file form");
  exp->add_option("--preset", export_preset, "preset name")->required();
  exp->add_option("--out", export_out, "file path (stdout when omitted)");

  WaveFlags pot_flags;
  double u_min = -0.5, u_max = 2.5;
  int pot_n = 601;
  std::string pot_out;
  auto* pot = app.add_subcommand("potential", "tabulate G(u)");
  add_wave_flags(pot, pot_flags);
  pot->add_option("--u-min", u_min)->capture_default_str();
  pot->add_option("--u-max", u_max)->capture_default_str();
  pot->add_option("--n", pot_n)->capture_default_str();
  pot->add_option("--out", pot_out, "CSV path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*classify) return cmd_classify(classify_flags);
    if (*profile) return cmd_profile(profile_flags);
    if (*sa) return cmd_speed_amplitude(c_min, c_max, sa_n, sa_out);
    if (*evolve) return cmd_evolve(evolve_flags);
    if (*study) return cmd_error_study(study_flags, study_eps, eps_opt->count() > 0, study_threads);
    if (*ov) return cmd_overlay(ov_profile, ov_data, ov_c, ov_out);
    if (*list) {
      for (const auto& p : config::presets())
        std::cout << p.name << "\t" << p.description << "\n";
      return 0;
    }
    if (*exp) {
      const std::string text = config::export_config(config::find_preset(export_preset).config);
      if (export_out.empty()) {
        std::cout << text;
      } else {
        auto out = open_out(export_out);
        out << text;
      }
      return 0;
    }
    if (*pot) return cmd_potential(pot_flags, u_min, u_max, pot_n, pot_out);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
