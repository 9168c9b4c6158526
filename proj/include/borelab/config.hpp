#pragma once

// Flat `key = value` configuration files and the bundled experiment presets.

#include <optional>
#include <string>
#include <vector>

#include "borelab/pde.hpp"
#include "borelab/profile.hpp"

namespace borelab::config {

/// Everything a command may need. Traveling-wave keys (c, delta, epsilon and
/// the integrator options) and evolution keys (system, grid, ic, ...) can
/// coexist; delta and epsilon are shared.
struct Config {
  std::string preset;  ///< name of the preset this was expanded from, if any
  std::string note;    ///< provenance / assumptions, free text

  std::optional<double> c;
  std::optional<double> delta;
  std::optional<double> epsilon;
  tw::ProfileOptions profile;

  std::optional<pde::System> system;  ///< set iff this describes an evolution run
  double x_min = -800.0;
  double x_max = 800.0;
  double dx = 0.25;
  double dt = 0.025;
  double t_end = 0.0;
  pde::Boundary boundary = pde::Boundary::Reflective;
  pde::InitialCondition ic = pde::SmoothedRiemann{};
  double snapshot_interval = 0.0;  ///< 0 means {0, t_end}
  std::vector<double> epsilons;   ///< error-study sweep

  bool operator==(const Config&) const;
};

/// Names and one-line descriptions of every recognised key, in export order.
struct KeyInfo {
  const char* key;
  const char* help;
};
const std::vector<KeyInfo>& known_keys();

/// Parses the text of a configuration file. `source` names it in messages.
/// Unknown keys, malformed lines and bad values throw InvalidArgument naming
/// the key and line number.
Config parse_config(const std::string& text, const std::string& source = "<config>");
Config load_config(const std::string& path);

/// Lossless text form: parse_config(export_config(c)) == c.
std::string export_config(const Config& c);

struct Preset {
  std::string name;
  std::string description;
  Config config;
};

const std::vector<Preset>& presets();
/// Throws InvalidArgument for an unknown name.
const Preset& find_preset(const std::string& name);

/// Wave parameters; throws InvalidArgument when c, delta or epsilon is unset.
wave::WaveParams wave_params(const Config& c);
/// Evolution configuration; throws InvalidArgument when no system is set.
pde::RunConfig run_config(const Config& c);

/// Shortest decimal text that reads back to the same double (max 17 digits).
std::string format_double(double v);

}  // namespace borelab::config
