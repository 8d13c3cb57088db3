#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracns/forcing.hpp"
#include "fracns/norms.hpp"
#include "fracns/regularity.hpp"
#include "fracns/solver.hpp"

namespace fracns::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { solve, liouville_scan, verify_energy, norms, bootstrap, check_lemmas };

Command parse_command(const std::string& name);
std::string to_string(Command command);
const std::vector<std::string>& command_names();

/// Flat key=value settings. Every key has a default; unknown keys are errors.
using Entries = std::map<std::string, std::string>;

const Entries& default_entries();

struct RunConfig {
  Command command = Command::solve;
  int grid_n = 32;
  double box_len = 0.0;
  SolverParams solver;
  ForcingSpec forcing;
  std::filesystem::path output_dir;
  std::uint64_t seed = 0;

  std::filesystem::path input_velocity, input_pressure, input_forcing;

  std::string liouville_field;  // snapshot | gaussian
  double liouville_sigma = 1.0;
  std::vector<double> liouville_radii;  // empty: 8 geometric radii in [L/20, 9L/20]
  double liouville_eps = 0.1;
  double liouville_nu = 0.5;

  std::vector<double> sobolev_orders;
  std::vector<double> lebesgue_orders;

  BootstrapMode bootstrap_mode = BootstrapMode::subcritical;
  double bootstrap_target = 3.0;

  SuiteOptions checks;
  double product_s = 1.0, product_delta = 0.5;
  LeibnizExponents leibniz;
  double embedding_s = 0.5;

  /// Canonical text of every key, as echoed in summary.json.
  Entries entries;
};

/// Parses "key = value" lines; '#' starts a comment.
Entries parse_config_text(const std::string& text, const std::string& origin);
Entries read_config_file(const std::filesystem::path& path);

/// Applies "KEY=VALUE" on top of the entries.
void apply_override(Entries& entries, const std::string& assignment);
void set_entry(Entries& entries, const std::string& key, const std::string& value);

/// Builds and validates the typed config. Errors name the offending key.
RunConfig build_config(Command command, const Entries& overrides);

/// "eps:R, eps:R, ..." with R a number or inf.
std::vector<Stage> parse_schedule(const std::string& text);

}  // namespace fracns::cli
