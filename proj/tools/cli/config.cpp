#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fracns/csv.hpp"
#include "fracns/error.hpp"
#include "fracns/grid.hpp"

namespace fracns::cli {
namespace {

const std::vector<std::pair<Command, std::string>> kCommands = {
    {Command::solve, "solve"},         {Command::liouville_scan, "liouville-scan"},
    {Command::verify_energy, "verify-energy"}, {Command::norms, "norms"},
    {Command::bootstrap, "bootstrap"}, {Command::check_lemmas, "check-lemmas"},
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const Entries& e, const std::string& key) {
  const std::string text = trim(e.at(key));
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() || std::isnan(v)) {
    throw ConfigError(key + ": expected a number, got '" + text + "'");
  }
  return v;
}

long long to_integer(const Entries& e, const std::string& key) {
  const std::string text = trim(e.at(key));
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(key + ": expected an integer, got '" + text + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

std::vector<double> to_list(const Entries& e, const std::string& key) {
  std::vector<double> out;
  if (trim(e.at(key)).empty()) return out;
  for (const auto& item : split(e.at(key), ',')) {
    Entries one{{key, item}};
    out.push_back(to_double(one, key));
  }
  return out;
}

}  // namespace

Command parse_command(const std::string& name) {
  for (const auto& [c, n] : kCommands)
    if (n == name) return c;
  throw ConfigError("unknown command '" + name + "'");
}

std::string to_string(Command command) {
  for (const auto& [c, n] : kCommands)
    if (c == command) return n;
  return "unknown";
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& entry : kCommands) v.push_back(entry.second);
    return v;
  }();
  return names;
}

const Entries& default_entries() {
  static const Entries defaults = {
      {"output", "out"},
      {"seed", "0"},
      {"grid.n", "32"},
      {"grid.box_len", format_double(2.0 * std::numbers::pi)},
      {"solver.alpha", "1.5"},
      {"solver.epsilon", "0.1"},
      {"solver.R", "inf"},
      {"solver.lambda", "1"},
      {"solver.damping", "1"},
      {"solver.tol_residual", "1e-10"},
      {"solver.max_iter", "200"},
      {"solver.schedule", ""},
      {"forcing.kind", "single_mode"},
      {"forcing.amplitude", "1"},
      {"forcing.band_lo", "1"},
      {"forcing.band_hi", "2"},
      {"forcing.norm_target", "0"},
      {"input.velocity", ""},
      {"input.pressure", ""},
      {"input.forcing", ""},
      {"liouville.field", "snapshot"},
      {"liouville.sigma", "1"},
      {"liouville.radii", ""},
      {"liouville.eps", "0.1"},
      {"liouville.nu", "0.5"},
      {"norms.sobolev", "-0.5, 0, 0.5, 1"},
      {"norms.lebesgue", "2, 3, 4"},
      {"bootstrap.mode", "auto"},
      {"bootstrap.target", "3"},
      {"checks.trials", "100"},
      {"checks.band_lo", "1"},
      {"checks.band_hi", "4"},
      {"checks.product.s", "1"},
      {"checks.product.delta", "0.5"},
      {"checks.leibniz.s", "0.5"},
      {"checks.leibniz.s1", "0.25"},
      {"checks.leibniz.s2", "0.25"},
      {"checks.leibniz.p", "2"},
      {"checks.leibniz.p1", "4"},
      {"checks.leibniz.p2", "4"},
      {"checks.embedding.s", "0.5"},
  };
  return defaults;
}

void set_entry(Entries& entries, const std::string& key, const std::string& value) {
  if (!default_entries().count(key)) throw ConfigError("unknown config key '" + key + "'");
  entries[key] = trim(value);
}

void apply_override(Entries& entries, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("--set expects KEY=VALUE, got '" + assignment + "'");
  set_entry(entries, trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

Entries parse_config_text(const std::string& text, const std::string& origin) {
  Entries out;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (!default_entries().count(key)) throw ConfigError(where + ": unknown config key '" + key + "'");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

Entries read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path.string());
}

std::vector<Stage> parse_schedule(const std::string& text) {
  std::vector<Stage> out;
  if (trim(text).empty()) return out;
  for (const auto& item : split(text, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("solver.schedule: expected eps:R, got '" + item + "'");
    Entries pair{{"solver.schedule", item.substr(0, colon)}};
    Stage s;
    s.epsilon = to_double(pair, "solver.schedule");
    pair["solver.schedule"] = item.substr(colon + 1);
    s.R = to_double(pair, "solver.schedule");
    out.push_back(s);
  }
  return out;
}

RunConfig build_config(Command command, const Entries& overrides) {
  Entries e = default_entries();
  for (const auto& [k, v] : overrides) set_entry(e, k, v);

  RunConfig c;
  c.command = command;
  c.entries = e;
  c.output_dir = e.at("output");
  if (c.output_dir.empty()) throw ConfigError("output: must not be empty");
  const long long seed = to_integer(e, "seed");
  if (seed < 0) throw ConfigError("seed: must be >= 0");
  c.seed = static_cast<std::uint64_t>(seed);

  const long long n = to_integer(e, "grid.n");
  if (n < 8 || n > 1024 || (n & (n - 1)) != 0) throw ConfigError("grid.n: must be a power of two in [8, 1024]");
  c.grid_n = static_cast<int>(n);
  c.box_len = to_double(e, "grid.box_len");
  if (!(c.box_len > 0.0) || !std::isfinite(c.box_len)) throw ConfigError("grid.box_len: must be finite and > 0");
  const Grid grid(c.grid_n, c.box_len);

  auto& s = c.solver;
  s.alpha = to_double(e, "solver.alpha");
  s.epsilon = to_double(e, "solver.epsilon");
  s.R = to_double(e, "solver.R");
  s.lambda = to_double(e, "solver.lambda");
  s.damping = to_double(e, "solver.damping");
  s.tol_residual = to_double(e, "solver.tol_residual");
  const long long iters = to_integer(e, "solver.max_iter");
  if (iters < 1 || iters > 1000000) throw ConfigError("solver.max_iter: must lie in [1, 1000000]");
  s.max_iter = static_cast<int>(iters);
  s.schedule = parse_schedule(e.at("solver.schedule"));
  try {
    s.validate(grid);
  } catch (const PreconditionError& err) {
    throw ConfigError(err.what());
  }

  auto& f = c.forcing;
  try {
    f.kind = parse_forcing_kind(e.at("forcing.kind"));
  } catch (const PreconditionError& err) {
    throw ConfigError(std::string("forcing.kind: ") + err.what());
  }
  f.amplitude = to_double(e, "forcing.amplitude");
  f.band_lo = to_double(e, "forcing.band_lo");
  f.band_hi = to_double(e, "forcing.band_hi");
  f.norm_target = to_double(e, "forcing.norm_target");
  f.seed = c.seed;
  if (!std::isfinite(f.amplitude)) throw ConfigError("forcing.amplitude: must be finite");
  if (!(f.band_lo >= 0.0 && f.band_hi >= f.band_lo && std::isfinite(f.band_hi))) {
    throw ConfigError("forcing.band_lo/band_hi: need 0 <= band_lo <= band_hi < inf");
  }
  if (!(f.norm_target >= 0.0) || !std::isfinite(f.norm_target)) throw ConfigError("forcing.norm_target: must be >= 0");

  c.input_velocity = e.at("input.velocity");
  c.input_pressure = e.at("input.pressure");
  c.input_forcing = e.at("input.forcing");

  c.liouville_field = e.at("liouville.field");
  if (c.liouville_field != "snapshot" && c.liouville_field != "gaussian") {
    throw ConfigError("liouville.field: expected snapshot or gaussian, got '" + c.liouville_field + "'");
  }
  c.liouville_sigma = to_double(e, "liouville.sigma");
  if (!(c.liouville_sigma > 0.0) || !std::isfinite(c.liouville_sigma)) throw ConfigError("liouville.sigma: must be > 0");
  c.liouville_radii = to_list(e, "liouville.radii");
  for (std::size_t i = 0; i < c.liouville_radii.size(); ++i) {
    if (!(c.liouville_radii[i] > 0.0) || (i && !(c.liouville_radii[i] > c.liouville_radii[i - 1]))) {
      throw ConfigError("liouville.radii: must be positive and strictly increasing");
    }
  }
  c.liouville_eps = to_double(e, "liouville.eps");
  c.liouville_nu = to_double(e, "liouville.nu");
  if (!(c.liouville_nu > 0.0 && c.liouville_nu < 1.0)) throw ConfigError("liouville.nu: must lie in (0, 1)");

  c.sobolev_orders = to_list(e, "norms.sobolev");
  c.lebesgue_orders = to_list(e, "norms.lebesgue");
  for (double q : c.lebesgue_orders)
    if (!(q >= 1.0)) throw ConfigError("norms.lebesgue: orders must be >= 1");

  // auto: the mode whose alpha range contains solver.alpha
  const std::string& mode = e.at("bootstrap.mode");
  if (mode == "auto") {
    c.bootstrap_mode = s.alpha > 5.0 / 3.0 ? BootstrapMode::subcritical : BootstrapMode::bounded_hypothesis;
  } else {
    try {
      c.bootstrap_mode = parse_bootstrap_mode(mode);
    } catch (const PreconditionError& err) {
      throw ConfigError("bootstrap.mode: " + std::string(err.what()) + " (or auto)");
    }
  }
  c.bootstrap_target = to_double(e, "bootstrap.target");
  if (!std::isfinite(c.bootstrap_target)) throw ConfigError("bootstrap.target: must be finite");

  const long long trials = to_integer(e, "checks.trials");
  if (trials < 1 || trials > 100000) throw ConfigError("checks.trials: must lie in [1, 100000]");
  c.checks.trials = static_cast<int>(trials);
  c.checks.band_lo = to_double(e, "checks.band_lo");
  c.checks.band_hi = to_double(e, "checks.band_hi");
  if (!(c.checks.band_lo >= 0.0 && c.checks.band_hi > c.checks.band_lo && 3.0 * c.checks.band_hi <= c.grid_n)) {
    throw ConfigError("checks.band_lo/band_hi: need 0 <= band_lo < band_hi <= grid.n/3");
  }
  c.checks.seed = c.seed;
  c.product_s = to_double(e, "checks.product.s");
  c.product_delta = to_double(e, "checks.product.delta");
  c.leibniz.s = to_double(e, "checks.leibniz.s");
  c.leibniz.s1 = to_double(e, "checks.leibniz.s1");
  c.leibniz.s2 = to_double(e, "checks.leibniz.s2");
  c.leibniz.p = to_double(e, "checks.leibniz.p");
  c.leibniz.p1 = to_double(e, "checks.leibniz.p1");
  c.leibniz.p2 = to_double(e, "checks.leibniz.p2");
  c.embedding_s = to_double(e, "checks.embedding.s");
  return c;
}

}  // namespace fracns::cli
