#include "run.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "fracns/csv.hpp"
#include "fracns/error.hpp"
#include "fracns/liouville.hpp"
#include "fracns/random.hpp"
#include "fracns/snapshot.hpp"
#include "fracns/transform.hpp"
#include "fracns/version.hpp"

namespace fracns::cli {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Outcome {
  int exit_code = kExitOk;
  std::string status = "ok";
  std::string message;
  json results = json::object();
  std::vector<std::string> artifacts;
};

class Context {
 public:
  Context(const RunConfig& c, std::ostream* log) : config(c), log_(log) {}

  void info(const std::string& line) const {
    if (log_) *log_ << line << '\n';
  }

  void write_text(Outcome& out, const std::string& name, const std::string& text) const {
    std::ofstream f(config.output_dir / name, std::ios::binary);
    f << text;
    if (!f) throw std::runtime_error("cannot write " + (config.output_dir / name).string());
    out.artifacts.push_back(name);
  }

  template <class Field>
  void write_field(Outcome& out, const std::string& name, const Field& field) const {
    write_snapshot(config.output_dir / name, field);
    out.artifacts.push_back(name);
  }

  const RunConfig& config;

 private:
  std::ostream* log_;
};

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
json optional_json(const std::optional<bool>& v) { return v ? json(*v) : json(nullptr); }

json number_json(double v) { return std::isfinite(v) ? json(v) : json(format_double(v)); }

Grid config_grid(const RunConfig& c) { return Grid(c.grid_n, c.box_len); }

SpectralField load_forcing(const RunConfig& c, const Grid& grid) {
  if (c.input_forcing.empty()) return make_forcing(grid, c.forcing, c.solver.alpha);
  SpectralField f = read_spectral(c.input_forcing);
  if (!(f.grid() == grid)) throw PreconditionError("input.forcing: grid differs from the velocity grid");
  validate_forcing(f);
  return f;
}

SpectralField require_velocity(const RunConfig& c) {
  if (c.input_velocity.empty()) throw PreconditionError("input.velocity: required by " + to_string(c.command));
  SpectralField u = read_spectral(c.input_velocity);
  if (u.components() != 3) throw PreconditionError("input.velocity: expected a 3-component field");
  return u;
}

json solution_json(const Solution& s) {
  json j;
  j["status"] = to_string(s.status);
  j["iterations"] = s.iterations_used;
  j["residual"] = number_json(s.residual_norm);
  j["physical_residual"] = number_json(s.physical_residual);
  j["fixed_point_defect"] = number_json(s.fixed_point_defect);
  j["dropped_mean"] = number_json(s.dropped_mean);
  if (!s.ledger.empty()) {
    j["h1"] = number_json(s.ledger.back().h1);
    j["halpha"] = number_json(s.ledger.back().halpha);
  }
  if (!s.message.empty()) j["message"] = s.message;
  return j;
}

Outcome do_solve(const Context& ctx) {
  const RunConfig& c = ctx.config;
  const Grid grid = config_grid(c);
  const SpectralField f = load_forcing(c, grid);
  Outcome out;
  ctx.write_field(out, "forcing.fns", f);

  std::vector<Solution> stages;
  std::vector<double> distances;
  if (c.solver.schedule.empty()) {
    stages.push_back(picard_solve(f, c.solver));
  } else {
    auto cont = continuation_solve(f, c.solver);
    stages = std::move(cont.stages);
    distances = std::move(cont.distances);
  }
  const Solution& last = stages.back();
  ctx.info("solve: " + to_string(last.status) + " after " + std::to_string(last.iterations_used) +
           " iterations, residual " + format_double(last.residual_norm));

  ctx.write_field(out, "velocity.fns", last.velocity);
  ctx.write_field(out, "pressure.fns", last.pressure);
  ctx.write_text(out, "ledger.csv", ledger_csv(last.ledger));

  out.results = solution_json(last);
  if (!c.solver.schedule.empty()) {
    std::ostringstream csv;
    CsvWriter w(csv, {"stage", "epsilon", "R", "status", "iterations", "residual", "halpha", "distance"});
    json js = json::array();
    for (std::size_t i = 0; i < stages.size(); ++i) {
      const auto& st = c.solver.schedule[i];
      const auto& s = stages[i];
      const double halpha = s.ledger.empty() ? 0.0 : s.ledger.back().halpha;
      w.row({std::to_string(i), format_double(st.epsilon), format_double(st.R), to_string(s.status),
             std::to_string(s.iterations_used), format_double(s.residual_norm), format_double(halpha),
             i == 0 ? "" : format_double(distances[i - 1])});
      js.push_back(solution_json(s));
    }
    ctx.write_text(out, "continuation.csv", csv.str());
    out.results["stages"] = js;
  }
  if (!last.converged()) {
    out.exit_code = kExitDiverged;
    out.status = to_string(last.status);
    out.message = last.message;
  }
  return out;
}

Outcome do_verify_energy(const Context& ctx) {
  const RunConfig& c = ctx.config;
  const SpectralField u = require_velocity(c);
  const SpectralField f = load_forcing(c, u.grid());
  SolverParams p = c.solver;
  if (!p.schedule.empty()) {
    p.epsilon = p.schedule.back().epsilon;
    p.R = p.schedule.back().R;
  }
  const EnergyReport r = energy_inequality_check(u, f, p);

  Outcome out;
  std::ostringstream csv;
  CsvWriter w(csv, {"check", "lhs", "rhs", "slack", "relative_slack", "holds"});
  json checks = json::object();
  const std::pair<const char*, const InequalityCheck*> rows[] = {
      {"energy_balance", &r.energy}, {"h1_bound", &r.h1_bound}, {"uniform_bound", &r.uniform_bound}};
  for (const auto& [name, chk] : rows) {
    w.row({name, format_double(chk->lhs), format_double(chk->rhs), format_double(chk->slack),
           format_double(chk->relative_slack), chk->holds ? "true" : "false"});
    checks[name] = {{"lhs", chk->lhs}, {"rhs", chk->rhs}, {"slack", chk->slack}, {"holds", chk->holds}};
  }
  ctx.write_text(out, "energy.csv", csv.str());
  out.results = {{"h1", r.h1}, {"halpha", r.halpha}, {"f_norm", r.f_norm}, {"all_hold", r.all_hold()},
                 {"checks", checks}};
  ctx.info(std::string("verify-energy: ") + (r.all_hold() ? "all inequalities hold" : "violation found"));
  return out;
}

Outcome do_norms(const Context& ctx) {
  const RunConfig& c = ctx.config;
  const SpectralField u = require_velocity(c);
  const PhysicalField up = transform_inverse(u);
  Outcome out;
  std::ostringstream csv;
  CsvWriter w(csv, {"norm", "order", "value"});
  json js = json::array();
  for (double q : c.lebesgue_orders) {
    const double v = lebesgue_norm(up, q);
    w.row({"lebesgue", format_double(q), format_double(v)});
    js.push_back({{"norm", "lebesgue"}, {"order", q}, {"value", v}});
  }
  for (double s : c.sobolev_orders) {
    const double v = sobolev_norm(u, s);
    w.row({"sobolev", format_double(s), format_double(v)});
    js.push_back({{"norm", "sobolev"}, {"order", s}, {"value", v}});
  }
  ctx.write_text(out, "norms.csv", csv.str());
  out.results["norms"] = js;
  return out;
}

json exponents_json(const DecayExponents& e) {
  return {{"I_a", optional_json(e.I_a)}, {"I_b", optional_json(e.I_b)}, {"I_c", optional_json(e.I_c)}};
}

Outcome do_liouville(const Context& ctx) {
  const RunConfig& c = ctx.config;
  PhysicalField u = c.liouville_field == "gaussian" ? gaussian_curl_field(config_grid(c), c.liouville_sigma)
                                                    : transform_inverse(require_velocity(c));
  const Grid grid = u.grid();
  PhysicalField p = c.input_pressure.empty() ? transform_inverse(pressure_from_samples(u))
                                             : read_physical(c.input_pressure);
  if (!(p.grid() == grid) || p.components() != 1) {
    throw PreconditionError("input.pressure: expected a scalar on the velocity grid");
  }
  std::vector<double> radii = c.liouville_radii;
  if (radii.empty()) {
    const double lo = 0.05 * grid.box_len(), hi = 0.45 * grid.box_len();
    for (int i = 0; i < 8; ++i) radii.push_back(lo * std::pow(hi / lo, i / 7.0));
  }
  const LiouvilleReport r = decay_scan(u, p, c.solver.alpha, c.liouville_eps, radii, c.liouville_nu);

  Outcome out;
  ctx.write_text(out, "liouville.csv", liouville_csv(r));
  json j;
  j["alpha"] = r.alpha;
  j["eps"] = r.eps_param;
  j["nu"] = r.nu;
  j["slopes"] = exponents_json(r.slopes);
  j["predicted"] = exponents_json(r.predicted);
  j["within_prediction"] = {
      {"I_a", optional_json(r.within_a)}, {"I_b", optional_json(r.within_b)}, {"I_c", optional_json(r.within_c)}};
  j["regime_flags"] = {{"condition_9", r.regime.condition_9},
                       {"condition_10", r.regime.condition_10},
                       {"warnings", r.regime.warnings}};
  j["decreasing"] = {{"I_a", r.decreasing_a}, {"I_b", r.decreasing_b}, {"I_c", r.decreasing_c}};
  j["energy_monotone"] = r.energy_monotone;
  j["energy_bounded"] = r.energy_bounded;
  j["total_energy"] = r.total_energy;
  ctx.write_text(out, "liouville.json", j.dump(2) + "\n");
  for (const auto& w : r.regime.warnings) ctx.info("liouville-scan: " + w);
  out.results = j;
  return out;
}

Outcome do_bootstrap(const Context& ctx) {
  const RunConfig& c = ctx.config;
  const double alpha = c.solver.alpha;
  const auto seq = iterate_bootstrap(alpha, c.bootstrap_mode, c.bootstrap_target);
  Outcome out;
  std::ostringstream csv;
  CsvWriter w(csv, {"k", "sigma"});
  for (std::size_t k = 0; k < seq.size(); ++k) w.row({std::to_string(k + 1), format_double(seq[k])});
  ctx.write_text(out, "bootstrap.csv", csv.str());

  json j;
  j["alpha"] = alpha;
  j["mode"] = to_string(c.bootstrap_mode);
  j["sigma_sequence"] = seq;
  j["increment"] = seq.front() - 0.5 * alpha;
  if (c.input_velocity.empty()) {
    j["tail_fit"] = nullptr;
  } else {
    const TailFit fit = spectral_tail_fit(require_velocity(c), seq.front());
    j["tail_fit"] = {{"s_probe", seq.front()},
                     {"verdict", to_string(fit.verdict)},
                     {"tail_slope", optional_json(fit.tail_slope)},
                     {"last_shell_fraction", fit.last_shell_fraction},
                     {"last_increment", fit.last_increment}};
  }
  ctx.write_text(out, "bootstrap.json", j.dump(2) + "\n");
  out.results = j;
  return out;
}

json summary_json(const SuiteSummary& s) {
  return {{"all_finite", s.all_finite}, {"max_ratio", number_json(s.max_ratio)},
          {"median_ratio", number_json(s.median_ratio)}, {"stable", s.stable}};
}

Outcome do_check_lemmas(const Context& ctx) {
  const RunConfig& c = ctx.config;
  const Grid grid = config_grid(c);
  // one stream per run: each suite draws its root seed from it
  Rng stream(c.seed);
  SuiteOptions opt = c.checks;
  opt.seed = stream();
  const auto product = product_rule_suite(grid, c.product_s, c.product_delta, opt);
  opt.seed = stream();
  const auto leibniz = fractional_leibniz_suite(grid, c.leibniz, opt);
  opt.seed = stream();
  const auto embedding = sobolev_embedding_suite(grid, c.embedding_s, opt);

  std::vector<CheckerRow> all = product;
  all.insert(all.end(), leibniz.begin(), leibniz.end());
  all.insert(all.end(), embedding.begin(), embedding.end());
  Outcome out;
  ctx.write_text(out, "checkers.csv", checker_csv(all));
  out.results = {{"product_rule", summary_json(summarize(product))},
                 {"fractional_leibniz", summary_json(summarize(leibniz))},
                 {"sobolev_embedding", summary_json(summarize(embedding))}};
  ctx.write_text(out, "lemmas.json", out.results.dump(2) + "\n");
  return out;
}

void ensure_writable(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path probe = dir / ".write-probe";
  {
    std::ofstream f(probe, std::ios::binary);
    if (!f || !(f << 'x') || !f.flush()) throw ConfigError("output: directory " + dir.string() + " is not writable");
  }
  fs::remove(probe, ec);
}

}  // namespace

int run(const RunConfig& config, std::ostream* log) {
  try {
    ensure_writable(config.output_dir);
  } catch (const ConfigError& e) {
    if (log) *log << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  const auto start = std::chrono::steady_clock::now();
  Context ctx(config, log);
  Outcome out;
  try {
    switch (config.command) {
      case Command::solve: out = do_solve(ctx); break;
      case Command::liouville_scan: out = do_liouville(ctx); break;
      case Command::verify_energy: out = do_verify_energy(ctx); break;
      case Command::norms: out = do_norms(ctx); break;
      case Command::bootstrap: out = do_bootstrap(ctx); break;
      case Command::check_lemmas: out = do_check_lemmas(ctx); break;
    }
  } catch (const std::exception& e) {
    out = Outcome{};
    out.exit_code = kExitConfig;
    out.status = "error";
    out.message = e.what();
    if (log) *log << "error: " << e.what() << '\n';
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json summary;
  summary["command"] = to_string(config.command);
  summary["status"] = out.status;
  summary["exit_code"] = out.exit_code;
  if (!out.message.empty()) summary["message"] = out.message;
  summary["versions"] = {{"fracns", library_version()}, {"fftw", fft_library_version()}};
  summary["config"] = config.entries;
  summary["wall_time_seconds"] = wall;
  summary["artifacts"] = out.artifacts;
  summary["results"] = out.results;
  std::ofstream f(config.output_dir / "summary.json", std::ios::binary);
  f << summary.dump(2) << '\n';
  if (!f && out.exit_code == kExitOk) return kExitConfig;
  return out.exit_code;
}

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Regularized fractional Navier-Stokes solver and diagnostics"};
  app.name("fracns");
  std::string command, config_path, output;
  std::vector<std::string> sets;
  std::uint64_t seed = 0;
  bool quiet = false;
  app.add_option("command", command, "solve | liouville-scan | verify-energy | norms | bootstrap | check-lemmas")
      ->required();
  app.add_option("--config", config_path, "Flat key=value config file");
  app.add_option("--set", sets, "Override one key (KEY=VALUE), repeatable")->take_all();
  auto* out_opt = app.add_option("--output", output, "Output directory");
  auto* seed_opt = app.add_option("--seed", seed, "Root seed for every random stream");
  app.add_flag("--quiet", quiet, "Suppress progress messages");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitConfig;
  }

  RunConfig config;
  try {
    const Command cmd = parse_command(command);
    Entries entries;
    if (!config_path.empty()) entries = read_config_file(config_path);
    for (const auto& s : sets) apply_override(entries, s);
    if (*out_opt) set_entry(entries, "output", output);
    if (*seed_opt) set_entry(entries, "seed", std::to_string(seed));
    config = build_config(cmd, entries);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (std::string(e.what()).rfind("unknown command", 0) == 0) std::cerr << '\n' << app.help();
    return kExitConfig;
  }
  return run(config, quiet ? nullptr : &std::cerr);
}

}  // namespace fracns::cli
