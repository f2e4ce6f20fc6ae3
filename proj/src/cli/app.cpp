#include "tlsom/cli/app.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "tlsom/error.hpp"

namespace tlsom::cli {

namespace fs = std::filesystem;

namespace {

using Runner = std::function<RunOutput(const Scenario&, const fs::path&)>;

/// Subcommand option bound to a config key; set only when given.
struct KeyOption {
  std::string key;
  std::string value;
  CLI::Option* option = nullptr;
};

void write_metadata(const fs::path& path, const std::string& command, const Scenario& s, const RunOutput& out) {
  std::vector<std::string> comments = {
      std::string("tlsom ") + kVersion,
      "subcommand: " + command,
      "source preset: " + s.preset,
      "frequencies in units of omega_m unless marked; re-run with --config on this file",
  };
  for (const auto& [k, v] : out.notes) comments.push_back(k + ": " + v);
  for (const auto& w : out.warnings) comments.push_back("warning " + w.code + ": " + w.message);
  for (const auto& f : out.files) comments.push_back("output: " + f.filename().string());
  KeyValues kv(s.resolved.entries().begin(), s.resolved.entries().end());
  write_key_values(path, kv, comments);
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optomechanical resonator coupled to a two-level defect: spectra, crossover, blockade, state "
               "preparation"};
  app.set_version_flag("--version", std::string("tlsom ") + kVersion);
  app.require_subcommand(1);
  std::string preset, config_path, out_dir = "tlsom-out";
  std::vector<std::string> overrides;
  bool strict = false;
  app.add_option("--preset", preset, "named parameter set");
  app.add_option("--config", config_path, "key = value [unit] config file");
  app.add_option("--override", overrides, "key=value, applied last")->take_all();
  app.add_option("--out", out_dir, "output directory");
  app.add_flag("--strict", strict, "exit with code 4 on any regime warning");

  std::map<std::string, std::vector<KeyOption>> key_options;
  std::map<std::string, Runner> runners;
  auto command = [&](const std::string& name, const std::string& help, Runner run,
                     std::vector<std::pair<std::string, std::string>> flags) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    runners[name] = std::move(run);
    auto& opts = key_options[name];
    opts.reserve(flags.size());
    for (auto& [flag, key] : flags) {
      opts.push_back({key, "", nullptr});
      opts.back().option = sub->add_option(flag, opts.back().value, "sets `" + key + "`");
    }
  };
  command("coupling", "mode volume, TLS coupling, TLS count and field tuning", run_coupling,
          {{"--field", "field"}, {"--DT", "DT"}, {"--delta0-ratio", "delta0_ratio"}, {"--E0", "E0"},
           {"--dipole", "dipole"}, {"--VT", "VT"}, {"--u0", "u0"}, {"--E", "E"}, {"--Vm", "Vm"}});
  const std::vector<std::pair<std::string, std::string>> spectral = {
      {"--Tmin", "Tmin"}, {"--Tmax", "Tmax"},   {"--Tsteps", "Tsteps"},       {"--Tlist", "Tlist"},
      {"--grid", "points"}, {"--span", "span"}, {"--sidebands", "sidebands"}, {"--nb", "nb"}};
  command("spectrum", "secular output spectrum, CSV T,omega,S", run_spectrum, spectral);
  command("fullspectrum", "quantum-regression output spectrum, CSV T,omega,S", run_fullspectrum, spectral);
  command("crossover", "analytic and numeric crossover temperature", run_crossover,
          {{"--Tlow", "Tlow"}, {"--Thigh", "Thigh"}, {"--rel-tol", "rel_tol"}});
  command("g2map", "cavity and resonator g2 over drive frequency and temperature", run_g2map,
          {{"--wmu-min", "wmu_min"}, {"--wmu-max", "wmu_max"}, {"--wmu-steps", "wmu_steps"}, {"--Tlist", "Tlist"},
           {"--nb", "nb"}});
  command("stateprep", "state-preparation fidelity, CSV M,T,fidelity", run_stateprep,
          {{"--M", "M"}, {"--Tlist", "Tlist"}, {"--gammaT-ratio", "gammaT_ratio"}, {"--realism", "realism"},
           {"--nb", "nb"}});

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForVersion&) {
    out << std::string("tlsom ") + kVersion << '\n';
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_config;
  }
  const std::string name = app.get_subcommands().front()->get_name();

  Scenario scenario;
  try {
    Config cfg;
    if (!config_path.empty()) cfg = Config::load(config_path);
    if (!preset.empty()) cfg.set("preset", preset);
    for (const auto& o : key_options[name]) {
      if (o.option->count() == 0) continue;
      if (o.key == "Tmin" || o.key == "Tmax" || o.key == "Tsteps") cfg.erase("Tlist");
      cfg.set(o.key, o.value);
    }
    for (const auto& o : overrides) cfg.apply_override(o);
    if (strict) cfg.set("strict", "true");
    scenario = resolve_scenario(cfg);
  } catch (const ParseError& e) {
    err << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const Error& e) {
    err << "config error: " << e.what() << '\n';
    return exit_config;
  }

  if (scenario.strict) {
    const Warnings w = regime_flags(scenario.params).warnings();
    if (!w.empty()) {
      for (const auto& x : w) err << "regime violation " << x.code << ": " << x.message << '\n';
      return exit_regime;
    }
  }

  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    err << "error: cannot create output directory " << dir.string() << '\n';
    return exit_io;
  }

  RunOutput result;
  try {
    result = runners[name](scenario, dir);
    write_metadata(dir / (name + ".meta"), name, scenario, result);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return exit_config;
  } catch (const Error& e) {
    err << "solver error: " << e.what() << '\n';
    return exit_solver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_io;
  }
  for (const auto& w : result.warnings) err << "warning " << w.code << ": " << w.message << '\n';
  for (const auto& f : result.files) out << f.string() << '\n';
  out << (dir / (name + ".meta")).string() << '\n';
  if (scenario.strict && !result.warnings.empty()) return exit_regime;
  return exit_ok;
}

}  // namespace tlsom::cli
