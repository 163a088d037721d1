#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "bremsbec/config.hpp"
#include "bremsbec/errors.hpp"
#include "bremsbec/experiments.hpp"
#include "bremsbec/fock.hpp"
#include "bremsbec/propagator.hpp"
#include "bremsbec/radiation.hpp"
#include "bremsbec/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bremsbec;

namespace {

enum ExitCode { kOk = 0, kValidation = 1, kNumerical = 2, kCheckFailed = 3 };

void log_line(std::string_view level, std::string_view kind, std::string_view message) {
  std::cerr << json{{"level", level}, {"kind", kind}, {"message", message}}.dump() << '\n';
}

struct Options {
  std::string config_path;
  std::string output_dir;
  bool check = false;
  bool quiet = false;
  std::size_t threads = 0;
  std::optional<std::uint64_t> seed;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig load_config(Experiment experiment, const Options& opt) {
  json doc = json::object();
  if (!opt.config_path.empty()) {
    const std::string text = read_file(opt.config_path);
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ValidationError("config is not valid JSON: " + std::string(e.what()));
    }
    if (!doc.is_object()) throw ValidationError("config document must be a JSON object");
  }
  // the subcommand selects the experiment; command-line flags win over the file
  doc["experiment"] = std::string(experiment_name(experiment));
  if (opt.threads > 0) doc["sweep"]["threads"] = opt.threads;
  if (opt.seed) doc["oracle"]["seed"] = *opt.seed;
  if (!opt.output_dir.empty()) {
    doc["output"]["directory"] = opt.output_dir;
  } else if (const char* env = std::getenv("BREMSBEC_OUTPUT_DIR"); env && *env) {
    doc["output"]["directory"] = env;
  }
  return config_from_json(doc);
}

fs::path output_path(const RunConfig& cfg, std::string_view suffix) {
  return fs::path(cfg.output.directory) / (cfg.output.stem + std::string(suffix));
}

int finish(const RunConfig& cfg, std::string_view kind, json result,
           const std::vector<CheckOutcome>& checks, const Options& opt) {
  for (const auto& w : cfg.warnings) log_line("warning", "regime", w);
  json envelope = make_envelope(cfg, kind, std::move(result));
  bool passed = true;
  if (opt.check) {
    envelope["checks"] = to_json(checks);
    for (const auto& c : checks) {
      if (!c.passed) {
        passed = false;
        log_line("error", "check", c.name + " = " + json(c.value).dump() + " violates threshold " +
                                       json(c.threshold).dump());
      }
    }
  }
  const fs::path path = output_path(cfg, "_" + std::string(kind) + ".json");
  write_text(path, envelope.dump(2) + "\n");
  log_line("info", "output", path.string());
  if (!opt.quiet) std::cout << envelope["result"].dump(2) << '\n';
  return passed ? kOk : kCheckFailed;
}

int run_simulate(const RunConfig& cfg, const Options& opt) {
  const Grid grid(cfg.grid.n_points, cfg.grid.box_length);
  const auto psi0 = make_gaussian_packet(grid, cfg.packet.center, cfg.packet.sigma,
                                         cfg.packet.momentum, cfg.physics.hbar);
  const auto series = evolve_and_record(psi0, cfg.potential, cfg.physics, cfg.evolution);

  RadiationResult radiation;
  if (std::holds_alternative<TabulatedPotential>(cfg.potential)) {
    radiation = integrate_radiation(series, cfg.physics);
  } else {
    const auto classical = classical_trajectory(cfg.packet.center,
                                                cfg.packet.momentum / cfg.physics.mass,
                                                cfg.potential, cfg.physics, cfg.evolution);
    radiation = integrate_radiation(series, cfg.physics, classical);
  }

  const fs::path csv = output_path(cfg, "_series.csv");
  write_text(csv, series_to_csv(series));
  log_line("info", "output", csv.string());
  const bool force_free = std::holds_alternative<ZeroPotential>(cfg.potential);
  return finish(cfg, "radiation", to_json(radiation), check_simulation(series, radiation, force_free),
                opt);
}

int run_sweep(const RunConfig& cfg, const Options& opt) {
  const auto result = run_scaling_sweep(cfg.sweep, cfg.physics);
  for (const auto& w : result.warnings) log_line("warning", "regime", w);
  const fs::path csv = output_path(cfg, "_sweep.csv");
  write_text(csv, sweep_to_csv(result));
  log_line("info", "output", csv.string());
  return finish(cfg, "sweep", to_json(result), check_sweep(result), opt);
}

int run_benchmark(const RunConfig& cfg, const Options& opt) {
  const auto report = run_harmonic_benchmark(cfg.physics, cfg.benchmark);
  const fs::path csv = output_path(cfg, "_series.csv");
  write_text(csv, series_to_csv(report.series));
  log_line("info", "output", csv.string());
  return finish(cfg, "benchmark", to_json(report), check_benchmark(report), opt);
}

int run_oracle(const RunConfig& cfg, const Options& opt) {
  const auto report = run_oracle_suite(cfg.oracle);
  return finish(cfg, "oracle", to_json(report), check_oracle(report), opt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radiation from charged Bose-Einstein condensate wave packets"};
  app.set_version_flag("--version", code_version());
  app.require_subcommand(1);

  Options opt;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", opt.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    sub->add_option("-o,--output-dir", opt.output_dir,
                    "Output directory (overrides BREMSBEC_OUTPUT_DIR and the config)");
    sub->add_flag("--check", opt.check, "Exit with code 3 when an acceptance threshold is violated");
    sub->add_flag("-q,--quiet", opt.quiet, "Do not print the result JSON to stdout");
  };

  auto* simulate = app.add_subcommand("simulate", "Evolve one packet and integrate its radiation");
  auto* sweep = app.add_subcommand("sweep", "Packet-length scaling sweep across a localized force");
  auto* benchmark = app.add_subcommand("benchmark", "Harmonic-trap comparison with closed forms");
  auto* oracle = app.add_subcommand("oracle", "Truncated Fock-space operator identities");
  for (auto* sub : {simulate, sweep, benchmark, oracle}) add_common(sub);
  sweep->add_option("-j,--threads", opt.threads, "Worker threads for independent records")
      ->check(CLI::PositiveNumber);
  oracle->add_option("--seed", opt.seed, "Random seed for operators and amplitudes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  Experiment experiment = Experiment::simulate;
  if (*sweep) experiment = Experiment::sweep;
  if (*benchmark) experiment = Experiment::benchmark;
  if (*oracle) experiment = Experiment::oracle;

  try {
    const RunConfig cfg = load_config(experiment, opt);
    switch (experiment) {
      case Experiment::simulate: return run_simulate(cfg, opt);
      case Experiment::sweep: return run_sweep(cfg, opt);
      case Experiment::benchmark: return run_benchmark(cfg, opt);
      case Experiment::oracle: return run_oracle(cfg, opt);
    }
  } catch (const ValidationError& e) {
    log_line("error", "validation", e.what());
    return kValidation;
  } catch (const NumericalError& e) {
    log_line("error", "numerical", e.what());
    return kNumerical;
  } catch (const std::exception& e) {
    log_line("error", "internal", e.what());
    return kNumerical;
  }
  return kOk;
}
