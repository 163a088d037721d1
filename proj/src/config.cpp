#include "bremsbec/config.hpp"

#include <algorithm>
#include <initializer_list>
#include <string>
#include <type_traits>

#include "bremsbec/errors.hpp"

#ifndef BREMSBEC_VERSION
#define BREMSBEC_VERSION "dev"
#endif

namespace bremsbec {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, std::string_view section,
                         std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) {
    throw ValidationError("config section '" + std::string(section) + "' must be an object");
  }
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      const std::string where = section.empty() ? "top level" : "section '" + std::string(section) + "'";
      throw ValidationError("unknown config key '" + key + "' in " + where);
    }
  }
}

template <class T>
void read(const json& obj, std::string_view section, const char* key, T& out) {
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    if constexpr (std::is_integral_v<T> && std::is_unsigned_v<T>) {
      if (!it->is_number_unsigned()) {
        throw ValidationError("");
      }
    } else if constexpr (std::is_integral_v<T>) {
      if (!it->is_number_integer()) throw ValidationError("");
    } else if constexpr (std::is_same_v<T, double>) {
      if (!it->is_number()) throw ValidationError("");
    }
    out = it->template get<T>();
  } catch (const std::exception&) {
    const std::string name = section.empty() ? key : std::string(section) + "." + key;
    throw ValidationError("config field '" + name + "' has the wrong type (got " + it->dump() + ")");
  }
}

const json& section_or_empty(const json& doc, const char* key) {
  static const json empty = json::object();
  const auto it = doc.find(key);
  return it == doc.end() ? empty : *it;
}

Potential potential_from_json(const json& obj) {
  if (obj.empty()) return ZeroPotential{};
  std::string kind = "zero";
  read(obj, "potential", "kind", kind);
  if (kind == "zero") {
    reject_unknown_keys(obj, "potential", {"kind"});
    return ZeroPotential{};
  }
  if (kind == "harmonic") {
    reject_unknown_keys(obj, "potential", {"kind", "omega"});
    HarmonicPotential p;
    read(obj, "potential", "omega", p.omega);
    return p;
  }
  if (kind == "gaussian_barrier" || kind == "smooth_step") {
    reject_unknown_keys(obj, "potential", {"kind", "height", "width", "center"});
    double height = 1.0;
    double width = 1.0;
    double center = 0.0;
    read(obj, "potential", "height", height);
    read(obj, "potential", "width", width);
    read(obj, "potential", "center", center);
    if (kind == "smooth_step") return SmoothStep{height, width, center};
    return GaussianBarrier{height, width, center};
  }
  if (kind == "tabulated") {
    reject_unknown_keys(obj, "potential", {"kind", "values"});
    TabulatedPotential p;
    read(obj, "potential", "values", p.values);
    return p;
  }
  throw ValidationError("potential.kind '" + kind +
                        "' is not one of zero, harmonic, gaussian_barrier, smooth_step, tabulated");
}

json potential_to_json(const Potential& potential) {
  json out;
  out["kind"] = std::string(potential_kind(potential));
  if (const auto* p = std::get_if<HarmonicPotential>(&potential)) {
    out["omega"] = p->omega;
  } else if (const auto* p = std::get_if<GaussianBarrier>(&potential)) {
    out["height"] = p->height;
    out["width"] = p->width;
    out["center"] = p->center;
  } else if (const auto* p = std::get_if<SmoothStep>(&potential)) {
    out["height"] = p->height;
    out["width"] = p->width;
    out["center"] = p->center;
  } else if (const auto* p = std::get_if<TabulatedPotential>(&potential)) {
    out["values"] = p->values;
  }
  return out;
}

// Grid construction is the validation for n_points/box_length.
Grid checked_grid(std::size_t n_points, double box_length, std::string_view section) {
  try {
    return Grid(n_points, box_length);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(section) + ": " + e.what());
  }
}

}  // namespace

std::string_view experiment_name(Experiment e) noexcept {
  switch (e) {
    case Experiment::simulate: return "simulate";
    case Experiment::sweep: return "sweep";
    case Experiment::benchmark: return "benchmark";
    case Experiment::oracle: return "oracle";
  }
  return "simulate";
}

Experiment parse_experiment(std::string_view name) {
  if (name == "simulate") return Experiment::simulate;
  if (name == "sweep") return Experiment::sweep;
  if (name == "benchmark") return Experiment::benchmark;
  if (name == "oracle") return Experiment::oracle;
  throw ValidationError("experiment '" + std::string(name) +
                        "' is not one of simulate, sweep, benchmark, oracle");
}

std::string code_version() { return "bremsbec " BREMSBEC_VERSION; }

RunConfig config_from_json(const json& doc) {
  reject_unknown_keys(doc, "", {"experiment", "grid", "physics", "potential", "packet",
                                "evolution", "output", "sweep", "benchmark", "oracle"});
  RunConfig cfg;

  std::string experiment(experiment_name(cfg.experiment));
  read(doc, "", "experiment", experiment);
  cfg.experiment = parse_experiment(experiment);

  const auto& grid = section_or_empty(doc, "grid");
  reject_unknown_keys(grid, "grid", {"n_points", "box_length"});
  read(grid, "grid", "n_points", cfg.grid.n_points);
  read(grid, "grid", "box_length", cfg.grid.box_length);

  const auto& phys = section_or_empty(doc, "physics");
  reject_unknown_keys(phys, "physics",
                      {"hbar", "mass", "charge", "light_speed", "gpe_coupling", "n_mean"});
  read(phys, "physics", "hbar", cfg.physics.hbar);
  read(phys, "physics", "mass", cfg.physics.mass);
  read(phys, "physics", "charge", cfg.physics.charge);
  read(phys, "physics", "light_speed", cfg.physics.light_speed);
  read(phys, "physics", "gpe_coupling", cfg.physics.gpe_coupling);
  read(phys, "physics", "n_mean", cfg.physics.n_mean);

  cfg.potential = potential_from_json(section_or_empty(doc, "potential"));

  const auto& packet = section_or_empty(doc, "packet");
  reject_unknown_keys(packet, "packet", {"center", "sigma", "momentum"});
  read(packet, "packet", "center", cfg.packet.center);
  read(packet, "packet", "sigma", cfg.packet.sigma);
  read(packet, "packet", "momentum", cfg.packet.momentum);

  const auto& evo = section_or_empty(doc, "evolution");
  reject_unknown_keys(evo, "evolution", {"dt", "n_steps", "sample_stride"});
  read(evo, "evolution", "dt", cfg.evolution.dt);
  read(evo, "evolution", "n_steps", cfg.evolution.n_steps);
  read(evo, "evolution", "sample_stride", cfg.evolution.sample_stride);

  const auto& out = section_or_empty(doc, "output");
  reject_unknown_keys(out, "output", {"directory", "stem"});
  read(out, "output", "directory", cfg.output.directory);
  read(out, "output", "stem", cfg.output.stem);

  const auto& sweep = section_or_empty(doc, "sweep");
  reject_unknown_keys(sweep, "sweep",
                      {"sigma_list", "barrier_width", "barrier_height", "drift_velocity",
                       "margin_factor", "lead_factor", "max_dx", "dt", "sample_stride",
                       "nonlinear_coupling", "threads"});
  read(sweep, "sweep", "sigma_list", cfg.sweep.sigma_list);
  read(sweep, "sweep", "barrier_width", cfg.sweep.barrier_width);
  read(sweep, "sweep", "barrier_height", cfg.sweep.barrier_height);
  read(sweep, "sweep", "drift_velocity", cfg.sweep.drift_velocity);
  read(sweep, "sweep", "margin_factor", cfg.sweep.margin_factor);
  read(sweep, "sweep", "lead_factor", cfg.sweep.lead_factor);
  read(sweep, "sweep", "max_dx", cfg.sweep.max_dx);
  read(sweep, "sweep", "dt", cfg.sweep.dt);
  read(sweep, "sweep", "sample_stride", cfg.sweep.sample_stride);
  read(sweep, "sweep", "nonlinear_coupling", cfg.sweep.nonlinear_coupling);
  read(sweep, "sweep", "threads", cfg.sweep.threads);

  const auto& bench = section_or_empty(doc, "benchmark");
  reject_unknown_keys(bench, "benchmark",
                      {"omega", "x0", "periods", "n_points", "box_length", "max_dt",
                       "sample_stride"});
  read(bench, "benchmark", "omega", cfg.benchmark.omega);
  read(bench, "benchmark", "x0", cfg.benchmark.x0);
  read(bench, "benchmark", "periods", cfg.benchmark.periods);
  read(bench, "benchmark", "n_points", cfg.benchmark.n_points);
  read(bench, "benchmark", "box_length", cfg.benchmark.box_length);
  read(bench, "benchmark", "max_dt", cfg.benchmark.max_dt);
  read(bench, "benchmark", "sample_stride", cfg.benchmark.sample_stride);

  const auto& oracle = section_or_empty(doc, "oracle");
  reject_unknown_keys(oracle, "oracle",
                      {"seed", "n_modes", "n_max", "n_operators", "ordering_n_max",
                       "ordering_pairs", "large_mean_n_max"});
  read(oracle, "oracle", "seed", cfg.oracle.seed);
  read(oracle, "oracle", "n_modes", cfg.oracle.n_modes);
  read(oracle, "oracle", "n_max", cfg.oracle.n_max);
  read(oracle, "oracle", "n_operators", cfg.oracle.n_operators);
  read(oracle, "oracle", "ordering_n_max", cfg.oracle.ordering_n_max);
  read(oracle, "oracle", "ordering_pairs", cfg.oracle.ordering_pairs);
  read(oracle, "oracle", "large_mean_n_max", cfg.oracle.large_mean_n_max);

  validate_config(cfg);
  return cfg;
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(doc);
}

void validate_config(RunConfig& cfg) {
  cfg.warnings.clear();
  try {
    cfg.physics.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("physics: ") + e.what());
  }
  if (cfg.output.stem.empty()) throw ValidationError("output.stem must not be empty");

  switch (cfg.experiment) {
    case Experiment::simulate: {
      const Grid grid = checked_grid(cfg.grid.n_points, cfg.grid.box_length, "grid");
      try {
        validate_potential(cfg.potential, grid);
      } catch (const ValidationError& e) {
        throw ValidationError(std::string("potential: ") + e.what());
      }
      try {
        (void)make_gaussian_packet(grid, cfg.packet.center, cfg.packet.sigma, cfg.packet.momentum,
                                   cfg.physics.hbar);
      } catch (const ValidationError& e) {
        throw ValidationError(std::string("packet: ") + e.what());
      }
      validate_evolution(cfg.evolution, grid, cfg.physics);
      break;
    }
    case Experiment::sweep:
      cfg.warnings = cfg.sweep.validate();
      break;
    case Experiment::benchmark: {
      (void)checked_grid(cfg.benchmark.n_points, cfg.benchmark.box_length, "benchmark");
      if (cfg.physics.gpe_coupling != 0.0) {
        throw ValidationError("benchmark: physics.gpe_coupling must be 0");
      }
      if (!(cfg.benchmark.omega > 0.0) || !(cfg.benchmark.periods > 0.0) ||
          !(cfg.benchmark.max_dt > 0.0) || cfg.benchmark.sample_stride == 0) {
        throw ValidationError("benchmark: omega, periods, max_dt, sample_stride must be positive");
      }
      break;
    }
    case Experiment::oracle: {
      const auto& o = cfg.oracle;
      if (o.n_modes < 1 || o.n_operators < 1 || o.ordering_pairs < 1) {
        throw ValidationError("oracle: n_modes, n_operators, ordering_pairs must be >= 1");
      }
      if (o.n_max < 2 || o.ordering_n_max < 2 || o.large_mean_n_max < o.n_max) {
        throw ValidationError("oracle: n_max and ordering_n_max must be >= 2 and "
                              "large_mean_n_max >= n_max");
      }
      break;
    }
  }
}

json config_to_json(const RunConfig& cfg) {
  json doc;
  doc["experiment"] = std::string(experiment_name(cfg.experiment));
  doc["grid"] = {{"n_points", cfg.grid.n_points}, {"box_length", cfg.grid.box_length}};
  doc["physics"] = {{"hbar", cfg.physics.hbar},
                    {"mass", cfg.physics.mass},
                    {"charge", cfg.physics.charge},
                    {"light_speed", cfg.physics.light_speed},
                    {"gpe_coupling", cfg.physics.gpe_coupling},
                    {"n_mean", cfg.physics.n_mean}};
  doc["potential"] = potential_to_json(cfg.potential);
  doc["packet"] = {{"center", cfg.packet.center},
                   {"sigma", cfg.packet.sigma},
                   {"momentum", cfg.packet.momentum}};
  doc["evolution"] = {{"dt", cfg.evolution.dt},
                      {"n_steps", cfg.evolution.n_steps},
                      {"sample_stride", cfg.evolution.sample_stride}};
  doc["output"] = {{"directory", cfg.output.directory}, {"stem", cfg.output.stem}};
  doc["sweep"] = {{"sigma_list", cfg.sweep.sigma_list},
                  {"barrier_width", cfg.sweep.barrier_width},
                  {"barrier_height", cfg.sweep.barrier_height},
                  {"drift_velocity", cfg.sweep.drift_velocity},
                  {"margin_factor", cfg.sweep.margin_factor},
                  {"lead_factor", cfg.sweep.lead_factor},
                  {"max_dx", cfg.sweep.max_dx},
                  {"dt", cfg.sweep.dt},
                  {"sample_stride", cfg.sweep.sample_stride},
                  {"nonlinear_coupling", cfg.sweep.nonlinear_coupling},
                  {"threads", cfg.sweep.threads}};
  doc["benchmark"] = {{"omega", cfg.benchmark.omega},
                      {"x0", cfg.benchmark.x0},
                      {"periods", cfg.benchmark.periods},
                      {"n_points", cfg.benchmark.n_points},
                      {"box_length", cfg.benchmark.box_length},
                      {"max_dt", cfg.benchmark.max_dt},
                      {"sample_stride", cfg.benchmark.sample_stride}};
  doc["oracle"] = {{"seed", cfg.oracle.seed},
                   {"n_modes", cfg.oracle.n_modes},
                   {"n_max", cfg.oracle.n_max},
                   {"n_operators", cfg.oracle.n_operators},
                   {"ordering_n_max", cfg.oracle.ordering_n_max},
                   {"ordering_pairs", cfg.oracle.ordering_pairs},
                   {"large_mean_n_max", cfg.oracle.large_mean_n_max}};
  return doc;
}

}  // namespace bremsbec
