#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "bremsbec/experiments.hpp"
#include "bremsbec/fock.hpp"
#include "bremsbec/propagator.hpp"
#include "bremsbec/state.hpp"

namespace bremsbec {

enum class Experiment { simulate, sweep, benchmark, oracle };

std::string_view experiment_name(Experiment e) noexcept;
Experiment parse_experiment(std::string_view name);

struct GridSpec {
  std::size_t n_points = 256;
  double box_length = 40.0;
};

struct PacketSpec {
  double center = 0.0;
  double sigma = 1.0;
  double momentum = 0.0;
};

struct OutputSpec {
  std::string directory = ".";
  std::string stem = "run";
};

/// Everything a run needs. Every field has a default, so `{}` is a valid
/// document (a free Gaussian packet).
struct RunConfig {
  Experiment experiment = Experiment::simulate;
  GridSpec grid;
  PhysicalParams physics;
  Potential potential = ZeroPotential{};
  PacketSpec packet;
  EvolutionConfig evolution;
  OutputSpec output;
  ScalingSweepConfig sweep;
  HarmonicBenchmarkConfig benchmark;
  OracleSuiteConfig oracle;
  /// Regime concerns found during validation; echoed into report metadata.
  std::vector<std::string> warnings;
};

/// Parses and validates a JSON document. Unknown keys and out-of-range values
/// throw ValidationError naming the offending field.
RunConfig parse_config(std::string_view text);
RunConfig config_from_json(const nlohmann::json& doc);

/// Fully resolved document (defaults included) that parses back to the same config.
nlohmann::json config_to_json(const RunConfig& cfg);

/// Validates the sections the selected experiment uses and refreshes `warnings`.
void validate_config(RunConfig& cfg);

std::string code_version();

}  // namespace bremsbec
