#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "bremsbec/config.hpp"
#include "bremsbec/experiments.hpp"
#include "bremsbec/fock.hpp"
#include "bremsbec/radiation.hpp"
#include "bremsbec/time_series.hpp"

namespace bremsbec {

inline constexpr const char* kSeriesHeader = "t,norm2,x_mean,v_mean,a_mean,a2_mean";

/// Series as CSV, one row per sample, every value with 17 significant digits.
std::string series_to_csv(const TimeSeries& series);
std::string sweep_to_csv(const ScalingSweepResult& result);

nlohmann::json to_json(const RadiationResult& r);
nlohmann::json to_json(const HarmonicBenchmarkReport& r);
nlohmann::json to_json(const ScalingSweepResult& r);
nlohmann::json to_json(const OracleReport& r);

/// Wraps a result with the code version, resolved config and warnings.
nlohmann::json make_envelope(const RunConfig& cfg, std::string_view kind, nlohmann::json result);

struct CheckOutcome {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
};

nlohmann::json to_json(const std::vector<CheckOutcome>& checks);

/// With `force_free` (V = 0) the self-force check max |<a>| < 1e-10 is added.
std::vector<CheckOutcome> check_simulation(const TimeSeries& series, const RadiationResult& r,
                                           bool force_free);
std::vector<CheckOutcome> check_benchmark(const HarmonicBenchmarkReport& r);
std::vector<CheckOutcome> check_sweep(const ScalingSweepResult& r);
std::vector<CheckOutcome> check_oracle(const OracleReport& r);

/// Writes `text` to `path`, creating parent directories.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace bremsbec
