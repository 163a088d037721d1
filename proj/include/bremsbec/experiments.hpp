#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <string>
#include <vector>

#include "bremsbec/radiation.hpp"
#include "bremsbec/state.hpp"
#include "bremsbec/time_series.hpp"

namespace bremsbec {

/// Harmonic benchmark: a coherent-width packet (sigma^2 = hbar / (2 m omega))
/// displaced by x0 in V = m omega^2 x^2 / 2, with g = 0.
struct HarmonicBenchmarkConfig {
  double omega = 1.0;
  double x0 = 1.0;
  double periods = 1.0;
  std::size_t n_points = 128;
  double box_length = 32.0;
  /// The step is the largest dt <= max_dt that divides the run time evenly.
  double max_dt = 1e-3;
  std::size_t sample_stride = 10;
};

struct HarmonicBenchmarkReport {
  HarmonicBenchmarkConfig config;
  double sigma = 0.0;
  double duration = 0.0;
  double dt = 0.0;
  std::size_t n_steps = 0;
  RadiationResult radiation;
  double i_hydro_analytic = 0.0;
  double i_incoherent_analytic = 0.0;
  double i_hydro_rel_error = 0.0;
  double i_incoherent_rel_error = 0.0;
  double max_norm_drift = 0.0;
  double ehrenfest_max_residual = 0.0;
  double x_final = 0.0;
  double x_final_analytic = 0.0;
  TimeSeries series;
};

HarmonicBenchmarkReport run_harmonic_benchmark(const PhysicalParams& params,
                                               const HarmonicBenchmarkConfig& cfg);

/// Largest |d<v>/dt - <a>| over interior samples, with d<v>/dt from the
/// second-order three-point formula on the recorded (possibly uneven) times.
double ehrenfest_residual(const TimeSeries& series);

/// Largest |norm2 - 1| in a series.
double max_norm_drift(const TimeSeries& series);

/// Long packets drifting across a localized force.
///
/// The force is the Gaussian (width `barrier_width`) of a SmoothStep potential
/// of height `barrier_height`. Each packet starts `lead_factor` sigma before
/// the force and is evolved for 2 * lead_factor * sigma / drift_velocity, so
/// it is fully across by the end. All records share one grid with spacing
/// max_dx, covering at least margin_factor * max(sigma) plus the largest travel
/// distance (rounded up to a power-of-two point count).
struct ScalingSweepConfig {
  RealVector sigma_list{10.0, 14.142135623730951, 20.0, 28.284271247461902, 40.0};
  double barrier_width = 0.5;
  double barrier_height = 0.4;
  double drift_velocity = 4.0;
  double margin_factor = 24.0;
  double lead_factor = 6.0;
  double max_dx = 0.2;
  double dt = 0.01;
  std::size_t sample_stride = 10;
  /// When > 0 each record also runs with this GPE coupling (secondary columns).
  double nonlinear_coupling = 0.1;
  /// Worker threads; records are independent and aggregated in sigma order.
  std::size_t threads = 1;

  /// Rejects malformed values (ValidationError); regime concerns come back as warnings.
  std::vector<std::string> validate() const;
};

struct ScalingRecord {
  double sigma = 0.0;
  double box_length = 0.0;
  std::size_t n_points = 0;
  std::size_t n_steps = 0;
  double barrier_center = 0.0;
  double i_hydro = 0.0;
  double i_incoherent = 0.0;
  double e_hydro = 0.0;
  double e_single = 0.0;
  double e_condensate = 0.0;
  /// m (<v>_final - <v>_initial)
  double impulse = 0.0;
  double impulse_fraction = 0.0;
  double max_norm_drift = 0.0;
  std::optional<double> i_hydro_nonlinear;
  std::optional<double> i_incoherent_nonlinear;
  std::vector<std::string> warnings;
};

struct ScalingSweepResult {
  ScalingSweepConfig config;
  PhysicalParams params;
  std::vector<ScalingRecord> records;
  /// Least-squares slope and intercept of log(i_hydro) against log(sigma).
  double fit_exponent = 0.0;
  double fit_log_prefactor = 0.0;
  /// (max - min) / min across records.
  double incoherent_variation = 0.0;
  double impulse_variation = 0.0;
  /// Packet length where n^2 i_hydro = n i_incoherent on the fitted power law.
  double crossover_sigma = 0.0;
  std::vector<std::pair<double, double>> crossover_by_n_mean;
  std::vector<std::string> warnings;
};

/// Simulates a single record; exposed for tests and the bindings.
ScalingRecord run_scaling_record(const ScalingSweepConfig& cfg, const PhysicalParams& params,
                                 double sigma);

ScalingSweepResult run_scaling_sweep(const ScalingSweepConfig& cfg, const PhysicalParams& params);

/// Least-squares slope and intercept of y against x.
std::pair<double, double> fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace bremsbec
