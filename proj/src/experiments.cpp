#include "bremsbec/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <numeric>
#include <sstream>

#include "bremsbec/errors.hpp"
#include "bremsbec/propagator.hpp"

namespace bremsbec {

namespace {

std::size_t next_power_of_two(double at_least) {
  std::size_t n = 8;
  while (static_cast<double>(n) < at_least) n *= 2;
  return n;
}

struct SweepGeometry {
  double box_length;
  std::size_t n_points;
  double barrier_center;
};

SweepGeometry sweep_geometry(const ScalingSweepConfig& cfg) {
  const double sigma_max = cfg.sigma_list.back();
  const double needed = cfg.margin_factor * sigma_max + 2.0 * cfg.lead_factor * sigma_max;
  const std::size_t n = next_power_of_two(needed / cfg.max_dx - 1e-9);
  const double length = static_cast<double>(n) * cfg.max_dx;
  const double barrier = -0.5 * length + 0.5 * cfg.margin_factor * sigma_max +
                         cfg.lead_factor * sigma_max;
  return {length, n, barrier};
}

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

double max_norm_drift(const TimeSeries& series) {
  double worst = 0.0;
  for (double n : series.norm2) worst = std::max(worst, std::abs(n - 1.0));
  return worst;
}

double ehrenfest_residual(const TimeSeries& series) {
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < series.size(); ++i) {
    const double h1 = series.times[i] - series.times[i - 1];
    const double h2 = series.times[i + 1] - series.times[i];
    const double dv = (h1 * h1 * series.v_mean[i + 1] - h2 * h2 * series.v_mean[i - 1] -
                       (h1 * h1 - h2 * h2) * series.v_mean[i]) /
                      (h1 * h2 * (h1 + h2));
    worst = std::max(worst, std::abs(dv - series.a_mean[i]));
  }
  return worst;
}

HarmonicBenchmarkReport run_harmonic_benchmark(const PhysicalParams& params,
                                               const HarmonicBenchmarkConfig& cfg) {
  params.validate();
  if (params.gpe_coupling != 0.0) {
    throw ValidationError("harmonic benchmark requires gpe_coupling = 0");
  }
  if (!(cfg.omega > 0.0) || !(cfg.periods > 0.0) || !(cfg.max_dt > 0.0) || cfg.sample_stride == 0) {
    throw ValidationError("harmonic benchmark: omega, periods, max_dt must be positive");
  }

  HarmonicBenchmarkReport report;
  report.config = cfg;
  report.sigma = std::sqrt(params.hbar / (2.0 * params.mass * cfg.omega));
  report.duration = cfg.periods * 2.0 * std::numbers::pi / cfg.omega;
  report.n_steps = static_cast<std::size_t>(std::ceil(report.duration / cfg.max_dt - 1e-9));
  report.dt = report.duration / static_cast<double>(report.n_steps);

  const Grid grid(cfg.n_points, cfg.box_length);
  const Potential potential = HarmonicPotential{cfg.omega};
  const auto psi0 = make_gaussian_packet(grid, cfg.x0, report.sigma, 0.0, params.hbar);
  const EvolutionConfig evo{report.dt, report.n_steps, cfg.sample_stride};

  report.series = evolve_and_record(psi0, potential, params, evo);
  const auto classical = classical_trajectory(cfg.x0, 0.0, potential, params, evo);
  report.radiation = integrate_radiation(report.series, params, classical);

  const double w4 = std::pow(cfg.omega, 4);
  const double t = report.duration;
  const double cos_sq = t / 2.0 + std::sin(2.0 * cfg.omega * t) / (4.0 * cfg.omega);
  report.i_hydro_analytic = w4 * cfg.x0 * cfg.x0 * cos_sq;
  report.i_incoherent_analytic = report.i_hydro_analytic + w4 * report.sigma * report.sigma * t;
  const auto rel = [](double measured, double exact) {
    return exact != 0.0 ? std::abs(measured - exact) / std::abs(exact) : std::abs(measured);
  };
  report.i_hydro_rel_error = rel(report.radiation.i_hydro, report.i_hydro_analytic);
  report.i_incoherent_rel_error = rel(report.radiation.i_incoherent, report.i_incoherent_analytic);
  report.max_norm_drift = max_norm_drift(report.series);
  report.ehrenfest_max_residual = ehrenfest_residual(report.series);
  report.x_final = report.series.x_mean.back();
  report.x_final_analytic = cfg.x0 * std::cos(cfg.omega * t);
  return report;
}

std::vector<std::string> ScalingSweepConfig::validate() const {
  if (sigma_list.size() < 2) throw ValidationError("sweep.sigma_list needs at least 2 entries");
  for (std::size_t i = 0; i < sigma_list.size(); ++i) {
    if (!(sigma_list[i] > 0.0)) throw ValidationError("sweep.sigma_list entries must be positive");
    if (i > 0 && !(sigma_list[i] > sigma_list[i - 1])) {
      throw ValidationError("sweep.sigma_list must be strictly increasing");
    }
  }
  if (!(barrier_width > 0.0)) throw ValidationError("sweep.barrier_width must be positive");
  if (!std::isfinite(barrier_height)) throw ValidationError("sweep.barrier_height must be finite");
  if (!(drift_velocity > 0.0)) throw ValidationError("sweep.drift_velocity must be positive");
  if (!(margin_factor >= 6.0)) {
    throw ValidationError("sweep.margin_factor must be >= 6 (got " + format_number(margin_factor) + ")");
  }
  if (!(lead_factor > 0.0)) throw ValidationError("sweep.lead_factor must be positive");
  if (!(max_dx > 0.0)) throw ValidationError("sweep.max_dx must be positive");
  if (!(dt > 0.0)) throw ValidationError("sweep.dt must be positive");
  if (sample_stride == 0) throw ValidationError("sweep.sample_stride must be >= 1");
  if (!(nonlinear_coupling >= 0.0)) throw ValidationError("sweep.nonlinear_coupling must be >= 0");
  if (threads == 0) throw ValidationError("sweep.threads must be >= 1");

  std::vector<std::string> warnings;
  if (barrier_width > 0.05 * sigma_list.front()) {
    warnings.push_back("barrier_width " + format_number(barrier_width) +
                       " exceeds 0.05 * min(sigma) = " + format_number(0.05 * sigma_list.front()) +
                       "; the localized-force regime is not satisfied");
  }
  return warnings;
}

ScalingRecord run_scaling_record(const ScalingSweepConfig& cfg, const PhysicalParams& params,
                                 double sigma) {
  const auto geometry = sweep_geometry(cfg);
  const Grid grid(geometry.n_points, geometry.box_length);
  const Potential potential = SmoothStep{cfg.barrier_height, cfg.barrier_width, geometry.barrier_center};

  PhysicalParams linear = params;
  linear.gpe_coupling = 0.0;
  const double momentum = linear.mass * cfg.drift_velocity;
  const double start = geometry.barrier_center - cfg.lead_factor * sigma;
  const auto psi0 = make_gaussian_packet(grid, start, sigma, momentum, linear.hbar);

  const double duration = 2.0 * cfg.lead_factor * sigma / cfg.drift_velocity;
  const EvolutionConfig evo{cfg.dt, static_cast<std::size_t>(std::ceil(duration / cfg.dt)),
                            cfg.sample_stride};

  ScalingRecord rec;
  rec.sigma = sigma;
  rec.box_length = geometry.box_length;
  rec.n_points = geometry.n_points;
  rec.n_steps = evo.n_steps;
  rec.barrier_center = geometry.barrier_center;

  const auto series = evolve_and_record(psi0, potential, linear, evo);
  const auto rad = integrate_radiation(series, linear);
  rec.i_hydro = rad.i_hydro;
  rec.i_incoherent = rad.i_incoherent;
  rec.e_hydro = rad.e_hydro;
  rec.e_single = rad.e_single;
  rec.e_condensate = rad.e_condensate;
  rec.impulse = linear.mass * (series.v_mean.back() - series.v_mean.front());
  rec.impulse_fraction = std::abs(rec.impulse) / std::abs(momentum);
  rec.max_norm_drift = max_norm_drift(series);
  if (rec.impulse_fraction >= 0.05) {
    rec.warnings.push_back("impulse is " + format_number(100.0 * rec.impulse_fraction) +
                           "% of the drift momentum; outside the perturbative regime (< 5%)");
  }

  if (cfg.nonlinear_coupling > 0.0) {
    PhysicalParams nonlinear = linear;
    nonlinear.gpe_coupling = cfg.nonlinear_coupling;
    const auto nl_rad = integrate_radiation(evolve_and_record(psi0, potential, nonlinear, evo), nonlinear);
    rec.i_hydro_nonlinear = nl_rad.i_hydro;
    rec.i_incoherent_nonlinear = nl_rad.i_incoherent;
  }
  return rec;
}

std::pair<double, double> fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("fit_line needs >= 2 points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

ScalingSweepResult run_scaling_sweep(const ScalingSweepConfig& cfg, const PhysicalParams& params) {
  params.validate();
  ScalingSweepResult result;
  result.config = cfg;
  result.params = params;
  result.warnings = cfg.validate();

  const std::size_t count = cfg.sigma_list.size();
  result.records.resize(count);
  // batches of `threads` independent records; results land at their sigma index
  for (std::size_t begin = 0; begin < count; begin += cfg.threads) {
    const std::size_t end = std::min(count, begin + cfg.threads);
    std::vector<std::future<ScalingRecord>> jobs;
    for (std::size_t i = begin; i < end; ++i) {
      jobs.push_back(std::async(cfg.threads > 1 ? std::launch::async : std::launch::deferred,
                                run_scaling_record, std::cref(cfg), std::cref(params),
                                cfg.sigma_list[i]));
    }
    for (std::size_t i = begin; i < end; ++i) result.records[i] = jobs[i - begin].get();
  }

  RealVector log_sigma;
  RealVector log_hydro;
  for (const auto& rec : result.records) {
    if (!(rec.i_hydro > 0.0)) {
      throw NumericalError("i_hydro vanished for sigma = " + format_number(rec.sigma));
    }
    log_sigma.push_back(std::log(rec.sigma));
    log_hydro.push_back(std::log(rec.i_hydro));
  }
  std::tie(result.fit_exponent, result.fit_log_prefactor) = fit_line(log_sigma, log_hydro);

  const auto spread = [&](auto field) {
    double lo = field(result.records.front());
    double hi = lo;
    for (const auto& rec : result.records) {
      lo = std::min(lo, field(rec));
      hi = std::max(hi, field(rec));
    }
    return (hi - lo) / std::abs(lo);
  };
  result.incoherent_variation = spread([](const ScalingRecord& r) { return r.i_incoherent; });
  result.impulse_variation = spread([](const ScalingRecord& r) { return std::abs(r.impulse); });

  double mean_incoherent = 0.0;
  for (const auto& rec : result.records) mean_incoherent += rec.i_incoherent;
  mean_incoherent /= static_cast<double>(count);
  // n^2 A sigma^beta = n I  =>  sigma* = (I / (n A))^(1/beta)
  const auto crossover = [&](double n_mean) {
    if (!(n_mean > 0.0)) return 0.0;
    return std::exp((std::log(mean_incoherent / n_mean) - result.fit_log_prefactor) /
                    result.fit_exponent);
  };
  result.crossover_sigma = crossover(params.n_mean);
  for (double n : {1e2, 1e4, 1e6}) result.crossover_by_n_mean.emplace_back(n, crossover(n));

  for (const auto& rec : result.records) {
    for (const auto& w : rec.warnings) {
      result.warnings.push_back("sigma " + format_number(rec.sigma) + ": " + w);
    }
  }
  return result;
}

}  // namespace bremsbec
