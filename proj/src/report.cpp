#include "bremsbec/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "bremsbec/errors.hpp"

namespace bremsbec {

using nlohmann::json;

namespace {

void append_number(std::string& out, double value) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.16e", value);
  out.append(buf, static_cast<std::size_t>(n));
}

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

CheckOutcome below(std::string name, double value, double threshold) {
  return {std::move(name), value < threshold, value, threshold};
}

}  // namespace

std::string series_to_csv(const TimeSeries& series) {
  std::string out = kSeriesHeader;
  out += '\n';
  out.reserve(out.size() + series.size() * 6 * 24);
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double row[] = {series.times[i],  series.norm2[i],  series.x_mean[i],
                          series.v_mean[i], series.a_mean[i], series.a2_mean[i]};
    for (std::size_t c = 0; c < 6; ++c) {
      if (c) out += ',';
      append_number(out, row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string sweep_to_csv(const ScalingSweepResult& result) {
  std::string out =
      "sigma,box_length,n_points,n_steps,barrier_center,i_hydro,i_incoherent,e_hydro,e_single,"
      "e_condensate,impulse,impulse_fraction,max_norm_drift,i_hydro_nonlinear,"
      "i_incoherent_nonlinear\n";
  for (const auto& r : result.records) {
    append_number(out, r.sigma);
    out += ',';
    append_number(out, r.box_length);
    out += ',' + std::to_string(r.n_points) + ',' + std::to_string(r.n_steps) + ',';
    for (double v : {r.barrier_center, r.i_hydro, r.i_incoherent, r.e_hydro, r.e_single,
                     r.e_condensate, r.impulse, r.impulse_fraction, r.max_norm_drift}) {
      append_number(out, v);
      out += ',';
    }
    if (r.i_hydro_nonlinear) append_number(out, *r.i_hydro_nonlinear);
    out += ',';
    if (r.i_incoherent_nonlinear) append_number(out, *r.i_incoherent_nonlinear);
    out += '\n';
  }
  return out;
}

json to_json(const RadiationResult& r) {
  return {{"i_hydro", r.i_hydro},
          {"i_incoherent", r.i_incoherent},
          {"prefactor", r.prefactor},
          {"n_mean", r.n_mean},
          {"e_hydro", r.e_hydro},
          {"e_single", r.e_single},
          {"e_condensate", r.e_condensate},
          {"i_classical", optional_number(r.i_classical)},
          {"e_classical", optional_number(r.e_classical)}};
}

json to_json(const HarmonicBenchmarkReport& r) {
  return {{"sigma", r.sigma},
          {"duration", r.duration},
          {"dt", r.dt},
          {"n_steps", r.n_steps},
          {"radiation", to_json(r.radiation)},
          {"i_hydro_analytic", r.i_hydro_analytic},
          {"i_incoherent_analytic", r.i_incoherent_analytic},
          {"i_hydro_rel_error", r.i_hydro_rel_error},
          {"i_incoherent_rel_error", r.i_incoherent_rel_error},
          {"max_norm_drift", r.max_norm_drift},
          {"ehrenfest_max_residual", r.ehrenfest_max_residual},
          {"x_final", r.x_final},
          {"x_final_analytic", r.x_final_analytic}};
}

json to_json(const ScalingSweepResult& r) {
  json records = json::array();
  for (const auto& rec : r.records) {
    records.push_back({{"sigma", rec.sigma},
                       {"box_length", rec.box_length},
                       {"n_points", rec.n_points},
                       {"n_steps", rec.n_steps},
                       {"barrier_center", rec.barrier_center},
                       {"i_hydro", rec.i_hydro},
                       {"i_incoherent", rec.i_incoherent},
                       {"e_hydro", rec.e_hydro},
                       {"e_single", rec.e_single},
                       {"e_condensate", rec.e_condensate},
                       {"impulse", rec.impulse},
                       {"impulse_fraction", rec.impulse_fraction},
                       {"max_norm_drift", rec.max_norm_drift},
                       {"i_hydro_nonlinear", optional_number(rec.i_hydro_nonlinear)},
                       {"i_incoherent_nonlinear", optional_number(rec.i_incoherent_nonlinear)},
                       {"warnings", rec.warnings}});
  }
  json crossover = json::array();
  for (const auto& [n, sigma] : r.crossover_by_n_mean) {
    crossover.push_back({{"n_mean", n}, {"sigma", sigma}});
  }
  return {{"records", records},
          {"fit_exponent", r.fit_exponent},
          {"fit_log_prefactor", r.fit_log_prefactor},
          {"incoherent_variation", r.incoherent_variation},
          {"impulse_variation", r.impulse_variation},
          {"crossover_sigma", r.crossover_sigma},
          {"crossover_by_n_mean", crossover},
          {"warnings", r.warnings}};
}

json to_json(const OracleReport& r) {
  return {{"seed", r.config.seed},
          {"n_modes", r.config.n_modes},
          {"n_max", r.config.n_max},
          {"n_operators", r.config.n_operators},
          {"two_term_max_residual", r.two_term_max_residual},
          {"two_term_max_abs_lhs", r.two_term_max_abs_lhs},
          {"two_term_mean_range", {r.two_term_mean_range[0], r.two_term_mean_range[1]}},
          {"large_mean_n_max", r.config.large_mean_n_max},
          {"large_mean_two_term_max_residual", r.large_mean_two_term_max_residual},
          {"large_mean_range", {r.large_mean_range[0], r.large_mean_range[1]}},
          {"ordering_max_residual", r.ordering_max_residual},
          {"coherent_eigen_max_residual", r.coherent_eigen_max_residual},
          {"coherent_norm_max_excess", r.coherent_norm_max_excess},
          {"number_mean_max_residual", r.number_mean_max_residual},
          {"fock_counterpart_max_residual", r.fock_counterpart_max_residual},
          {"one_particle_sector_max_residual", r.one_particle_sector_max_residual},
          {"max_residual", r.max_residual()},
          {"elapsed_seconds", r.elapsed_seconds}};
}

json make_envelope(const RunConfig& cfg, std::string_view kind, json result) {
  return {{"code_version", code_version()},
          {"kind", std::string(kind)},
          {"config", config_to_json(cfg)},
          {"warnings", cfg.warnings},
          {"result", std::move(result)}};
}

json to_json(const std::vector<CheckOutcome>& checks) {
  json out = json::array();
  for (const auto& c : checks) {
    out.push_back({{"name", c.name},
                   {"passed", c.passed},
                   {"value", c.value},
                   {"threshold", c.threshold}});
  }
  return out;
}

std::vector<CheckOutcome> check_simulation(const TimeSeries& series, const RadiationResult& r,
                                           bool force_free) {
  const double structural = r.prefactor * (r.n_mean * r.n_mean * r.i_hydro + r.n_mean * r.i_incoherent);
  std::vector<CheckOutcome> checks{
      below("norm_drift", max_norm_drift(series), 1e-8),
      below("cauchy_schwarz_excess", std::max(0.0, r.i_hydro - r.i_incoherent),
            1e-12 * std::max(1.0, r.i_incoherent)),
      below("condensate_identity", std::abs(r.e_condensate - structural),
            1e-12 * std::max(1.0, std::abs(structural))),
  };
  if (force_free) {
    double worst = 0.0;
    for (double a : series.a_mean) worst = std::max(worst, std::abs(a));
    checks.push_back(below("self_force", worst, 1e-10));
  }
  return checks;
}

std::vector<CheckOutcome> check_benchmark(const HarmonicBenchmarkReport& r) {
  return {
      below("i_hydro_rel_error", r.i_hydro_rel_error, 3e-3),
      below("i_incoherent_rel_error", r.i_incoherent_rel_error, 3e-3),
      below("norm_drift", r.max_norm_drift, 1e-8),
      below("ehrenfest_residual", r.ehrenfest_max_residual, 1e-4),
  };
}

std::vector<CheckOutcome> check_sweep(const ScalingSweepResult& r) {
  const auto [lo, hi] = std::minmax_element(r.config.sigma_list.begin(), r.config.sigma_list.end());
  return {
      below("fit_exponent_deviation", std::abs(r.fit_exponent + 1.0), 0.1),
      below("incoherent_variation", r.incoherent_variation, 0.03),
      below("impulse_variation", r.impulse_variation, 0.02),
      below("width_over_min_sigma", r.config.barrier_width / *lo, 0.05 + 1e-12),
      {"sigma_range_at_least_4x", *hi / *lo >= 4.0 - 1e-9, *hi / *lo, 4.0},
  };
}

std::vector<CheckOutcome> check_oracle(const OracleReport& r) {
  return {
      below("two_term_max_residual", r.two_term_max_residual, 1e-9),
      below("large_mean_two_term_max_residual", r.large_mean_two_term_max_residual, 1e-9),
      below("ordering_max_residual", r.ordering_max_residual, 1e-10),
      below("coherent_eigen_max_residual", r.coherent_eigen_max_residual, 1e-10),
      below("coherent_norm_max_excess", r.coherent_norm_max_excess, 1e-12),
      below("number_mean_max_residual", r.number_mean_max_residual, 1e-12),
      below("fock_counterpart_max_residual", r.fock_counterpart_max_residual, 1e-9),
      below("one_particle_sector_max_residual", r.one_particle_sector_max_residual, 1e-12),
  };
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw ValidationError("write to '" + path.string() + "' failed");
}

}  // namespace bremsbec
