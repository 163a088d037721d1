#include "bremsbec/radiation.hpp"

#include <cmath>
#include <string>

#include "bremsbec/errors.hpp"

namespace bremsbec {

double trapezoid(std::span<const double> t, std::span<const double> f) {
  if (t.size() != f.size()) throw ValidationError("trapezoid: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) acc += 0.5 * (t[i + 1] - t[i]) * (f[i] + f[i + 1]);
  return acc;
}

RadiationResult integrate_radiation(const TimeSeries& series, const PhysicalParams& params) {
  params.validate();
  series.validate();

  RealVector a_sq(series.size());
  for (std::size_t i = 0; i < a_sq.size(); ++i) a_sq[i] = series.a_mean[i] * series.a_mean[i];

  RadiationResult r;
  r.i_hydro = trapezoid(series.times, a_sq);
  r.i_incoherent = trapezoid(series.times, series.a2_mean);
  r.prefactor = params.radiation_prefactor();
  r.n_mean = params.n_mean;
  r.e_hydro = r.prefactor * r.i_hydro;
  r.e_single = r.prefactor * r.i_incoherent;
  r.e_condensate = r.prefactor * (r.n_mean * r.n_mean * r.i_hydro + r.n_mean * r.i_incoherent);
  return r;
}

RadiationResult integrate_radiation(const TimeSeries& series, const PhysicalParams& params,
                                    const TimeSeries& classical) {
  auto r = integrate_radiation(series, params);
  classical.validate();
  r.i_classical = trapezoid(classical.times, classical.a2_mean);
  r.e_classical = r.prefactor * *r.i_classical;
  return r;
}

TimeSeries classical_trajectory(double x0, double v0, const Potential& potential,
                                const PhysicalParams& params, const EvolutionConfig& cfg) {
  params.validate();
  if (std::holds_alternative<TabulatedPotential>(potential)) {
    throw ValidationError("classical_trajectory needs an analytic potential gradient");
  }
  if (!(cfg.dt > 0.0) || cfg.n_steps == 0 || cfg.sample_stride == 0) {
    throw ValidationError("classical_trajectory: invalid evolution config");
  }
  if (!std::isfinite(x0) || !std::isfinite(v0)) {
    throw ValidationError("classical_trajectory: non-finite initial condition");
  }

  const auto accel = [&](double x) { return -*potential_gradient_at(potential, x, params) / params.mass; };
  const auto record = [&](TimeSeries& s, double t, double x, double v) {
    const double a = accel(x);
    s.push_back(t, Observables{1.0, x, v, a, a * a});
  };

  TimeSeries series;
  double x = x0;
  double v = v0;
  const double h = cfg.dt;
  record(series, 0.0, x, v);
  for (std::size_t n = 1; n <= cfg.n_steps; ++n) {
    const double k1x = v;
    const double k1v = accel(x);
    const double k2x = v + 0.5 * h * k1v;
    const double k2v = accel(x + 0.5 * h * k1x);
    const double k3x = v + 0.5 * h * k2v;
    const double k3v = accel(x + 0.5 * h * k2x);
    const double k4x = v + h * k3v;
    const double k4v = accel(x + h * k3x);
    x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    if (!std::isfinite(x) || !std::isfinite(v)) {
      throw NumericalError("classical trajectory blew up at step " + std::to_string(n));
    }
    if (n % cfg.sample_stride == 0 || n == cfg.n_steps) {
      record(series, static_cast<double>(n) * h, x, v);
    }
  }
  return series;
}

}  // namespace bremsbec
