#include "bremsbec/propagator.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bremsbec/errors.hpp"

namespace bremsbec {

double max_kinetic_phase(const Grid& grid, const PhysicalParams& params, double dt) noexcept {
  return params.hbar * grid.k_max() * grid.k_max() * std::abs(dt) / (2.0 * params.mass);
}

void validate_evolution(const EvolutionConfig& cfg, const Grid& grid,
                        const PhysicalParams& params) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) {
    throw ValidationError("evolution.dt must be positive (got " + std::to_string(cfg.dt) + ")");
  }
  if (cfg.n_steps == 0) throw ValidationError("evolution.n_steps must be >= 1");
  if (cfg.sample_stride == 0) throw ValidationError("evolution.sample_stride must be >= 1");
  const double phase = max_kinetic_phase(grid, params, cfg.dt);
  if (!(phase < std::numbers::pi)) {
    throw ValidationError("evolution.dt violates the stability guard: hbar*k_max^2*dt/(2m) = " +
                          std::to_string(phase) + " >= pi");
  }
}

SplitStepPropagator::SplitStepPropagator(const Grid& grid, const Potential& potential,
                                         const PhysicalParams& params, double dt)
    : grid_(grid), params_(params), dt_(dt) {
  params_.validate();
  if (!std::isfinite(dt) || dt == 0.0) throw ValidationError("step dt must be finite and non-zero");
  if (!(max_kinetic_phase(grid, params, dt) < std::numbers::pi)) {
    throw ValidationError("step dt violates the stability guard hbar*k_max^2*|dt|/(2m) < pi");
  }
  v_ = potential_values(potential, grid, params);
  grad_v_ = bremsbec::potential_gradient(potential, grid, params);

  const auto k = grid.wavenumbers();
  kinetic_phase_.resize(grid.size());
  for (std::size_t j = 0; j < k.size(); ++j) {
    kinetic_phase_[j] = std::polar(1.0, -params.hbar * k[j] * k[j] * dt / (2.0 * params.mass));
  }
  if (params.gpe_coupling == 0.0) {
    potential_phase_.resize(grid.size());
    for (std::size_t j = 0; j < v_.size(); ++j) {
      potential_phase_[j] = std::polar(1.0, -v_[j] * dt / (2.0 * params.hbar));
    }
  }
}

void SplitStepPropagator::apply_potential_half_step(std::span<Complex> values) const {
  if (!potential_phase_.empty()) {
    for (std::size_t j = 0; j < values.size(); ++j) values[j] *= potential_phase_[j];
    return;
  }
  const double scale = -dt_ / (2.0 * params_.hbar);
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double energy = v_[j] + params_.gpe_coupling * std::norm(values[j]);
    values[j] *= std::polar(1.0, energy * scale);
  }
}

void SplitStepPropagator::advance(WaveFunction& psi) const {
  if (!(psi.grid() == grid_)) throw ValidationError("wave function grid differs from propagator grid");
  auto values = psi.values();
  apply_potential_half_step(values);
  grid_.forward_in_place(values);
  for (std::size_t j = 0; j < values.size(); ++j) values[j] *= kinetic_phase_[j];
  grid_.inverse_in_place(values);
  apply_potential_half_step(values);
  for (const auto& c : values) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw NumericalError("non-finite amplitude after split step");
    }
  }
  psi.set_time(psi.time() + dt_);
}

WaveFunction step(const WaveFunction& psi, const Potential& potential,
                  const PhysicalParams& params, double dt) {
  WaveFunction next = psi;
  SplitStepPropagator(psi.grid(), potential, params, dt).advance(next);
  return next;
}

Evolution evolve(const WaveFunction& psi0, const Potential& potential,
                 const PhysicalParams& params, const EvolutionConfig& cfg) {
  params.validate();
  validate_evolution(cfg, psi0.grid(), params);
  const SplitStepPropagator propagator(psi0.grid(), potential, params, cfg.dt);

  WaveFunction psi = psi0;
  TimeSeries series;
  series.push_back(psi.time(), measure(psi, propagator.potential_gradient(), params));
  for (std::size_t n = 1; n <= cfg.n_steps; ++n) {
    try {
      propagator.advance(psi);
    } catch (const NumericalError& e) {
      throw NumericalError(std::string(e.what()) + " at step " + std::to_string(n));
    }
    // accumulated time drifts from psi0.time() + n*dt by rounding; use the exact product
    psi.set_time(psi0.time() + static_cast<double>(n) * cfg.dt);
    if (n % cfg.sample_stride == 0 || n == cfg.n_steps) {
      series.push_back(psi.time(), measure(psi, propagator.potential_gradient(), params));
    }
  }
  return Evolution{std::move(series), std::move(psi)};
}

TimeSeries evolve_and_record(const WaveFunction& psi0, const Potential& potential,
                             const PhysicalParams& params, const EvolutionConfig& cfg) {
  return evolve(psi0, potential, params, cfg).series;
}

}  // namespace bremsbec
