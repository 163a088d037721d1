#pragma once

#include <cstddef>

#include "bremsbec/state.hpp"
#include "bremsbec/time_series.hpp"

namespace bremsbec {

struct EvolutionConfig {
  double dt = 1e-3;
  std::size_t n_steps = 1000;
  /// Observables are recorded every `sample_stride` steps; the first and the
  /// last step are always recorded.
  std::size_t sample_stride = 10;
};

/// Largest kinetic phase advanced in one step, hbar k_max^2 |dt| / (2m).
double max_kinetic_phase(const Grid& grid, const PhysicalParams& params, double dt) noexcept;

/// Rejects dt <= 0, n_steps == 0, sample_stride == 0, and steps whose
/// maximal kinetic phase reaches pi.
void validate_evolution(const EvolutionConfig& cfg, const Grid& grid, const PhysicalParams& params);

/// Strang split-step integrator for i hbar psi_t = [p^2/2m + V + g|psi|^2] psi.
///
/// One step is a half-step potential-plus-nonlinear phase, a full kinetic step
/// in Fourier space, and a second half-step phase recomputed from the updated
/// density. dt may be negative (time reversal). The potential and kinetic
/// phase tables are cached at construction; with g = 0 the potential phase is
/// cached as well.
class SplitStepPropagator {
 public:
  SplitStepPropagator(const Grid& grid, const Potential& potential, const PhysicalParams& params,
                      double dt);

  /// Advances psi by one step in place and adds dt to its time.
  /// Throws NumericalError if any amplitude becomes non-finite.
  void advance(WaveFunction& psi) const;

  double dt() const noexcept { return dt_; }
  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> potential_gradient() const noexcept { return grad_v_; }

 private:
  void apply_potential_half_step(std::span<Complex> values) const;

  Grid grid_;
  PhysicalParams params_;
  double dt_;
  RealVector v_;
  RealVector grad_v_;
  ComplexVector kinetic_phase_;
  ComplexVector potential_phase_;  // only used when g == 0
};

WaveFunction step(const WaveFunction& psi, const Potential& potential,
                  const PhysicalParams& params, double dt);

struct Evolution {
  TimeSeries series;
  WaveFunction final_state;
};

/// Runs cfg.n_steps steps and records (t, norm2, <x>, <v>, <a>, <a^2>).
/// Norm drift is reported, never corrected.
Evolution evolve(const WaveFunction& psi0, const Potential& potential,
                 const PhysicalParams& params, const EvolutionConfig& cfg);

TimeSeries evolve_and_record(const WaveFunction& psi0, const Potential& potential,
                             const PhysicalParams& params, const EvolutionConfig& cfg);

}  // namespace bremsbec
