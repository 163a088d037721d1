#pragma once

#include <optional>
#include <span>

#include "bremsbec/propagator.hpp"
#include "bremsbec/state.hpp"
#include "bremsbec/time_series.hpp"

namespace bremsbec {

/// Radiated energies for the four low-energy models.
///
///   classical   prefactor * int a(t)^2 dt           (point particle)
///   hydro       prefactor * int <a>^2 dt            (no n_mean factor)
///   single      prefactor * int <a^2> dt
///   condensate  prefactor * (n^2 int <a>^2 dt + n int <a^2> dt)
///
/// with prefactor = (2/3) q^2 / c^3.
struct RadiationResult {
  double i_hydro = 0.0;
  double i_incoherent = 0.0;
  double prefactor = 0.0;
  double n_mean = 0.0;
  double e_hydro = 0.0;
  double e_single = 0.0;
  double e_condensate = 0.0;
  /// Filled only when a point-particle trajectory was supplied.
  std::optional<double> i_classical;
  std::optional<double> e_classical;
};

/// Trapezoid rule over (possibly non-uniform) samples.
double trapezoid(std::span<const double> t, std::span<const double> f);

RadiationResult integrate_radiation(const TimeSeries& series, const PhysicalParams& params);
RadiationResult integrate_radiation(const TimeSeries& series, const PhysicalParams& params,
                                    const TimeSeries& classical);

/// Point particle m x'' = -dV/dx integrated with classical RK4.
///
/// The returned series has norm2 = 1, a_mean = a(t) and a2_mean = a(t)^2.
/// Tabulated potentials are rejected (no continuous gradient).
TimeSeries classical_trajectory(double x0, double v0, const Potential& potential,
                                const PhysicalParams& params, const EvolutionConfig& cfg);

}  // namespace bremsbec
