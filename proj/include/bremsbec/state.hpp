#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <variant>

#include "bremsbec/grid.hpp"

namespace bremsbec {

/// Physical constants of a run. Defaults are natural units with q = c = 1.
struct PhysicalParams {
  double hbar = 1.0;
  double mass = 1.0;
  double charge = 1.0;
  /// Only enters the radiation prefactor (2/3) q^2 / c^3.
  double light_speed = 1.0;
  /// Coefficient g of the condensate self-interaction g|psi|^2.
  double gpe_coupling = 0.0;
  /// Mean particle number |z|^2 of the coherent state.
  double n_mean = 1.0;

  void validate() const;
  double radiation_prefactor() const noexcept {
    return 2.0 / 3.0 * charge * charge / (light_speed * light_speed * light_speed);
  }
};

/// Mean-field amplitude samples psi(x_j) at a given time.
class WaveFunction {
 public:
  WaveFunction(Grid grid, ComplexVector values, double time = 0.0);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const Complex> values() const noexcept { return values_; }
  std::span<Complex> values() noexcept { return values_; }
  double time() const noexcept { return time_; }
  void set_time(double t) noexcept { time_ = t; }

  WaveFunction scaled(Complex factor) const;

 private:
  Grid grid_;
  ComplexVector values_;
  double time_ = 0.0;
};

struct ZeroPotential {};

/// V(x) = m omega^2 x^2 / 2, centered on the origin.
struct HarmonicPotential {
  double omega = 1.0;
};

/// V(x) = height * exp(-(x - center)^2 / (2 width^2)).
struct GaussianBarrier {
  double height = 1.0;
  double width = 1.0;
  double center = 0.0;
};

/// Smooth potential step V(x) = height/2 * (1 + erf((x - center) / (sqrt(2) width))).
/// Its force is a Gaussian of standard deviation `width` carrying the net
/// impulse-producing integral -height.
struct SmoothStep {
  double height = 1.0;
  double width = 1.0;
  double center = 0.0;
};

/// Potential sampled on the grid points; its gradient is taken spectrally.
struct TabulatedPotential {
  RealVector values;
};

using Potential =
    std::variant<ZeroPotential, HarmonicPotential, GaussianBarrier, SmoothStep, TabulatedPotential>;

std::string_view potential_kind(const Potential& potential) noexcept;
void validate_potential(const Potential& potential, const Grid& grid);

RealVector potential_values(const Potential& potential, const Grid& grid,
                            const PhysicalParams& params);
RealVector potential_gradient(const Potential& potential, const Grid& grid,
                              const PhysicalParams& params);
/// Analytic dV/dx at an arbitrary point; empty for tabulated potentials.
std::optional<double> potential_gradient_at(const Potential& potential, double x,
                                            const PhysicalParams& params);

/// Normalized Gaussian psi ~ exp(-(x-c)^2 / (4 sigma^2)) exp(i p (x-c) / hbar),
/// so that the position variance is sigma^2.
///
/// Throws ValidationError when the amplitude at the nearest box edge exceeds
/// 1e-12 of the peak.
WaveFunction make_gaussian_packet(const Grid& grid, double center, double sigma,
                                  double momentum, double hbar = 1.0);

double norm_squared(const WaveFunction& psi);
double expectation_position(const WaveFunction& psi);
double position_variance(const WaveFunction& psi);
/// (hbar/m) Im <psi | d/dx psi>.
double expectation_velocity(const WaveFunction& psi, const PhysicalParams& params);

/// Local acceleration a(x) = (-dV/dx - g d|psi|^2/dx) / m.
RealVector acceleration_field(const WaveFunction& psi, const Potential& potential,
                              const PhysicalParams& params);
RealVector acceleration_field(const WaveFunction& psi, std::span<const double> grad_v,
                              const PhysicalParams& params);

double expectation_acceleration(const WaveFunction& psi, const Potential& potential,
                                const PhysicalParams& params);
double expectation_acceleration_squared(const WaveFunction& psi, const Potential& potential,
                                        const PhysicalParams& params);

/// One row of a time series.
struct Observables {
  double norm2 = 0.0;
  double x_mean = 0.0;
  double v_mean = 0.0;
  double a_mean = 0.0;
  double a2_mean = 0.0;
};

/// Evaluates every recorded observable with a precomputed potential gradient.
Observables measure(const WaveFunction& psi, std::span<const double> grad_v,
                    const PhysicalParams& params);

}  // namespace bremsbec
