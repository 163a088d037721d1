#include "bremsbec/state.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bremsbec/errors.hpp"

namespace bremsbec {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ValidationError(std::string(name) + " must be positive and finite (got " +
                          std::to_string(value) + ")");
  }
}

RealVector density(const WaveFunction& psi) {
  const auto v = psi.values();
  RealVector rho(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) rho[j] = std::norm(v[j]);
  return rho;
}

}  // namespace

void PhysicalParams::validate() const {
  require_positive(hbar, "hbar");
  require_positive(mass, "mass");
  require_positive(light_speed, "light_speed");
  if (!std::isfinite(charge)) throw ValidationError("charge must be finite");
  if (!std::isfinite(gpe_coupling)) throw ValidationError("gpe_coupling must be finite");
  if (!(n_mean >= 0.0) || !std::isfinite(n_mean)) {
    throw ValidationError("n_mean must be >= 0 (got " + std::to_string(n_mean) + ")");
  }
}

WaveFunction::WaveFunction(Grid grid, ComplexVector values, double time)
    : grid_(std::move(grid)), values_(std::move(values)), time_(time) {
  if (values_.size() != grid_.size()) {
    throw ValidationError("wave function has " + std::to_string(values_.size()) +
                          " samples, grid has " + std::to_string(grid_.size()));
  }
}

WaveFunction WaveFunction::scaled(Complex factor) const {
  ComplexVector v = values_;
  for (auto& c : v) c *= factor;
  return WaveFunction(grid_, std::move(v), time_);
}

std::string_view potential_kind(const Potential& potential) noexcept {
  return std::visit(overloaded{
                        [](const ZeroPotential&) { return std::string_view("zero"); },
                        [](const HarmonicPotential&) { return std::string_view("harmonic"); },
                        [](const GaussianBarrier&) { return std::string_view("gaussian_barrier"); },
                        [](const SmoothStep&) { return std::string_view("smooth_step"); },
                        [](const TabulatedPotential&) { return std::string_view("tabulated"); },
                    },
                    potential);
}

void validate_potential(const Potential& potential, const Grid& grid) {
  std::visit(overloaded{
                 [](const ZeroPotential&) {},
                 [](const HarmonicPotential& p) { require_positive(p.omega, "potential.omega"); },
                 [](const GaussianBarrier& p) {
                   require_positive(p.width, "potential.width");
                   if (!std::isfinite(p.height) || !std::isfinite(p.center)) {
                     throw ValidationError("gaussian_barrier height/center must be finite");
                   }
                 },
                 [](const SmoothStep& p) {
                   require_positive(p.width, "potential.width");
                   if (!std::isfinite(p.height) || !std::isfinite(p.center)) {
                     throw ValidationError("smooth_step height/center must be finite");
                   }
                 },
                 [&](const TabulatedPotential& p) {
                   if (p.values.size() != grid.size()) {
                     throw ValidationError("tabulated potential has " +
                                           std::to_string(p.values.size()) +
                                           " values, grid has " + std::to_string(grid.size()));
                   }
                 },
             },
             potential);
}

RealVector potential_values(const Potential& potential, const Grid& grid,
                            const PhysicalParams& params) {
  validate_potential(potential, grid);
  const auto x = grid.positions();
  RealVector v(grid.size(), 0.0);
  std::visit(overloaded{
                 [](const ZeroPotential&) {},
                 [&](const HarmonicPotential& p) {
                   const double c = 0.5 * params.mass * p.omega * p.omega;
                   for (std::size_t j = 0; j < v.size(); ++j) v[j] = c * x[j] * x[j];
                 },
                 [&](const GaussianBarrier& p) {
                   for (std::size_t j = 0; j < v.size(); ++j) {
                     const double u = (x[j] - p.center) / p.width;
                     v[j] = p.height * std::exp(-0.5 * u * u);
                   }
                 },
                 [&](const SmoothStep& p) {
                   for (std::size_t j = 0; j < v.size(); ++j) {
                     const double u = (x[j] - p.center) / (std::numbers::sqrt2 * p.width);
                     v[j] = 0.5 * p.height * (1.0 + std::erf(u));
                   }
                 },
                 [&](const TabulatedPotential& p) { v = p.values; },
             },
             potential);
  return v;
}

std::optional<double> potential_gradient_at(const Potential& potential, double x,
                                            const PhysicalParams& params) {
  return std::visit(
      overloaded{
          [](const ZeroPotential&) -> std::optional<double> { return 0.0; },
          [&](const HarmonicPotential& p) -> std::optional<double> {
            return params.mass * p.omega * p.omega * x;
          },
          [&](const GaussianBarrier& p) -> std::optional<double> {
            const double u = (x - p.center) / p.width;
            return -p.height * u / p.width * std::exp(-0.5 * u * u);
          },
          [&](const SmoothStep& p) -> std::optional<double> {
            const double u = (x - p.center) / p.width;
            return p.height / (std::sqrt(2.0 * std::numbers::pi) * p.width) *
                   std::exp(-0.5 * u * u);
          },
          [](const TabulatedPotential&) -> std::optional<double> { return std::nullopt; },
      },
      potential);
}

RealVector potential_gradient(const Potential& potential, const Grid& grid,
                              const PhysicalParams& params) {
  validate_potential(potential, grid);
  if (const auto* tab = std::get_if<TabulatedPotential>(&potential)) {
    return real_spectral_derivative(grid, tab->values);
  }
  const auto x = grid.positions();
  RealVector g(grid.size());
  for (std::size_t j = 0; j < g.size(); ++j) g[j] = *potential_gradient_at(potential, x[j], params);
  return g;
}

WaveFunction make_gaussian_packet(const Grid& grid, double center, double sigma, double momentum,
                                  double hbar) {
  require_positive(sigma, "sigma");
  require_positive(hbar, "hbar");
  const double half = 0.5 * grid.box_length();
  if (!(center >= -half && center < half)) {
    throw ValidationError("packet center " + std::to_string(center) + " lies outside the box");
  }
  // amplitude ratio at the nearest edge: exp(-d^2 / (4 sigma^2)) < 1e-12
  const double d = std::min(center + half, half - center);
  const double log_ratio = -d * d / (4.0 * sigma * sigma);
  if (log_ratio > std::log(1e-12)) {
    throw ValidationError("sigma " + std::to_string(sigma) +
                          " too large for the box: edge amplitude exceeds 1e-12 of peak");
  }

  const auto x = grid.positions();
  ComplexVector v(grid.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double u = x[j] - center;
    v[j] = std::exp(-u * u / (4.0 * sigma * sigma)) * std::polar(1.0, momentum * u / hbar);
  }
  WaveFunction psi(grid, std::move(v), 0.0);
  const double n2 = norm_squared(psi);
  return psi.scaled(1.0 / std::sqrt(n2));
}

double norm_squared(const WaveFunction& psi) {
  return inner_product(psi.grid(), psi.values(), psi.values()).real();
}

double expectation_position(const WaveFunction& psi) {
  const auto x = psi.grid().positions();
  const auto v = psi.values();
  double acc = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) acc += x[j] * std::norm(v[j]);
  return acc * psi.grid().dx();
}

double position_variance(const WaveFunction& psi) {
  const auto x = psi.grid().positions();
  const auto v = psi.values();
  const double mean = expectation_position(psi);
  double acc = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) acc += (x[j] - mean) * (x[j] - mean) * std::norm(v[j]);
  return acc * psi.grid().dx();
}

double expectation_velocity(const WaveFunction& psi, const PhysicalParams& params) {
  const auto d = spectral_derivative(psi.grid(), psi.values());
  return params.hbar / params.mass * inner_product(psi.grid(), psi.values(), d).imag();
}

RealVector acceleration_field(const WaveFunction& psi, std::span<const double> grad_v,
                              const PhysicalParams& params) {
  if (grad_v.size() != psi.grid().size()) {
    throw ValidationError("potential gradient length does not match grid");
  }
  RealVector a(grad_v.begin(), grad_v.end());
  if (params.gpe_coupling != 0.0) {
    const auto drho = real_spectral_derivative(psi.grid(), density(psi));
    for (std::size_t j = 0; j < a.size(); ++j) a[j] += params.gpe_coupling * drho[j];
  }
  for (auto& value : a) value = -value / params.mass;
  return a;
}

RealVector acceleration_field(const WaveFunction& psi, const Potential& potential,
                              const PhysicalParams& params) {
  return acceleration_field(psi, potential_gradient(potential, psi.grid(), params), params);
}

double expectation_acceleration(const WaveFunction& psi, const Potential& potential,
                                const PhysicalParams& params) {
  return measure(psi, potential_gradient(potential, psi.grid(), params), params).a_mean;
}

double expectation_acceleration_squared(const WaveFunction& psi, const Potential& potential,
                                        const PhysicalParams& params) {
  return measure(psi, potential_gradient(potential, psi.grid(), params), params).a2_mean;
}

Observables measure(const WaveFunction& psi, std::span<const double> grad_v,
                    const PhysicalParams& params) {
  const auto a = acceleration_field(psi, grad_v, params);
  const auto v = psi.values();
  double a1 = 0.0;
  double a2 = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double rho = std::norm(v[j]);
    a1 += rho * a[j];
    a2 += rho * a[j] * a[j];
  }
  const double dx = psi.grid().dx();
  Observables o;
  o.norm2 = norm_squared(psi);
  o.x_mean = expectation_position(psi);
  o.v_mean = expectation_velocity(psi, params);
  o.a_mean = a1 * dx;
  o.a2_mean = a2 * dx;
  return o;
}

}  // namespace bremsbec
