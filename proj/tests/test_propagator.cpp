#include <cmath>
#include <numbers>

#include "doctest.h"

#include "bremsbec/errors.hpp"
#include "bremsbec/experiments.hpp"
#include "bremsbec/propagator.hpp"

using namespace bremsbec;
using std::numbers::pi;

namespace {

double harmonic_x_error(std::size_t n_steps, double duration) {
  const Grid g(128, 32.0);
  const auto psi0 = make_gaussian_packet(g, 1.0, std::sqrt(0.5), 0.0);
  const auto e = evolve(psi0, HarmonicPotential{1.0}, PhysicalParams{},
                        {duration / static_cast<double>(n_steps), n_steps, n_steps});
  return std::abs(expectation_position(e.final_state) - std::cos(duration));
}

}  // namespace

TEST_CASE("free packet drifts at p0/m") {
  const Grid g(512, 80.0);
  const auto psi0 = make_gaussian_packet(g, -10.0, 1.0, 2.0);
  const auto e = evolve(psi0, ZeroPotential{}, PhysicalParams{}, {0.01, 500, 50});
  CHECK(std::abs(expectation_position(e.final_state) - 0.0) < 1e-6);
  CHECK(std::abs(expectation_velocity(e.final_state, PhysicalParams{}) - 2.0) < 1e-8);
  // free spreading: sigma(t)^2 = sigma^2 + (hbar t / (2 m sigma))^2
  CHECK(position_variance(e.final_state) == doctest::Approx(1.0 + 6.25).epsilon(1e-8));
  for (double a : e.series.a_mean) CHECK(std::abs(a) < 1e-10);
}

TEST_CASE("coherent packet returns after one harmonic period") {
  const Grid g(128, 32.0);
  const double sigma = std::sqrt(0.5);
  const auto psi0 = make_gaussian_packet(g, 1.0, sigma, 0.0);
  const std::size_t n = 6284;
  const auto e = evolve(psi0, HarmonicPotential{1.0}, PhysicalParams{}, {2.0 * pi / n, n, 100});
  CHECK(std::abs(expectation_position(e.final_state) - 1.0) < 1e-5);
  CHECK(std::abs(std::sqrt(position_variance(e.final_state)) - sigma) < 1e-6);
  CHECK(e.final_state.time() == doctest::Approx(2.0 * pi));
}

TEST_CASE("single steps preserve the norm") {
  const Grid g(256, 40.0);
  PhysicalParams params;
  params.gpe_coupling = 3.0;
  const auto psi0 = make_gaussian_packet(g, 2.0, 1.0, 1.5);
  const Potential potentials[] = {ZeroPotential{}, HarmonicPotential{0.5},
                                  GaussianBarrier{2.0, 0.5, 0.0}, SmoothStep{1.0, 0.3, 1.0}};
  for (const auto& v : potentials) {
    const auto next = step(psi0, v, params, 0.01);
    CHECK(std::abs(norm_squared(next) - norm_squared(psi0)) < 1e-13);
    CHECK(next.time() == doctest::Approx(0.01));
  }
}

TEST_CASE("ten thousand steps stay unitary") {
  const Grid g(128, 32.0);
  PhysicalParams params;
  params.gpe_coupling = 0.5;
  const auto psi0 = make_gaussian_packet(g, 1.0, std::sqrt(0.5), 0.0);
  const auto e = evolve(psi0, HarmonicPotential{1.0}, params, {1e-3, 10000, 1000});
  CHECK(std::abs(norm_squared(e.final_state) - 1.0) < 1e-8);
  CHECK(max_norm_drift(e.series) < 1e-8);
}

TEST_CASE("harmonic position error is second order in dt") {
  // A quarter period past a turning point keeps the leading dt^2 error
  // term visible; at whole periods it cancels.
  const double duration = 2.5 * pi;
  const double e1 = harmonic_x_error(250, duration);
  const double e2 = harmonic_x_error(500, duration);
  const double e3 = harmonic_x_error(1000, duration);
  const double e4 = harmonic_x_error(2000, duration);
  for (double ratio : {e1 / e2, e2 / e3, e3 / e4}) {
    CHECK(ratio > 2.0);
    CHECK(ratio < 6.0);
  }
}

TEST_CASE("stepping backwards undoes the evolution") {
  const Grid g(256, 40.0);
  PhysicalParams params;
  params.gpe_coupling = 2.0;
  const GaussianBarrier barrier{1.0, 0.8, 1.0};
  auto psi = make_gaussian_packet(g, -3.0, 1.0, 1.0);
  const auto start = psi;
  const SplitStepPropagator forward(g, barrier, params, 0.01);
  const SplitStepPropagator backward(g, barrier, params, -0.01);
  for (int n = 0; n < 300; ++n) forward.advance(psi);
  CHECK(expectation_position(psi) > -1.0);
  for (int n = 0; n < 300; ++n) backward.advance(psi);
  double worst = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    worst = std::max(worst, std::abs(psi.values()[j] - start.values()[j]));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("Galilean boost of a free condensate") {
  const Grid g(512, 80.0);
  PhysicalParams params;
  params.gpe_coupling = 1.0;
  const double v = 1.0;
  const EvolutionConfig cfg{0.01, 400, 400};
  const auto rest = evolve(make_gaussian_packet(g, 0.0, 1.0, 0.0), ZeroPotential{}, params, cfg);
  const auto moving = evolve(make_gaussian_packet(g, 0.0, 1.0, v), ZeroPotential{}, params, cfg);
  const double t = cfg.dt * static_cast<double>(cfg.n_steps);
  CHECK(std::abs(expectation_position(moving.final_state) -
                 (expectation_position(rest.final_state) + v * t)) < 1e-8);
  CHECK(std::abs(position_variance(moving.final_state) - position_variance(rest.final_state)) < 1e-8);
  CHECK(std::abs(expectation_velocity(moving.final_state, params) - v) < 1e-8);
}

TEST_CASE("sampling contract") {
  const Grid g(64, 24.0);
  const auto psi0 = make_gaussian_packet(g, 0.0, 1.0, 0.0);
  const auto one = evolve_and_record(psi0, ZeroPotential{}, PhysicalParams{}, {0.01, 1, 10});
  REQUIRE(one.size() == 2);
  CHECK(one.times[0] == 0.0);
  CHECK(one.times[1] == 0.01);

  const auto s = evolve_and_record(psi0, ZeroPotential{}, PhysicalParams{}, {0.01, 10, 3});
  REQUIRE(s.size() == 5);
  CHECK(s.times[3] == doctest::Approx(0.09));
  CHECK(s.times[4] == doctest::Approx(0.10));
  CHECK_NOTHROW(s.validate());

  CHECK_THROWS_AS(evolve_and_record(psi0, ZeroPotential{}, PhysicalParams{}, {0.01, 0, 1}),
                  ValidationError);
  CHECK_THROWS_AS(evolve_and_record(psi0, ZeroPotential{}, PhysicalParams{}, {0.01, 5, 0}),
                  ValidationError);
  CHECK_THROWS_AS(evolve_and_record(psi0, ZeroPotential{}, PhysicalParams{}, {-0.01, 5, 1}),
                  ValidationError);
}

TEST_CASE("stability guard") {
  const Grid g(256, 40.0);  // k_max = 6.4 pi
  const double limit = 2.0 * pi / (g.k_max() * g.k_max());
  CHECK(max_kinetic_phase(g, PhysicalParams{}, limit) == doctest::Approx(pi));
  CHECK_NOTHROW(validate_evolution({0.99 * limit, 10, 1}, g, PhysicalParams{}));
  CHECK_THROWS_WITH_AS(validate_evolution({1.01 * limit, 10, 1}, g, PhysicalParams{}),
                       doctest::Contains("stability guard"), ValidationError);
}

TEST_CASE("blow-up is reported as a numerical failure") {
  const Grid g(64, 24.0);
  PhysicalParams params;
  params.gpe_coupling = 1e308;
  // peak density above one pushes the nonlinear phase past the double range
  const auto psi0 = make_gaussian_packet(g, 0.0, 0.2, 0.0);
  CHECK_THROWS_WITH_AS(evolve_and_record(psi0, ZeroPotential{}, params, {0.01, 5, 1}),
                       doctest::Contains("at step 1"), NumericalError);
}

TEST_CASE("Ehrenfest relation along a harmonic run") {
  const Grid g(128, 32.0);
  PhysicalParams params;
  params.gpe_coupling = 0.3;
  const auto psi0 = make_gaussian_packet(g, 1.5, 0.8, 0.2);
  const double dt = 1e-3;
  const auto series = evolve_and_record(psi0, HarmonicPotential{1.0}, params, {dt, 4000, 10});
  CHECK(ehrenfest_residual(series) < std::max(1e-4, 3.0 * dt * dt));
}
