#include <cmath>
#include <numbers>

#include "doctest.h"

#include "bremsbec/errors.hpp"
#include "bremsbec/experiments.hpp"

using namespace bremsbec;
using std::numbers::pi;

TEST_CASE("harmonic benchmark against the closed forms") {
  const auto r = run_harmonic_benchmark(PhysicalParams{}, HarmonicBenchmarkConfig{});
  CHECK(r.sigma == doctest::Approx(std::sqrt(0.5)));
  CHECK(r.dt <= 1e-3);
  CHECK(r.dt * static_cast<double>(r.n_steps) == doctest::Approx(2.0 * pi));
  CHECK(r.radiation.i_hydro == doctest::Approx(pi).epsilon(3e-3));
  CHECK(r.radiation.i_incoherent == doctest::Approx(2.0 * pi).epsilon(3e-3));
  CHECK(r.i_hydro_analytic == doctest::Approx(pi));
  CHECK(r.i_incoherent_analytic == doctest::Approx(2.0 * pi));
  CHECK(r.max_norm_drift < 1e-8);
  CHECK(r.ehrenfest_max_residual < 1e-4);
  CHECK(std::abs(r.x_final - 1.0) < 1e-5);
  REQUIRE(r.radiation.i_classical.has_value());
  CHECK(*r.radiation.i_classical == doctest::Approx(pi).epsilon(1e-6));
}

TEST_CASE("a centred packet radiates only incoherently") {
  HarmonicBenchmarkConfig cfg;
  cfg.x0 = 0.0;
  cfg.omega = 2.0;
  cfg.max_dt = 2e-3;
  const auto r = run_harmonic_benchmark(PhysicalParams{}, cfg);
  CHECK(r.radiation.i_hydro < 1e-10);
  // <a^2> = omega^4 sigma^2 with sigma^2 = 1/(2 omega)
  const double t = pi;  // one period of omega = 2
  const double exact = 16.0 * 0.25 * t;
  const double coarse = r.radiation.i_incoherent / exact - 1.0;
  CHECK(std::abs(coarse) < 1e-5);
  cfg.max_dt = 1e-3;
  const double fine = run_harmonic_benchmark(PhysicalParams{}, cfg).radiation.i_incoherent / exact - 1.0;
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("benchmark input validation") {
  PhysicalParams g;
  g.gpe_coupling = 1.0;
  CHECK_THROWS_AS(run_harmonic_benchmark(g, {}), ValidationError);
  HarmonicBenchmarkConfig bad;
  bad.periods = 0.0;
  CHECK_THROWS_AS(run_harmonic_benchmark(PhysicalParams{}, bad), ValidationError);
}

TEST_CASE("Ehrenfest residual of an exact trajectory") {
  TimeSeries s;
  const double times[] = {0.0, 0.1, 0.25, 0.3, 0.5, 0.8};
  for (double t : times) s.push_back(t, {1.0, 2.0 * t + t * t, 2.0 + 2.0 * t, 2.0, 4.0});
  CHECK(ehrenfest_residual(s) < 1e-12);
  CHECK(max_norm_drift(s) == 0.0);
}

TEST_CASE("least-squares line") {
  const double x[] = {0.0, 1.0, 2.0, 3.0};
  const double y[] = {1.0, -1.0, -3.0, -5.0};
  const auto [slope, intercept] = fit_line(x, y);
  CHECK(slope == doctest::Approx(-2.0));
  CHECK(intercept == doctest::Approx(1.0));
  CHECK_THROWS_AS(fit_line(std::span<const double>(x, 1), std::span<const double>(y, 1)), ValidationError);
}

TEST_CASE("sweep configuration warnings and errors") {
  ScalingSweepConfig cfg;
  CHECK(cfg.validate().empty());
  cfg.barrier_width = 1.0;
  const auto w = cfg.validate();
  REQUIRE(w.size() == 1);
  CHECK(w[0].find("barrier_width") != std::string::npos);

  ScalingSweepConfig unsorted;
  unsorted.sigma_list = {20.0, 10.0};
  CHECK_THROWS_AS(unsorted.validate(), ValidationError);
  ScalingSweepConfig one;
  one.sigma_list = {10.0};
  CHECK_THROWS_AS(one.validate(), ValidationError);
  ScalingSweepConfig zero_threads;
  zero_threads.threads = 0;
  CHECK_THROWS_AS(zero_threads.validate(), ValidationError);
}

TEST_CASE("doubling the packet length halves the hydrodynamic integral") {
  ScalingSweepConfig cfg;
  cfg.sigma_list = {20.0, 40.0};
  cfg.nonlinear_coupling = 0.0;
  const PhysicalParams params;
  const auto shorter = run_scaling_record(cfg, params, 20.0);
  const auto longer = run_scaling_record(cfg, params, 40.0);
  CHECK(longer.i_hydro / shorter.i_hydro == doctest::Approx(0.5).epsilon(0.05));
  CHECK(longer.i_incoherent == doctest::Approx(shorter.i_incoherent).epsilon(0.03));
  CHECK(longer.impulse == doctest::Approx(shorter.impulse).epsilon(0.02));
  CHECK(shorter.impulse_fraction < 0.05);
  CHECK(shorter.warnings.empty());
  CHECK(shorter.max_norm_drift < 1e-8);
  CHECK(shorter.box_length == longer.box_length);
  CHECK(shorter.i_hydro <= shorter.i_incoherent);
  CHECK_FALSE(shorter.i_hydro_nonlinear.has_value());
  CHECK(shorter.e_condensate ==
        params.radiation_prefactor() * (shorter.i_hydro + shorter.i_incoherent));
}
