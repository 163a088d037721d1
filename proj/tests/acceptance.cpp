// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "bremsbec/experiments.hpp"
#include "bremsbec/fock.hpp"
#include "bremsbec/propagator.hpp"
#include "bremsbec/radiation.hpp"
#include "bremsbec/report.hpp"

using namespace bremsbec;
using std::numbers::pi;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, const char* title, bool passed, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", passed ? "PASS" : "FAIL", id, title, detail.c_str());
  std::fflush(stdout);
  if (!passed) ++failures;
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

OneBodyOperator random_hermitian(int m, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  FockMatrix a(m, m);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) a(r, c) = Complex(n(rng), n(rng));
  }
  return OneBodyOperator{0.5 * (a + a.adjoint())};
}

double harmonic_x_error(std::size_t n_steps, double duration) {
  const Grid g(128, 32.0);
  const auto psi0 = make_gaussian_packet(g, 1.0, std::sqrt(0.5), 0.0);
  const auto e = evolve(psi0, HarmonicPotential{1.0}, PhysicalParams{},
                        {duration / static_cast<double>(n_steps), n_steps, n_steps});
  return std::abs(expectation_position(e.final_state) - std::cos(duration));
}

std::string simulate_csv() {
  PhysicalParams params;
  params.gpe_coupling = 0.8;
  params.n_mean = 1e4;
  const Grid g(512, 60.0);
  const auto psi0 = make_gaussian_packet(g, -8.0, 1.5, 2.0);
  return series_to_csv(
      evolve_and_record(psi0, GaussianBarrier{1.5, 0.6, 0.0}, params, {0.005, 2000, 5}));
}

}  // namespace

int main() {
  // 1. two-term operator algebra over random Hermitian operators
  const auto t1 = Clock::now();
  const OracleSuiteConfig oracle_cfg;
  const auto oracle = run_oracle_suite(oracle_cfg);
  const double oracle_seconds = seconds_since(t1);
  {
    const double worst = std::max(oracle.two_term_max_residual, oracle.large_mean_two_term_max_residual);
    report(1, "operator-algebra oracle", worst < 1e-9 && oracle_seconds < 30.0,
           fmt("max residual %.3e < 1e-9 over %d operators x 2 cutoffs (M=%d; |z|^2 in [%.3g, %.4g] at "
               "n_max=%d, [%.4g, %.3g] at n_max=%d); runtime %.2f s < 30 s",
               worst, oracle_cfg.n_operators, oracle_cfg.n_modes, oracle.two_term_mean_range[0],
               oracle.two_term_mean_range[1], oracle_cfg.n_max, oracle.large_mean_range[0],
               oracle.large_mean_range[1], oracle_cfg.large_mean_n_max, oracle_seconds));
  }

  // 2. ordering identity on the safely truncated subspace
  {
    const auto start = Clock::now();
    std::mt19937_64 rng(oracle_cfg.seed + 1);
    const FockSpace space(3, 6);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      worst = std::max(worst, verify_ordering_identity(space, random_hermitian(3, rng), random_hermitian(3, rng)));
    }
    worst = std::max(worst, oracle.ordering_max_residual);
    const double elapsed = seconds_since(start);
    report(2, "ordering identity", worst < 1e-10 && elapsed < 10.0,
           fmt("max residual %.3e < 1e-10 (M=3, n_max=6, 20 + %d pairs); runtime %.2f s < 10 s", worst,
               oracle_cfg.ordering_pairs, elapsed));
  }

  // 3. coherent-state eigenvalue, norm and mean number
  report(3, "coherent-state properties",
         oracle.coherent_eigen_max_residual < 1e-10 && oracle.coherent_norm_max_excess == 0.0 &&
             oracle.number_mean_max_residual < 1e-12,
         fmt("eigen residual %.3e < 1e-10; norm deficit beyond Poisson tail %.3e = 0; |<N> - |z|^2| "
             "%.3e < 1e-12",
             oracle.coherent_eigen_max_residual, oracle.coherent_norm_max_excess,
             oracle.number_mean_max_residual));

  // 4. harmonic benchmark
  const auto t4 = Clock::now();
  const HarmonicBenchmarkConfig bench_cfg;
  const auto bench = run_harmonic_benchmark(PhysicalParams{}, bench_cfg);
  const double bench_seconds = seconds_since(t4);
  {
    const double err_h = std::abs(bench.radiation.i_hydro - pi) / pi;
    const double err_i = std::abs(bench.radiation.i_incoherent - 2.0 * pi) / (2.0 * pi);
    report(4, "solver fidelity",
           err_h < 3e-3 && err_i < 3e-3 && bench.max_norm_drift < 1e-8 &&
               bench.ehrenfest_max_residual < 1e-4 && bench.dt <= 2e-3 && bench_seconds < 60.0,
           fmt("i_hydro %.8f (rel %.2e < 3e-3), i_incoherent %.8f (rel %.2e < 3e-3), norm drift "
               "%.2e < 1e-8, Ehrenfest %.2e < 1e-4, dt %.3e <= 2e-3; runtime %.2f s < 60 s",
               bench.radiation.i_hydro, err_h, bench.radiation.i_incoherent, err_i,
               bench.max_norm_drift, bench.ehrenfest_max_residual, bench.dt, bench_seconds));
  }

  // 5. scaling law
  const auto t5 = Clock::now();
  const ScalingSweepConfig sweep_cfg;
  const auto sweep = run_scaling_sweep(sweep_cfg, PhysicalParams{});
  const double sweep_seconds = seconds_since(t5);
  {
    const double lo = sweep_cfg.sigma_list.front();
    const double hi = sweep_cfg.sigma_list.back();
    const bool geometry = hi / lo >= 4.0 - 1e-12 && sweep_cfg.barrier_width <= 0.05 * lo + 1e-12;
    report(5, "scaling law",
           geometry && sweep.impulse_variation < 0.02 && std::abs(sweep.fit_exponent + 1.0) < 0.1 &&
               sweep.incoherent_variation < 0.03 && sweep_seconds < 600.0,
           fmt("sigma %g..%g (%.1fx), width/min sigma %.3f <= 0.05, impulse variation %.2e < 0.02, "
               "exponent %.4f in -1 +/- 0.1, incoherent variation %.2e < 0.03; runtime %.1f s < 600 s",
               lo, hi, hi / lo, sweep_cfg.barrier_width / lo, sweep.impulse_variation, sweep.fit_exponent,
               sweep.incoherent_variation, sweep_seconds));
  }

  // 6. structural identities
  {
    std::vector<RadiationResult> runs{bench.radiation};
    for (double n : {1.0, 37.0, 1e6}) {
      PhysicalParams p;
      p.n_mean = n;
      runs.push_back(integrate_radiation(bench.series, p));
    }
    bool identity = true;
    bool ordered = true;
    for (const auto& r : runs) {
      identity = identity && r.e_condensate == r.prefactor * (r.n_mean * r.n_mean * r.i_hydro + r.n_mean * r.i_incoherent);
      ordered = ordered && r.i_hydro <= r.i_incoherent;
    }
    const double pref = PhysicalParams{}.radiation_prefactor();
    for (const auto& rec : sweep.records) {
      identity = identity && rec.e_condensate == pref * (1.0 * 1.0 * rec.i_hydro + 1.0 * rec.i_incoherent);
      ordered = ordered && rec.i_hydro <= rec.i_incoherent;
      if (rec.i_hydro_nonlinear) ordered = ordered && *rec.i_hydro_nonlinear <= *rec.i_incoherent_nonlinear;
    }

    double self_force = 0.0;
    const Grid g(256, 40.0);
    for (double coupling : {0.5, 5.0, 50.0}) {
      PhysicalParams p;
      p.gpe_coupling = coupling;
      const auto series = evolve_and_record(make_gaussian_packet(g, 1.0, 1.2, 0.7), ZeroPotential{}, p,
                                            {0.002, 1000, 10});
      for (double a : series.a_mean) self_force = std::max(self_force, std::abs(a));
      const auto r = integrate_radiation(series, p);
      ordered = ordered && r.i_hydro <= r.i_incoherent;
    }
    report(6, "structural identities", identity && ordered && self_force < 1e-10,
           fmt("condensate identity exact in %zu runs: %s; i_hydro <= i_incoherent in every run: %s; "
               "max |<a>| for V=0, g in {0.5, 5, 50}: %.2e < 1e-10",
               runs.size() + sweep.records.size(), identity ? "yes" : "no", ordered ? "yes" : "no",
               self_force));
  }

  // 7. second-order convergence in dt
  {
    const double duration = 2.5 * pi;
    const std::size_t steps[] = {250, 500, 1000, 2000};
    double errors[4];
    for (int i = 0; i < 4; ++i) errors[i] = harmonic_x_error(steps[i], duration);
    bool ok = true;
    std::string ratios;
    for (int i = 0; i < 3; ++i) {
      const double r = errors[i] / errors[i + 1];
      ok = ok && r > 2.0 && r < 6.0;
      ratios += fmt("%s%.3f", i ? ", " : "", r);
    }
    report(7, "convergence", ok,
           fmt("<x>(T) error ratios under dt halving (T = 2.5 pi, n = 250..2000): %s, each in 4 +/- 50%%",
               ratios.c_str()));
  }

  // 8. determinism
  {
    const auto a = simulate_csv();
    const auto b = simulate_csv();
    const auto ba = series_to_csv(run_harmonic_benchmark(PhysicalParams{}, bench_cfg).series);
    const auto bb = series_to_csv(bench.series);
    auto oa = to_json(run_oracle_suite(oracle_cfg));
    auto ob = to_json(oracle);
    oa.erase("elapsed_seconds");
    ob.erase("elapsed_seconds");
    const bool ok = a == b && ba == bb && oa == ob;
    report(8, "determinism", ok,
           fmt("repeated runs byte-identical: simulate CSV (%zu bytes) %s, benchmark CSV %s, oracle "
               "report %s",
               a.size(), a == b ? "yes" : "no", ba == bb ? "yes" : "no", oa == ob ? "yes" : "no"));
  }

  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
