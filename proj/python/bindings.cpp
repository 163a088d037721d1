#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bremsbec/config.hpp"
#include "bremsbec/errors.hpp"
#include "bremsbec/experiments.hpp"
#include "bremsbec/fock.hpp"
#include "bremsbec/propagator.hpp"
#include "bremsbec/radiation.hpp"
#include "bremsbec/report.hpp"

namespace py = pybind11;
using namespace bremsbec;

namespace {

template <class T>
py::array_t<T> to_array(std::span<const T> v) {
  py::array_t<T> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

template <class T>
std::vector<T> from_array(const py::array_t<T, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1) throw ValidationError("expected a one-dimensional array");
  return std::vector<T>(a.data(), a.data() + a.size());
}

TimeSeries series_from_arrays(const py::dict& d) {
  const auto column = [&](const char* key) { return d[key].cast<RealVector>(); };
  TimeSeries s;
  s.times = column("t");
  s.norm2 = column("norm2");
  s.x_mean = column("x_mean");
  s.v_mean = column("v_mean");
  s.a_mean = column("a_mean");
  s.a2_mean = column("a2_mean");
  s.validate();
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Split-step condensate dynamics, radiation integrals and Fock-space oracles";
  m.attr("__version__") = code_version();

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<Grid>(m, "Grid")
      .def(py::init<std::size_t, double>(), py::arg("n_points"), py::arg("box_length"))
      .def_property_readonly("size", &Grid::size)
      .def_property_readonly("box_length", &Grid::box_length)
      .def_property_readonly("dx", &Grid::dx)
      .def_property_readonly("k_max", &Grid::k_max)
      .def_property_readonly("positions", [](const Grid& g) { return to_array(g.positions()); })
      .def_property_readonly("wavenumbers", [](const Grid& g) { return to_array(g.wavenumbers()); })
      .def("__repr__", [](const Grid& g) {
        return "Grid(n_points=" + std::to_string(g.size()) +
               ", box_length=" + py::repr(py::float_(g.box_length())).cast<std::string>() + ")";
      });

  m.def("spectral_derivative",
        [](const Grid& g, const py::array_t<Complex, py::array::c_style | py::array::forcecast>& f) {
          const auto in = from_array<Complex>(f);
          const auto out = spectral_derivative(g, in);
          return to_array<Complex>(out);
        },
        py::arg("grid"), py::arg("f"));

  py::class_<PhysicalParams>(m, "PhysicalParams")
      .def(py::init([](double hbar, double mass, double charge, double light_speed,
                       double gpe_coupling, double n_mean) {
             PhysicalParams p{hbar, mass, charge, light_speed, gpe_coupling, n_mean};
             p.validate();
             return p;
           }),
           py::arg("hbar") = 1.0, py::arg("mass") = 1.0, py::arg("charge") = 1.0,
           py::arg("light_speed") = 1.0, py::arg("gpe_coupling") = 0.0, py::arg("n_mean") = 1.0)
      .def_readwrite("hbar", &PhysicalParams::hbar)
      .def_readwrite("mass", &PhysicalParams::mass)
      .def_readwrite("charge", &PhysicalParams::charge)
      .def_readwrite("light_speed", &PhysicalParams::light_speed)
      .def_readwrite("gpe_coupling", &PhysicalParams::gpe_coupling)
      .def_readwrite("n_mean", &PhysicalParams::n_mean)
      .def_property_readonly("radiation_prefactor", &PhysicalParams::radiation_prefactor);

  py::class_<ZeroPotential>(m, "ZeroPotential").def(py::init<>());
  py::class_<HarmonicPotential>(m, "HarmonicPotential")
      .def(py::init([](double omega) { return HarmonicPotential{omega}; }), py::arg("omega") = 1.0)
      .def_readwrite("omega", &HarmonicPotential::omega);
  py::class_<GaussianBarrier>(m, "GaussianBarrier")
      .def(py::init([](double h, double w, double c) { return GaussianBarrier{h, w, c}; }),
           py::arg("height"), py::arg("width"), py::arg("center") = 0.0)
      .def_readwrite("height", &GaussianBarrier::height)
      .def_readwrite("width", &GaussianBarrier::width)
      .def_readwrite("center", &GaussianBarrier::center);
  py::class_<SmoothStep>(m, "SmoothStep")
      .def(py::init([](double h, double w, double c) { return SmoothStep{h, w, c}; }),
           py::arg("height"), py::arg("width"), py::arg("center") = 0.0)
      .def_readwrite("height", &SmoothStep::height)
      .def_readwrite("width", &SmoothStep::width)
      .def_readwrite("center", &SmoothStep::center);
  py::class_<TabulatedPotential>(m, "TabulatedPotential")
      .def(py::init([](const py::array_t<double, py::array::c_style | py::array::forcecast>& v) {
             return TabulatedPotential{from_array<double>(v)};
           }),
           py::arg("values"));

  m.def("potential_values",
        [](const Potential& v, const Grid& g, const PhysicalParams& p) {
          const auto out = potential_values(v, g, p);
          return to_array<double>(out);
        },
        py::arg("potential"), py::arg("grid"), py::arg("params") = PhysicalParams{});

  py::class_<WaveFunction>(m, "WaveFunction")
      .def(py::init([](const Grid& g,
                       const py::array_t<Complex, py::array::c_style | py::array::forcecast>& v,
                       double t) { return WaveFunction(g, from_array<Complex>(v), t); }),
           py::arg("grid"), py::arg("values"), py::arg("time") = 0.0)
      .def_property_readonly("grid", &WaveFunction::grid)
      .def_property_readonly("time", &WaveFunction::time)
      .def_property_readonly("values", [](const WaveFunction& w) { return to_array(w.values()); });

  m.def("make_gaussian_packet", &make_gaussian_packet, py::arg("grid"), py::arg("center"),
        py::arg("sigma"), py::arg("momentum") = 0.0, py::arg("hbar") = 1.0);
  m.def("norm_squared", &norm_squared, py::arg("psi"));
  m.def("expectation_position", &expectation_position, py::arg("psi"));
  m.def("position_variance", &position_variance, py::arg("psi"));
  m.def("expectation_velocity", &expectation_velocity, py::arg("psi"),
        py::arg("params") = PhysicalParams{});
  m.def("expectation_acceleration",
        py::overload_cast<const WaveFunction&, const Potential&, const PhysicalParams&>(
            &expectation_acceleration),
        py::arg("psi"), py::arg("potential"), py::arg("params") = PhysicalParams{});
  m.def("expectation_acceleration_squared",
        py::overload_cast<const WaveFunction&, const Potential&, const PhysicalParams&>(
            &expectation_acceleration_squared),
        py::arg("psi"), py::arg("potential"), py::arg("params") = PhysicalParams{});

  py::class_<EvolutionConfig>(m, "EvolutionConfig")
      .def(py::init([](double dt, std::size_t n_steps, std::size_t stride) {
             return EvolutionConfig{dt, n_steps, stride};
           }),
           py::arg("dt") = 1e-3, py::arg("n_steps") = 1000, py::arg("sample_stride") = 10)
      .def_readwrite("dt", &EvolutionConfig::dt)
      .def_readwrite("n_steps", &EvolutionConfig::n_steps)
      .def_readwrite("sample_stride", &EvolutionConfig::sample_stride);

  py::class_<TimeSeries>(m, "TimeSeries")
      .def_property_readonly("t", [](const TimeSeries& s) { return to_array<double>(s.times); })
      .def_property_readonly("norm2", [](const TimeSeries& s) { return to_array<double>(s.norm2); })
      .def_property_readonly("x_mean", [](const TimeSeries& s) { return to_array<double>(s.x_mean); })
      .def_property_readonly("v_mean", [](const TimeSeries& s) { return to_array<double>(s.v_mean); })
      .def_property_readonly("a_mean", [](const TimeSeries& s) { return to_array<double>(s.a_mean); })
      .def_property_readonly("a2_mean", [](const TimeSeries& s) { return to_array<double>(s.a2_mean); })
      .def("__len__", &TimeSeries::size)
      .def("to_csv", &series_to_csv)
      .def("as_dict", [](const TimeSeries& s) {
        py::dict d;
        d["t"] = to_array<double>(s.times);
        d["norm2"] = to_array<double>(s.norm2);
        d["x_mean"] = to_array<double>(s.x_mean);
        d["v_mean"] = to_array<double>(s.v_mean);
        d["a_mean"] = to_array<double>(s.a_mean);
        d["a2_mean"] = to_array<double>(s.a2_mean);
        return d;
      });
  m.def("series_from_dict", &series_from_arrays, py::arg("columns"));

  m.def("step", &step, py::arg("psi"), py::arg("potential"), py::arg("params"), py::arg("dt"));
  m.def("evolve",
        [](const WaveFunction& psi0, const Potential& v, const PhysicalParams& p,
           const EvolutionConfig& cfg) {
          py::gil_scoped_release release;
          auto e = evolve(psi0, v, p, cfg);
          return std::make_pair(std::move(e.series), std::move(e.final_state));
        },
        py::arg("psi0"), py::arg("potential"), py::arg("params"), py::arg("config"),
        "Returns (series, final_state).");

  py::class_<RadiationResult>(m, "RadiationResult")
      .def_readonly("i_hydro", &RadiationResult::i_hydro)
      .def_readonly("i_incoherent", &RadiationResult::i_incoherent)
      .def_readonly("prefactor", &RadiationResult::prefactor)
      .def_readonly("n_mean", &RadiationResult::n_mean)
      .def_readonly("e_hydro", &RadiationResult::e_hydro)
      .def_readonly("e_single", &RadiationResult::e_single)
      .def_readonly("e_condensate", &RadiationResult::e_condensate)
      .def_readonly("i_classical", &RadiationResult::i_classical)
      .def_readonly("e_classical", &RadiationResult::e_classical);

  m.def("integrate_radiation",
        [](const TimeSeries& s, const PhysicalParams& p, const std::optional<TimeSeries>& classical) {
          return classical ? integrate_radiation(s, p, *classical) : integrate_radiation(s, p);
        },
        py::arg("series"), py::arg("params"), py::arg("classical") = py::none());
  m.def("classical_trajectory", &classical_trajectory, py::arg("x0"), py::arg("v0"),
        py::arg("potential"), py::arg("params"), py::arg("config"));

  py::class_<HarmonicBenchmarkConfig>(m, "HarmonicBenchmarkConfig")
      .def(py::init<>())
      .def_readwrite("omega", &HarmonicBenchmarkConfig::omega)
      .def_readwrite("x0", &HarmonicBenchmarkConfig::x0)
      .def_readwrite("periods", &HarmonicBenchmarkConfig::periods)
      .def_readwrite("n_points", &HarmonicBenchmarkConfig::n_points)
      .def_readwrite("box_length", &HarmonicBenchmarkConfig::box_length)
      .def_readwrite("max_dt", &HarmonicBenchmarkConfig::max_dt)
      .def_readwrite("sample_stride", &HarmonicBenchmarkConfig::sample_stride);

  py::class_<HarmonicBenchmarkReport>(m, "HarmonicBenchmarkReport")
      .def_readonly("sigma", &HarmonicBenchmarkReport::sigma)
      .def_readonly("duration", &HarmonicBenchmarkReport::duration)
      .def_readonly("dt", &HarmonicBenchmarkReport::dt)
      .def_readonly("n_steps", &HarmonicBenchmarkReport::n_steps)
      .def_readonly("radiation", &HarmonicBenchmarkReport::radiation)
      .def_readonly("i_hydro_analytic", &HarmonicBenchmarkReport::i_hydro_analytic)
      .def_readonly("i_incoherent_analytic", &HarmonicBenchmarkReport::i_incoherent_analytic)
      .def_readonly("i_hydro_rel_error", &HarmonicBenchmarkReport::i_hydro_rel_error)
      .def_readonly("i_incoherent_rel_error", &HarmonicBenchmarkReport::i_incoherent_rel_error)
      .def_readonly("max_norm_drift", &HarmonicBenchmarkReport::max_norm_drift)
      .def_readonly("ehrenfest_max_residual", &HarmonicBenchmarkReport::ehrenfest_max_residual)
      .def_readonly("x_final", &HarmonicBenchmarkReport::x_final)
      .def_readonly("x_final_analytic", &HarmonicBenchmarkReport::x_final_analytic)
      .def_readonly("series", &HarmonicBenchmarkReport::series);

  m.def("run_harmonic_benchmark",
        [](const PhysicalParams& p, const HarmonicBenchmarkConfig& cfg) {
          py::gil_scoped_release release;
          return run_harmonic_benchmark(p, cfg);
        },
        py::arg("params") = PhysicalParams{}, py::arg("config") = HarmonicBenchmarkConfig{});

  py::class_<ScalingSweepConfig>(m, "ScalingSweepConfig")
      .def(py::init<>())
      .def_readwrite("sigma_list", &ScalingSweepConfig::sigma_list)
      .def_readwrite("barrier_width", &ScalingSweepConfig::barrier_width)
      .def_readwrite("barrier_height", &ScalingSweepConfig::barrier_height)
      .def_readwrite("drift_velocity", &ScalingSweepConfig::drift_velocity)
      .def_readwrite("margin_factor", &ScalingSweepConfig::margin_factor)
      .def_readwrite("lead_factor", &ScalingSweepConfig::lead_factor)
      .def_readwrite("max_dx", &ScalingSweepConfig::max_dx)
      .def_readwrite("dt", &ScalingSweepConfig::dt)
      .def_readwrite("sample_stride", &ScalingSweepConfig::sample_stride)
      .def_readwrite("nonlinear_coupling", &ScalingSweepConfig::nonlinear_coupling)
      .def_readwrite("threads", &ScalingSweepConfig::threads)
      .def("validate", &ScalingSweepConfig::validate);

  py::class_<ScalingRecord>(m, "ScalingRecord")
      .def_readonly("sigma", &ScalingRecord::sigma)
      .def_readonly("box_length", &ScalingRecord::box_length)
      .def_readonly("n_points", &ScalingRecord::n_points)
      .def_readonly("n_steps", &ScalingRecord::n_steps)
      .def_readonly("barrier_center", &ScalingRecord::barrier_center)
      .def_readonly("i_hydro", &ScalingRecord::i_hydro)
      .def_readonly("i_incoherent", &ScalingRecord::i_incoherent)
      .def_readonly("e_hydro", &ScalingRecord::e_hydro)
      .def_readonly("e_single", &ScalingRecord::e_single)
      .def_readonly("e_condensate", &ScalingRecord::e_condensate)
      .def_readonly("impulse", &ScalingRecord::impulse)
      .def_readonly("impulse_fraction", &ScalingRecord::impulse_fraction)
      .def_readonly("max_norm_drift", &ScalingRecord::max_norm_drift)
      .def_readonly("i_hydro_nonlinear", &ScalingRecord::i_hydro_nonlinear)
      .def_readonly("i_incoherent_nonlinear", &ScalingRecord::i_incoherent_nonlinear)
      .def_readonly("warnings", &ScalingRecord::warnings);

  py::class_<ScalingSweepResult>(m, "ScalingSweepResult")
      .def_readonly("records", &ScalingSweepResult::records)
      .def_readonly("fit_exponent", &ScalingSweepResult::fit_exponent)
      .def_readonly("fit_log_prefactor", &ScalingSweepResult::fit_log_prefactor)
      .def_readonly("incoherent_variation", &ScalingSweepResult::incoherent_variation)
      .def_readonly("impulse_variation", &ScalingSweepResult::impulse_variation)
      .def_readonly("crossover_sigma", &ScalingSweepResult::crossover_sigma)
      .def_readonly("crossover_by_n_mean", &ScalingSweepResult::crossover_by_n_mean)
      .def_readonly("warnings", &ScalingSweepResult::warnings);

  m.def("run_scaling_record",
        [](const ScalingSweepConfig& cfg, const PhysicalParams& p, double sigma) {
          py::gil_scoped_release release;
          return run_scaling_record(cfg, p, sigma);
        },
        py::arg("config"), py::arg("params"), py::arg("sigma"));
  m.def("run_scaling_sweep",
        [](const ScalingSweepConfig& cfg, const PhysicalParams& p) {
          py::gil_scoped_release release;
          return run_scaling_sweep(cfg, p);
        },
        py::arg("config"), py::arg("params") = PhysicalParams{});

  py::class_<FockSpace>(m, "FockSpace")
      .def(py::init<int, int>(), py::arg("n_modes"), py::arg("n_max"))
      .def_property_readonly("n_modes", &FockSpace::n_modes)
      .def_property_readonly("n_max", &FockSpace::n_max)
      .def_property_readonly("dimension", &FockSpace::dimension)
      .def("occupation", &FockSpace::occupation, py::arg("index"))
      .def("index_of", &FockSpace::index_of, py::arg("occupation"))
      .def_static("expected_dimension", &FockSpace::expected_dimension);

  py::class_<ModeAmplitudes>(m, "ModeAmplitudes")
      .def(py::init([](FockVector phi, Complex z) { return ModeAmplitudes{std::move(phi), z}; }),
           py::arg("phi"), py::arg("z"))
      .def_readwrite("phi", &ModeAmplitudes::phi)
      .def_readwrite("z", &ModeAmplitudes::z)
      .def_property_readonly("mean_number", &ModeAmplitudes::mean_number);

  py::class_<OneBodyOperator>(m, "OneBodyOperator")
      .def(py::init([](FockMatrix mat) { return OneBodyOperator{std::move(mat)}; }), py::arg("matrix"))
      .def_readwrite("matrix", &OneBodyOperator::matrix)
      .def("is_hermitian", &OneBodyOperator::is_hermitian, py::arg("tol") = 1e-12);

  py::class_<TwoTermCheck>(m, "TwoTermCheck")
      .def_readonly("lhs", &TwoTermCheck::lhs)
      .def_readonly("rhs", &TwoTermCheck::rhs)
      .def_readonly("residual", &TwoTermCheck::residual);

  m.def("coherent_mean_limit", &coherent_mean_limit, py::arg("n_max"));
  m.def("poisson_tail", &poisson_tail, py::arg("n_mean"), py::arg("n_max"));
  m.def("coherent_state", &coherent_state, py::arg("space"), py::arg("amplitudes"));
  m.def("fock_state", &fock_state, py::arg("space"), py::arg("amplitudes"), py::arg("n"));
  m.def("second_quantize", &second_quantize, py::arg("space"), py::arg("operator"));
  m.def("verify_ordering_identity", &verify_ordering_identity, py::arg("space"), py::arg("op_i"),
        py::arg("op_j"));
  m.def("verify_two_term_reduction", &verify_two_term_reduction, py::arg("space"),
        py::arg("amplitudes"), py::arg("operator"));
  m.def("verify_fock_reduction", &verify_fock_reduction, py::arg("space"), py::arg("amplitudes"),
        py::arg("n"), py::arg("operator"));

  m.def("run_oracle_suite",
        [](std::uint64_t seed, int n_modes, int n_max, int n_operators) {
          OracleSuiteConfig cfg;
          cfg.seed = seed;
          cfg.n_modes = n_modes;
          cfg.n_max = n_max;
          cfg.n_operators = n_operators;
          py::gil_scoped_release release;
          return to_json(run_oracle_suite(cfg)).dump();
        },
        py::arg("seed") = OracleSuiteConfig{}.seed, py::arg("n_modes") = 3, py::arg("n_max") = 8,
        py::arg("n_operators") = 50, "Residual report as a JSON string.");

  m.def("parse_config", [](const std::string& text) { return config_to_json(parse_config(text)).dump(); },
        py::arg("text"), "Validates a JSON config and returns the fully resolved document.");
}
