#include <cmath>
#include <string>

#include "doctest.h"

#include "bremsbec/config.hpp"
#include "bremsbec/errors.hpp"
#include "bremsbec/propagator.hpp"
#include "bremsbec/report.hpp"

using namespace bremsbec;

TEST_CASE("empty document resolves to documented defaults") {
  const auto cfg = parse_config("{}");
  CHECK(cfg.experiment == Experiment::simulate);
  CHECK(cfg.physics.hbar == 1.0);
  CHECK(cfg.physics.mass == 1.0);
  CHECK(cfg.physics.charge == 1.0);
  CHECK(cfg.physics.light_speed == 1.0);
  CHECK(cfg.physics.gpe_coupling == 0.0);
  CHECK(cfg.physics.n_mean == 1.0);
  CHECK(cfg.warnings.empty());

  const auto echo = config_to_json(cfg);
  CHECK(echo["physics"]["hbar"] == 1.0);
  CHECK(echo["physics"]["n_mean"] == 1.0);
  CHECK(echo["potential"]["kind"] == "zero");
  CHECK(echo["grid"]["n_points"] == 256);
}

TEST_CASE("validation errors name the field") {
  CHECK_THROWS_WITH_AS(parse_config(R"({"grid": {"n_points": 100}})"),
                       doctest::Contains("power of two"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"grid": {"n_pionts": 128}})"),
                       doctest::Contains("n_pionts"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"gird": {}})"), doctest::Contains("gird"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"physics": {"mass": "heavy"}})"),
                       doctest::Contains("physics.mass"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"evolution": {"n_steps": -3}})"),
                       doctest::Contains("evolution.n_steps"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"potential": {"kind": "wall"}})"),
                       doctest::Contains("wall"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"potential": {"kind": "harmonic", "height": 1}})"),
                       doctest::Contains("height"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"evolution": {"dt": 1.0}})"),
                       doctest::Contains("stability guard"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"packet": {"sigma": 20}})"), doctest::Contains("packet"),
                       ValidationError);
  CHECK_THROWS_AS(parse_config("{not json"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"experiment": "fly"})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"physics": {"mass": 0}})"), ValidationError);
}

TEST_CASE("sections of other experiments are validated only when selected") {
  // an oversized packet is irrelevant to a sweep
  CHECK_NOTHROW(parse_config(R"({"experiment": "sweep", "packet": {"sigma": 20}})"));
  CHECK_THROWS_AS(parse_config(R"({"experiment": "benchmark", "physics": {"gpe_coupling": 1}})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"experiment": "oracle", "oracle": {"n_max": 1}})"),
                  ValidationError);
}

TEST_CASE("sweep regime warning is recorded") {
  const auto cfg = parse_config(R"({"experiment": "sweep", "sweep": {"barrier_width": 2.0}})");
  REQUIRE(cfg.warnings.size() == 1);
  CHECK(cfg.warnings[0].find("0.05") != std::string::npos);
  const auto envelope = make_envelope(cfg, "sweep", nlohmann::json::object());
  CHECK(envelope["warnings"].size() == 1);
  CHECK(envelope["code_version"] == code_version());
  CHECK(envelope["config"]["sweep"]["barrier_width"] == 2.0);
}

TEST_CASE("echoed config parses back to the same run") {
  const std::string text = R"({
    "physics": {"gpe_coupling": 0.25, "n_mean": 1000, "charge": 0.3},
    "potential": {"kind": "smooth_step", "height": 0.1, "width": 0.4, "center": 2.0},
    "packet": {"center": -3.0, "sigma": 1.2, "momentum": 1.5},
    "evolution": {"dt": 0.005, "n_steps": 400, "sample_stride": 7},
    "sweep": {"sigma_list": [5, 10, 20.5]},
    "output": {"stem": "probe"}
  })";
  const auto first = parse_config(text);
  const auto echo = config_to_json(first);
  const auto second = parse_config(echo.dump());
  CHECK(config_to_json(second) == echo);
  CHECK(second.sweep.sigma_list[2] == 20.5);
  CHECK(std::get<SmoothStep>(second.potential).center == 2.0);

  const auto run = [](const RunConfig& c) {
    const Grid g(c.grid.n_points, c.grid.box_length);
    const auto psi = make_gaussian_packet(g, c.packet.center, c.packet.sigma, c.packet.momentum,
                                          c.physics.hbar);
    return series_to_csv(evolve_and_record(psi, c.potential, c.physics, c.evolution));
  };
  CHECK(run(first) == run(second));
}

TEST_CASE("tabulated potentials round-trip") {
  std::string values = "[";
  for (int j = 0; j < 64; ++j) values += (j ? "," : "") + std::to_string(0.01 * j);
  values += "]";
  const auto cfg = parse_config(R"({"grid": {"n_points": 64, "box_length": 24},
                                    "potential": {"kind": "tabulated", "values": )" +
                                values + "}}");
  CHECK(std::get<TabulatedPotential>(cfg.potential).values.size() == 64);
  CHECK_THROWS_AS(parse_config(R"({"grid": {"n_points": 64, "box_length": 24},
                                   "potential": {"kind": "tabulated", "values": [1, 2]}})"),
                  ValidationError);
}

TEST_CASE("series CSV format") {
  TimeSeries s;
  s.push_back(0.0, {1.0, 0.1, 0.2, 0.3, 0.4});
  s.push_back(0.5, {1.0, -1.0 / 3.0, 0.0, 1e-300, 2.0});
  const auto csv = series_to_csv(s);
  CHECK(csv.rfind("t,norm2,x_mean,v_mean,a_mean,a2_mean\n", 0) == 0);
  CHECK(csv.find("-3.3333333333333331e-01") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  // 17 significant digits round-trip exactly
  const auto row = csv.substr(csv.rfind("5.0000000000000000e-01"));
  const double x = std::stod(row.substr(row.find(',', row.find(',') + 1) + 1));
  CHECK(x == -1.0 / 3.0);
}

TEST_CASE("acceptance checks flag violations") {
  ScalingSweepResult r;
  r.config.sigma_list = {10.0, 40.0};
  r.fit_exponent = -1.2;
  r.incoherent_variation = 0.01;
  r.impulse_variation = 0.001;
  const auto checks = check_sweep(r);
  CHECK_FALSE(checks[0].passed);
  CHECK(checks[1].passed);
  CHECK(checks[2].passed);
}
