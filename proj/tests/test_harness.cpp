#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "ks/output.hpp"
#include "ks/run.hpp"
#include "ks/solver1d.hpp"
#include "ks/solver_radial.hpp"

using namespace ks;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path fresh_dir(const char* tag) {
  const fs::path p = fs::temp_directory_path() / (std::string("ksh_") + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

RunConfig steady_interval() {
  RunConfig cfg;
  cfg.geometry = Geometry::Interval1D;
  cfg.spec = DiffusionSpec::IntegrablePower(2.0);
  cfg.n_cells = 32;
  cfg.time.t_end = 2e-3;
  cfg.time.dt_init = 1e-4;
  cfg.time.dt_max = 1e-4;
  cfg.diag_cadence = 5;
  cfg.mass = 1.0;
  cfg.name = "steady";
  return cfg;
}

}  // namespace

TEST_CASE("parse_config: defaults, sections, comments") {
  const RunConfig cfg = parse_config(
      "# a comment\n"
      "[geometry]\n"
      "geometry = interval\n"
      "tau = 0.5   # trailing comment\n"
      "\n"
      "[kinetics]\n"
      "a_family = integrable_power\n"
      "a_p = 2.5\n"
      "q = 4\n"
      "n_cells = 128\n"
      "u0 = plateau\n"
      "m = 2\n"
      "width = 0.25\n"
      "placement = center\n"
      "v0 = admissible\n"
      "v0_lambda = 0.25\n"
      "t_end = 0.125\n"
      "name = demo\n");
  CHECK(cfg.geometry == Geometry::Interval1D);
  CHECK(cfg.tau == 0.5);
  CHECK(cfg.spec.family == DiffusionFamily::IntegrablePower);
  CHECK(cfg.spec.power == 2.5);
  CHECK(cfg.q == 4.0);
  CHECK(cfg.n_cells == 128);
  CHECK(cfg.u0_profile == "plateau");
  CHECK(cfg.mass == 2.0);
  CHECK(cfg.width == 0.25);
  CHECK(cfg.placement == "center");
  CHECK(cfg.v0_profile == "admissible");
  CHECK(cfg.v0_lambda == 0.25);
  CHECK(cfg.time.t_end == 0.125);
  CHECK(cfg.name == "demo");
  // untouched defaults
  CHECK(cfg.diag_cadence == 10);
  CHECK(cfg.vt_power_half == true);
}

TEST_CASE("parse_config: errors name the offending key") {
  auto message_of = [](const std::string& text) -> std::string {
    try {
      parse_config(text);
    } catch (const std::invalid_argument& err) {
      return err.what();
    }
    return "";
  };
  CHECK(message_of("tau = 1\ntau = 2\n").find("duplicate key 'tau'") !=
        std::string::npos);
  CHECK(message_of("bogus_key = 1\n").find("'bogus_key'") !=
        std::string::npos);
  CHECK(message_of("tau = fast\n").find("not a number") != std::string::npos);
  CHECK(message_of("tau\n").find("key = value") != std::string::npos);
  CHECK(message_of("[open\n").find("section") != std::string::npos);
  // cross-field rules
  CHECK_THROWS(parse_config("geometry = interval\na_family = critical_power\n"));
  CHECK_THROWS(parse_config("geometry = ball\na_family = integrable_power\n"));
  CHECK_THROWS(parse_config(
      "geometry = ball\nn = 4\na_family = critical_power\na_n = 3\n"));
  CHECK_THROWS(parse_config("q = 2\n"));
  CHECK_THROWS(parse_config("dt_min = 1e-3\ndt_init = 1e-6\n"));
  CHECK_THROWS(parse_config("u0 = gaussian\n"));
}

TEST_CASE("parse_config_file: run id defaults to the file stem") {
  const fs::path dir = fresh_dir("cfgfile");
  {
    std::ofstream out(dir / "alpha.cfg");
    out << "tau = 1\n";
  }
  CHECK(parse_config_file((dir / "alpha.cfg").string()).name == "alpha");
  CHECK_THROWS_AS(parse_config_file((dir / "missing.cfg").string()),
                  std::runtime_error);
}

TEST_CASE("emit_timeseries: exact header and decimal round-trip") {
  RunRecord rec;
  rec.config = steady_interval();
  DiagRow row;
  row.t = 1.0 / 3.0;
  row.u_max = M_PI;
  row.u_mass = 1e-17;
  row.v_mass = 12345.678901234567;
  row.L = -2.0 / 7.0;
  rec.rows = {row, row};
  const fs::path dir = fresh_dir("csv");
  const fs::path file = dir / "ts.csv";
  emit_timeseries(rec, file.string());

  std::ifstream in(file);
  std::string header;
  std::getline(in, header);
  CHECK(header == kTimeseriesHeader);
  std::string line;
  std::getline(in, line);
  std::istringstream cells(line);
  std::string cell;
  std::vector<double> parsed;
  while (std::getline(cells, cell, ',')) parsed.push_back(std::stod(cell));
  REQUIRE(parsed.size() == 12);
  CHECK(parsed[0] == row.t);  // 17 significant digits round-trip exactly
  CHECK(parsed[1] == row.u_max);
  CHECK(parsed[2] == row.u_mass);
  CHECK(parsed[3] == row.v_mass);
  CHECK(parsed[4] == row.L);
  std::string line2;
  std::getline(in, line2);
  CHECK(line2 == line);  // identical rows serialize identically
}

TEST_CASE("run: steady interval trajectory is classified bounded") {
  const RunConfig cfg = steady_interval();
  const RunRecord rec = run(cfg);
  CHECK(rec.final_flag == StepFlag::OK);
  CHECK(rec.outcome == Outcome::CompletedBounded);
  CHECK(rec.t_final == doctest::Approx(cfg.time.t_end).epsilon(1e-12));
  REQUIRE(rec.rows.size() >= 3);
  for (const auto& row : rec.rows) {
    CHECK(row.u_mass == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(row.u_max == doctest::Approx(1.0).epsilon(1e-10));
  }
  // cadence: interior samples every diag_cadence accepted steps
  CHECK(static_cast<long>(rec.rows.size()) >=
        rec.steps / static_cast<long>(cfg.diag_cadence));
}

TEST_CASE("emit_summary: schema and optional fields") {
  const RunConfig cfg = steady_interval();
  const RunRecord rec = run(cfg);
  const fs::path dir = fresh_dir("summary");
  emit_summary(rec, (dir / "a.json").string());
  emit_summary(rec, (dir / "b.json").string(), 0.125);

  const auto a = nlohmann::json::parse(slurp(dir / "a.json"));
  CHECK(a["outcome"] == "CompletedBounded");
  CHECK(a["final_flag"] == "OK");
  CHECK(a["steps"].get<long>() == rec.steps);
  CHECK(a["t_final"].get<double>() == rec.t_final);
  CHECK(a["u_max_peak"].get<double>() == rec.u_max_peak);
  CHECK(a["config"]["name"] == "steady");
  CHECK(a["config"]["geometry"] == "interval");
  CHECK(a.contains("identity_residuals"));
  CHECK(!a.contains("theta"));
  CHECK(!a.contains("m_star"));

  const auto b = nlohmann::json::parse(slurp(dir / "b.json"));
  CHECK(b["theta"].get<double>() == 0.125);
}

TEST_CASE("emit_summary: ball runs report m_star") {
  RunConfig cfg;
  cfg.geometry = Geometry::RadialBall;
  cfg.n_dim = 3;
  cfg.spec = DiffusionSpec::CriticalPower(3);
  cfg.n_cells = 24;
  cfg.time.t_end = 1e-4;
  cfg.mass = 1.0;
  cfg.name = "ball";
  const RunRecord rec = run_radial(cfg);
  const fs::path dir = fresh_dir("ballsum");
  emit_summary(rec, (dir / "s.json").string());
  const auto j = nlohmann::json::parse(slurp(dir / "s.json"));
  CHECK(j["m_star"].get<double>() ==
        doctest::Approx(critical_mean_density(3)).epsilon(1e-14));
  CHECK(j["config"]["geometry"] == "ball");
}

TEST_CASE("sweep: determinism, collision suffixes, index last") {
  RunConfig a = steady_interval();
  RunConfig b = steady_interval();  // same name -> suffixed run id
  RunConfig c = steady_interval();
  c.name = "other";
  c.mass = 2.0;

  const fs::path d1 = fresh_dir("sweep1");
  const fs::path d2 = fresh_dir("sweep2");
  sweep({a, b, c}, d1.string());
  sweep({a, b, c}, d2.string());

  const std::string index = slurp(d1 / "index.csv");
  CHECK(index.rfind("run_id,geometry,tau,m_or_M,q,n,outcome,u_max,t_final",
                    0) == 0);
  CHECK(fs::exists(d1 / "steady" / "timeseries.csv"));
  CHECK(fs::exists(d1 / "steady_2" / "timeseries.csv"));
  CHECK(fs::exists(d1 / "other" / "summary.json"));

  // byte-identical across repeated sweeps, and across the duplicate configs
  CHECK(slurp(d1 / "steady" / "timeseries.csv") ==
        slurp(d2 / "steady" / "timeseries.csv"));
  CHECK(slurp(d1 / "steady" / "timeseries.csv") ==
        slurp(d1 / "steady_2" / "timeseries.csv"));
  CHECK(index == slurp(d2 / "index.csv"));

  // an empty sweep still writes the header-only index
  const fs::path d3 = fresh_dir("sweep3");
  sweep({}, d3.string());
  std::istringstream empty_index(slurp(d3 / "index.csv"));
  std::string line;
  std::getline(empty_index, line);
  CHECK(line == "run_id,geometry,tau,m_or_M,q,n,outcome,u_max,t_final");
  CHECK(!std::getline(empty_index, line));
}

TEST_CASE("detect_blowup classification") {
  auto record_with = [](std::vector<double> umax, StepFlag flag) {
    RunRecord rec;
    rec.final_flag = flag;
    for (double x : umax) {
      DiagRow row;
      row.u_max = x;
      rec.rows.push_back(row);
    }
    return rec;
  };
  CHECK(detect_blowup(record_with({1, 2, 3}, StepFlag::BlowupThresholdHit)) ==
        Outcome::UnboundedSuspected);
  CHECK(detect_blowup(record_with({1, 1, 1, 2, 4, 9, 30, 90, 300, 900},
                                  StepFlag::DtFloorHit)) ==
        Outcome::UnboundedSuspected);
  CHECK(detect_blowup(record_with({5, 4, 3, 2, 1, 1, 1, 1, 1, 1},
                                  StepFlag::DtFloorHit)) ==
        Outcome::Inconclusive);
  CHECK(detect_blowup(record_with({1, 1.1, 0.9, 1.0, 1.05}, StepFlag::OK)) ==
        Outcome::CompletedBounded);
  CHECK(detect_blowup(record_with({1, 1, 1, 1, 60}, StepFlag::OK)) ==
        Outcome::Inconclusive);
  CHECK(detect_blowup(
            record_with({1, 2, 3}, StepFlag::NonFiniteDetected)) ==
        Outcome::Inconclusive);
  CHECK_THROWS_AS(detect_blowup(RunRecord{}), std::invalid_argument);
}

TEST_CASE("initial states honor the recipes") {
  SUBCASE("interval admissible v0") {
    RunConfig cfg = steady_interval();
    cfg.v0_profile = "admissible";
    cfg.v0_lambda = 0.5;
    const GridState s = initial_state_1d(cfg);
    const double expected = 1.0 + 0.5 * 1.0 / (2.0 * (cfg.q + 1.0));
    for (double v : s.v) CHECK(v == doctest::Approx(expected).epsilon(1e-14));
  }
  SUBCASE("interval equilibrium v0") {
    RunConfig cfg = steady_interval();
    cfg.u0_profile = "smooth";
    cfg.width = 0.5;
    cfg.v0_profile = "equilibrium";
    const GridState s = initial_state_1d(cfg);
    for (double r : chemo_rate(s, cfg.tau)) CHECK(std::abs(r) <= 1e-10);
  }
  SUBCASE("constant v0 defaults to the mass") {
    RunConfig cfg = steady_interval();
    cfg.mass = 3.0;
    const GridState s = initial_state_1d(cfg);
    for (double v : s.v) CHECK(v == 3.0);
  }
  SUBCASE("radial concentrated with equilibrium response") {
    RunConfig cfg;
    cfg.geometry = Geometry::RadialBall;
    cfg.n_dim = 3;
    cfg.spec = DiffusionSpec::CriticalPower(3);
    cfg.n_cells = 64;
    cfg.mass = 100.0;
    cfg.u0_profile = "smooth";
    cfg.target_m2 = 0.4;
    cfg.v0_profile = "equilibrium";
    const RadialGridState s = initial_state_radial(cfg);
    CHECK(masses(s).first ==
          doctest::Approx(cfg.mass / cfg.n_dim).epsilon(1e-13));
    const double tol = 1e-12 * sup_norm(s.u);  // solve residual scales with u
    for (double r : chemo_rate_radial(s)) CHECK(std::abs(r) <= tol);
    CHECK(radial_second_moment(cumulative(s), cfg.mass, 3, s.dr) <= 0.4);
  }
  SUBCASE("radial rejects admissible v0") {
    RunConfig cfg;
    cfg.geometry = Geometry::RadialBall;
    cfg.spec = DiffusionSpec::CriticalPower(3);
    cfg.v0_profile = "admissible";
    CHECK_THROWS_AS(initial_state_radial(cfg), std::invalid_argument);
  }
}

TEST_CASE("write_run_artifacts creates the directory and both files") {
  const RunRecord rec = run(steady_interval());
  const fs::path dir = fresh_dir("artifacts") / "nested" / "deep";
  write_run_artifacts(rec, dir.string());
  CHECK(fs::exists(dir / "timeseries.csv"));
  CHECK(fs::exists(dir / "summary.json"));
}
