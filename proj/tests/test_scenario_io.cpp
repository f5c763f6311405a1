#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "firefront/artifacts.hpp"
#include "firefront/cli.hpp"
#include "firefront/errors.hpp"
#include "firefront/estimation.hpp"
#include "firefront/raster_io.hpp"
#include "firefront/scenario_file.hpp"
#include "helpers.hpp"

using namespace firefront;
using namespace testutil;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("firefront_io_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
}

std::string what_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ValidationError& ex) {
    return ex.what();
  }
  return "";
}

const std::vector<std::string> kBundled = {
    "nowind_flat.toml",      "wind_flat.toml",       "hill_nowind.toml",
    "valley_nowind.toml",    "valley_estimation.toml", "hill_estimation.toml",
    "troy_template.toml"};

}  // namespace

TEST_CASE("ascii raster roundtrip preserves grid and values") {
  const fs::path dir = fresh_dir("raster");
  GridSpec g{5, 4, -1.0, 2.0, 0.25, 0.25};
  ScalarField f(g);
  for (int k = 0; k < f.size(); ++k) f[k] = std::sin(0.7 * k) * std::pow(10.0, k % 5 - 2);
  f[3] = -1.0 / 3.0;
  f[7] = 1e-17;

  write_ascii_grid(dir / "a.asc", f);
  const ScalarField back = read_ascii_grid(dir / "a.asc");
  CHECK(back.grid() == g);
  for (int k = 0; k < f.size(); ++k) CHECK(back[k] == f[k]);
}

TEST_CASE("ascii raster rejects malformed files") {
  const fs::path dir = fresh_dir("raster_bad");
  CHECK_THROWS_AS(read_ascii_grid(dir / "missing.asc"), ValidationError);

  spit(dir / "order.asc",
       "nrows 2\nncols 2\nxllcorner 0\nyllcorner 0\ncellsize 1\nNODATA_value -9999\n"
       "1 2\n3 4\n");
  const std::string msg =
      what_of([&] { read_ascii_grid(dir / "order.asc"); });
  CHECK(msg.find("ncols") != std::string::npos);

  spit(dir / "nodata.asc",
       "ncols 2\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 1\nNODATA_value -9999\n"
       "1 -9999\n3 4\n");
  CHECK_THROWS_AS(read_ascii_grid(dir / "nodata.asc"), ValidationError);

  spit(dir / "trailing.asc",
       "ncols 2\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 1\nNODATA_value -9999\n"
       "1 2\n3 4\n5\n");
  CHECK_THROWS_AS(read_ascii_grid(dir / "trailing.asc"), ValidationError);

  spit(dir / "short.asc",
       "ncols 2\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 1\nNODATA_value -9999\n"
       "1 2\n3\n");
  CHECK_THROWS_AS(read_ascii_grid(dir / "short.asc"), ValidationError);

  const GridSpec rect{4, 4, 0.0, 0.0, 0.5, 0.25};
  CHECK_THROWS_AS(write_ascii_grid(dir / "rect.asc", ScalarField(rect, 1.0)),
                  ValidationError);
}

TEST_CASE("north-to-south row order") {
  const fs::path dir = fresh_dir("raster_rows");
  spit(dir / "rows.asc",
       "ncols 2\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 1\nNODATA_value -9999\n"
       "1 2\n3 4\n");
  const ScalarField f = read_ascii_grid(dir / "rows.asc");
  // first file row is the northern one (j = ny-1)
  CHECK(f(0, 1) == 1.0);
  CHECK(f(1, 1) == 2.0);
  CHECK(f(0, 0) == 3.0);
  CHECK(f(1, 0) == 4.0);
}

TEST_CASE("empty scenario text yields the documented defaults") {
  const ScenarioSpec spec = parse_scenario_text("", "empty");
  CHECK(spec == ScenarioSpec{});
  CHECK(spec.grid.nx == 101);
  CHECK(spec.p_min[0] == 2.0);
  CHECK(spec.p_max[5] == 1.0);
  CHECK(spec.measurements.mode == "synthetic");
}

TEST_CASE("scenario parse errors carry source and line") {
  const std::string unknown_key = "[grid]\nnx = 5\nbogus = 1\n";
  std::string msg = what_of([&] { parse_scenario_text(unknown_key, "f.toml"); });
  CHECK(msg.find("f.toml:3:") != std::string::npos);
  CHECK(msg.find("bogus") != std::string::npos);

  msg = what_of([&] { parse_scenario_text("[weather]\n", "f.toml"); });
  CHECK(msg.find("f.toml:1:") != std::string::npos);
  CHECK(msg.find("unknown section [weather]") != std::string::npos);

  msg = what_of([&] { parse_scenario_text("[grid]\nnx = abc\n", "f.toml"); });
  CHECK(msg.find("not a number") != std::string::npos);

  msg = what_of([&] { parse_scenario_text("[grid]\nnx = 5\nnx = 7\n", "f.toml"); });
  CHECK(msg.find("duplicate key") != std::string::npos);

  msg = what_of([&] { parse_scenario_text("nx = 5\n", "f.toml"); });
  CHECK(msg.find("outside of any section") != std::string::npos);

  msg = what_of([&] { parse_scenario_text("[truth]\n", "f.toml"); });
  CHECK(msg.find("requires key p") != std::string::npos);

  msg = what_of([&] { parse_scenario_text("[truth]\np = [1, 2]\n", "f.toml"); });
  CHECK(msg.find("8 entries") != std::string::npos);

  msg = what_of([&] { parse_scenario_text("[fuel]\nmode = raster\n", "f.toml"); });
  CHECK(msg.find("not a number") != std::string::npos);

  msg = what_of([&] { parse_scenario_text("[fuel]\nmode = 3\n", "f.toml"); });
  CHECK(msg.find("quoted string") != std::string::npos);
}

TEST_CASE("comments and spacing are tolerated") {
  const std::string text =
      "# full line comment\n"
      "[grid]  # trailing\n"
      "  nx = 7   # inline\n"
      "\n"
      "[fuel]\n"
      "label = \"B\"  # quoted strings keep their hashes intact\n";
  const ScenarioSpec spec = parse_scenario_text(text, "c.toml");
  CHECK(spec.grid.nx == 7);
  CHECK(spec.fuel.label == "B");
}

TEST_CASE("bundled scenarios parse and serialize canonically") {
  const fs::path dir = FIREFRONT_SCENARIO_DIR;
  for (const std::string& name : kBundled) {
    CAPTURE(name);
    const ScenarioSpec spec = load_scenario_spec(dir / name);
    const ScenarioSpec again =
        parse_scenario_text(serialize_scenario_spec(spec), "roundtrip");
    CHECK(spec == again);
    // canonical form is a fixed point
    CHECK(serialize_scenario_spec(spec) == serialize_scenario_spec(again));
  }
}

TEST_CASE("bundled scenarios build into runnable bundles") {
  const fs::path dir = FIREFRONT_SCENARIO_DIR;
  for (const std::string& name : kBundled) {
    if (name == "troy_template.toml") continue;
    CAPTURE(name);
    const ScenarioBundle b = load_scenario_file(dir / name);
    CHECK(b.scenario.grid.nx == 101);
    CHECK(b.scenario.grid.ny == 101);
    CHECK(b.scenario.initial_phi.all_finite());
    CHECK(b.search.p_min.size() == 8);
  }
  // the template points at rasters that ship separately
  CHECK_NOTHROW(load_scenario_spec(dir / "troy_template.toml"));
  CHECK_THROWS_AS(load_scenario_file(dir / "troy_template.toml"), ValidationError);
}

TEST_CASE("scenario surfaces resolve as specified") {
  ScenarioSpec spec;
  spec.elevation.mode = "valley";
  spec.elevation.cx = 0.0;
  spec.elevation.cy = 0.0;
  spec.elevation.height = 0.15;
  spec.elevation.width = 0.4;
  spec.fuel.mode = "split";
  spec.fuel.line = {1.0, 0.0, 0.0};  // fuel A east of the y axis
  spec.front.cx = 0.1;
  spec.front.cy = 0.3;
  spec.front.radius = 0.15;

  const ScenarioBundle b = build_scenario(spec, ".");
  const GridSpec& g = b.scenario.grid;
  CHECK(b.scenario.elevation(50, 50) == doctest::Approx(-0.15).epsilon(1e-14));
  CHECK(b.scenario.elevation(0, 0) > -0.15);
  CHECK(b.scenario.fuel(60, 50) == 0);
  CHECK(b.scenario.fuel(40, 50) == 1);
  CHECK(b.scenario.fuel(50, 50) == 0);  // on the line counts as A

  const ScalarField ref = signed_distance_from_circle(g, 0.1, 0.3, 0.15);
  for (int k = 0; k < ref.size(); ++k) CHECK(b.scenario.initial_phi[k] == ref[k]);

  ScenarioSpec hill = spec;
  hill.elevation.mode = "hill";
  CHECK(build_scenario(hill, ".").scenario.elevation(50, 50) ==
        doctest::Approx(0.15).epsilon(1e-14));
}

TEST_CASE("wind section accepts cartesian and polar forms") {
  ScenarioSpec spec;
  spec.wind.ux = -0.5;
  spec.wind.uy = -2.0;
  CHECK(build_scenario(spec, ".").scenario.wind.ux == -0.5);

  spec.wind.speed = 2.0;
  spec.wind.direction_deg = 90.0;
  Wind w = build_scenario(spec, ".").scenario.wind;
  CHECK(w.ux == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(w.uy) < 1e-12);

  spec.wind.speed = 30.0;
  spec.wind.direction_deg = 63.0;
  spec.wind.units = "mph";
  w = build_scenario(spec, ".").scenario.wind;
  const double rad = 63.0 * std::numbers::pi / 180.0;
  CHECK(w.ux == doctest::Approx(30.0 * std::sin(rad) * 0.44704).epsilon(1e-14));
  CHECK(w.uy == doctest::Approx(30.0 * std::cos(rad) * 0.44704).epsilon(1e-14));

  spec.wind.direction_deg.reset();
  CHECK_THROWS_AS(build_scenario(spec, "."), ValidationError);

  spec.wind.direction_deg = 63.0;
  spec.wind.units = "knots";
  CHECK_THROWS_AS(build_scenario(spec, "."), ValidationError);
}

TEST_CASE("measurement sources resolve against the scenario directory") {
  ScenarioSpec spec;
  CHECK(build_scenario(spec, "/base").measurements.kind ==
        MeasurementSource::Kind::synthetic);

  spec.measurements.mode = "dir";
  spec.measurements.path = "meas";
  const ScenarioBundle b = build_scenario(spec, "/base");
  CHECK(b.measurements.kind == MeasurementSource::Kind::directory);
  CHECK(b.measurements.dir == fs::path("/base") / "meas");

  spec.measurements.path.clear();
  CHECK_THROWS_AS(build_scenario(spec, "/base"), ValidationError);
  spec.measurements.mode = "ftp";
  spec.measurements.path = "meas";
  CHECK_THROWS_AS(build_scenario(spec, "/base"), ValidationError);
}

TEST_CASE("run artifacts roundtrip through the measured loader") {
  const fs::path dir = fresh_dir("artifacts");
  const GridSpec g = centered_grid(9, -1.0, 1.0);
  FrontSeries series;
  series.push(0.0, signed_distance_from_circle(g, 0.0, 0.0, 0.4));
  series.push(0.5, signed_distance_from_circle(g, 0.1, 0.0, 0.7));

  write_run_artifacts(dir, series);
  CHECK(fs::exists(dir / "fronts" / "front_0000.asc"));
  CHECK(fs::exists(dir / "fronts" / "front_0001.asc"));
  CHECK(fs::exists(dir / "fronts" / "times.csv"));
  CHECK(fs::exists(dir / "contours" / "contour_0000.csv"));
  CHECK(fs::exists(dir / "contours" / "contour_0001.csv"));

  // loads both from the run root (nested fronts/) and the fronts dir itself
  for (const fs::path& src : {dir, dir / "fronts"}) {
    const FrontSeries back = load_measured_series(src, g);
    REQUIRE(back.size() == 2);
    CHECK(back.time(0) == 0.0);
    CHECK(back.time(1) == 0.5);
    for (int k = 0; k < 2; ++k) {
      const ScalarField want = sign_raster(series.field(k));
      for (int c = 0; c < want.size(); ++c) CHECK(back.field(k)[c] == want[c]);
    }
  }
}

TEST_CASE("measured loader normalizes values and validates the grid") {
  const fs::path dir = fresh_dir("measured");
  const GridSpec g{3, 3, 0.0, 0.0, 1.0, 1.0};
  ScalarField raw(g, 0.0);
  raw[0] = 0.3;
  raw[1] = -2.0;
  raw[4] = 7.0;
  write_ascii_grid(dir / "m0.asc", raw);
  spit(dir / "times.csv", "index,time,filename\n0,0.25,m0.asc\n");

  const FrontSeries series = load_measured_series(dir, g);
  REQUIRE(series.size() == 1);
  CHECK(series.time(0) == 0.25);
  CHECK(series.field(0)[0] == 1.0);
  CHECK(series.field(0)[1] == -1.0);
  CHECK(series.field(0)[2] == -1.0);  // zero counts as unburnt
  CHECK(series.field(0)[4] == 1.0);

  const GridSpec other{4, 4, 0.0, 0.0, 1.0, 1.0};
  CHECK_THROWS_AS(load_measured_series(dir, other), ValidationError);
  CHECK_THROWS_AS(load_measured_series(dir / "nope", g), ValidationError);

  spit(dir / "times.csv", "index,time,filename\n0,abc,m0.asc\n");
  CHECK_THROWS_AS(load_measured_series(dir, g), ValidationError);
  spit(dir / "times.csv", "index,time,filename\n");
  CHECK_THROWS_AS(load_measured_series(dir, g), ValidationError);
}

TEST_CASE("trace csv bytes are deterministic") {
  const fs::path dir = fresh_dir("trace");
  std::vector<TraceRow> trace;
  trace.push_back({0, 5.0, 0.25, 1, {1, 2, 3, 4, 5, 6, 7, 8}});
  trace.push_back({1, 3.0, 0.5, 4, {1, 2, 3, 4, 5, 6, 7, 8.5}});
  write_trace_csv(dir / "a.csv", trace);
  write_trace_csv(dir / "b.csv", trace);
  const std::string a = slurp(dir / "a.csv");
  CHECK(a == slurp(dir / "b.csv"));
  CHECK(a ==
        "iteration,J,mesh,evaluations,n,eps_a,eps_b,a_a,a_b,alpha,beta_a,beta_b\n"
        "0,5,0.25,1,1,2,3,4,5,6,7,8\n"
        "1,3,0.5,4,1,2,3,4,5,6,7,8.5\n");
}

TEST_CASE("estimation report json is stable under reparse") {
  EstimationReport rep;
  rep.p_hat = ParamVector{};
  rep.J = 3;
  rep.r = 3.0 / 441.0;
  rep.similarity.push_back({0.5, {0.9, 0.8, 0.7}});
  rep.stop = StopReason::step_tol;
  rep.iterations = 4;
  rep.evaluations = 9;
  rep.wall_seconds = 0.25;
  rep.seed = 7;

  const nlohmann::json j = estimation_report_json(rep);
  CHECK(j["J"] == 3);
  CHECK(j["stop"] == "step_tol");
  CHECK(j["e"].is_null());
  CHECK(j["param_names"].size() == 8);
  CHECK(j["p_hat"].size() == 8);
  CHECK(j["similarity"].size() == 1);

  const std::string once = j.dump(2);
  CHECK(nlohmann::json::parse(once).dump(2) == once);

  const fs::path dir = fresh_dir("report");
  write_json(dir / "report.json", j);
  CHECK(nlohmann::json::parse(slurp(dir / "report.json")) == j);
}

TEST_CASE("simulate command writes a complete run directory") {
  const fs::path out = fresh_dir("cli_sim");
  cli::SimulateArgs args;
  args.scenario = (fs::path(FIREFRONT_SCENARIO_DIR) / "nowind_flat.toml").string();
  args.out = (out / "run").string();
  CHECK(cli::cmd_simulate(args) == cli::kOk);
  CHECK(fs::exists(out / "run" / "fronts" / "times.csv"));
  CHECK(fs::exists(out / "run" / "contours" / "contour_0000.csv"));

  const nlohmann::json rep = nlohmann::json::parse(slurp(out / "run" / "report.json"));
  CHECK(rep["type"] == "simulation");
  CHECK(rep["snapshots"].size() == 11);
  long long prev = -1;
  for (const auto& s : rep["snapshots"]) {
    const long long burnt = s["burnt_cells"].get<long long>();
    CHECK(burnt >= prev);
    prev = burnt;
  }

  cli::SimulateArgs missing = args;
  missing.scenario = (out / "nope.toml").string();
  CHECK(cli::cmd_simulate(missing) == cli::kValidationError);

  cli::SimulateArgs bad_params = args;
  bad_params.params = std::vector<double>{3, 0.4, 0.4, 0.5, 0.5, 2.0, 0.02, 0.02};
  CHECK(cli::cmd_simulate(bad_params) == cli::kValidationError);
}

TEST_CASE("evaluate command scores the truth perfectly on synthetic data") {
  const fs::path out = fresh_dir("cli_eval");
  cli::EvaluateArgs args;
  args.scenario = (fs::path(FIREFRONT_SCENARIO_DIR) / "nowind_flat.toml").string();
  args.out = (out / "run").string();
  CHECK(cli::cmd_evaluate(args) == cli::kOk);
  const nlohmann::json rep = nlohmann::json::parse(slurp(out / "run" / "report.json"));
  CHECK(rep["type"] == "evaluation");
  CHECK(rep["J"] == 0);
  for (const auto& s : rep["similarity"]) CHECK(s["ssi"] == 1.0);
}

TEST_CASE("estimate command is reproducible and rejects bad scenarios") {
  const fs::path dir = fresh_dir("cli_est");
  const std::string scenario_text =
      "[grid]\n"
      "nx = 21\nny = 21\nx0 = -1.05\ny0 = -1.05\ndx = 0.1\ndy = 0.1\n"
      "[wind]\nux = 0.2\nuy = 0.1\n"
      "[front]\nmode = \"circle\"\ncenter = [0, 0]\nradius = 0.35\n"
      "[time]\nt0 = 0\ntf = 0.1\ndt = 0.05\n"
      "[truth]\np = [3, 0.4, 0.4, 0.5, 0.5, 0.5, 0.02, 0.02]\n"
      "[optimizer]\nseed = 3\nmax_evals = 40\n";
  spit(dir / "tiny.toml", scenario_text);

  cli::EstimateArgs args;
  args.scenario = (dir / "tiny.toml").string();
  args.out = (dir / "out1").string();
  CHECK(cli::cmd_estimate(args) == cli::kOk);
  CHECK(fs::exists(dir / "out1" / "trace.csv"));
  CHECK(fs::exists(dir / "out1" / "report.json"));
  CHECK(fs::exists(dir / "out1" / "fronts" / "times.csv"));

  args.out = (dir / "out2").string();
  CHECK(cli::cmd_estimate(args) == cli::kOk);
  CHECK(slurp(dir / "out1" / "trace.csv") == slurp(dir / "out2" / "trace.csv"));

  const nlohmann::json rep = nlohmann::json::parse(slurp(dir / "out1" / "report.json"));
  CHECK(rep["evaluations"].get<long long>() <= 40);
  CHECK(rep["seed"] == 3);

  // estimation against externally provided fronts
  const ScenarioBundle bundle = load_scenario_file(dir / "tiny.toml");
  const FrontSeries meas =
      generate_synthetic_measurements(bundle.scenario, *bundle.scenario.truth);
  write_run_artifacts(dir / "meas", meas);
  args.measured = (dir / "meas").string();
  args.out = (dir / "out3").string();
  CHECK(cli::cmd_estimate(args) == cli::kOk);

  spit(dir / "bad.toml", "[time]\nt0 = 0\ntf = 1\ndt = 0\n");
  cli::EstimateArgs bad;
  bad.scenario = (dir / "bad.toml").string();
  bad.out = (dir / "out4").string();
  CHECK(cli::cmd_estimate(bad) == cli::kValidationError);
}
