#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>

#include "firefront/pattern_search.hpp"
#include "firefront/scenario.hpp"
#include "firefront/solver.hpp"

namespace firefront {

// Raw mirror of a scenario file (TOML-style sections). Parsing and
// serialization work on this struct; build_scenario() turns it into
// runnable objects. Serialization is canonical, so
// parse(serialize(parse(text))) == parse(text).
struct ScenarioSpec {
  struct Grid {
    int nx = 101;
    int ny = 101;
    double x0 = -1.01;
    double y0 = -1.01;
    double dx = 0.02;
    double dy = 0.02;
    bool operator==(const Grid&) const = default;
  };
  struct Elevation {
    std::string mode = "flat";  // flat | hill | valley | raster
    double cx = 0.0;
    double cy = 0.0;
    double height = 0.0;
    double width = 1.0;
    std::string path;
    bool operator==(const Elevation&) const = default;
  };
  struct Fuel {
    std::string mode = "uniform";  // uniform | split | raster
    std::string label = "A";
    // split: fuel A where a*x + b*y + c >= 0, fuel B elsewhere
    std::array<double, 3> line{0.0, 0.0, 1.0};
    std::string path;
    bool operator==(const Fuel&) const = default;
  };
  struct WindSec {
    double ux = 0.0;
    double uy = 0.0;
    // Alternative polar form: speed plus compass direction the wind blows
    // toward (0 = north, 90 = east).
    std::optional<double> speed;
    std::optional<double> direction_deg;
    std::string units = "mps";  // mps | mph
    bool operator==(const WindSec&) const = default;
  };
  struct Front {
    std::string mode = "circle";  // circle | mask
    double cx = 0.0;
    double cy = 0.0;
    double radius = 0.1;
    std::string path;
    bool operator==(const Front&) const = default;
  };
  struct Time {
    double t0 = 0.0;
    double tf = 1.0;
    double dt = 0.1;
    bool operator==(const Time&) const = default;
  };
  struct Optimizer {
    double mesh_init = 0.25;
    double expand = 2.0;
    double contract = 0.5;
    double tol = 1e-4;
    int max_iter = 2000;
    std::uint64_t seed = 0;
    bool parallel_poll = false;
    std::optional<long long> max_evals;
    std::optional<double> budget_seconds;
    bool operator==(const Optimizer&) const = default;
  };
  struct Solver {
    double cfl = 0.5;
    int reinit_period = 0;
    bool operator==(const Solver&) const = default;
  };
  struct Measurements {
    std::string mode = "synthetic";  // synthetic | dir
    std::string path;
    bool operator==(const Measurements&) const = default;
  };

  Grid grid;
  Elevation elevation;
  Fuel fuel;
  WindSec wind;
  Front front;
  Time time;
  std::optional<std::array<double, 8>> truth;
  std::array<double, 8> p_min{2.0, 0.1, 0.1, 0.1, 0.1, 0.01, 0.001, 0.001};
  std::array<double, 8> p_max{4.0, 3.0, 3.0, 3.0, 3.0, 1.0, 0.12, 0.12};
  Optimizer optimizer;
  Solver solver;
  Measurements measurements;

  bool operator==(const ScenarioSpec&) const = default;
};

ScenarioSpec parse_scenario_text(const std::string& text, const std::string& source_name);
ScenarioSpec load_scenario_spec(const std::filesystem::path& path);
std::string serialize_scenario_spec(const ScenarioSpec& spec);

// Where estimation commands find measured fronts unless overridden.
struct MeasurementSource {
  enum class Kind { synthetic, directory };
  Kind kind = Kind::synthetic;
  std::filesystem::path dir;  // resolved against the scenario file location
};

struct ScenarioBundle {
  Scenario scenario;
  SearchConfig search;
  SolverConfig solver;
  MeasurementSource measurements;
};

// Materializes rasters and configs. Relative paths in the scenario are
// resolved against base_dir.
ScenarioBundle build_scenario(const ScenarioSpec& spec,
                              const std::filesystem::path& base_dir);
ScenarioBundle load_scenario_file(const std::filesystem::path& path);

}  // namespace firefront
