#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "firefront/artifacts.hpp"
#include "firefront/errors.hpp"
#include "firefront/estimation.hpp"
#include "firefront/metrics.hpp"
#include "firefront/pattern_search.hpp"
#include "firefront/scenario_file.hpp"

namespace py = pybind11;
using namespace firefront;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

ScalarField field_from_array(const GridSpec& grid, const Array& arr) {
  if (arr.ndim() != 2 || arr.shape(0) != grid.ny || arr.shape(1) != grid.nx) {
    throw ValidationError("array must have shape (ny, nx)");
  }
  ScalarField f(grid);
  const double* src = arr.data();
  std::copy(src, src + grid.cells(), f.values().data());
  return f;
}

py::array field_to_array(const ScalarField& f) {
  const auto ny = static_cast<py::ssize_t>(f.ny());
  const auto nx = static_cast<py::ssize_t>(f.nx());
  py::array_t<double> arr({ny, nx});
  std::copy(f.values().begin(), f.values().end(), arr.mutable_data());
  return arr;
}

py::array series_to_array(const FrontSeries& s) {
  const auto k = static_cast<py::ssize_t>(s.size());
  const auto ny = static_cast<py::ssize_t>(s.grid().ny);
  const auto nx = static_cast<py::ssize_t>(s.grid().nx);
  py::array_t<double> arr({k, ny, nx});
  double* dst = arr.mutable_data();
  for (int i = 0; i < s.size(); ++i) {
    const auto& v = s.field(i).values();
    std::copy(v.begin(), v.end(), dst + static_cast<py::ssize_t>(i) * ny * nx);
  }
  return arr;
}

FrontSeries series_from_arrays(const GridSpec& grid, const std::vector<double>& times,
                               const Array& rasters) {
  if (rasters.ndim() != 3 || rasters.shape(0) != static_cast<py::ssize_t>(times.size()) ||
      rasters.shape(1) != grid.ny || rasters.shape(2) != grid.nx) {
    throw ValidationError("rasters must have shape (len(times), ny, nx)");
  }
  FrontSeries out;
  const double* src = rasters.data();
  const std::size_t stride = static_cast<std::size_t>(grid.cells());
  for (std::size_t k = 0; k < times.size(); ++k) {
    ScalarField f(grid);
    std::copy(src + k * stride, src + (k + 1) * stride, f.values().data());
    out.push(times[k], std::move(f));
  }
  return out;
}

py::dict report_to_dict(const EstimationReport& rep) {
  py::dict d;
  d["p_hat"] = rep.p_hat.to_array();
  d["J"] = rep.J;
  d["r"] = rep.r;
  d["e"] = rep.e ? py::object(py::float_(*rep.e)) : py::object(py::none());
  py::list sims;
  for (const auto& s : rep.similarity) {
    py::dict row;
    row["time"] = s.time;
    row["ssi"] = s.scores.ssi;
    row["jsc"] = s.scores.jsc;
    row["ks"] = s.scores.ks;
    sims.append(row);
  }
  d["similarity"] = sims;
  d["stop"] = to_string(rep.stop);
  d["iterations"] = rep.iterations;
  d["evaluations"] = rep.evaluations;
  d["wall_seconds"] = rep.wall_seconds;
  d["seed"] = rep.seed;
  py::list trace;
  for (const auto& row : rep.trace) {
    py::dict t;
    t["iteration"] = row.iteration;
    t["J"] = row.fval;
    t["mesh"] = row.mesh;
    t["evaluations"] = row.evaluations;
    t["point"] = row.point;
    trace.append(t);
  }
  d["trace"] = trace;
  return d;
}

SolverConfig solver_with(const ScenarioBundle& b, std::optional<double> cfl) {
  SolverConfig cfg = b.solver;
  if (cfl) cfg.cfl = *cfl;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_firefront, m) {
  m.doc() = "Fire front propagation and parameter estimation";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init([](int nx, int ny, double x0, double y0, double dx, double dy) {
             GridSpec g{nx, ny, x0, y0, dx, dy};
             g.validate();
             return g;
           }),
           py::arg("nx"), py::arg("ny"), py::arg("x0"), py::arg("y0"), py::arg("dx"),
           py::arg("dy"))
      .def_readonly("nx", &GridSpec::nx)
      .def_readonly("ny", &GridSpec::ny)
      .def_readonly("x0", &GridSpec::x0)
      .def_readonly("y0", &GridSpec::y0)
      .def_readonly("dx", &GridSpec::dx)
      .def_readonly("dy", &GridSpec::dy)
      .def("__repr__", [](const GridSpec& g) {
        return "GridSpec(" + std::to_string(g.nx) + "x" + std::to_string(g.ny) + ")";
      });

  py::class_<ScenarioBundle>(m, "Scenario")
      .def_property_readonly("grid", [](const ScenarioBundle& b) { return b.scenario.grid; })
      .def_property_readonly("t0", [](const ScenarioBundle& b) { return b.scenario.t0; })
      .def_property_readonly("tf", [](const ScenarioBundle& b) { return b.scenario.tf; })
      .def_property_readonly("dt", [](const ScenarioBundle& b) { return b.scenario.dt; })
      .def_property_readonly("wind",
                             [](const ScenarioBundle& b) {
                               return py::make_tuple(b.scenario.wind.ux, b.scenario.wind.uy);
                             })
      .def_property_readonly("truth",
                             [](const ScenarioBundle& b) -> py::object {
                               if (!b.scenario.truth) return py::none();
                               return py::cast(b.scenario.truth->to_array());
                             })
      .def_property_readonly("bounds",
                             [](const ScenarioBundle& b) {
                               return py::make_tuple(b.search.p_min, b.search.p_max);
                             })
      .def_property_readonly("elevation",
                             [](const ScenarioBundle& b) {
                               return field_to_array(b.scenario.elevation);
                             })
      .def_property_readonly("initial_phi", [](const ScenarioBundle& b) {
        return field_to_array(b.scenario.initial_phi);
      });

  m.def("load_scenario", &load_scenario_file, py::arg("path"),
        "Parse and materialize a scenario file");

  m.def(
      "simulate",
      [](const ScenarioBundle& b, std::optional<std::array<double, 8>> params,
         std::optional<std::vector<double>> snapshot_times, std::optional<double> cfl) {
        ParamVector p = params ? ParamVector::from_array(*params)
                               : (b.scenario.truth ? *b.scenario.truth
                                                   : throw ValidationError(
                                                         "scenario has no truth parameters; "
                                                         "pass params"));
        SolverConfig cfg = solver_with(b, cfl);
        if (snapshot_times) cfg.snapshot_times = *snapshot_times;
        const FrontSeries s = [&] {
          py::gil_scoped_release release;
          return simulate(b.scenario, p, cfg);
        }();
        return py::make_tuple(s.times(), series_to_array(s));
      },
      py::arg("scenario"), py::arg("params") = py::none(),
      py::arg("snapshot_times") = py::none(), py::arg("cfl") = py::none(),
      "Run the front propagation; returns (times, phi array of shape (k, ny, nx))");

  m.def(
      "generate_measurements",
      [](const ScenarioBundle& b, std::optional<std::array<double, 8>> params,
         std::optional<double> cfl) {
        ParamVector p = params ? ParamVector::from_array(*params)
                               : (b.scenario.truth ? *b.scenario.truth
                                                   : throw ValidationError(
                                                         "scenario has no truth parameters; "
                                                         "pass params"));
        const FrontSeries s = [&] {
          py::gil_scoped_release release;
          return generate_synthetic_measurements(b.scenario, p, solver_with(b, cfl));
        }();
        return py::make_tuple(s.times(), series_to_array(s));
      },
      py::arg("scenario"), py::arg("params") = py::none(), py::arg("cfl") = py::none(),
      "Synthesize measured fronts (sign rasters) on the scenario snapshot grid");

  m.def(
      "estimate",
      [](const ScenarioBundle& b, const std::vector<double>& times, const Array& rasters,
         std::optional<std::uint64_t> seed, std::optional<int> max_iter,
         std::optional<long long> max_evals, std::optional<double> budget_seconds,
         std::optional<bool> parallel_poll, std::optional<double> cfl) {
        SearchConfig cfg = b.search;
        if (seed) cfg.seed = *seed;
        if (max_iter) cfg.max_iter = *max_iter;
        if (max_evals) cfg.max_evals = *max_evals;
        if (budget_seconds) cfg.budget_seconds = *budget_seconds;
        if (parallel_poll) cfg.parallel_poll = *parallel_poll;
        const FrontSeries measured = series_from_arrays(b.scenario.grid, times, rasters);
        const EstimationReport rep = [&] {
          py::gil_scoped_release release;
          return estimate(b.scenario, measured, cfg, solver_with(b, std::nullopt));
        }();
        return report_to_dict(rep);
      },
      py::arg("scenario"), py::arg("times"), py::arg("rasters"), py::arg("seed") = py::none(),
      py::arg("max_iter") = py::none(), py::arg("max_evals") = py::none(),
      py::arg("budget_seconds") = py::none(), py::arg("parallel_poll") = py::none(),
      py::arg("cfl") = py::none(),
      "Fit spread parameters to measured sign rasters");

  m.def(
      "evaluate",
      [](const ScenarioBundle& b, const std::array<double, 8>& params,
         const std::vector<double>& times, const Array& rasters, std::optional<double> cfl) {
        const FrontSeries measured = series_from_arrays(b.scenario.grid, times, rasters);
        const EvaluationResult res = [&] {
          py::gil_scoped_release release;
          return evaluate_params(b.scenario, measured, ParamVector::from_array(params),
                                 solver_with(b, cfl));
        }();
        py::dict d;
        d["J"] = res.J;
        d["r"] = res.r;
        py::list sims;
        for (const auto& s : res.similarity) {
          py::dict row;
          row["time"] = s.time;
          row["ssi"] = s.scores.ssi;
          row["jsc"] = s.scores.jsc;
          row["ks"] = s.scores.ks;
          sims.append(row);
        }
        d["similarity"] = sims;
        return d;
      },
      py::arg("scenario"), py::arg("params"), py::arg("times"), py::arg("rasters"),
      py::arg("cfl") = py::none(), "Score one parameter vector against measured rasters");

  m.def(
      "forecast",
      [](const ScenarioBundle& b, const std::array<double, 8>& params,
         const Array& start_front, double horizon, std::optional<double> t_start,
         std::optional<double> cfl) {
        const ScalarField start = field_from_array(b.scenario.grid, start_front);
        const FrontSeries s = [&] {
          py::gil_scoped_release release;
          return forecast(b.scenario, ParamVector::from_array(params), start, horizon,
                          t_start ? std::optional<double>(*t_start) : std::nullopt,
                          solver_with(b, cfl));
        }();
        return py::make_tuple(s.times(), series_to_array(s));
      },
      py::arg("scenario"), py::arg("params"), py::arg("start_front"), py::arg("horizon"),
      py::arg("t_start") = py::none(), py::arg("cfl") = py::none(),
      "Propagate a measured front forward under given parameters");

  m.def(
      "signed_distance_from_mask",
      [](const Array& mask, double dx, double dy) {
        if (mask.ndim() != 2) throw ValidationError("mask must be 2-D");
        const int ny = static_cast<int>(mask.shape(0));
        const int nx = static_cast<int>(mask.shape(1));
        GridSpec grid{nx, ny, 0.0, 0.0, dx, dy};
        std::vector<std::uint8_t> inside(static_cast<std::size_t>(grid.cells()));
        const double* src = mask.data();
        for (int k = 0; k < grid.cells(); ++k) inside[k] = src[k] > 0.0 ? 1 : 0;
        return field_to_array(signed_distance_from_mask(grid, inside));
      },
      py::arg("mask"), py::arg("dx") = 1.0, py::arg("dy") = 1.0,
      "Exact signed Euclidean distance to the mask boundary (positive inside)");

  m.def(
      "extract_contours",
      [](const Array& phi, double x0, double y0, double dx, double dy) {
        const int ny = static_cast<int>(phi.shape(0));
        const int nx = static_cast<int>(phi.shape(1));
        GridSpec grid{nx, ny, x0, y0, dx, dy};
        const ScalarField f = field_from_array(grid, phi);
        py::list out;
        for (const auto& line : extract_zero_contour(f)) {
          py::array_t<double> pts(
              {static_cast<py::ssize_t>(line.points.size()), static_cast<py::ssize_t>(2)});
          double* dst = pts.mutable_data();
          for (std::size_t k = 0; k < line.points.size(); ++k) {
            dst[2 * k] = line.points[k].x;
            dst[2 * k + 1] = line.points[k].y;
          }
          out.append(py::make_tuple(pts, line.closed));
        }
        return out;
      },
      py::arg("phi"), py::arg("x0") = 0.0, py::arg("y0") = 0.0, py::arg("dx") = 1.0,
      py::arg("dy") = 1.0, "Zero contours as a list of ((k, 2) arrays, closed flag)");

  m.def(
      "similarity",
      [](const Array& a, const Array& b) {
        if (a.ndim() != 2 || b.ndim() != 2 || a.shape(0) != b.shape(0) ||
            a.shape(1) != b.shape(1)) {
          throw ValidationError("fields must be 2-D with equal shapes");
        }
        GridSpec grid{static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)),
                      0.0, 0.0, 1.0, 1.0};
        const SimilarityScores s =
            similarity_indexes(field_from_array(grid, a), field_from_array(grid, b));
        py::dict d;
        d["ssi"] = s.ssi;
        d["jsc"] = s.jsc;
        d["ks"] = s.ks;
        return d;
      },
      py::arg("a"), py::arg("b"), "Burnt-area overlap scores (values >= 0 count as burnt)");

  m.def(
      "relative_error",
      [](const std::vector<double>& p_hat, const std::vector<double>& p_star) {
        return relative_error(std::span<const double>(p_hat),
                              std::span<const double>(p_star));
      },
      py::arg("p_hat"), py::arg("p_star"));

  m.def(
      "minimize",
      [](const std::function<double(std::vector<double>)>& f,
         const std::vector<double>& p_min, const std::vector<double>& p_max,
         std::uint64_t seed, int max_iter, double tol, double mesh_init,
         std::optional<std::vector<double>> initial_point,
         std::optional<long long> max_evals, bool parallel_poll) {
        SearchConfig cfg;
        cfg.p_min = p_min;
        cfg.p_max = p_max;
        cfg.seed = seed;
        cfg.max_iter = max_iter;
        cfg.tol = tol;
        cfg.mesh_init = mesh_init;
        cfg.initial_point = initial_point;
        cfg.max_evals = max_evals;
        cfg.parallel_poll = parallel_poll;
        // The functional caster reacquires the GIL for each callback, so
        // the main thread must let go of it while the search runs.
        const Objective obj = [&f](std::span<const double> x) {
          return f(std::vector<double>(x.begin(), x.end()));
        };
        const SearchResult res = [&] {
          py::gil_scoped_release release;
          return minimize(obj, cfg);
        }();
        py::dict d;
        d["x"] = res.best_point;
        d["fval"] = res.best_value;
        d["stop"] = to_string(res.reason);
        d["iterations"] = res.iterations;
        d["evaluations"] = res.evaluations;
        return d;
      },
      py::arg("f"), py::arg("p_min"), py::arg("p_max"), py::arg("seed") = 0,
      py::arg("max_iter") = 2000, py::arg("tol") = 1e-4, py::arg("mesh_init") = 0.25,
      py::arg("initial_point") = py::none(), py::arg("max_evals") = py::none(),
      py::arg("parallel_poll") = false,
      "Bound-constrained pattern search over a python objective");

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
