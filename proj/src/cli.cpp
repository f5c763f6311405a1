#include "firefront/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "firefront/artifacts.hpp"
#include "firefront/errors.hpp"
#include "firefront/estimation.hpp"
#include "firefront/scenario_file.hpp"

namespace firefront::cli {

namespace {

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ValidationError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kValidationError;
  } catch (const NumericalError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kNumericalError;
  } catch (const std::exception& ex) {
    std::cerr << "internal error: " << ex.what() << "\n";
    return kNumericalError;
  }
}

ParamVector resolve_params(const std::optional<std::vector<double>>& flag,
                           const Scenario& scenario) {
  if (flag) {
    const ParamVector p = ParamVector::from_array(*flag);
    p.validate();
    return p;
  }
  if (scenario.truth) return *scenario.truth;
  throw ValidationError("no parameters: pass --params or add a [truth] section");
}

FrontSeries resolve_measured(const ScenarioBundle& bundle,
                             const std::optional<std::string>& override_dir) {
  if (override_dir) {
    return load_measured_series(*override_dir, bundle.scenario.grid);
  }
  if (bundle.measurements.kind == MeasurementSource::Kind::directory) {
    return load_measured_series(bundle.measurements.dir, bundle.scenario.grid);
  }
  if (!bundle.scenario.truth) {
    throw ValidationError(
        "synthetic measurements need a [truth] section (or pass --measured DIR)");
  }
  return generate_synthetic_measurements(bundle.scenario, *bundle.scenario.truth,
                                         bundle.solver);
}

void print_similarity_table(const std::vector<SnapshotSimilarity>& rows) {
  if (rows.empty()) return;
  std::printf("%-6s", "");
  for (const auto& s : rows) std::printf(" %9.4g", s.time);
  std::printf("\n");
  const char* names[3] = {"SSI", "JSC", "KS"};
  for (int m = 0; m < 3; ++m) {
    std::printf("%-6s", names[m]);
    for (const auto& s : rows) {
      const double v = m == 0 ? s.scores.ssi : m == 1 ? s.scores.jsc : s.scores.ks;
      std::printf(" %9.4f", v);
    }
    std::printf("\n");
  }
}

void print_params(const char* label, const ParamVector& p) {
  std::printf("%s: n=%.6g eps_a=%.6g eps_b=%.6g a_a=%.6g a_b=%.6g alpha=%.6g "
              "beta_a=%.6g beta_b=%.6g\n",
              label, p.n, p.eps_a, p.eps_b, p.a_a, p.a_b, p.alpha, p.beta_a, p.beta_b);
}

nlohmann::json params_json(const ParamVector& p) { return p.to_array(); }

}  // namespace

int cmd_simulate(const SimulateArgs& args) {
  return guarded([&] {
    ScenarioBundle bundle = load_scenario_file(args.scenario);
    const ParamVector p = resolve_params(args.params, bundle.scenario);
    if (args.cfl) bundle.solver.cfl = *args.cfl;
    bundle.solver.validate(bundle.scenario.t0, bundle.scenario.tf);

    const FrontSeries series = simulate(bundle.scenario, p, bundle.solver);
    const std::filesystem::path out_dir(args.out);
    write_run_artifacts(out_dir, series);

    nlohmann::json j;
    j["type"] = "simulation";
    j["scenario"] = args.scenario;
    j["params"] = params_json(p);
    nlohmann::json snaps = nlohmann::json::array();
    for (int k = 0; k < series.size(); ++k) {
      snaps.push_back({{"index", k},
                       {"time", series.time(k)},
                       {"burnt_cells", burnt_cell_count(series.field(k))}});
    }
    j["snapshots"] = snaps;
    write_json(out_dir / "report.json", j);

    std::printf("wrote %d snapshots to %s\n", series.size(), args.out.c_str());
    return kOk;
  });
}

int cmd_estimate(const EstimateArgs& args) {
  return guarded([&] {
    ScenarioBundle bundle = load_scenario_file(args.scenario);
    if (args.cfl) bundle.solver.cfl = *args.cfl;
    if (args.seed) bundle.search.seed = *args.seed;
    if (args.max_iter) bundle.search.max_iter = *args.max_iter;
    if (args.max_evals) bundle.search.max_evals = *args.max_evals;
    if (args.budget_seconds) bundle.search.budget_seconds = *args.budget_seconds;
    if (args.parallel_poll) bundle.search.parallel_poll = true;
    bundle.search.validate();

    const FrontSeries measured = resolve_measured(bundle, args.measured);
    const EstimationReport report =
        estimate(bundle.scenario, measured, bundle.search, bundle.solver);

    const std::filesystem::path out_dir(args.out);
    std::filesystem::create_directories(out_dir);
    write_trace_csv(out_dir / "trace.csv", report.trace);
    nlohmann::json j = estimation_report_json(report);
    j["scenario"] = args.scenario;
    j["measured"] = args.measured ? *args.measured
                    : bundle.measurements.kind == MeasurementSource::Kind::directory
                        ? bundle.measurements.dir.string()
                        : "synthetic";
    if (bundle.scenario.truth) j["truth"] = params_json(*bundle.scenario.truth);
    write_json(out_dir / "report.json", j);

    const EvaluationResult fit =
        evaluate_params(bundle.scenario, measured, report.p_hat, bundle.solver);
    write_run_artifacts(out_dir, fit.sim);

    print_params("p_hat", report.p_hat);
    std::printf("J = %lld  r = %.6g", report.J, report.r);
    if (report.e) std::printf("  e = %.6g", *report.e);
    std::printf("\n");
    print_similarity_table(report.similarity);
    std::printf("stop: %s after %d iterations, %lld evaluations, %.1f s\n",
                to_string(report.stop).c_str(), report.iterations, report.evaluations,
                report.wall_seconds);
    return kOk;
  });
}

int cmd_evaluate(const EvaluateArgs& args) {
  return guarded([&] {
    ScenarioBundle bundle = load_scenario_file(args.scenario);
    if (args.cfl) bundle.solver.cfl = *args.cfl;
    const ParamVector p = resolve_params(args.params, bundle.scenario);
    const FrontSeries measured = resolve_measured(bundle, args.measured);
    const EvaluationResult res = evaluate_params(bundle.scenario, measured, p, bundle.solver);

    print_params("params", p);
    std::printf("J = %lld  r = %.6g\n", res.J, res.r);
    print_similarity_table(res.similarity);

    if (args.out) {
      const std::filesystem::path out_dir(*args.out);
      std::filesystem::create_directories(out_dir);
      nlohmann::json j;
      j["type"] = "evaluation";
      j["scenario"] = args.scenario;
      j["params"] = params_json(p);
      j["J"] = res.J;
      j["r"] = res.r;
      nlohmann::json sims = nlohmann::json::array();
      for (const auto& s : res.similarity) {
        sims.push_back({{"time", s.time},
                        {"ssi", s.scores.ssi},
                        {"jsc", s.scores.jsc},
                        {"ks", s.scores.ks}});
      }
      j["similarity"] = sims;
      write_json(out_dir / "report.json", j);
      write_run_artifacts(out_dir, res.sim);
    }
    return kOk;
  });
}

}  // namespace firefront::cli
