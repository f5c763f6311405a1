#include "firefront/estimation.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

#include "firefront/errors.hpp"

namespace firefront {

ScalarField sign_raster(const ScalarField& phi) {
  ScalarField out(phi.grid());
  const int n = phi.size();
  for (int k = 0; k < n; ++k) out[k] = phi[k] >= 0.0 ? 1.0 : -1.0;
  return out;
}

FrontSeries generate_synthetic_measurements(const Scenario& scenario,
                                            const ParamVector& p_star,
                                            const SolverConfig& solver) {
  SolverConfig cfg = solver;
  cfg.snapshot_times = scenario.default_snapshot_times();
  const FrontSeries sim = simulate(scenario, p_star, cfg);
  FrontSeries out;
  for (int k = 0; k < sim.size(); ++k) out.push(sim.time(k), sign_raster(sim.field(k)));
  return out;
}

namespace {

struct Alignment {
  int offset;        // sim index of measured index 0
  int first_scored;  // first measured index that enters the cost
};

Alignment align(const Scenario& scenario, const FrontSeries& measured) {
  const bool has_t0 = std::abs(measured.time(0) - scenario.t0) <= 1e-9;
  // simulate() always records t0 first, so sim carries one extra leading
  // snapshot whenever the measured series starts later.
  return {has_t0 ? 0 : 1, has_t0 ? 1 : 0};
}

long long aligned_cost(const FrontSeries& sim, const FrontSeries& measured,
                       const Alignment& al) {
  long long j = 0;
  for (int k = al.first_scored; k < measured.size(); ++k) {
    j += mismatch_count(sim.field(k + al.offset), measured.field(k));
  }
  return j;
}

}  // namespace

namespace {

void check_measured(const Scenario& scenario, const FrontSeries& measured) {
  if (measured.empty()) throw ValidationError("measured series is empty");
  if (!(measured.grid() == scenario.grid)) {
    throw ValidationError("measured series grid does not match the scenario");
  }
  for (double t : measured.times()) {
    if (t < scenario.t0 - 1e-9 || t > scenario.tf + 1e-9) {
      throw ValidationError("measured snapshot time outside [t0, tf]");
    }
  }
}

}  // namespace

EvaluationResult evaluate_params(const Scenario& scenario, const FrontSeries& measured,
                                 const ParamVector& p, const SolverConfig& solver) {
  scenario.validate();
  check_measured(scenario, measured);
  SolverConfig sim_cfg = solver;
  sim_cfg.snapshot_times = measured.times();
  const Alignment al = align(scenario, measured);

  EvaluationResult out;
  out.sim = simulate(scenario, p, sim_cfg);
  out.J = aligned_cost(out.sim, measured, al);
  out.r = static_cast<double>(out.J) / scenario.grid.cells();
  for (int k = al.first_scored; k < measured.size(); ++k) {
    out.similarity.push_back(
        {measured.time(k),
         similarity_indexes(out.sim.field(k + al.offset), measured.field(k))});
  }
  return out;
}

EstimationReport estimate(const Scenario& scenario, const FrontSeries& measured,
                          const SearchConfig& search, const SolverConfig& solver) {
  scenario.validate();
  check_measured(scenario, measured);
  SearchConfig cfg = search;
  if (static_cast<int>(cfg.p_min.size()) != ParamVector::kDim) {
    throw ValidationError("estimation bounds must have 8 entries");
  }
  cfg.f_target = std::max(cfg.f_target, 0.0);

  SolverConfig sim_cfg = solver;
  sim_cfg.snapshot_times = measured.times();
  const Alignment al = align(scenario, measured);

  const auto t_begin = std::chrono::steady_clock::now();
  const Objective objective = [&](std::span<const double> raw) -> double {
    try {
      const ParamVector p = ParamVector::from_array(raw);
      const FrontSeries sim = simulate(scenario, p, sim_cfg);
      return static_cast<double>(aligned_cost(sim, measured, al));
    } catch (const std::exception& ex) {
      std::cerr << "warning: objective failed (" << ex.what() << "); scoring +inf\n";
      return std::numeric_limits<double>::infinity();
    }
  };

  const SearchResult sr = minimize(objective, cfg);

  EstimationReport report;
  report.p_hat = ParamVector::from_array(sr.best_point);
  const EvaluationResult final_eval = evaluate_params(scenario, measured, report.p_hat, solver);
  report.J = final_eval.J;
  if (std::isfinite(sr.best_value) &&
      report.J != static_cast<long long>(std::llround(sr.best_value))) {
    std::ostringstream msg;
    msg << "re-simulated cost " << report.J << " does not match search optimum "
        << sr.best_value;
    throw NumericalError(msg.str());
  }
  report.r = final_eval.r;
  report.similarity = final_eval.similarity;
  if (scenario.truth) {
    report.e = relative_error(report.p_hat.to_array(), scenario.truth->to_array());
  }
  report.stop = sr.reason;
  report.iterations = sr.iterations;
  report.evaluations = sr.evaluations;
  report.seed = cfg.seed;
  report.trace = sr.trace;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
  return report;
}

FrontSeries forecast(const Scenario& scenario, const ParamVector& p,
                     const ScalarField& start_front, double horizon,
                     std::optional<double> t_start, const SolverConfig& solver) {
  if (!(start_front.grid() == scenario.grid)) {
    throw ValidationError("start front grid does not match the scenario");
  }
  if (horizon < 0.0) throw ValidationError("forecast horizon must be >= 0");
  const double start_t = t_start.value_or(scenario.t0);

  std::vector<std::uint8_t> mask(start_front.values().size());
  for (std::size_t k = 0; k < mask.size(); ++k) {
    mask[k] = start_front.values()[k] >= 0.0 ? 1 : 0;
  }
  ScalarField phi0 = signed_distance_from_mask(scenario.grid, mask);

  FrontSeries out;
  if (horizon == 0.0) {
    out.push(start_t, std::move(phi0));
    return out;
  }
  const double k_steps = std::round(horizon / scenario.dt);
  if (k_steps < 1.0 || std::abs(k_steps * scenario.dt - horizon) > 1e-9) {
    throw ValidationError("forecast horizon must be a multiple of scenario dt");
  }

  Scenario run = scenario;
  run.initial_phi = std::move(phi0);
  run.t0 = start_t;
  run.tf = start_t + horizon;
  SolverConfig cfg = solver;
  cfg.snapshot_times = run.default_snapshot_times();
  return simulate(run, p, cfg);
}

}  // namespace firefront
