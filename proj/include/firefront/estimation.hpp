#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "firefront/metrics.hpp"
#include "firefront/pattern_search.hpp"
#include "firefront/scenario.hpp"
#include "firefront/solver.hpp"

namespace firefront {

// +1 where phi >= 0, -1 elsewhere.
ScalarField sign_raster(const ScalarField& phi);

// Simulates the scenario at p_star on its default snapshot grid and
// returns the fronts as sign rasters, the format measured data arrives in.
FrontSeries generate_synthetic_measurements(const Scenario& scenario,
                                            const ParamVector& p_star,
                                            const SolverConfig& solver = {});

struct SnapshotSimilarity {
  double time;
  SimilarityScores scores;
};

struct EstimationReport {
  ParamVector p_hat;
  long long J = 0;
  double r = 0.0;               // J / grid cells
  std::optional<double> e;      // relative parameter error, when truth is known
  std::vector<SnapshotSimilarity> similarity;
  StopReason stop = StopReason::max_iter;
  int iterations = 0;
  long long evaluations = 0;
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;
  std::vector<TraceRow> trace;
};

// Metrics of one parameter vector against measured fronts: simulates at
// the measured times and scores mismatches. Measured snapshots at t0 are
// excluded from J and the similarity table. `sim` is the simulated series
// for artifact writing.
struct EvaluationResult {
  long long J = 0;
  double r = 0.0;
  std::vector<SnapshotSimilarity> similarity;
  FrontSeries sim;
};
EvaluationResult evaluate_params(const Scenario& scenario, const FrontSeries& measured,
                                 const ParamVector& p, const SolverConfig& solver);

// Fits spread parameters to measured fronts by minimizing the symmetric
// difference cost with pattern search. The objective simulates the
// scenario at the trial parameters, sampling exactly the measured times;
// simulation failures score +infinity. A measured snapshot at t0 is
// excluded from the cost (it equals the known initial front). The
// reported J comes from a re-simulation at p_hat and must equal the
// search optimum. f_target defaults to 0 since J is a nonneg integer.
EstimationReport estimate(const Scenario& scenario, const FrontSeries& measured,
                          const SearchConfig& search, const SolverConfig& solver);

// Propagates a given front (sign raster or any signed field) under
// parameters p for `horizon` time units starting at t_start, recording
// every scenario.dt. The first snapshot is the re-distanced start front.
// horizon must be a nonnegative multiple of scenario.dt.
FrontSeries forecast(const Scenario& scenario, const ParamVector& p,
                     const ScalarField& start_front, double horizon,
                     std::optional<double> t_start = std::nullopt,
                     const SolverConfig& solver = {});

}  // namespace firefront
