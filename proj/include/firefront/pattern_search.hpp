#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace firefront {

using Objective = std::function<double(std::span<const double>)>;

struct SearchConfig {
  std::vector<double> p_min;
  std::vector<double> p_max;
  double mesh_init = 0.25;  // in scaled [0,1] coordinates
  double expand = 2.0;
  double contract = 0.5;
  double tol = 1e-4;
  int max_iter = 2000;
  std::uint64_t seed = 0;
  // Optional extras beyond the core loop.
  std::optional<std::vector<double>> initial_point;  // warm start, else seeded random
  std::optional<long long> max_evals;
  std::optional<double> budget_seconds;
  double f_target = -std::numeric_limits<double>::infinity();
  bool parallel_poll = false;  // complete poll, best improvement, deterministic
  int threads = 0;             // 0: pick automatically; FIREFRONT_THREADS caps

  void validate() const;
};

enum class StopReason { mesh_tol, step_tol, fval_tol, max_iter, time_budget };
std::string to_string(StopReason r);

struct TraceRow {
  int iteration;
  double fval;
  double mesh;  // scaled mesh size after this iteration
  long long evaluations;
  std::vector<double> point;  // incumbent, original coordinates
};

struct SearchResult {
  std::vector<double> best_point;
  double best_value;
  StopReason reason;
  int iterations;
  long long evaluations;
  std::vector<TraceRow> trace;
};

// Bound-constrained generalized pattern search on the coordinate
// directions. Coordinates are affinely scaled to [0,1]^d; polling visits
// x + m*e_i then x - m*e_i for i ascending and accepts the first strict
// improvement (or, with parallel_poll, evaluates the whole stencil and
// takes the best). Candidates are clamped to the box; ones that coincide
// with the incumbent are skipped. Successful iterations expand the mesh
// (capped at 1), failed polls contract it. Non-finite objective values
// are treated as +infinity.
SearchResult minimize(const Objective& f, const SearchConfig& config);

}  // namespace firefront
