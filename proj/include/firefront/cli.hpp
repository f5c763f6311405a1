#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace firefront::cli {

// Exit codes shared by all commands.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 2;
inline constexpr int kValidationError = 3;
inline constexpr int kNumericalError = 4;

struct SimulateArgs {
  std::string scenario;
  std::optional<std::vector<double>> params;  // overrides the scenario [truth]
  std::string out = "out";
  std::optional<double> cfl;
};

struct EstimateArgs {
  std::string scenario;
  std::optional<std::string> measured;  // overrides [measurements]
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  std::optional<int> max_iter;
  std::optional<long long> max_evals;
  std::optional<double> budget_seconds;
  bool parallel_poll = false;
  std::optional<double> cfl;
};

struct EvaluateArgs {
  std::string scenario;
  std::optional<std::vector<double>> params;  // defaults to the scenario [truth]
  std::optional<std::string> measured;
  std::optional<std::string> out;  // write report.json when given
  std::optional<double> cfl;
};

int cmd_simulate(const SimulateArgs& args);
int cmd_estimate(const EstimateArgs& args);
int cmd_evaluate(const EvaluateArgs& args);

}  // namespace firefront::cli
