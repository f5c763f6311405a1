#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "firefront/cli.hpp"

namespace {

// CLI11 option targets; std::optional fills only when the flag is seen.
struct Options {
  std::string scenario;
  std::optional<std::vector<double>> params;
  std::string out = "out";
  std::optional<std::string> out_opt;
  std::optional<std::string> measured;
  std::optional<double> cfl;
  std::optional<std::uint64_t> seed;
  std::optional<int> max_iter;
  std::optional<long long> max_evals;
  std::optional<double> budget_seconds;
  bool parallel_poll = false;
};

void add_scenario(CLI::App* cmd, Options& o) {
  cmd->add_option("scenario", o.scenario, "Scenario file (TOML)")
      ->required()
      ->check(CLI::ExistingFile);
}

void add_params(CLI::App* cmd, Options& o) {
  cmd->add_option("--params", o.params,
                  "8 spread parameters: n,eps_a,eps_b,a_a,a_b,alpha,beta_a,beta_b")
      ->delimiter(',')
      ->expected(8);
}

void add_cfl(CLI::App* cmd, Options& o) {
  cmd->add_option("--cfl", o.cfl, "CFL number override, (0, 1]");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fire front propagation and parameter estimation"};
  app.require_subcommand(1);

  Options sim_o, est_o, eval_o;

  CLI::App* sim = app.add_subcommand("simulate", "Propagate a front and write snapshots");
  add_scenario(sim, sim_o);
  add_params(sim, sim_o);
  sim->add_option("--out", sim_o.out, "Output directory (default: out)");
  add_cfl(sim, sim_o);

  CLI::App* est = app.add_subcommand("estimate", "Fit spread parameters to measured fronts");
  add_scenario(est, est_o);
  est->add_option("--measured", est_o.measured,
                  "Directory with times.csv + rasters (overrides [measurements])");
  est->add_option("--out", est_o.out, "Output directory (default: out)");
  est->add_option("--seed", est_o.seed, "Random start seed override");
  est->add_option("--max-iter", est_o.max_iter, "Poll iteration budget override");
  est->add_option("--max-evals", est_o.max_evals, "Objective evaluation budget override");
  est->add_option("--budget-seconds", est_o.budget_seconds, "Wall-clock budget override");
  est->add_flag("--parallel-poll", est_o.parallel_poll, "Evaluate poll points concurrently");
  add_cfl(est, est_o);

  CLI::App* eva = app.add_subcommand("evaluate", "Score parameters against measured fronts");
  add_scenario(eva, eval_o);
  add_params(eva, eval_o);
  eva->add_option("--measured", eval_o.measured,
                  "Directory with times.csv + rasters (overrides [measurements])");
  eva->add_option("--out", eval_o.out_opt, "Write report.json and rasters here");
  add_cfl(eva, eval_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : firefront::cli::kUsageError;
  }

  if (sim->parsed()) {
    return firefront::cli::cmd_simulate({sim_o.scenario, sim_o.params, sim_o.out, sim_o.cfl});
  }
  if (est->parsed()) {
    return firefront::cli::cmd_estimate({est_o.scenario, est_o.measured, est_o.out,
                                         est_o.seed, est_o.max_iter, est_o.max_evals,
                                         est_o.budget_seconds, est_o.parallel_poll,
                                         est_o.cfl});
  }
  if (eva->parsed()) {
    return firefront::cli::cmd_evaluate(
        {eval_o.scenario, eval_o.params, eval_o.measured, eval_o.out_opt, eval_o.cfl});
  }
  return firefront::cli::kUsageError;
}
