#include "firefront/pattern_search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>

#include "firefront/errors.hpp"

namespace firefront {

void SearchConfig::validate() const {
  const std::size_t d = p_min.size();
  if (d == 0 || p_max.size() != d) {
    throw ValidationError("bounds must be non-empty and equally sized");
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (!(p_min[i] < p_max[i])) {
      throw ValidationError("p_min must be strictly below p_max in every coordinate");
    }
    if (!std::isfinite(p_min[i]) || !std::isfinite(p_max[i])) {
      throw ValidationError("bounds must be finite");
    }
  }
  if (!(mesh_init > 0.0) || mesh_init > 1.0) throw ValidationError("mesh_init must be in (0, 1]");
  if (!(expand > 1.0)) throw ValidationError("expand must be > 1");
  if (!(contract > 0.0) || !(contract < 1.0)) throw ValidationError("contract must be in (0, 1)");
  if (!(tol > 0.0)) throw ValidationError("tol must be > 0");
  if (max_iter < 0) throw ValidationError("max_iter must be >= 0");
  if (threads < 0) throw ValidationError("threads must be >= 0");
  if (max_evals && *max_evals < 1) throw ValidationError("max_evals must be >= 1");
  if (budget_seconds && !(*budget_seconds > 0.0)) {
    throw ValidationError("budget_seconds must be > 0");
  }
  if (initial_point) {
    if (initial_point->size() != d) throw ValidationError("initial_point has wrong size");
    for (std::size_t i = 0; i < d; ++i) {
      if ((*initial_point)[i] < p_min[i] || (*initial_point)[i] > p_max[i]) {
        throw ValidationError("initial_point lies outside the bounds");
      }
    }
  }
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::mesh_tol: return "mesh_tol";
    case StopReason::step_tol: return "step_tol";
    case StopReason::fval_tol: return "fval_tol";
    case StopReason::max_iter: return "max_iter";
    case StopReason::time_budget: return "time_budget";
  }
  return "unknown";
}

namespace {

int poll_thread_count(const SearchConfig& cfg, int n_candidates) {
  int nt = cfg.threads > 0 ? cfg.threads
                           : static_cast<int>(std::thread::hardware_concurrency());
  if (nt < 1) nt = 1;
  if (const char* env = std::getenv("FIREFRONT_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) nt = std::min(nt, static_cast<int>(cap));
  }
  return std::min(nt, std::max(n_candidates, 1));
}

}  // namespace

SearchResult minimize(const Objective& f, const SearchConfig& cfg) {
  cfg.validate();
  const int d = static_cast<int>(cfg.p_min.size());
  const auto t_start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  };

  auto unscale = [&](const std::vector<double>& x) {
    std::vector<double> p(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) p[i] = cfg.p_min[i] + x[i] * (cfg.p_max[i] - cfg.p_min[i]);
    return p;
  };

  long long evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    const std::vector<double> p = unscale(x);
    double v = f(std::span<const double>(p));
    ++evals;
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  std::vector<double> x(static_cast<std::size_t>(d));
  if (cfg.initial_point) {
    for (int i = 0; i < d; ++i) {
      x[i] = ((*cfg.initial_point)[i] - cfg.p_min[i]) / (cfg.p_max[i] - cfg.p_min[i]);
    }
  } else {
    std::mt19937_64 rng(cfg.seed);
    for (int i = 0; i < d; ++i) {
      x[i] = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    }
  }
  double fx = eval(x);

  SearchResult res;
  res.trace.push_back({0, fx, cfg.mesh_init, evals, unscale(x)});

  double mesh = cfg.mesh_init;
  StopReason reason = StopReason::max_iter;
  int iter = 0;

  if (fx <= cfg.f_target) {
    reason = StopReason::fval_tol;
  } else {
    while (true) {
      if (iter >= cfg.max_iter) {
        reason = StopReason::max_iter;
        break;
      }
      if (cfg.budget_seconds && elapsed() >= *cfg.budget_seconds) {
        reason = StopReason::time_budget;
        break;
      }
      if (cfg.max_evals && evals >= *cfg.max_evals) {
        reason = StopReason::max_iter;
        break;
      }
      ++iter;

      // Poll stencil: +e_i then -e_i, i ascending, clamped to the box.
      std::vector<std::vector<double>> candidates;
      candidates.reserve(static_cast<std::size_t>(2 * d));
      for (int i = 0; i < d; ++i) {
        for (double sgn : {1.0, -1.0}) {
          std::vector<double> y = x;
          y[i] = std::clamp(x[i] + sgn * mesh, 0.0, 1.0);
          if (y[i] != x[i]) candidates.push_back(std::move(y));
        }
      }

      int best_idx = -1;
      double best_val = fx;
      bool budget_hit = false;
      if (cfg.parallel_poll) {
        // Complete poll: evaluate the whole stencil, take the best
        // improvement (ties to the lowest index) regardless of thread
        // scheduling.
        const int nc = static_cast<int>(candidates.size());
        std::vector<double> vals(static_cast<std::size_t>(nc));
        const int nt = poll_thread_count(cfg, nc);
        if (nt <= 1) {
          for (int c = 0; c < nc; ++c) vals[c] = eval(candidates[c]);
        } else {
          std::vector<std::vector<double>> points(candidates.size());
          for (int c = 0; c < nc; ++c) points[c] = unscale(candidates[c]);
          std::atomic<int> next{0};
          auto worker = [&] {
            for (int c = next.fetch_add(1); c < nc; c = next.fetch_add(1)) {
              double v = f(std::span<const double>(points[c]));
              vals[c] = std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
            }
          };
          std::vector<std::thread> pool;
          pool.reserve(static_cast<std::size_t>(nt));
          for (int tix = 0; tix < nt; ++tix) pool.emplace_back(worker);
          for (auto& th : pool) th.join();
          evals += nc;
        }
        for (int c = 0; c < nc; ++c) {
          if (vals[c] < best_val) {
            best_val = vals[c];
            best_idx = c;
          }
        }
      } else {
        for (int c = 0; c < static_cast<int>(candidates.size()); ++c) {
          if (cfg.max_evals && evals >= *cfg.max_evals) {
            budget_hit = true;
            break;
          }
          const double v = eval(candidates[c]);
          if (v < fx) {
            best_idx = c;
            best_val = v;
            break;  // opportunistic: first improvement wins
          }
        }
      }

      if (best_idx >= 0) {
        double step2 = 0.0;
        for (int i = 0; i < d; ++i) {
          const double dxi = candidates[best_idx][i] - x[i];
          step2 += dxi * dxi;
        }
        const double df = fx - best_val;
        x = candidates[best_idx];
        fx = best_val;
        mesh = std::min(mesh * cfg.expand, 1.0);
        res.trace.push_back({iter, fx, mesh, evals, unscale(x)});
        if (fx <= cfg.f_target) {
          reason = StopReason::fval_tol;
          break;
        }
        if (std::sqrt(step2) < cfg.tol && df < cfg.tol) {
          reason = StopReason::step_tol;
          break;
        }
      } else {
        if (budget_hit) {
          reason = StopReason::max_iter;
          break;
        }
        mesh *= cfg.contract;
        res.trace.push_back({iter, fx, mesh, evals, unscale(x)});
        if (mesh < cfg.tol) {
          reason = StopReason::mesh_tol;
          break;
        }
      }
    }
  }

  res.best_point = unscale(x);
  res.best_value = fx;
  res.reason = reason;
  res.iterations = iter;
  res.evaluations = evals;
  return res;
}

}  // namespace firefront
