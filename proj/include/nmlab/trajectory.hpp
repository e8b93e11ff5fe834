#pragma once

#include <cstdlib>
#include <thread>

#include "nmlab/measures.hpp"

// Grid sweep of all quantifiers for one generator.  Grid points are
// independent; they may be evaluated in parallel and are assembled in grid
// order, so output is deterministic regardless of thread count.

namespace nmlab {

enum class EvalMode { ExactLimit, FiniteEps, Both };

inline int thread_budget(int requested = 0) {
  int n = requested;
  if (n <= 0) {
    if (const char* env = std::getenv("NMLAB_THREADS")) n = std::atoi(env);
  }
  if (n <= 0) n = int(std::thread::hardware_concurrency());
  return std::max(1, n);
}

struct TrajectoryResult {
  std::vector<MeasurePoint> points;
  bool all_converged = true;
};

template <typename Gen>
TrajectoryResult measure_trajectory(const Gen& gen, double t_max, double dt, double eps,
                                    EvalMode mode = EvalMode::Both,
                                    const OptimizerConfig& cfg = {}, int threads = 0) {
  if (t_max <= 0 || dt <= 0 || eps <= 0)
    throw std::invalid_argument("measure_trajectory: t_max, dt, eps must be positive");
  const int n = int(std::floor(t_max / dt + 1e-9)) + 1;
  TrajectoryResult result;
  result.points.resize(n);
  std::vector<char> converged(n, 1);

  const auto worker = [&](int lo, int hi) {
    const DtSolver solver(gen.dim());
    for (int i = lo; i < hi; ++i) {
      const double t = i * dt;
      MeasurePoint& p = result.points[i];
      p.t = t;
      const ChoiDerivative k = choi_derivative(gen, t);
      p.g = rhp_g(k);
      if (mode == EvalMode::ExactLimit) {
        p.g_finite_eps = p.g;
        p.r_inc_rate = 0.5 * p.g;
      } else {
        p.g_finite_eps = rhp_g_finite_eps(gen, t, eps);
        // (||C||_1 - 1)/2 of the finite increment, per unit eps
        p.r_inc_rate = std::max(0.0, 0.5 * p.g_finite_eps);
      }
      const auto [d_t, rep] = solver.solve(k, cfg);
      p.d_T = d_t;
      converged[i] = rep.converged ? 1 : 0;
    }
  };

  const int nthreads = std::min(thread_budget(threads), n);
  if (nthreads <= 1) {
    worker(0, n);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (n + nthreads - 1) / nthreads;
    for (int k = 0; k < nthreads; ++k)
      pool.emplace_back(worker, k * chunk, std::min(n, (k + 1) * chunk));
    for (auto& th : pool) th.join();
  }

  std::vector<double> ts(n), gs(n);
  for (int i = 0; i < n; ++i) {
    ts[i] = result.points[i].t;
    gs[i] = mode == EvalMode::FiniteEps ? result.points[i].g_finite_eps
                                        : result.points[i].g;
  }
  const std::vector<double> n_t = rhp_integral(ts, gs);
  for (int i = 0; i < n; ++i) {
    result.points[i].N_T = n_t[i];
    result.points[i].T_norm = normalized_measure(n_t[i]);
    result.points[i].R_cum = robustness_cumulative(n_t[i]);
    if (!converged[i]) result.all_converged = false;
  }
  return result;
}

}  // namespace nmlab
