#pragma once

#include <limits>
#include <span>
#include <vector>

#include "nmlab/choi.hpp"

// Non-Markovianity quantifiers: the RHP witness g(t), its cumulative integral
// N_T and normalized form T, robustness (incremental and cumulative), and
// D_T(t) as a trace-norm minimization over the PSD Kossakowski cone.
//
// Everything operates on the exact eps->0 objects: both the witnessed Choi
// derivative K_N and the free parameterization K_M(A) are first order in eps,
// so eps cancels from the D_T objective and the optimization is
//   minimize_{A >= 0}  || K_N - K_M(A) ||_1 .

namespace nmlab {

struct UnsortedGrid : std::runtime_error {
  explicit UnsortedGrid(const std::string& what) : std::runtime_error(what) {}
};
struct NotMarkovian : std::runtime_error {
  explicit NotMarkovian(const std::string& what) : std::runtime_error(what) {}
};

// g = 2 * sum of |negative eigenvalues| of Q K Q, Q = I - |psi><psi|.
double rhp_g(const ChoiDerivative& k);

// Finite-eps differencing witness, (||Choi(Lambda(t+eps,t))||_1 - 1)/eps.
template <typename Gen>
double rhp_g_finite_eps(const Gen& g, double t, double eps) {
  const ChoiMatrix c = choi_of_propagator(incremental_map(g, t, eps));
  return (trace_norm(c.mat) - 1.0) / eps;
}

// Cumulative trapezoidal integral of g over a sorted grid; N_T(t_i).
std::vector<double> rhp_integral(std::span<const double> t, std::span<const double> g);

// (||c||_1 - 1)/2, the sum of |negative eigenvalues| of c.
double robustness_incremental(const ChoiMatrix& c);

inline double robustness_cumulative(double n_t) { return 0.5 * n_t; }

inline double normalized_measure(double n_t) { return n_t / (1.0 + n_t); }

struct OptimizerConfig {
  int max_iter = 5000;
  double tol = 1e-9;          // objective improvement threshold
  double step0_scale = 0.1;   // eta0 = step0_scale * ||K_N||_1
  double step0_abs = 0.0;     // overrides the scaled step when > 0
  int stall_window = 50;      // iterations without improvement before halving
  int max_halvings = 18;      // step halvings before declaring convergence
};

struct OptimizerReport {
  int iterations = 0;
  double objective = 0.0;
  CMatrix argmin;             // Kossakowski matrix of the nearest free direction
  bool converged = true;
  double oracle_gap = std::numeric_limits<double>::quiet_NaN();  // set by callers
};

// Projected subgradient solver for min_{A PSD} ||K - K_M(A)||_1.  Holds the
// precomputed free-direction basis for one dimension; reuse across grid points.
//
// allow_hamiltonian widens the free set with commutator directions -i[H, .]
// (unconstrained); the canonical free-operation set contains only
// dissipators, so the default keeps the Hamiltonian sector out.
class DtSolver {
 public:
  explicit DtSolver(int dim, bool allow_hamiltonian = false);

  int dim() const { return dim_; }

  std::pair<double, OptimizerReport> solve(const ChoiDerivative& k,
                                           const OptimizerConfig& cfg = {}) const;

  // Same minimization with the objective post-composed with I (x) Lambda,
  // min_{A PSD} ||(I (x) Lambda)(K - K_M(A))||_1.
  std::pair<double, OptimizerReport> solve_composed(const ChoiDerivative& k,
                                                    const CMatrix& lambda_superop,
                                                    const OptimizerConfig& cfg = {}) const;

  // Least-squares Kossakowski coordinates of k (ignores any Hamiltonian part).
  CMatrix kossakowski_of(const ChoiDerivative& k) const;

 private:
  std::pair<double, OptimizerReport> minimize(const CMatrix& target,
                                              const std::vector<CMatrix>& directions,
                                              const OptimizerConfig& cfg) const;

  int dim_;
  std::size_t n_koss_;               // leading coords parameterize the PSD cone
  std::vector<CMatrix> herm_basis_;  // real Hermitian basis of Kossakowski space
  std::vector<CMatrix> choi_dirs_;   // K_M of each basis element (+ Hamiltonian dirs)
};

std::pair<double, OptimizerReport> dt_measure(const ChoiDerivative& k,
                                              const OptimizerConfig& cfg = {});

// PSD projection by eigenvalue clipping.
CMatrix project_psd(const CMatrix& a);

// Confirms D_T does not increase when the increment is post-composed with the
// divisible map Lambda^M(t, t+delta) generated by markov_g.
template <typename Gen>
bool monotonicity_check(const ChoiDerivative& k, const Gen& markov_g, double delta,
                        double t = 0.0, const OptimizerConfig& cfg = {}) {
  for (int i = 0; i <= 8; ++i)
    if (!is_instantaneously_markovian(markov_g, t + delta * i / 8.0))
      throw NotMarkovian("monotonicity_check: generator is not Markovian on the window");
  DtSolver solver(k.dim);
  const double before = solver.solve(k, cfg).first;
  const Propagator lam = propagate(markov_g, t, t + delta, default_step(t, t + delta));
  const double after = solver.solve_composed(k, lam.superop, cfg).first;
  return after <= before + 1e-6;
}

struct MeasurePoint {
  double t = 0.0;
  double g = 0.0;             // RHP witness, exact limit
  double g_finite_eps = 0.0;  // finite-eps differencing value
  double d_T = 0.0;
  double r_inc_rate = 0.0;    // finite-eps incremental robustness / eps
  double N_T = 0.0;
  double T_norm = 0.0;
  double R_cum = 0.0;
};

}  // namespace nmlab
