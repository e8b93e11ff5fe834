#include "nmlab/measures.hpp"

#include <cmath>

namespace nmlab {

double rhp_g(const ChoiDerivative& k) {
  const RVector mu = compressed_spectrum(k);
  const double clamp = 1e-12 * std::max(1.0, max_abs(k.mat));
  double g = 0.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i)
    if (mu(i) < -clamp) g -= 2.0 * mu(i);
  return g;
}

std::vector<double> rhp_integral(std::span<const double> t, std::span<const double> g) {
  if (t.size() != g.size())
    throw DimensionError("rhp_integral: grid and value lengths differ");
  std::vector<double> n_t(t.size(), 0.0);
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i] <= t[i - 1]) throw UnsortedGrid("rhp_integral: grid must be sorted ascending");
    n_t[i] = n_t[i - 1] + 0.5 * (g[i] + g[i - 1]) * (t[i] - t[i - 1]);
  }
  return n_t;
}

double robustness_incremental(const ChoiMatrix& c) {
  return std::max(0.0, 0.5 * (trace_norm(c.mat) - 1.0));
}

CMatrix project_psd(const CMatrix& a) {
  const HermEig eig = herm_eig(a);
  return eig.vectors * eig.values.cwiseMax(0.0).asDiagonal() * eig.vectors.adjoint();
}

namespace {

// Real orthonormal Hermitian basis of m x m matrices (Hilbert-Schmidt).
std::vector<CMatrix> hermitian_basis(Eigen::Index m) {
  std::vector<CMatrix> basis;
  basis.reserve(std::size_t(m) * m);
  const double s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index j = 0; j < m; ++j) {
    CMatrix e = CMatrix::Zero(m, m);
    e(j, j) = 1.0;
    basis.push_back(e);
  }
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index k = j + 1; k < m; ++k) {
      CMatrix e = CMatrix::Zero(m, m);
      e(j, k) = s;
      e(k, j) = s;
      basis.push_back(e);
      CMatrix f = CMatrix::Zero(m, m);
      f(j, k) = Complex(0, -s);
      f(k, j) = Complex(0, s);
      basis.push_back(f);
    }
  return basis;
}

double real_hs_inner(const CMatrix& a, const CMatrix& b) {
  return (a.adjoint() * b).trace().real();
}

// sign(R) through the spectral decomposition; |lambda| < tol directions map
// to 0 (a valid subgradient selection).
CMatrix trace_norm_sign(const CMatrix& r, double tol = 1e-12) {
  const HermEig eig = herm_eig(r);
  RVector s(eig.values.size());
  for (Eigen::Index i = 0; i < s.size(); ++i)
    s(i) = std::abs(eig.values(i)) < tol ? 0.0 : (eig.values(i) > 0 ? 1.0 : -1.0);
  return eig.vectors * s.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace

DtSolver::DtSolver(int dim, bool allow_hamiltonian) : dim_(dim) {
  const Eigen::Index m = Eigen::Index(dim) * dim - 1;
  herm_basis_ = hermitian_basis(m);
  n_koss_ = herm_basis_.size();
  choi_dirs_.reserve(n_koss_);
  for (const auto& b : herm_basis_)
    choi_dirs_.push_back(free_choi_derivative(b, dim).mat);
  if (allow_hamiltonian)
    for (const auto& f : gell_mann_basis(dim))
      choi_dirs_.push_back(hermitize(reshuffle(hamiltonian_superop(f), dim)));
}

CMatrix DtSolver::kossakowski_of(const ChoiDerivative& k) const {
  if (k.dim != dim_) throw DimensionError("DtSolver: dimension mismatch");
  const std::size_t n = n_koss_;
  Eigen::MatrixXd gram(n, n);
  Eigen::VectorXd rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    rhs(Eigen::Index(i)) = real_hs_inner(choi_dirs_[i], k.mat);
    for (std::size_t j = i; j < n; ++j) {
      gram(Eigen::Index(i), Eigen::Index(j)) = real_hs_inner(choi_dirs_[i], choi_dirs_[j]);
      gram(Eigen::Index(j), Eigen::Index(i)) = gram(Eigen::Index(i), Eigen::Index(j));
    }
  }
  const Eigen::VectorXd coords = gram.ldlt().solve(rhs);
  const Eigen::Index m = Eigen::Index(dim_) * dim_ - 1;
  CMatrix a = CMatrix::Zero(m, m);
  for (std::size_t i = 0; i < n; ++i) a += coords(Eigen::Index(i)) * herm_basis_[i];
  return hermitize(a);
}

std::pair<double, OptimizerReport> DtSolver::minimize(const CMatrix& target,
                                                      const std::vector<CMatrix>& directions,
                                                      const OptimizerConfig& cfg) const {
  const Eigen::Index m = Eigen::Index(dim_) * dim_ - 1;
  const std::size_t n = directions.size();
  const double knorm = trace_norm(target);

  OptimizerReport report;
  report.argmin = CMatrix::Zero(m, m);
  if (knorm == 0.0) return {0.0, report};

  const auto realize = [&](const Eigen::VectorXd& coords) {
    CMatrix km = CMatrix::Zero(target.rows(), target.cols());
    for (std::size_t i = 0; i < n; ++i) km += coords(Eigen::Index(i)) * directions[i];
    return km;
  };
  // Kossakowski matrix from the leading n_koss_ coordinates.
  const auto koss_matrix = [&](const Eigen::VectorXd& coords) {
    CMatrix a = CMatrix::Zero(m, m);
    for (std::size_t i = 0; i < n_koss_; ++i)
      a += coords(Eigen::Index(i)) * herm_basis_[i];
    return hermitize(a);
  };
  // PSD projection on the Kossakowski block; Hamiltonian coords pass through.
  const auto project = [&](Eigen::VectorXd coords) {
    const CMatrix a = project_psd(koss_matrix(coords));
    for (std::size_t i = 0; i < n_koss_; ++i)
      coords(Eigen::Index(i)) = real_hs_inner(herm_basis_[i], a);
    return coords;
  };

  // Initialization: PSD projection of the least-squares Kossakowski
  // coordinates of the target.  Exact optimum (objective 0) for any
  // Markovian target, so faithfulness holds to eigensolver precision.
  Eigen::MatrixXd gram(n, n);
  Eigen::VectorXd rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    rhs(Eigen::Index(i)) = real_hs_inner(directions[i], target);
    for (std::size_t j = i; j < n; ++j) {
      gram(Eigen::Index(i), Eigen::Index(j)) = real_hs_inner(directions[i], directions[j]);
      gram(Eigen::Index(j), Eigen::Index(i)) = gram(Eigen::Index(i), Eigen::Index(j));
    }
  }
  gram.diagonal().array() += 1e-12;
  Eigen::VectorXd coords = project(gram.ldlt().solve(rhs));

  double best = trace_norm(target - realize(coords));
  Eigen::VectorXd best_coords = coords;

  double step0 = cfg.step0_abs > 0 ? cfg.step0_abs : cfg.step0_scale * knorm;
  int sched = 0, stall = 0, halvings = 0, iter = 0;
  bool converged = false;
  Eigen::VectorXd grad(n);

  while (iter < cfg.max_iter) {
    ++iter;
    const CMatrix residual = target - realize(coords);
    const CMatrix sgn = trace_norm_sign(residual);
    for (std::size_t i = 0; i < n; ++i)
      grad(Eigen::Index(i)) = -real_hs_inner(sgn, directions[i]);

    const double eta = step0 / std::sqrt(double(++sched));
    coords = project(coords - eta * grad);

    const double f = trace_norm(target - realize(coords));
    if (f < best - cfg.tol) {
      best = f;
      best_coords = coords;
      stall = 0;
    } else {
      ++stall;
    }
    if (best <= cfg.tol) {
      converged = true;
      break;
    }
    if (stall >= cfg.stall_window) {
      if (halvings >= cfg.max_halvings) {
        converged = true;
        break;
      }
      ++halvings;
      step0 *= 0.5;
      sched = 0;
      stall = 0;
      coords = best_coords;
    }
  }
  report.iterations = iter;
  report.objective = best;
  report.argmin = koss_matrix(best_coords);
  report.converged = converged || best <= cfg.tol;
  return {best, report};
}

std::pair<double, OptimizerReport> DtSolver::solve(const ChoiDerivative& k,
                                                   const OptimizerConfig& cfg) const {
  if (k.dim != dim_) throw DimensionError("DtSolver::solve: dimension mismatch");
  return minimize(k.mat, choi_dirs_, cfg);
}

std::pair<double, OptimizerReport> DtSolver::solve_composed(const ChoiDerivative& k,
                                                            const CMatrix& lambda_superop,
                                                            const OptimizerConfig& cfg) const {
  if (k.dim != dim_) throw DimensionError("DtSolver::solve_composed: dimension mismatch");
  std::vector<CMatrix> dirs;
  dirs.reserve(choi_dirs_.size());
  for (const auto& gdir : choi_dirs_)
    dirs.push_back(hermitize(apply_id_tensor_map(lambda_superop, gdir, dim_)));
  const CMatrix target = hermitize(apply_id_tensor_map(lambda_superop, k.mat, dim_));
  return minimize(target, dirs, cfg);
}

std::pair<double, OptimizerReport> dt_measure(const ChoiDerivative& k,
                                              const OptimizerConfig& cfg) {
  return DtSolver(k.dim).solve(k, cfg);
}

}  // namespace nmlab
