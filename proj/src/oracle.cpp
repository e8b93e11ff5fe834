#include "nmlab/oracle.hpp"

#include <algorithm>
#include <random>

namespace nmlab {

namespace {

// Coordinates of a lower-triangular B (real diagonal): m real diagonal
// entries plus (re, im) per strictly-lower entry, m*m reals total.
Eigen::Index cholesky_params(Eigen::Index m) { return m * m; }

CMatrix cholesky_factor(const Eigen::VectorXd& x, Eigen::Index m) {
  CMatrix b = CMatrix::Zero(m, m);
  Eigen::Index p = 0;
  for (Eigen::Index j = 0; j < m; ++j) b(j, j) = x(p++);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index i = j + 1; i < m; ++i) {
      b(i, j) = Complex(x(p), x(p + 1));
      p += 2;
    }
  return b;
}

class NelderMead {
 public:
  NelderMead(std::function<double(const Eigen::VectorXd&)> f, int max_evals)
      : f_(std::move(f)), max_evals_(max_evals) {}

  std::pair<Eigen::VectorXd, double> run(const Eigen::VectorXd& x0, double scale) {
    const Eigen::Index n = x0.size();
    std::vector<Eigen::VectorXd> xs(n + 1, x0);
    std::vector<double> fs(n + 1);
    for (Eigen::Index i = 1; i <= n; ++i) xs[i](i - 1) += scale;
    for (Eigen::Index i = 0; i <= n; ++i) fs[i] = eval(xs[i]);

    std::vector<Eigen::Index> order(n + 1);
    while (evals_ < max_evals_) {
      for (Eigen::Index i = 0; i <= n; ++i) order[i] = i;
      std::sort(order.begin(), order.end(),
                [&](Eigen::Index a, Eigen::Index b) { return fs[a] < fs[b]; });
      if (fs[order[n]] - fs[order[0]] < 1e-12) break;

      Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
      for (Eigen::Index i = 0; i < n; ++i) centroid += xs[order[i]];
      centroid /= double(n);
      const Eigen::Index worst = order[n];

      const Eigen::VectorXd refl = centroid + (centroid - xs[worst]);
      const double frefl = eval(refl);
      if (frefl < fs[order[0]]) {
        const Eigen::VectorXd expd = centroid + 2.0 * (centroid - xs[worst]);
        const double fexpd = eval(expd);
        if (fexpd < frefl) { xs[worst] = expd; fs[worst] = fexpd; }
        else { xs[worst] = refl; fs[worst] = frefl; }
      } else if (frefl < fs[order[n - 1]]) {
        xs[worst] = refl;
        fs[worst] = frefl;
      } else {
        const Eigen::VectorXd contr = centroid + 0.5 * (xs[worst] - centroid);
        const double fcontr = eval(contr);
        if (fcontr < fs[worst]) { xs[worst] = contr; fs[worst] = fcontr; }
        else {
          for (Eigen::Index i = 1; i <= n; ++i) {
            xs[order[i]] = xs[order[0]] + 0.5 * (xs[order[i]] - xs[order[0]]);
            fs[order[i]] = eval(xs[order[i]]);
          }
        }
      }
    }
    Eigen::Index bi = 0;
    for (Eigen::Index i = 1; i <= n; ++i)
      if (fs[i] < fs[bi]) bi = i;
    return {xs[bi], fs[bi]};
  }

 private:
  double eval(const Eigen::VectorXd& x) {
    ++evals_;
    return f_(x);
  }

  std::function<double(const Eigen::VectorXd&)> f_;
  int max_evals_;
  int evals_ = 0;
};

}  // namespace

double dt_oracle(const ChoiDerivative& k, const OracleConfig& cfg) {
  const int d = k.dim;
  const Eigen::Index m = Eigen::Index(d) * d - 1;
  const double knorm = trace_norm(k.mat);
  if (knorm == 0.0) return 0.0;

  // Precompute the linear map coordinates once; objective evaluation is then
  // a handful of small matrix products plus one Hermitian spectrum.
  std::vector<std::vector<CMatrix>> pair_dirs(m, std::vector<CMatrix>(m));
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index l = 0; l < m; ++l) {
      CMatrix unit = CMatrix::Zero(m, m);
      unit(j, l) = 1.0;
      CMatrix s = kossakowski_superop(unit, d);
      pair_dirs[j][l] = reshuffle(s, d);
    }

  const auto objective = [&](const Eigen::VectorXd& x) {
    const CMatrix b = cholesky_factor(x, m);
    const CMatrix a = b * b.adjoint();
    CMatrix km = CMatrix::Zero(k.mat.rows(), k.mat.cols());
    for (Eigen::Index j = 0; j < m; ++j)
      for (Eigen::Index l = 0; l < m; ++l) {
        const Complex ajl = a(j, l);
        if (ajl != Complex(0, 0)) km += ajl * pair_dirs[j][l];
      }
    return trace_norm(k.mat - hermitize(km));
  };

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Eigen::Index nparams = cholesky_params(m);
  const double scale = cfg.radius * std::sqrt(knorm);

  Eigen::VectorXd best_x = Eigen::VectorXd::Zero(nparams);
  double best = objective(best_x);
  for (int r = 0; r < cfg.restarts; ++r) {
    Eigen::VectorXd x0(nparams);
    for (Eigen::Index i = 0; i < nparams; ++i) x0(i) = scale * normal(rng);
    if (r == 0) x0.setZero();  // deterministic restart from the origin
    NelderMead nm(objective, cfg.max_evals);
    const auto [x, fx] = nm.run(x0, 0.25 * scale + 1e-3);
    if (fx < best) { best = fx; best_x = x; }
  }

  // Polish: restarted simplexes of shrinking size around the incumbent, so a
  // stalled simplex cannot freeze the value short of the basin bottom.
  double polish_scale = 0.25 * scale + 1e-3;
  for (int round = 0; round < cfg.polish_rounds; ++round) {
    NelderMead nm(objective, cfg.max_evals);
    const auto [x, fx] = nm.run(best_x, polish_scale);
    if (fx < best) { best = fx; best_x = x; }
    polish_scale *= 0.3;
  }
  return best;
}

}  // namespace nmlab
