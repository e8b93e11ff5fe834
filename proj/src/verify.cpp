#include "nmlab/verify.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nmlab/models.hpp"
#include "nmlab/oracle.hpp"

namespace nmlab {

std::string VerifyReport::to_json() const {
  nlohmann::json j;
  j["all_passed"] = all_passed();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return j.dump(2);
}

CMatrix InstanceSampler::random_hermitian(int n, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(normal(rng_), normal(rng_));
  return hermitize(m);
}

CMatrix InstanceSampler::random_psd(int n, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  CMatrix b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = Complex(normal(rng_), normal(rng_));
  return (b * b.adjoint()).eval() / double(n);
}

CMatrix InstanceSampler::random_density(int n) {
  CMatrix p = random_psd(n);
  return p / p.trace();
}

ChoiDerivative InstanceSampler::random_choi_derivative(int d, double scale) {
  return free_choi_derivative(random_hermitian(d * d - 1, scale), d);
}

Propagator InstanceSampler::random_markovian_propagator(int d, double duration) {
  const KossakowskiGenerator gen(d, random_psd(d * d - 1));
  return propagate(gen, 0.0, duration, duration / 16.0);
}

ChoiMatrix InstanceSampler::random_free_choi(int d, double eps) {
  const KossakowskiGenerator gen(d, random_psd(d * d - 1));
  return choi_of_propagator(incremental_map(gen, 0.0, eps));
}

double InstanceSampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

CheckResult bound_check(const std::string& name, double worst, double limit,
                        const std::string& what) {
  return {name, worst <= limit, what + " = " + fmt(worst) + " (limit " + fmt(limit) + ")"};
}

}  // namespace

VerifyReport verify_propositions(const VerifyOptions& opt) {
  VerifyReport report;
  InstanceSampler sampler(opt.seed);
  const int d = 2;
  const double free_tol = 1e-9;

  {  // Prop 1A: tensor products of free states stay free
    double worst = 0.0;
    for (int i = 0; i < opt.trials; ++i) {
      const ChoiMatrix a = sampler.random_free_choi(d);
      const ChoiMatrix b = sampler.random_free_choi(d);
      worst = std::max(worst, trace_norm(kron(a.mat, b.mat)) - 1.0);
    }
    report.checks.push_back(
        bound_check("prop1a-tensor-product", worst, free_tol, "max ||C1 (x) C2||_1 - 1"));
  }
  {  // Prop 1A: partial traces of free states stay free
    double worst = 0.0;
    for (int i = 0; i < opt.trials; ++i) {
      const ChoiMatrix c = sampler.random_free_choi(d);
      worst = std::max(worst, trace_norm(partial_trace_second(c.mat, d, d)) - 1.0);
      worst = std::max(worst, trace_norm(partial_trace_first(c.mat, d, d)) - 1.0);
    }
    report.checks.push_back(
        bound_check("prop1a-partial-trace", worst, free_tol, "max ||Tr_X C||_1 - 1"));
  }
  {  // Prop 1A: subsystem permutation preserves freeness and the norm
    double worst = 0.0;
    for (int i = 0; i < opt.trials; ++i) {
      const ChoiMatrix c = sampler.random_free_choi(d);
      const CMatrix swapped = swap_subsystems(c.mat, d, d);
      worst = std::max(worst, std::abs(trace_norm(swapped) - trace_norm(c.mat)));
    }
    report.checks.push_back(
        bound_check("prop1a-permutation", worst, 1e-10, "max | ||swap C||_1 - ||C||_1 |"));
  }
  {  // Prop 1C: free operations keep free states free
    double worst = 0.0;
    for (int i = 0; i < opt.trials; ++i) {
      const ChoiMatrix c = sampler.random_free_choi(d);
      const Propagator lam = sampler.random_markovian_propagator(d);
      const CMatrix evolved = hermitize(apply_id_tensor_map(lam.superop, c.mat, d));
      worst = std::max(worst, trace_norm(evolved) - 1.0);
    }
    report.checks.push_back(bound_check("prop1c-free-operations", worst, 1e-8,
                                        "max ||(I(x)Lambda)C||_1 - 1"));
  }
  {  // Prop 2: convex mixtures of free increments stay free
    double worst = 0.0;
    for (int i = 0; i < opt.trials; ++i) {
      const ChoiMatrix a = sampler.random_free_choi(d);
      const ChoiMatrix b = sampler.random_free_choi(d);
      const ChoiMatrix mixed = mix(a, b, sampler.uniform());
      worst = std::max(worst, trace_norm(mixed.mat) - 1.0);
    }
    report.checks.push_back(
        bound_check("prop2-convex-mixing", worst, free_tol, "max ||p C1 + (1-p) C2||_1 - 1"));
  }
  {  // Prop 3: convexity of D_T
    const DtSolver solver(d);
    double worst = -1.0;
    for (int i = 0; i < opt.trials; ++i) {
      const ChoiDerivative k1 = sampler.random_choi_derivative(d);
      const ChoiDerivative k2 = sampler.random_choi_derivative(d);
      const double d1 = solver.solve(k1).first;
      const double d2 = solver.solve(k2).first;
      for (const double p : {0.25, 0.5, 0.75}) {
        const ChoiDerivative km(d, p * k1.mat + (1.0 - p) * k2.mat);
        const double dm = solver.solve(km).first;
        worst = std::max(worst, dm - (p * d1 + (1.0 - p) * d2));
      }
    }
    report.checks.push_back(bound_check("prop3-convexity", worst, 1e-6,
                                        "max D_T(mix) - mix of D_T"));
  }
  {  // Prop 3: monotonicity of D_T under divisible post-composition
    const DtSolver solver(d);
    double worst = -1.0;
    for (int i = 0; i < opt.trials; ++i) {
      const ChoiDerivative k = sampler.random_choi_derivative(d);
      const Propagator lam = sampler.random_markovian_propagator(d);
      const double before = solver.solve(k).first;
      const double after = solver.solve_composed(k, lam.superop).first;
      worst = std::max(worst, after - before);
    }
    report.checks.push_back(bound_check("prop3-monotonicity", worst, 1e-6,
                                        "max D_T(composed) - D_T"));
  }
  {  // Prop 4: R = (||C||_1 - 1)/2 equals the negative-eigenvalue sum
    double worst = 0.0;
    for (int i = 0; i < opt.trials; ++i) {
      // trace-1 Hermitian with genuine negative spectrum
      CMatrix c = sampler.random_density(d * d) - 0.3 * sampler.random_psd(d * d);
      c /= c.trace();
      const ChoiMatrix choi(d, hermitize(c));
      const RVector ev = herm_eigvalues(choi.mat);
      double neg = 0.0;
      for (Eigen::Index j = 0; j < ev.size(); ++j)
        if (ev(j) < 0) neg -= ev(j);
      worst = std::max(worst, std::abs(robustness_incremental(choi) - neg));
    }
    report.checks.push_back(bound_check("prop4-robustness-identity", worst, 1e-10,
                                        "max |(||C||_1-1)/2 - sum |lambda-||"));
  }
  return report;
}

VerifyReport verify_theorem1(const VerifyOptions& opt) {
  VerifyReport report;
  const DtSolver solver(2);

  double worst_margin = std::numeric_limits<double>::infinity();
  double worst_tight = 0.0;
  for (const auto& model : catalog()) {
    for (double t = 0.0; t <= opt.t_max + 1e-12; t += opt.dt) {
      const ChoiDerivative k = choi_derivative(model.generator, t);
      const double g = rhp_g(k);
      const double d_t = solver.solve(k).first;
      worst_margin = std::min(worst_margin, d_t - g);
      if (model.name == "dephasing-sin")
        worst_tight = std::max(worst_tight, std::abs(d_t - g));
    }
  }
  report.checks.push_back(bound_check("theorem1-catalog-bound", -worst_margin, 1e-6,
                                      "max g - D_T over catalog sweep"));
  report.checks.push_back(bound_check("theorem1-dephasing-tight", worst_tight, 1e-3,
                                      "max |D_T - g| on dephasing-sin"));

  InstanceSampler sampler(opt.seed);
  double worst_rand = std::numeric_limits<double>::infinity();
  for (int i = 0; i < opt.theorem1_random; ++i) {
    const ChoiDerivative k = sampler.random_choi_derivative(2);
    worst_rand = std::min(worst_rand, solver.solve(k).first - rhp_g(k));
  }
  report.checks.push_back(bound_check("theorem1-random-bound", -worst_rand, 1e-6,
                                      "max g - D_T over random instances"));
  return report;
}

VerifyReport verify_optimizer_oracle(const VerifyOptions& opt) {
  VerifyReport report;
  const DtSolver solver(2);
  InstanceSampler sampler(opt.seed);

  double worst_gap = 0.0;
  for (int i = 0; i < opt.oracle_instances; ++i) {
    const ChoiDerivative k = sampler.random_choi_derivative(2);
    const double sub = solver.solve(k).first;
    OracleConfig ocfg;
    ocfg.restarts = opt.oracle_restarts;
    ocfg.seed = opt.seed + std::uint64_t(i) * 7919;
    const double oracle = dt_oracle(k, ocfg);
    worst_gap = std::max(worst_gap, std::abs(sub - oracle));
  }
  report.checks.push_back(bound_check("optimizer-oracle-gap", worst_gap, 1e-3,
                                      "max |subgradient - oracle|"));
  return report;
}

VerifyReport verify_all(const VerifyOptions& opt) {
  VerifyReport report;
  for (auto r : {verify_propositions(opt), verify_theorem1(opt), verify_optimizer_oracle(opt)})
    report.checks.insert(report.checks.end(), r.checks.begin(), r.checks.end());
  return report;
}

}  // namespace nmlab
