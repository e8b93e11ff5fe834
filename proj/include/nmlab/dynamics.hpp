#pragma once

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "nmlab/linops.hpp"

// Propagators Lambda(t2,t1) = T exp(int L_t dt), built as a product of
// per-step exponentials exp(L(t_mid) * dt) (first-order Magnus, midpoint).

namespace nmlab {

struct StepTooLarge : std::runtime_error {
  explicit StepTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct Propagator {
  CMatrix superop;  // d^2 x d^2
  double t_start = 0.0;
  double t_end = 0.0;
  double step = 0.0;

  int dim() const {
    return int(std::lround(std::sqrt(double(superop.rows()))));
  }
};

inline double default_step(double t1, double t2) {
  return std::min(1e-3, (t2 - t1) / 100.0);
}

template <typename Gen>
Propagator propagate(const Gen& g, double t1, double t2, double step) {
  if (t2 < t1) throw std::invalid_argument("propagate: t2 < t1");
  if (step <= 0) throw std::invalid_argument("propagate: step must be positive");
  const Eigen::Index n = Eigen::Index(g.dim()) * g.dim();
  CMatrix prop = CMatrix::Identity(n, n);
  double t = t1;
  while (t < t2 - 1e-15 * std::max(1.0, std::abs(t2))) {
    const double dt = std::min(step, t2 - t);
    const CMatrix l = g.superop(t + 0.5 * dt);
    // operator 1-norm estimate (max column abs sum)
    const double lnorm = l.size() ? l.cwiseAbs().colwise().sum().maxCoeff() : 0.0;
    if (lnorm * dt > 1.0)
      throw StepTooLarge("propagate: ||L||*dt > 1, reduce the step");
    prop = (l * dt).exp() * prop;
    t += dt;
  }
  return {std::move(prop), t1, t2, step};
}

template <typename Gen>
Propagator incremental_map(const Gen& g, double t, double eps) {
  if (eps <= 0) throw std::invalid_argument("incremental_map: eps must be positive");
  return propagate(g, t, t + eps, eps);
}

}  // namespace nmlab
