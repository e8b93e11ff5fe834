#pragma once

#include <optional>
#include <vector>

#include "nmlab/linops.hpp"

// GKSL generators in diagonal form (Lindblad operators + rate schedules) and
// Kossakowski form over the generalized Gell-Mann basis, rendered as
// superoperators in the column-stacking convention.
//
// Gell-Mann ordering (frozen): symmetric pairs (j<k, lexicographic), then
// antisymmetric pairs, then diagonal; all normalized to Tr[F_j F_k] = delta_jk.
// For a qubit this is (sigma_x, sigma_y, sigma_z)/sqrt(2).

namespace nmlab {

struct RateSchedule {
  enum class Kind { Constant, Sinusoid, TanhNegative, Table };

  Kind kind = Kind::Constant;
  double value = 0.0;                            // constant
  double amplitude = 0.0, omega = 1.0;           // sinusoid, tanh_negative
  double phase = 0.0, offset = 0.0;              // sinusoid
  std::vector<std::pair<double, double>> knots;  // table, sorted by t

  static RateSchedule constant(double v) {
    RateSchedule r;
    r.kind = Kind::Constant;
    r.value = v;
    return r;
  }
  // amplitude*sin(omega*t + phase) + offset
  static RateSchedule sinusoid(double amplitude, double omega = 1.0, double phase = 0.0,
                               double offset = 0.0) {
    RateSchedule r;
    r.kind = Kind::Sinusoid;
    r.amplitude = amplitude;
    r.omega = omega;
    r.phase = phase;
    return r.offset = offset, r;
  }
  // -amplitude*tanh(omega*t)
  static RateSchedule tanh_negative(double amplitude = 1.0, double omega = 1.0) {
    RateSchedule r;
    r.kind = Kind::TanhNegative;
    r.amplitude = amplitude;
    r.omega = omega;
    return r;
  }
  // piecewise-linear interpolation, constant extrapolation
  static RateSchedule table(std::vector<std::pair<double, double>> knots);

  double operator()(double t) const;
};

struct LindbladTerm {
  CMatrix op;          // d x d
  RateSchedule rate;   // 1/time
};

// Orthonormal traceless Hermitian basis F_1..F_{d^2-1}.
std::vector<CMatrix> gell_mann_basis(int d);

class KossakowskiGenerator;

class DiagonalGenerator {
 public:
  DiagonalGenerator(int dim, std::vector<LindbladTerm> terms,
                    std::optional<CMatrix> hamiltonian = std::nullopt);

  int dim() const { return dim_; }
  const std::vector<LindbladTerm>& terms() const { return terms_; }
  const std::optional<CMatrix>& hamiltonian() const { return hamiltonian_; }

  CMatrix superop(double t) const;
  CMatrix kossakowski(double t) const;

 private:
  int dim_;
  std::vector<LindbladTerm> terms_;
  std::optional<CMatrix> hamiltonian_;
};

class KossakowskiGenerator {
 public:
  KossakowskiGenerator(int dim, CMatrix kossakowski,
                       std::optional<CMatrix> hamiltonian = std::nullopt);

  int dim() const { return dim_; }
  const CMatrix& matrix() const { return kossakowski_; }
  const std::optional<CMatrix>& hamiltonian() const { return hamiltonian_; }

  CMatrix superop(double t) const;
  CMatrix kossakowski(double t) const;

 private:
  int dim_;
  CMatrix kossakowski_;  // (d^2-1) x (d^2-1), Hermitian
  std::optional<CMatrix> hamiltonian_;
};

// Superoperator of the dissipator with Kossakowski matrix a over the
// Gell-Mann basis (a need not be PSD).
CMatrix kossakowski_superop(const CMatrix& a, int d);

// Superoperator of rho -> -i[h, rho].
CMatrix hamiltonian_superop(const CMatrix& h);

// Basis change L_alpha = sum_j c_j F_j + (Tr L/d) I; the trace part folds
// into the Hamiltonian so the superoperators agree.
KossakowskiGenerator diagonal_to_kossakowski(const DiagonalGenerator& g, double t);

template <typename Gen>
bool is_instantaneously_markovian(const Gen& g, double t, double tol = 1e-12) {
  return herm_eigvalues(g.kossakowski(t)).minCoeff() >= -tol;
}

}  // namespace nmlab
