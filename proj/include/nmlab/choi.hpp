#pragma once

#include "nmlab/dynamics.hpp"
#include "nmlab/generators.hpp"
#include "nmlab/linops.hpp"

// Choi matrices of maps and increments, the exact eps->0 Choi derivative
// K = (I (x) L)(|psi><psi|), and the freeness predicate for the set F of
// Choi states of divisible increments (trace norm exactly 1).

namespace nmlab {

struct ChoiMatrix {
  int dim = 0;       // system dimension d
  CMatrix mat;       // d^2 x d^2, Hermitian, trace 1

  ChoiMatrix(int d, CMatrix m) : dim(d), mat(std::move(m)) {
    detail::check_superop_dims(mat, dim, "ChoiMatrix");
    require_hermitian(mat, "ChoiMatrix");
    if (std::abs(mat.trace() - Complex(1, 0)) > 1e-10)
      throw std::invalid_argument("ChoiMatrix: trace must be 1");
  }
};

struct ChoiDerivative {
  int dim = 0;       // system dimension d
  CMatrix mat;       // d^2 x d^2, Hermitian, traceless (units 1/time)

  ChoiDerivative(int d, CMatrix m) : dim(d), mat(std::move(m)) {
    detail::check_superop_dims(mat, dim, "ChoiDerivative");
    require_hermitian(mat, "ChoiDerivative");
    if (std::abs(mat.trace()) > 1e-10 * std::max(1.0, max_abs(mat)))
      throw std::invalid_argument("ChoiDerivative: trace must be 0");
  }
};

inline ChoiMatrix choi_of_propagator(const Propagator& p) {
  const int d = p.dim();
  return ChoiMatrix(d, hermitize(reshuffle(p.superop, d)));
}

template <typename Gen>
ChoiDerivative choi_derivative(const Gen& g, double t) {
  const int d = g.dim();
  return ChoiDerivative(d, hermitize(reshuffle(g.superop(t), d)));
}

// K_M(A): Choi derivative realized by the dissipator with Kossakowski matrix a.
inline ChoiDerivative free_choi_derivative(const CMatrix& a, int d) {
  return ChoiDerivative(d, hermitize(reshuffle(kossakowski_superop(a, d), d)));
}

struct FreeSetPoint {
  CMatrix kossakowski;      // PSD
  ChoiDerivative realized;  // K_M(kossakowski)
};

inline FreeSetPoint free_set_point(const CMatrix& a, int d) {
  if (herm_eigvalues(a).minCoeff() < -1e-12)
    throw std::invalid_argument("free_set_point: Kossakowski matrix must be PSD");
  return {a, free_choi_derivative(a, d)};
}

inline bool is_free(const ChoiMatrix& c, double tol = 1e-9) {
  return trace_norm(c.mat) <= 1.0 + tol;
}

inline ChoiMatrix mix(const ChoiMatrix& c1, const ChoiMatrix& c2, double p) {
  if (c1.dim != c2.dim) throw DimensionError("mix: dimension mismatch");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("mix: p must lie in [0,1]");
  return ChoiMatrix(c1.dim, p * c1.mat + (1.0 - p) * c2.mat);
}

// Eigenvalues mu_i of Q K Q with Q = I - |psi><psi|; the first-order spectrum
// of ||psi + eps K||_1 away from the entangled direction.  Bookkeeping:
// <psi|K|psi> = -sum mu_i when Tr K = 0.
inline RVector compressed_spectrum(const ChoiDerivative& k) {
  const CMatrix proj = CMatrix::Identity(k.mat.rows(), k.mat.cols()) -
                       max_entangled_projector(k.dim);
  return herm_eigvalues(proj * k.mat * proj);
}

// Applies I (x) Lambda blockwise to a bipartite d*d x d*d matrix, where
// lambda_superop is the d^2 x d^2 superoperator of Lambda.
inline CMatrix apply_id_tensor_map(const CMatrix& lambda_superop, const CMatrix& m, int d) {
  detail::check_superop_dims(lambda_superop, d, "apply_id_tensor_map");
  if (m.rows() != Eigen::Index(d) * d || m.cols() != m.rows())
    throw DimensionError("apply_id_tensor_map: matrix dimension mismatch");
  CMatrix out(m.rows(), m.cols());
  for (int a = 0; a < d; ++a)
    for (int c = 0; c < d; ++c) {
      const CMatrix block = m.block(Eigen::Index(a) * d, Eigen::Index(c) * d, d, d);
      out.block(Eigen::Index(a) * d, Eigen::Index(c) * d, d, d) =
          unvec(CVector(lambda_superop * vec(block)), d);
    }
  return out;
}

}  // namespace nmlab
