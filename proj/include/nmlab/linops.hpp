#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

// Dense complex-matrix kernel: Hermitian eigendecomposition, trace norm,
// Kronecker/vectorization helpers and the superoperator <-> Choi reshuffle.
//
// Conventions (frozen, everything downstream depends on them):
//   * column-stacking vectorization: vec(A X B) = (B^T (x) A) vec(X)
//   * maximally entangled reference ket |psi> = (1/sqrt(d)) sum_i |ii>
//   * bipartite index (a,b) -> a*d + b (ancilla major, Kronecker row-major)

namespace nmlab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

struct NonHermitianError : std::runtime_error {
  explicit NonHermitianError(const std::string& what) : std::runtime_error(what) {}
};
struct DimensionError : std::runtime_error {
  explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

inline double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const CMatrix& m, double rtol = 1e-12) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, max_abs(m));
  return max_abs(m - m.adjoint().eval()) <= rtol * scale;
}

inline void require_hermitian(const CMatrix& m, const char* where) {
  if (!is_hermitian(m))
    throw NonHermitianError(std::string(where) + ": matrix is not Hermitian");
}

// (M + M^dag)/2, absorbs roundoff before eigensolving.
inline CMatrix hermitize(const CMatrix& m) {
  return 0.5 * (m + m.adjoint().eval());
}

struct HermEig {
  RVector values;   // ascending
  CMatrix vectors;  // columns, unitary
};

inline HermEig herm_eig(const CMatrix& m) {
  require_hermitian(m, "herm_eig");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(m));
  if (es.info() != Eigen::Success)
    throw std::runtime_error("herm_eig: eigensolver failed to converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

inline RVector herm_eigvalues(const CMatrix& m) {
  require_hermitian(m, "herm_eigvalues");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(m), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("herm_eigvalues: eigensolver failed to converge");
  return es.eigenvalues();
}

// Sum of absolute eigenvalues. Hermitian inputs only.
inline double trace_norm(const CMatrix& m) {
  return herm_eigvalues(m).cwiseAbs().sum();
}

template <typename DerivedA, typename DerivedB>
CMatrix kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = Complex(a(i, j)) * b;
  return out;
}

inline CVector vec(const CMatrix& m) {
  return Eigen::Map<const CVector>(m.data(), m.size());
}

inline CMatrix unvec(const CVector& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols)
    throw DimensionError("unvec: vector length does not match target shape");
  return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

inline CMatrix unvec(const CVector& v, Eigen::Index dim) { return unvec(v, dim, dim); }

inline CVector max_entangled_ket(int d) {
  CVector psi = CVector::Zero(Eigen::Index(d) * d);
  const double a = 1.0 / std::sqrt(double(d));
  for (int i = 0; i < d; ++i) psi(Eigen::Index(i) * d + i) = a;
  return psi;
}

inline CMatrix max_entangled_projector(int d) {
  const CVector psi = max_entangled_ket(d);
  return psi * psi.adjoint();
}

namespace detail {
inline void check_superop_dims(const CMatrix& s, int d, const char* where) {
  const Eigen::Index n = Eigen::Index(d) * d;
  if (d <= 0 || s.rows() != n || s.cols() != n)
    throw DimensionError(std::string(where) + ": expected a d^2 x d^2 matrix");
}

// Pure index shuffle between a superoperator acting on column-stacked vec(rho)
// and the (unnormalized) Choi block form; an involution.
inline CMatrix shuffle_indices(const CMatrix& m, int d) {
  CMatrix out(m.rows(), m.cols());
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e)
          out(Eigen::Index(a) * d + b, Eigen::Index(c) * d + e) =
              m(Eigen::Index(b) + Eigen::Index(e) * d, Eigen::Index(a) + Eigen::Index(c) * d);
  return out;
}
}  // namespace detail

// Choi matrix of the map with superoperator s: reshuffle(id) = |psi><psi|.
inline CMatrix reshuffle(const CMatrix& s, int d) {
  detail::check_superop_dims(s, d, "reshuffle");
  return detail::shuffle_indices(s, d) / double(d);
}

// Inverse of reshuffle: superoperator from a Choi-form matrix.
inline CMatrix unreshuffle(const CMatrix& choi, int d) {
  detail::check_superop_dims(choi, d, "unreshuffle");
  return detail::shuffle_indices(choi, d) * double(d);
}

inline CMatrix partial_trace_second(const CMatrix& m, int da, int db) {
  if (m.rows() != Eigen::Index(da) * db || m.cols() != m.rows())
    throw DimensionError("partial_trace_second: dimension mismatch");
  CMatrix out = CMatrix::Zero(da, da);
  for (int a = 0; a < da; ++a)
    for (int c = 0; c < da; ++c)
      for (int b = 0; b < db; ++b)
        out(a, c) += m(Eigen::Index(a) * db + b, Eigen::Index(c) * db + b);
  return out;
}

inline CMatrix partial_trace_first(const CMatrix& m, int da, int db) {
  if (m.rows() != Eigen::Index(da) * db || m.cols() != m.rows())
    throw DimensionError("partial_trace_first: dimension mismatch");
  CMatrix out = CMatrix::Zero(db, db);
  for (int b = 0; b < db; ++b)
    for (int e = 0; e < db; ++e)
      for (int a = 0; a < da; ++a)
        out(b, e) += m(Eigen::Index(a) * db + b, Eigen::Index(a) * db + e);
  return out;
}

// Exchanges the two tensor factors of a da (x) db bipartite operator.
inline CMatrix swap_subsystems(const CMatrix& m, int da, int db) {
  if (m.rows() != Eigen::Index(da) * db || m.cols() != m.rows())
    throw DimensionError("swap_subsystems: dimension mismatch");
  CMatrix out(m.rows(), m.cols());
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int c = 0; c < da; ++c)
        for (int e = 0; e < db; ++e)
          out(Eigen::Index(b) * da + a, Eigen::Index(e) * da + c) =
              m(Eigen::Index(a) * db + b, Eigen::Index(c) * db + e);
  return out;
}

}  // namespace nmlab
