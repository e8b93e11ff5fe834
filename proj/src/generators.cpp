#include "nmlab/generators.hpp"

#include <algorithm>
#include <cmath>

namespace nmlab {

RateSchedule RateSchedule::table(std::vector<std::pair<double, double>> knots) {
  if (knots.empty()) throw std::invalid_argument("RateSchedule::table: empty table");
  std::sort(knots.begin(), knots.end());
  RateSchedule r;
  r.kind = Kind::Table;
  r.knots = std::move(knots);
  return r;
}

double RateSchedule::operator()(double t) const {
  switch (kind) {
    case Kind::Constant:
      return value;
    case Kind::Sinusoid:
      return amplitude * std::sin(omega * t + phase) + offset;
    case Kind::TanhNegative:
      return -amplitude * std::tanh(omega * t);
    case Kind::Table: {
      if (t <= knots.front().first) return knots.front().second;
      if (t >= knots.back().first) return knots.back().second;
      auto hi = std::upper_bound(knots.begin(), knots.end(), std::make_pair(t, 0.0),
                                 [](const auto& a, const auto& b) { return a.first < b.first; });
      auto lo = hi - 1;
      const double w = (t - lo->first) / (hi->first - lo->first);
      return lo->second + w * (hi->second - lo->second);
    }
  }
  throw std::logic_error("RateSchedule: unknown kind");
}

std::vector<CMatrix> gell_mann_basis(int d) {
  if (d < 2) throw std::invalid_argument("gell_mann_basis: d must be >= 2");
  std::vector<CMatrix> basis;
  basis.reserve(std::size_t(d) * d - 1);
  const double s = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      CMatrix f = CMatrix::Zero(d, d);
      f(j, k) = s;
      f(k, j) = s;
      basis.push_back(f);
    }
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      CMatrix f = CMatrix::Zero(d, d);
      f(j, k) = Complex(0, -s);
      f(k, j) = Complex(0, s);
      basis.push_back(f);
    }
  for (int l = 1; l < d; ++l) {
    CMatrix f = CMatrix::Zero(d, d);
    const double n = 1.0 / std::sqrt(double(l) * (l + 1));
    for (int m = 0; m < l; ++m) f(m, m) = n;
    f(l, l) = -double(l) * n;
    basis.push_back(f);
  }
  return basis;
}

namespace {

CMatrix dissipator_superop(const CMatrix& lhs, const CMatrix& rhs_dag) {
  // rho -> lhs rho rhs_dag^dag - 1/2 {rhs_dag^dag lhs, rho}, column stacking.
  const Eigen::Index d = lhs.rows();
  const CMatrix id = CMatrix::Identity(d, d);
  const CMatrix prod = rhs_dag * lhs;  // L_k^dag L_j
  return kron(rhs_dag.transpose(), lhs) - 0.5 * kron(prod.transpose(), id) -
         0.5 * kron(id, prod);
}

void check_hamiltonian(const std::optional<CMatrix>& h, int d, const char* where) {
  if (!h) return;
  if (h->rows() != d || h->cols() != d)
    throw DimensionError(std::string(where) + ": Hamiltonian dimension mismatch");
  require_hermitian(*h, where);
}

}  // namespace

CMatrix hamiltonian_superop(const CMatrix& h) {
  const Eigen::Index d = h.rows();
  const CMatrix id = CMatrix::Identity(d, d);
  return Complex(0, -1) * (kron(id, h) - kron(h.transpose(), id));
}

DiagonalGenerator::DiagonalGenerator(int dim, std::vector<LindbladTerm> terms,
                                     std::optional<CMatrix> hamiltonian)
    : dim_(dim), terms_(std::move(terms)), hamiltonian_(std::move(hamiltonian)) {
  if (dim_ < 2) throw std::invalid_argument("DiagonalGenerator: dim must be >= 2");
  if (terms_.size() > std::size_t(dim_) * dim_)
    throw std::invalid_argument("DiagonalGenerator: more than d^2 Lindblad terms");
  for (const auto& term : terms_)
    if (term.op.rows() != dim_ || term.op.cols() != dim_)
      throw DimensionError("DiagonalGenerator: Lindblad operator dimension mismatch");
  check_hamiltonian(hamiltonian_, dim_, "DiagonalGenerator");
}

CMatrix DiagonalGenerator::superop(double t) const {
  const Eigen::Index n = Eigen::Index(dim_) * dim_;
  CMatrix s = CMatrix::Zero(n, n);
  if (hamiltonian_) s += hamiltonian_superop(*hamiltonian_);
  for (const auto& term : terms_) {
    const double rate = term.rate(t);
    if (rate != 0.0) s += rate * dissipator_superop(term.op, term.op.adjoint());
  }
  return s;
}

CMatrix DiagonalGenerator::kossakowski(double t) const {
  return diagonal_to_kossakowski(*this, t).matrix();
}

KossakowskiGenerator::KossakowskiGenerator(int dim, CMatrix kossakowski,
                                           std::optional<CMatrix> hamiltonian)
    : dim_(dim), kossakowski_(std::move(kossakowski)), hamiltonian_(std::move(hamiltonian)) {
  if (dim_ < 2) throw std::invalid_argument("KossakowskiGenerator: dim must be >= 2");
  const Eigen::Index m = Eigen::Index(dim_) * dim_ - 1;
  if (kossakowski_.rows() != m || kossakowski_.cols() != m)
    throw DimensionError("KossakowskiGenerator: Kossakowski matrix must be (d^2-1) square");
  require_hermitian(kossakowski_, "KossakowskiGenerator");
  check_hamiltonian(hamiltonian_, dim_, "KossakowskiGenerator");
}

CMatrix kossakowski_superop(const CMatrix& a, int d) {
  const auto basis = gell_mann_basis(d);
  const Eigen::Index m = Eigen::Index(d) * d - 1;
  if (a.rows() != m || a.cols() != m)
    throw DimensionError("kossakowski_superop: Kossakowski matrix must be (d^2-1) square");
  const Eigen::Index n = Eigen::Index(d) * d;
  CMatrix s = CMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index k = 0; k < m; ++k) {
      const Complex ajk = a(j, k);
      if (ajk != Complex(0, 0)) s += ajk * dissipator_superop(basis[j], basis[k]);
    }
  return s;
}

CMatrix KossakowskiGenerator::superop(double /*t*/) const {
  CMatrix s = kossakowski_superop(kossakowski_, dim_);
  if (hamiltonian_) s += hamiltonian_superop(*hamiltonian_);
  return s;
}

CMatrix KossakowskiGenerator::kossakowski(double /*t*/) const { return kossakowski_; }

KossakowskiGenerator diagonal_to_kossakowski(const DiagonalGenerator& g, double t) {
  const int d = g.dim();
  const auto basis = gell_mann_basis(d);
  const Eigen::Index m = Eigen::Index(d) * d - 1;
  CMatrix a = CMatrix::Zero(m, m);
  CMatrix h = g.hamiltonian() ? *g.hamiltonian() : CMatrix::Zero(d, d);
  for (const auto& term : g.terms()) {
    const double rate = term.rate(t);
    const Complex c0 = term.op.trace() / double(d);
    CVector c(m);
    for (Eigen::Index j = 0; j < m; ++j) c(j) = (basis[j].adjoint() * term.op).trace();
    a += rate * (c * c.adjoint());
    if (c0 != Complex(0, 0)) {
      // trace part of L contributes a commutator: H += i/2 (c0* Ltl - c0 Ltl^dag)
      CMatrix ltl = term.op - c0 * CMatrix::Identity(d, d);
      h += rate * (Complex(0, 0.5) * (std::conj(c0) * ltl - c0 * ltl.adjoint()));
    }
  }
  a = hermitize(a);
  const bool trivial_h = max_abs(h) == 0.0;
  return KossakowskiGenerator(d, std::move(a),
                              trivial_h ? std::nullopt : std::optional<CMatrix>(hermitize(h)));
}

}  // namespace nmlab
