#include <doctest.h>

#include "nmlab/linops.hpp"
#include "test_helpers.hpp"

using namespace nmlab;
using namespace nmlab::test;

TEST_CASE("herm_eig on diagonal and Pauli-X inputs") {
  CMatrix d(2, 2);
  d << 2, 0, 0, -1;
  auto eig = herm_eig(d);
  CHECK(eig.values(0) == doctest::Approx(-1.0));
  CHECK(eig.values(1) == doctest::Approx(2.0));

  auto ex = herm_eig(pauli_x());
  CHECK(ex.values(0) == doctest::Approx(-1.0));
  CHECK(ex.values(1) == doctest::Approx(1.0));
}

TEST_CASE("herm_eig reconstruction on random Hermitian matrices") {
  std::mt19937_64 rng(11);
  for (int n : {2, 3, 4, 8}) {
    const CMatrix m = random_hermitian(n, rng);
    const auto eig = herm_eig(m);
    const CMatrix rec =
        eig.vectors * eig.values.asDiagonal() * eig.vectors.adjoint();
    CHECK(max_abs(rec - m) <= 1e-10 * std::max(1.0, max_abs(m)));
    for (Eigen::Index i = 1; i < eig.values.size(); ++i)
      CHECK(eig.values(i) >= eig.values(i - 1));
  }
}

TEST_CASE("herm_eig of a perturbed entangled projector") {
  // |psi><psi| + 0.001*gamma*(Z2 psi Z2 - psi) with gamma = -1
  const double gamma = -1.0, eps = 1e-3;
  const CMatrix psi = max_entangled_projector(2);
  const CMatrix z2 = kron(CMatrix::Identity(2, 2), pauli_z());
  const CMatrix m = psi + eps * gamma * (z2 * psi * z2 - psi);
  const RVector ev = herm_eigvalues(m);
  CHECK(ev(0) == doctest::Approx(-0.001).epsilon(1e-10));
  CHECK(ev(1) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(ev(2) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(ev(3) == doctest::Approx(1.001).epsilon(1e-10));
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
  CMatrix m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(herm_eig(m), NonHermitianError);
  CHECK_THROWS_AS(trace_norm(m), NonHermitianError);
}

TEST_CASE("trace_norm values") {
  std::mt19937_64 rng(5);
  CHECK(trace_norm(random_density(4, rng)) == doctest::Approx(1.0));

  CMatrix d(2, 2);
  d << 1.5, 0, 0, -0.5;
  CHECK(trace_norm(d) == doctest::Approx(2.0));

  // Choi increment of qubit dephasing, gamma = -1, eps = 1e-3
  const CMatrix psi = max_entangled_projector(2);
  const CMatrix z2 = kron(CMatrix::Identity(2, 2), pauli_z());
  const CMatrix c = psi + 1e-3 * (-1.0) * (z2 * psi * z2 - psi);
  CHECK(trace_norm(c) == doctest::Approx(1.002).epsilon(1e-10));
}

TEST_CASE("trace_norm is a norm") {
  std::mt19937_64 rng(7);
  CHECK(trace_norm(CMatrix::Zero(3, 3)) == 0.0);
  for (int i = 0; i < 20; ++i) {
    const CMatrix a = random_hermitian(4, rng);
    const CMatrix b = random_hermitian(4, rng);
    CHECK(trace_norm(a) >= 0.0);
    CHECK(trace_norm(a + b) <= trace_norm(a) + trace_norm(b) + 1e-10);
  }
}

TEST_CASE("trace_norm is unitarily invariant and multiplicative under kron") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 10; ++i) {
    const CMatrix m = random_hermitian(4, rng);
    const CMatrix u = random_unitary(4, rng);
    CHECK(trace_norm(u * m * u.adjoint()) == doctest::Approx(trace_norm(m)).epsilon(1e-10));

    const CMatrix a = random_hermitian(2, rng);
    const CMatrix b = random_hermitian(3, rng);
    CHECK(trace_norm(kron(a, b)) ==
          doctest::Approx(trace_norm(a) * trace_norm(b)).epsilon(1e-10));
  }
}

TEST_CASE("trace_norm contracts under partial trace") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    const CMatrix m = random_hermitian(6, rng);
    CHECK(trace_norm(partial_trace_second(m, 2, 3)) <= trace_norm(m) + 1e-10);
    CHECK(trace_norm(partial_trace_first(m, 2, 3)) <= trace_norm(m) + 1e-10);
  }
}

TEST_CASE("kron basics") {
  const CMatrix i2 = CMatrix::Identity(2, 2);
  CHECK(max_abs(kron(i2, i2) - CMatrix::Identity(4, 4)) == 0.0);

  CMatrix a = CMatrix::Zero(2, 2), b = CMatrix::Zero(2, 2);
  a(0, 0) = 1;
  b(1, 1) = 1;
  CMatrix expect = CMatrix::Zero(4, 4);
  expect(1, 1) = 1;
  CHECK(max_abs(kron(a, b) - expect) == 0.0);
}

TEST_CASE("vec follows column stacking") {
  CMatrix m(2, 2);
  m << Complex(1, 0), Complex(3, 0), Complex(2, 0), Complex(4, 0);  // [[1,3],[2,4]]
  const CVector v = vec(m);
  CHECK(v(0) == Complex(1, 0));
  CHECK(v(1) == Complex(2, 0));
  CHECK(v(2) == Complex(3, 0));
  CHECK(v(3) == Complex(4, 0));
}

TEST_CASE("unvec inverts vec") {
  std::mt19937_64 rng(3);
  const CMatrix m = random_complex(3, 3, rng);
  CHECK(max_abs(unvec(vec(m), 3) - m) == 0.0);
  CHECK_THROWS_AS(unvec(vec(m), 2), DimensionError);
}

TEST_CASE("vec(AXB) = (B^T kron A) vec(X)") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 10; ++i) {
    const CMatrix a = random_complex(2, 2, rng);
    const CMatrix x = random_complex(2, 2, rng);
    const CMatrix b = random_complex(2, 2, rng);
    const CVector lhs = vec((a * x * b).eval());
    const CVector rhs = kron(b.transpose(), a) * vec(x);
    CHECK(max_abs(unvec(lhs - rhs, 2)) <= 1e-13);
  }
}

TEST_CASE("reshuffle of the identity map is the entangled projector") {
  const CMatrix s = CMatrix::Identity(4, 4);
  CHECK(max_abs(reshuffle(s, 2) - max_entangled_projector(2)) <= 1e-14);
}

TEST_CASE("reshuffle of the completely depolarizing map is I/4") {
  // rho -> I/2 Tr[rho]: S = vec(I/2) vec(I)^dag
  const CMatrix id = CMatrix::Identity(2, 2);
  const CMatrix s = (0.5 * vec(id)) * vec(id).adjoint();
  CHECK(max_abs(reshuffle(s, 2) - 0.25 * CMatrix::Identity(4, 4)) <= 1e-14);
}

TEST_CASE("reshuffle of the dephasing generator") {
  // gamma (Z kron Z - I4) in column stacking; K has <psi|K|psi> = -gamma
  const double gamma = 0.7;
  const CMatrix z = pauli_z();
  const CMatrix s = gamma * (kron(z, z) - CMatrix::Identity(4, 4));
  const CMatrix k = reshuffle(s, 2);
  const CVector psi = max_entangled_ket(2);
  CHECK((psi.adjoint() * k * psi)(0).real() == doctest::Approx(-gamma));
  const RVector ev = herm_eigvalues(k);
  CHECK(ev(ev.size() - 1) == doctest::Approx(gamma));
}

TEST_CASE("reshuffle is linear and inverts exactly") {
  std::mt19937_64 rng(23);
  const CMatrix s1 = random_complex(9, 9, rng);
  const CMatrix s2 = random_complex(9, 9, rng);
  CHECK(max_abs(unreshuffle(reshuffle(s1, 3), 3) - s1) <= 1e-14);
  CHECK(max_abs(reshuffle(s1 + 2.0 * s2, 3) - reshuffle(s1, 3) - 2.0 * reshuffle(s2, 3)) <=
        1e-13);
  CHECK_THROWS_AS(reshuffle(s1, 2), DimensionError);
}

TEST_CASE("subsystem swap and partial traces are consistent") {
  std::mt19937_64 rng(29);
  const CMatrix m = random_hermitian(4, rng);
  const CMatrix sw = swap_subsystems(m, 2, 2);
  CHECK(max_abs(swap_subsystems(sw, 2, 2) - m) == 0.0);
  CHECK(max_abs(partial_trace_first(m, 2, 2) - partial_trace_second(sw, 2, 2)) <= 1e-14);
}
