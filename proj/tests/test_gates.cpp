#include <cmath>
#include <random>

#include "doctest.h"
#include "qpurify/gates.hpp"

using namespace qpurify;
using namespace qpurify::gates;

namespace {

const Complex kI{0.0, 1.0};

ComplexMatrix random_unitary(std::mt19937& rng, int dim) {
  std::normal_distribution<double> g;
  ComplexMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(m);
  ComplexMatrix q = qr.householderQ();
  return q;
}

}  // namespace

TEST_CASE("xy evolution endpoints") {
  CHECK(max_abs_diff(xy_evolution(0.0), ComplexMatrix::Identity(4, 4)) < 1e-15);

  ComplexMatrix u = xy_evolution(M_PI / 2);
  ComplexVector v01 = ComplexVector::Zero(4), v10 = ComplexVector::Zero(4);
  v01(1) = 1;
  v10(2) = 1;
  CHECK(std::abs(Complex((u * v01)(2)) - kI) < 1e-15);  // |01> -> i|10>
  CHECK(std::abs(Complex((u * v10)(1)) - kI) < 1e-15);  // |10> -> i|01>
  CHECK(std::abs(Complex((u * v01)(1))) < 1e-15);
  CHECK(max_abs_diff(u, iswap()) == 0.0);

  ComplexMatrix full = xy_evolution(M_PI);
  Eigen::Vector4cd d;
  d << 1, -1, -1, 1;
  CHECK(max_abs_diff(full, ComplexMatrix(d.asDiagonal())) < 1e-15);
}

TEST_CASE("xy evolution is a one-parameter unitary group") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 40; ++k) {
    const double t1 = u(rng), t2 = u(rng);
    CHECK(is_unitary(xy_evolution(t1)));
    CHECK(max_abs_diff(xy_evolution(t1) * xy_evolution(t2), xy_evolution(t1 + t2)) <
          1e-12);
  }
  CHECK_THROWS_AS(xy_evolution(std::nan("")), std::invalid_argument);
}

TEST_CASE("named gate constructors are unitary") {
  for (const ComplexMatrix& m :
       {iswap(), swap_gate(), cnot(), cpf(), sqrt_swap(), hadamard(),
        heisenberg_evolution(0.3), xy_evolution(1.1), rotation(Axis::Y, 0.4)})
    CHECK(is_unitary(m, 1e-12));
}

TEST_CASE("build_gate basics") {
  GateSpec cpf_spec;
  cpf_spec.kind = GateSpec::Kind::Cpf;
  Eigen::Vector4cd d;
  d << 1, 1, 1, -1;
  CHECK(max_abs_diff(build_gate(cpf_spec), ComplexMatrix(d.asDiagonal())) == 0.0);

  GateSpec rot_spec;
  rot_spec.kind = GateSpec::Kind::Rot;
  rot_spec.axis = Axis::Z;
  rot_spec.angle = M_PI / 2;
  rot_spec.qubit = 0;
  ComplexMatrix p1 = build_gate(rot_spec);
  const Complex e = std::exp(kI * (M_PI / 4));
  CHECK(std::abs(p1(0, 0) - e) < 1e-15);
  CHECK(std::abs(p1(1, 1) - e) < 1e-15);
  CHECK(std::abs(p1(2, 2) - std::conj(e)) < 1e-15);
  CHECK(std::abs(p1(3, 3) - std::conj(e)) < 1e-15);

  GateSpec sq;
  sq.kind = GateSpec::Kind::SqrtSwap;
  ComplexMatrix s = build_gate(sq);
  CHECK(max_abs_diff(s * s, swap_gate()) < 1e-15);  // squares to SWAP exactly

  rot_spec.qubit = 5;
  CHECK_THROWS_AS(build_gate(rot_spec), std::invalid_argument);
}

TEST_CASE("sqrt_swap matches the Heisenberg evolution up to phase") {
  auto m = equal_up_to_global_phase(heisenberg_evolution(M_PI / 8), sqrt_swap());
  REQUIRE(m.equal);
  CHECK(std::abs(*m.phase - std::exp(kI * (M_PI / 8))) < 1e-12);
}

TEST_CASE("compose applies right-to-left") {
  ComplexMatrix a = iswap();
  CHECK(max_abs_diff(compose({a}), a) == 0.0);

  ComplexMatrix sq = compose({iswap(), iswap()});
  ComplexVector v01 = ComplexVector::Zero(4);
  v01(1) = 1;
  CHECK(std::abs(Complex((sq * v01)(1)) - Complex(-1.0)) < 1e-15);

  // compose({A,B}) acts as A(B(state)): B first
  ComplexMatrix x0 = embed_single(pauli(Axis::X), 0, 2);
  ComplexVector v00 = ComplexVector::Zero(4);
  v00(0) = 1;
  ComplexVector got = compose({cnot(), x0}) * v00;
  CHECK(std::abs(Complex(got(3)) - Complex(1.0)) < 1e-15);  // |00> -> |10> -> |11>

  ComplexMatrix odd = ComplexMatrix::Identity(2, 2);
  CHECK_THROWS_AS(compose({a, odd}), std::invalid_argument);
}

TEST_CASE("equal_up_to_global_phase fits the phase") {
  ComplexMatrix u = cnot();
  const Complex c = std::exp(kI * (M_PI / 3));
  auto m = equal_up_to_global_phase(ComplexMatrix(c * u), u);
  REQUIRE(m.equal);
  CHECK(std::abs(*m.phase - c) < 1e-14);

  auto n = equal_up_to_global_phase(cnot(), iswap());
  CHECK(!n.equal);
  CHECK(!n.phase.has_value());
}

TEST_CASE("equal_up_to_global_phase is an equivalence relation") {
  std::mt19937 rng(11);
  const double tol = 1e-12;
  for (int k = 0; k < 20; ++k) {
    ComplexMatrix u = random_unitary(rng, 4);
    std::uniform_real_distribution<double> ph(0.0, 2 * M_PI);
    ComplexMatrix v = std::exp(kI * ph(rng)) * u;
    ComplexMatrix w = std::exp(kI * ph(rng)) * v;
    CHECK(equal_up_to_global_phase(u, u, tol).equal);        // reflexive
    CHECK(equal_up_to_global_phase(u, v, tol).equal);
    CHECK(equal_up_to_global_phase(v, u, tol).equal);        // symmetric
    CHECK(equal_up_to_global_phase(u, w, 3 * tol).equal);    // transitive at 3 tol
  }
}

TEST_CASE("all named identities hold") {
  for (Identity id : all_identities()) {
    IdentityCheck c = check_identity(id);
    INFO(identity_name(id), " residual=", c.residual);
    CHECK(c.holds);
    CHECK(c.residual < 1e-12);
    CHECK(std::abs(std::abs(c.phase) - 1.0) < 1e-12);
  }
}

TEST_CASE("identity fitted phases are the expected ones") {
  // phase convention: named gate = phase * composition
  auto phase_of = [](Identity id) { return check_identity(id).phase; };
  CHECK(std::abs(phase_of(Identity::CnotFromIswap) - std::exp(-kI * (M_PI / 4))) < 1e-12);
  CHECK(std::abs(phase_of(Identity::CpfFromSqrtSwap) - Complex(-1.0)) < 1e-12);
  CHECK(std::abs(phase_of(Identity::IswapSwapDiag) - Complex(1.0)) < 1e-12);
  CHECK(std::abs(phase_of(Identity::CpfFromIswap) + kI) < 1e-12);
}
