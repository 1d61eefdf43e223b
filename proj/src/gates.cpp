#include "qpurify/gates.hpp"

#include <cmath>

namespace qpurify::gates {

namespace {
const Complex kI{0.0, 1.0};

bool finite(double x) { return std::isfinite(x); }
}  // namespace

ComplexMatrix pauli(Axis axis) {
  ComplexMatrix m(2, 2);
  switch (axis) {
    case Axis::X: m << 0, 1, 1, 0; break;
    case Axis::Y: m << 0, -kI, kI, 0; break;
    case Axis::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

ComplexMatrix rotation(Axis axis, double angle) {
  if (!finite(angle)) throw std::invalid_argument("rotation: non-finite angle");
  return std::cos(angle / 2) * ComplexMatrix::Identity(2, 2) +
         kI * std::sin(angle / 2) * pauli(axis);
}

ComplexMatrix hadamard() {
  ComplexMatrix m(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

ComplexMatrix xy_evolution(double theta) {
  if (!finite(theta)) throw std::invalid_argument("xy_evolution: non-finite theta");
  ComplexMatrix m = ComplexMatrix::Identity(4, 4);
  const Complex c{std::cos(theta), 0.0};
  const Complex is = kI * std::sin(theta);
  m(1, 1) = c; m(1, 2) = is;
  m(2, 1) = is; m(2, 2) = c;
  return m;
}

ComplexMatrix heisenberg_evolution(double phi) {
  if (!finite(phi)) throw std::invalid_argument("heisenberg_evolution: non-finite phi");
  // Eigenbasis: triplet at +J_H t, singlet at -3 J_H t.
  const Complex et = std::exp(kI * phi);
  const Complex es = std::exp(-3.0 * kI * phi);
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = et;
  m(3, 3) = et;
  m(1, 1) = m(2, 2) = (et + es) / 2.0;
  m(1, 2) = m(2, 1) = (et - es) / 2.0;
  return m;
}

ComplexMatrix iswap() { return xy_evolution(M_PI / 2); }

ComplexMatrix swap_gate() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(3, 3) = 1;
  m(1, 2) = m(2, 1) = 1;
  return m;
}

ComplexMatrix cnot() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = 1;
  m(2, 3) = m(3, 2) = 1;
  return m;
}

ComplexMatrix cpf() {
  ComplexMatrix m = ComplexMatrix::Identity(4, 4);
  m(3, 3) = -1;
  return m;
}

ComplexMatrix sqrt_swap() {
  const Complex a = Complex(1, -1) / 2.0;  // diagonal of the middle block
  const Complex b = Complex(1, 1) / 2.0;
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(3, 3) = 1;
  m(1, 1) = m(2, 2) = a;
  m(1, 2) = m(2, 1) = b;
  return m;
}

ComplexMatrix embed_single(const ComplexMatrix& u, int qubit, int n_qubits) {
  if (u.rows() != 2 || u.cols() != 2)
    throw std::invalid_argument("embed_single: gate must be 2x2");
  if (n_qubits < 1 || qubit < 0 || qubit >= n_qubits)
    throw std::invalid_argument("embed_single: qubit index out of range");
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int q = 0; q < n_qubits; ++q)
    out = kron(out, q == qubit ? u : ComplexMatrix(ComplexMatrix::Identity(2, 2)));
  return out;
}

ComplexMatrix build_gate(const GateSpec& spec) {
  using K = GateSpec::Kind;
  const bool two_qubit = spec.kind != K::Rot && spec.kind != K::Hadamard;
  if (two_qubit && spec.arity != 2)
    throw std::invalid_argument("build_gate: two-qubit kind requires arity 2");
  switch (spec.kind) {
    case K::XYEvolve: return xy_evolution(spec.angle);
    case K::ISwap: return iswap();
    case K::Swap: return swap_gate();
    case K::Cnot: return cnot();
    case K::Cpf: return cpf();
    case K::SqrtSwap: return sqrt_swap();
    case K::HeisenbergEvolve: return heisenberg_evolution(spec.angle);
    case K::Rot: return embed_single(rotation(spec.axis, spec.angle), spec.qubit, spec.arity);
    case K::Hadamard: return embed_single(hadamard(), spec.qubit, spec.arity);
  }
  throw std::invalid_argument("build_gate: unknown kind");
}

ComplexMatrix compose(std::span<const ComplexMatrix> gates) {
  if (gates.empty()) throw std::invalid_argument("compose: empty gate list");
  ComplexMatrix out = gates[0];
  for (size_t k = 1; k < gates.size(); ++k) {
    if (gates[k].rows() != out.cols() || gates[k].rows() != gates[k].cols())
      throw std::invalid_argument("compose: dimension mismatch");
    out = out * gates[k];
  }
  return out;
}

ComplexMatrix compose(std::initializer_list<ComplexMatrix> gates) {
  std::vector<ComplexMatrix> v(gates);
  return compose(std::span<const ComplexMatrix>(v));
}

PhaseMatch equal_up_to_global_phase(const ComplexMatrix& a, const ComplexMatrix& b,
                                    double tol) {
  return match_up_to_phase(a, b, tol);
}

const char* identity_name(Identity id) {
  switch (id) {
    case Identity::CnotFromIswap: return "CNOT_FROM_ISWAP";
    case Identity::CpfFromSqrtSwap: return "CPF_FROM_SQRTSWAP";
    case Identity::IswapSwapDiag: return "ISWAP_SWAP_DIAG";
    case Identity::CpfFromIswap: return "CPF_FROM_ISWAP";
    case Identity::SwapCnotFromIswap: return "SWAPCNOT_FROM_ISWAP";
    case Identity::CnotReversed: return "CNOT_REVERSED";
  }
  return "?";
}

std::vector<Identity> all_identities() {
  return {Identity::CnotFromIswap,     Identity::CpfFromSqrtSwap,
          Identity::IswapSwapDiag,     Identity::CpfFromIswap,
          Identity::SwapCnotFromIswap, Identity::CnotReversed};
}

namespace {

ComplexMatrix rot1(Axis a, double ang) { return embed_single(rotation(a, ang), 0, 2); }
ComplexMatrix rot2(Axis a, double ang) { return embed_single(rotation(a, ang), 1, 2); }
ComplexMatrix had1() { return embed_single(hadamard(), 0, 2); }
ComplexMatrix had2() { return embed_single(hadamard(), 1, 2); }

ComplexMatrix phase_diag() {
  Eigen::Vector4cd d;
  d << 1, Complex(0, 1), Complex(0, 1), 1;
  return d.asDiagonal();
}

}  // namespace

IdentityCheck check_identity(Identity id, double tol) {
  const double q = M_PI / 2;  // quarter turn
  ComplexMatrix lhs, rhs;
  switch (id) {
    case Identity::CnotFromIswap:
      lhs = cnot();
      rhs = compose({rot1(Axis::Z, -q), rot2(Axis::X, q), rot2(Axis::Z, q), iswap(),
                     rot1(Axis::X, -q), iswap(), rot2(Axis::Z, q)});
      break;
    case Identity::CpfFromSqrtSwap:
      lhs = cpf();
      rhs = std::exp(Complex(0, -M_PI / 2)) *
            compose({rot1(Axis::Z, q), rot2(Axis::Z, -q), sqrt_swap(),
                     rot1(Axis::Z, -2 * q), sqrt_swap()});
      break;
    case Identity::IswapSwapDiag:
      lhs = iswap();
      rhs = swap_gate() * phase_diag();
      break;
    case Identity::CpfFromIswap:
      lhs = cpf();
      rhs = compose({phase_diag(), rot1(Axis::Z, q), rot2(Axis::Z, q)});
      break;
    case Identity::SwapCnotFromIswap:
      lhs = swap_gate() * cnot();
      rhs = compose({had1(), iswap(), rot1(Axis::Z, q), rot2(Axis::Z, q), had2()});
      break;
    case Identity::CnotReversed:
      lhs = cnot();
      rhs = compose({had2(), rot1(Axis::Z, q), rot2(Axis::Z, q), iswap(), had1(),
                     swap_gate()});
      break;
    default:
      throw std::invalid_argument("check_identity: unknown identity");
  }
  PhaseMatch m = match_up_to_phase(lhs, rhs, tol);
  IdentityCheck c;
  c.holds = m.equal;
  c.residual = m.residual;
  c.phase = m.phase.value_or(Complex{1.0, 0.0});
  return c;
}

}  // namespace qpurify::gates
