#pragma once

#include <span>
#include <string>
#include <vector>

#include "qpurify/matrix.hpp"

namespace qpurify::gates {

// Two-qubit basis order |00>,|01>,|10>,|11>, qubit 1 is the left (most
// significant) factor.  |0> is spin-down, |1> is spin-up; Pauli matrices are
// indexed by the computational basis (sigma_z|0> = +|0>).

enum class Axis { X, Y, Z };

ComplexMatrix pauli(Axis axis);

/// exp(+i * angle/2 * sigma_axis).  Note the sign: rotation(Z, pi/2) is the
/// e^{i pi sigma_z / 4} phase gate used throughout the gate decompositions.
ComplexMatrix rotation(Axis axis, double angle);

ComplexMatrix hadamard();

/// XY evolution U(theta) with theta = 2Jt: diag blocks 1, and
/// [[cos th, i sin th],[i sin th, cos th]] on span{|01>,|10>}.
/// theta = pi/2 gives the iSWAP gate.
ComplexMatrix xy_evolution(double theta);

/// Isotropic Heisenberg evolution exp(i phi (XX+YY+ZZ)), phi = J_H t.
/// phi = pi/8 gives sqrt(SWAP) up to the global phase e^{i pi/8}.
ComplexMatrix heisenberg_evolution(double phi);

ComplexMatrix iswap();
ComplexMatrix swap_gate();
ComplexMatrix cnot();  // control = qubit 1
ComplexMatrix cpf();   // diag(1,1,1,-1)

/// Square root of SWAP: triplet eigenvalue 1, singlet eigenvalue -i, so that
/// sqrt_swap()^2 == swap_gate() exactly and the CPF decomposition from two
/// sqrt(SWAP) pulses closes.  Equals heisenberg_evolution(pi/8) up to phase.
ComplexMatrix sqrt_swap();

/// Embeds a single-qubit gate at `qubit` (0-based, 0 = most significant) of
/// an n-qubit register.
ComplexMatrix embed_single(const ComplexMatrix& u, int qubit, int n_qubits);

struct GateSpec {
  enum class Kind {
    XYEvolve,          // angle = theta = 2Jt
    ISwap,
    Swap,
    Cnot,
    Cpf,
    SqrtSwap,
    HeisenbergEvolve,  // angle = phi = J_H t
    Rot,               // rotation(axis, angle) on `qubit`
    Hadamard,          // on `qubit`
  };
  Kind kind = Kind::ISwap;
  double angle = 0.0;
  Axis axis = Axis::Z;
  int qubit = 0;
  int arity = 2;  // register width; two-qubit kinds require arity == 2
};

ComplexMatrix build_gate(const GateSpec& spec);

/// Product applied right-to-left: the last element acts first on states.
ComplexMatrix compose(std::span<const ComplexMatrix> gates);
ComplexMatrix compose(std::initializer_list<ComplexMatrix> gates);

PhaseMatch equal_up_to_global_phase(const ComplexMatrix& a, const ComplexMatrix& b,
                                    double tol = kGateTol);

enum class Identity {
  CnotFromIswap,      // CNOT from two iSWAPs and four rotations
  CpfFromSqrtSwap,    // CPF from two sqrt(SWAP) pulses
  IswapSwapDiag,      // iSWAP = SWAP diag(1,i,i,1)
  CpfFromIswap,       // CPF = diag(1,i,i,1) P1- P2-
  SwapCnotFromIswap,  // SWAP.CNOT = H1 iSWAP P1- P2- H2
  CnotReversed,       // CNOT = H2 P1- P2- iSWAP H1 SWAP
};

const char* identity_name(Identity id);
std::vector<Identity> all_identities();

struct IdentityCheck {
  bool holds = false;
  double residual = 0.0;
  Complex phase{1.0, 0.0};  // fitted global phase (lhs = phase * rhs)
};

/// Builds both sides of the named identity from primitives and reports the
/// max elementwise residual after a global phase fit.
IdentityCheck check_identity(Identity id, double tol = kGateTol);

}  // namespace qpurify::gates
