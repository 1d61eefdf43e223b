#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qpurify/bell.hpp"
#include "qpurify/gates.hpp"
#include "qpurify/matrix.hpp"

namespace qpurify::rewrite {

using bell::Party;

// Wire-order contract (repo-wide): with n pairs, qubit(party, pair) =
// (party == Alice ? 0 : n) + pair; qubit 0 is the most significant bit.

struct Wire {
  Party party = Party::Alice;
  int pair = 0;
  friend bool operator==(const Wire&, const Wire&) = default;
};

std::string to_string(const Wire& w);

/// BCNOT / BSWAP / BiSWAP: the same local two-qubit gate applied by both
/// parties across the source and target pairs.
struct BilateralGate {
  enum class Kind { BCnot, BSwap, BiSwap };
  Kind kind = Kind::BCnot;
  int src = 0;
  int tgt = 1;
  friend bool operator==(const BilateralGate&, const BilateralGate&) = default;
};

/// Quarter-turn bilateral rotation on one pair (both parties), in the
/// conventions of bell::bilateral_qubit_gate.
struct BilateralRot {
  gates::Axis axis = gates::Axis::X;
  int sign = +1;
  int pair = 0;
  friend bool operator==(const BilateralRot&, const BilateralRot&) = default;
};

/// Unilateral pi rotation of one party's qubit of a pair.
struct UnilateralPi {
  gates::Axis axis = gates::Axis::X;
  Party party = Party::Alice;
  int pair = 0;
  friend bool operator==(const UnilateralPi&, const UnilateralPi&) = default;
};

/// Classical Pauli-frame record: a dropped coeff * (sigma_axis x sigma_axis)
/// on one pair.  Not a gate; composed exactly into unitary comparisons and
/// applied as an outcome relabel by the measurement simulator.
struct PauliFrame {
  gates::Axis axis = gates::Axis::X;
  int pair = 0;
  Complex coeff{1.0, 0.0};
  friend bool operator==(const PauliFrame&, const PauliFrame&) = default;
};

/// A gate at explicit wires (used for recipes and generic circuits).
struct WireGate {
  enum class Kind { ISwap, Swap, Cnot, Cpf, SqrtSwap, XY, Rot, Had };
  Kind kind = Kind::ISwap;
  Wire a, b;
  double param = 0.0;              // XY theta or Rot angle
  gates::Axis axis = gates::Axis::Z;  // Rot only
  friend bool operator==(const WireGate&, const WireGate&) = default;
};

struct MeasureZ {
  Wire w;
  friend bool operator==(const MeasureZ&, const MeasureZ&) = default;
};

using CircuitOp =
    std::variant<BilateralGate, BilateralRot, UnilateralPi, PauliFrame, WireGate, MeasureZ>;

struct Circuit {
  int pair_count = 0;
  std::vector<CircuitOp> ops;
  /// Output bookkeeping permutation: logical pair j's content lives on
  /// physical pair relabel[j].  Empty means identity.
  std::vector<int> relabel;

  std::vector<int> relabel_or_identity() const;
  void validate() const;  // wire ranges, terminal measurements, permutation
  friend bool operator==(const Circuit&, const Circuit&) = default;
};

// ---- text format -----------------------------------------------------------
//
//   PAIRS <n>
//   BCNOT <src> <tgt> | BSWAP <src> <tgt> | BISWAP <src> <tgt>
//   BROT <axis> <+|-> <pair>
//   UNIPI <axis> <A|B> <pair>
//   FRAME <axis> <pair> <re> <im>
//   ISWAP|SWAP|CNOT|CPF|SQSWAP <w1> <w2>
//   XY <w1> <w2> <theta>
//   ROT <w> <axis> <angle>
//   HAD <w>
//   MEASZ <w>
//   RELABEL <p0> <p1> ...
//
// Wires print as A0, B2.  '#' starts a comment line.  Doubles round-trip
// bit-exactly (printed with %.17g).

std::string to_text(const Circuit& c);
Circuit circuit_from_text(const std::string& text);  // throws with line number

// ---- semantics -------------------------------------------------------------

int qubit_index(const Circuit& c, const Wire& w);

/// Full unitary of a measurement-free circuit, including the output
/// relabeling permutation.  Limited to <= 3 pairs (64-dim).
ComplexMatrix circuit_unitary(const Circuit& c);

/// Unitary of the ops alone (no relabel permutation).
ComplexMatrix ops_unitary(const Circuit& c);

/// Permutation matrix moving physical pair contents back to logical order.
ComplexMatrix relabel_permutation_matrix(const Circuit& c);

struct SplitCircuit {
  Circuit prefix;                // measurement-free
  std::vector<Wire> measured;    // physical wires measured, in order
};
SplitCircuit split_measurements(const Circuit& c);

/// Prepares the given Bell labels on pairs 0..n-1, runs the circuit, and
/// returns the deterministic XOR outcome (Alice xor Bob) of the measured
/// pair's bilateral z measurement.  Returns 0 for a circuit without
/// measurements.  Throws if the outcome is not deterministic.
int simulate_measured_parity(const Circuit& c, const std::vector<bell::BellLabel>& labels);

}  // namespace qpurify::rewrite
