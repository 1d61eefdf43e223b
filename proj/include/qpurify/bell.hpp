#pragma once

#include <array>
#include <optional>
#include <string>

#include "qpurify/gates.hpp"
#include "qpurify/matrix.hpp"

namespace qpurify::bell {

// Bell basis with |1> = spin-up:
//   Phi+- = (|11> +- |00>)/sqrt2,  Psi+- = (|10> +- |01>)/sqrt2.
// Bit encoding (amplitude bit, phase bit): Phi+=00, Psi+=10, Phi-=01, Psi-=11.
//
// Two shared pairs live on four qubits (a_S, a_T, b_S, b_T): a_* are Alice's
// source/target qubits, b_* Bob's.  Sixteen-dim basis index is
// 8 a_S + 4 a_T + 2 b_S + b_T (bit 1 = |1>), i.e. Alice's qubits first.  This
// is the wire-order contract used repo-wide: qubit(pair, party) = party*n + pair.

enum class BellLabel { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };

constexpr std::array<BellLabel, 4> kAllBells = {
    BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus};

/// 2-bit encoding: amplitude bit (Psi = 1) then phase bit (minus = 1).
int bell_bits(BellLabel l);
BellLabel bell_from_bits(int bits);
std::string to_string(BellLabel l);
std::optional<BellLabel> bell_from_string(const std::string& s);

ComplexVector bell_vector(BellLabel l);

struct PhasedBell {
  BellLabel label = BellLabel::PhiPlus;
  Complex phase{1.0, 0.0};
};

struct BellProduct {
  PhasedBell source;       // the single product phase is carried on the S slot
  BellLabel target = BellLabel::PhiPlus;
};

using TwoPairState = ComplexVector;  // 16-dim, normalized

enum class Party { Alice, Bob };
enum class PairSlot { Source = 0, Target = 1 };

/// |bell_S> x |bell_T> in the four-qubit ordering above.
TwoPairState bell_pair_product(BellLabel s, BellLabel t);
TwoPairState bell_pair_product(const PhasedBell& s, BellLabel t);

struct BilateralOp {
  enum class Kind { RotX, RotY, RotZ, BiSwap, BSwap, UnilateralPi };
  enum class Selector { S, T, Both };
  Kind kind = Kind::RotX;
  int sign = +1;                       // +-1 for the rotation kinds
  Selector selector = Selector::S;     // BiSwap/BSwap act across S and T
  gates::Axis axis = gates::Axis::X;   // UnilateralPi only
  Party party = Party::Alice;          // UnilateralPi only
};

/// Per-qubit 2x2 for the bilateral quarter-turn rotations B^x_+-, B^y_+-,
/// B^z_+-, with the phase conventions that make the rotation truth table
/// literal (B^z carries e^{-+ i pi/2} relative to the bare z rotation).
ComplexMatrix bilateral_qubit_gate(BilateralOp::Kind kind, int sign);

/// 4x4 action of a bilateral rotation on one shared pair.
ComplexMatrix bilateral_pair_gate(BilateralOp::Kind kind, int sign);

/// Full 16x16 unitary of the op on the two-pair register.
ComplexMatrix bilateral_unitary(const BilateralOp& op);

TwoPairState apply_bilateral(const BilateralOp& op, const TwoPairState& state);

struct ProductClassification {
  bool is_product = false;
  BellProduct product;  // valid only when is_product
};

/// Matches the state against the 16 Bell x Bell basis vectors; the overall
/// phase is reported on the S slot, the T phase is fixed to +1.
ProductClassification classify_bell_product(const TwoPairState& state,
                                            double tol = 1e-9);

// ---- truth tables ---------------------------------------------------------

enum class TableKind { Rotations, DeutschReplacement, Bennett };

/// 6 rotations (Bx+, Bx-, By+, By-, Bz+, Bz-) applied to each Bell state.
struct RotationTable {
  static constexpr std::array<const char*, 6> kOpNames = {"Bx+", "Bx-", "By+",
                                                          "By-", "Bz+", "Bz-"};
  std::array<std::array<PhasedBell, 4>, 6> entries;  // [op][input bell]
};

/// Per two-pair input, the phased product after each step of the
/// BCNOT -> BiSWAP replacement: (i) By_{T+}, (ii) Bz_{S+} Bz_{T+},
/// (iii) BiSWAP, (iv) By_{S-}.
struct DeutschTable {
  struct Row {
    BellLabel s_in, t_in;
    std::array<BellProduct, 4> steps;
  };
  std::array<Row, 16> rows;
};

/// Per two-pair input: state after (i) BiSWAP, then branch (ii-a)
/// Bx_{S+} Bx_{T+} and branch (ii-b) By_{S+} By_{T+}.
struct BennettTable {
  struct Row {
    BellLabel s_in, t_in;
    BellProduct after_biswap, branch_a, branch_b;
  };
  std::array<Row, 16> rows;
};

RotationTable generate_rotation_table();
DeutschTable generate_deutsch_table();
BennettTable generate_bennett_table();

/// Frozen reference data the generators are checked against.
const RotationTable& rotation_table_reference();
const DeutschTable& deutsch_table_reference();
const BennettTable& bennett_table_reference();

/// 16x16 operator of the bilateral-CNOT truth-table action (all-plus
/// coefficients on the Bell-product basis): source keeps its amplitude bit
/// and absorbs the target's phase bit, target absorbs the source's amplitude
/// bit.  Equals CNOT x CNOT conjugated by the bilateral pi-x sign fix on the
/// source pair.
ComplexMatrix bcnot_truth_operator();

/// CNOT(a_S->a_T) x CNOT(b_S->b_T) as a 16x16 matrix.
ComplexMatrix bcnot_unitary();
ComplexMatrix bswap_unitary();

// ---- serialization --------------------------------------------------------

std::string to_json(const RotationTable& t);
std::string to_json(const DeutschTable& t);
std::string to_json(const BennettTable& t);
std::string to_text(const RotationTable& t);
std::string to_text(const DeutschTable& t);
std::string to_text(const BennettTable& t);

RotationTable rotation_table_from_json(const std::string& json_text);
DeutschTable deutsch_table_from_json(const std::string& json_text);
BennettTable bennett_table_from_json(const std::string& json_text);

/// "" when equal, otherwise a description naming the first mismatching row.
std::string compare(const RotationTable& got, const RotationTable& want, double tol = 1e-9);
std::string compare(const DeutschTable& got, const DeutschTable& want, double tol = 1e-9);
std::string compare(const BennettTable& got, const BennettTable& want, double tol = 1e-9);

std::string phase_to_string(const Complex& c);

}  // namespace qpurify::bell
