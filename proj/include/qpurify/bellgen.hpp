#pragma once

#include <string>
#include <vector>

#include "qpurify/bell.hpp"
#include "qpurify/circuit.hpp"
#include "qpurify/matrix.hpp"

namespace qpurify::bellgen {

enum class Entangler { ISwap, SqrtSwap };

/// Single-interaction Bell preparation: a two-qubit product input, exactly
/// one entangling gate, and a short post-rotation list.  Input states are
/// stored abstractly; prep_from_zero lists the rotations that produce them
/// from |00> (one parallel layer).
struct BellRecipe {
  bell::BellLabel target = bell::BellLabel::PhiPlus;
  Entangler entangler = Entangler::ISwap;
  Eigen::Vector2cd input1, input2;
  struct Rotation {
    gates::Axis axis;
    double angle;
    int qubit;  // 0 or 1
  };
  std::vector<Rotation> prep_from_zero;  // |00> -> input product state
  std::vector<Rotation> post;
};

BellRecipe recipe_for(bell::BellLabel target, Entangler entangler);

struct Execution {
  ComplexVector state;       // 4-dim output
  double fidelity_to_target; // |<target|state>|^2
};

Execution execute_recipe(const BellRecipe& r);

/// Number of sequential single-qubit rotation layers when starting from
/// |00>, counting rotations on distinct qubits as one layer (this is the
/// quantity the tau_rot budgets price).
int rotation_slots_from_zero(const BellRecipe& r);

int two_qubit_gate_count(const BellRecipe& r);

/// Recipe as a one-pair circuit in the text format (wires A0 = qubit 1,
/// B0 = qubit 2), including the |00> preparation rotations.
rewrite::Circuit to_circuit(const BellRecipe& r);

std::string describe(const BellRecipe& r);

}  // namespace qpurify::bellgen
