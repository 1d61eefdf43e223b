#include "qpurify/bellgen.hpp"

#include <cmath>

#include "qpurify/nqubit.hpp"

namespace qpurify::bellgen {

using bell::BellLabel;
using gates::Axis;

namespace {

const double kQ = M_PI / 2;

Eigen::Vector2cd ket_y(int sign) {
  Eigen::Vector2cd v;
  v << Complex(1, 0), Complex(0, sign);
  return v / std::sqrt(2.0);
}

Eigen::Vector2cd ket_x(int sign) {
  Eigen::Vector2cd v;
  v << Complex(1, 0), Complex(sign, 0);
  return v / std::sqrt(2.0);
}

}  // namespace

BellRecipe recipe_for(BellLabel target, Entangler entangler) {
  BellRecipe r;
  r.target = target;
  r.entangler = entangler;
  if (entangler == Entangler::ISwap) {
    // one iSWAP on |+-y,-y> followed by a single y quarter turn on qubit 2
    int in1_sign = 0, post_sign = 0;
    switch (target) {
      case BellLabel::PhiPlus: in1_sign = +1; post_sign = -1; break;
      case BellLabel::PhiMinus: in1_sign = -1; post_sign = +1; break;
      case BellLabel::PsiPlus: in1_sign = -1; post_sign = -1; break;
      case BellLabel::PsiMinus: in1_sign = +1; post_sign = +1; break;
    }
    r.input1 = ket_y(in1_sign);
    r.input2 = ket_y(-1);
    r.prep_from_zero = {{Axis::X, in1_sign * kQ, 0}, {Axis::X, -kQ, 1}};
    r.post = {{Axis::Y, post_sign * kQ, 1}};
  } else {
    // one sqrt(SWAP) on |+x,-x>; z quarter turn on qubit 1, y then x on qubit 2
    int z_sign = 0, x_sign = 0;
    switch (target) {
      case BellLabel::PhiPlus: z_sign = +1; x_sign = -1; break;
      case BellLabel::PhiMinus: z_sign = -1; x_sign = -1; break;
      case BellLabel::PsiPlus: z_sign = +1; x_sign = +1; break;
      case BellLabel::PsiMinus: z_sign = -1; x_sign = +1; break;
    }
    r.input1 = ket_x(+1);
    r.input2 = ket_x(-1);
    r.prep_from_zero = {{Axis::Y, -kQ, 0}, {Axis::Y, +kQ, 1}};
    r.post = {{Axis::Z, z_sign * kQ, 0}, {Axis::Y, kQ, 1}, {Axis::X, x_sign * kQ, 1}};
  }
  return r;
}

Execution execute_recipe(const BellRecipe& r) {
  ComplexVector psi(4);
  psi << r.input1(0) * r.input2(0), r.input1(0) * r.input2(1),
      r.input1(1) * r.input2(0), r.input1(1) * r.input2(1);
  const ComplexMatrix ent =
      r.entangler == Entangler::ISwap ? gates::iswap() : gates::sqrt_swap();
  psi = ent * psi;
  for (const auto& rot : r.post)
    psi = gates::embed_single(gates::rotation(rot.axis, rot.angle), rot.qubit, 2) * psi;
  Execution e;
  e.state = psi;
  const Complex ov = bell::bell_vector(r.target).dot(psi);
  e.fidelity_to_target = std::norm(ov);
  return e;
}

int rotation_slots_from_zero(const BellRecipe& r) {
  int busy[2] = {0, 0};
  for (const auto& rot : r.prep_from_zero) {
    busy[rot.qubit] += 1;
  }
  int prep = std::max(busy[0], busy[1]);
  int layer[2] = {prep, prep};
  int slots = prep;
  for (const auto& rot : r.post) {
    layer[rot.qubit] += 1;
    slots = std::max(slots, layer[rot.qubit]);
  }
  return slots;
}

int two_qubit_gate_count(const BellRecipe&) { return 1; }

rewrite::Circuit to_circuit(const BellRecipe& r) {
  using rewrite::Wire;
  using rewrite::WireGate;
  rewrite::Circuit c;
  c.pair_count = 1;
  auto wire = [](int qubit) {
    return Wire{qubit == 0 ? bell::Party::Alice : bell::Party::Bob, 0};
  };
  auto push_rot = [&](const BellRecipe::Rotation& rot) {
    WireGate g;
    g.kind = WireGate::Kind::Rot;
    g.a = wire(rot.qubit);
    g.axis = rot.axis;
    g.param = rot.angle;
    c.ops.emplace_back(g);
  };
  for (const auto& rot : r.prep_from_zero) push_rot(rot);
  WireGate ent;
  ent.kind = r.entangler == Entangler::ISwap ? WireGate::Kind::ISwap
                                             : WireGate::Kind::SqrtSwap;
  ent.a = wire(0);
  ent.b = wire(1);
  c.ops.emplace_back(ent);
  for (const auto& rot : r.post) push_rot(rot);
  c.validate();
  return c;
}

std::string describe(const BellRecipe& r) {
  std::string s = "target " + bell::to_string(r.target) + ", ";
  s += r.entangler == Entangler::ISwap ? "iSWAP" : "sqrt(SWAP)";
  s += ", post rotations: " + std::to_string(r.post.size());
  s += ", rotation slots from |00>: " + std::to_string(rotation_slots_from_zero(r));
  return s;
}

}  // namespace qpurify::bellgen
