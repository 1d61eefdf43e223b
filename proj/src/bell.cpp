#include "qpurify/bell.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "qpurify/nqubit.hpp"

namespace qpurify::bell {

namespace {
const Complex kI{0.0, 1.0};

// qubit positions in the (a_S, a_T, b_S, b_T) register
constexpr int kAS = 0, kAT = 1, kBS = 2, kBT = 3;

int qubit_index(Party party, PairSlot slot) {
  return (party == Party::Alice ? 0 : 2) + (slot == PairSlot::Source ? 0 : 1);
}
}  // namespace

int bell_bits(BellLabel l) {
  switch (l) {
    case BellLabel::PhiPlus: return 0b00;
    case BellLabel::PsiPlus: return 0b10;
    case BellLabel::PhiMinus: return 0b01;
    case BellLabel::PsiMinus: return 0b11;
  }
  throw std::invalid_argument("bell_bits: bad label");
}

BellLabel bell_from_bits(int bits) {
  switch (bits & 3) {
    case 0b00: return BellLabel::PhiPlus;
    case 0b10: return BellLabel::PsiPlus;
    case 0b01: return BellLabel::PhiMinus;
    default: return BellLabel::PsiMinus;
  }
}

std::string to_string(BellLabel l) {
  switch (l) {
    case BellLabel::PhiPlus: return "Phi+";
    case BellLabel::PhiMinus: return "Phi-";
    case BellLabel::PsiPlus: return "Psi+";
    case BellLabel::PsiMinus: return "Psi-";
  }
  return "?";
}

std::optional<BellLabel> bell_from_string(const std::string& s) {
  for (BellLabel l : kAllBells)
    if (to_string(l) == s) return l;
  return std::nullopt;
}

ComplexVector bell_vector(BellLabel l) {
  const double s = 1.0 / std::sqrt(2.0);
  ComplexVector v = ComplexVector::Zero(4);
  switch (l) {
    case BellLabel::PhiPlus: v(3) = s; v(0) = s; break;
    case BellLabel::PhiMinus: v(3) = s; v(0) = -s; break;
    case BellLabel::PsiPlus: v(2) = s; v(1) = s; break;
    case BellLabel::PsiMinus: v(2) = s; v(1) = -s; break;
  }
  return v;
}

TwoPairState bell_pair_product(BellLabel s, BellLabel t) {
  ComplexVector vs = bell_vector(s), vt = bell_vector(t);
  TwoPairState v = TwoPairState::Zero(16);
  for (int is = 0; is < 4; ++is) {
    const int a_s = is >> 1, b_s = is & 1;
    for (int it = 0; it < 4; ++it) {
      const int a_t = it >> 1, b_t = it & 1;
      v(8 * a_s + 4 * a_t + 2 * b_s + b_t) = vs(is) * vt(it);
    }
  }
  return v;
}

TwoPairState bell_pair_product(const PhasedBell& s, BellLabel t) {
  return s.phase * bell_pair_product(s.label, t);
}

ComplexMatrix bilateral_qubit_gate(BilateralOp::Kind kind, int sign) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("bilateral_qubit_gate: sign must be +-1");
  const double q = sign * M_PI / 2;
  switch (kind) {
    case BilateralOp::Kind::RotX:
      return gates::rotation(gates::Axis::X, q);
    case BilateralOp::Kind::RotY:
      // spin-frame y quarter turn; makes the rotation truth table literal
      return gates::rotation(gates::Axis::Y, -q);
    case BilateralOp::Kind::RotZ: {
      // z quarter turn with the phase fixed so Phi+ <-> Phi- map with
      // coefficient 1 and Psi+- pick up -+i
      ComplexMatrix m = ComplexMatrix::Identity(2, 2);
      m(0, 0) = Complex(0.0, -static_cast<double>(sign));
      return m;
    }
    default:
      throw std::invalid_argument("bilateral_qubit_gate: not a rotation kind");
  }
}

ComplexMatrix bilateral_pair_gate(BilateralOp::Kind kind, int sign) {
  ComplexMatrix u = bilateral_qubit_gate(kind, sign);
  return kron(u, u);
}

ComplexMatrix bilateral_unitary(const BilateralOp& op) {
  using K = BilateralOp::Kind;
  const int n = 4;
  switch (op.kind) {
    case K::RotX:
    case K::RotY:
    case K::RotZ: {
      ComplexMatrix u = bilateral_qubit_gate(op.kind, op.sign);
      ComplexMatrix out = ComplexMatrix::Identity(16, 16);
      const bool on_s = op.selector != BilateralOp::Selector::T;
      const bool on_t = op.selector != BilateralOp::Selector::S;
      if (on_s) out = embed_gate(u, {kAS}, n) * embed_gate(u, {kBS}, n) * out;
      if (on_t) out = embed_gate(u, {kAT}, n) * embed_gate(u, {kBT}, n) * out;
      return out;
    }
    case K::BiSwap:
      return embed_gate(gates::iswap(), {kAS, kAT}, n) *
             embed_gate(gates::iswap(), {kBS, kBT}, n);
    case K::BSwap:
      return embed_gate(gates::swap_gate(), {kAS, kAT}, n) *
             embed_gate(gates::swap_gate(), {kBS, kBT}, n);
    case K::UnilateralPi: {
      ComplexMatrix u = gates::rotation(op.axis, M_PI);
      ComplexMatrix out = ComplexMatrix::Identity(16, 16);
      const bool on_s = op.selector != BilateralOp::Selector::T;
      const bool on_t = op.selector != BilateralOp::Selector::S;
      if (on_s) out = embed_gate(u, {qubit_index(op.party, PairSlot::Source)}, n) * out;
      if (on_t) out = embed_gate(u, {qubit_index(op.party, PairSlot::Target)}, n) * out;
      return out;
    }
  }
  throw std::invalid_argument("bilateral_unitary: bad op");
}

TwoPairState apply_bilateral(const BilateralOp& op, const TwoPairState& state) {
  if (state.size() != 16) throw std::invalid_argument("apply_bilateral: need 16-dim state");
  return bilateral_unitary(op) * state;
}

ProductClassification classify_bell_product(const TwoPairState& state, double tol) {
  ProductClassification out;
  if (state.size() != 16) throw std::invalid_argument("classify_bell_product: need 16-dim");
  for (BellLabel s : kAllBells) {
    for (BellLabel t : kAllBells) {
      const Complex ov = bell_pair_product(s, t).dot(state);  // <basis|state>
      if (std::abs(std::abs(ov) - 1.0) < tol) {
        out.is_product = true;
        out.product.source = PhasedBell{s, ov / std::abs(ov)};
        out.product.target = t;
        return out;
      }
    }
  }
  return out;
}

// ---- table generation -----------------------------------------------------

namespace {

BilateralOp rot_op(BilateralOp::Kind kind, int sign, BilateralOp::Selector sel) {
  BilateralOp op;
  op.kind = kind;
  op.sign = sign;
  op.selector = sel;
  return op;
}

BellProduct classify_or_throw(const TwoPairState& v, const char* where) {
  ProductClassification c = classify_bell_product(v);
  if (!c.is_product) throw std::runtime_error(std::string(where) + ": not a Bell product");
  return c.product;
}

}  // namespace

RotationTable generate_rotation_table() {
  RotationTable t;
  const std::array<std::pair<BilateralOp::Kind, int>, 6> ops = {{
      {BilateralOp::Kind::RotX, +1},
      {BilateralOp::Kind::RotX, -1},
      {BilateralOp::Kind::RotY, +1},
      {BilateralOp::Kind::RotY, -1},
      {BilateralOp::Kind::RotZ, +1},
      {BilateralOp::Kind::RotZ, -1},
  }};
  for (size_t k = 0; k < ops.size(); ++k) {
    ComplexMatrix u = bilateral_pair_gate(ops[k].first, ops[k].second);
    for (int i = 0; i < 4; ++i) {
      ComplexVector v = u * bell_vector(kAllBells[i]);
      PhasedBell found;
      bool ok = false;
      for (BellLabel l : kAllBells) {
        const Complex ov = bell_vector(l).dot(v);
        if (std::abs(std::abs(ov) - 1.0) < 1e-9) {
          found = PhasedBell{l, ov / std::abs(ov)};
          ok = true;
          break;
        }
      }
      if (!ok) throw std::runtime_error("rotation table: output not a Bell state");
      t.entries[k][i] = found;
    }
  }
  return t;
}

DeutschTable generate_deutsch_table() {
  DeutschTable t;
  const std::array<BilateralOp, 4> steps = {
      rot_op(BilateralOp::Kind::RotY, +1, BilateralOp::Selector::T),
      rot_op(BilateralOp::Kind::RotZ, +1, BilateralOp::Selector::Both),
      BilateralOp{BilateralOp::Kind::BiSwap},
      rot_op(BilateralOp::Kind::RotY, -1, BilateralOp::Selector::S),
  };
  int r = 0;
  for (BellLabel s : kAllBells) {
    for (BellLabel tl : kAllBells) {
      DeutschTable::Row row;
      row.s_in = s;
      row.t_in = tl;
      TwoPairState v = bell_pair_product(s, tl);
      for (int k = 0; k < 4; ++k) {
        v = apply_bilateral(steps[k], v);
        row.steps[k] = classify_or_throw(v, "deutsch table");
      }
      t.rows[r++] = row;
    }
  }
  return t;
}

BennettTable generate_bennett_table() {
  BennettTable t;
  const BilateralOp biswap{BilateralOp::Kind::BiSwap};
  const BilateralOp ax = rot_op(BilateralOp::Kind::RotX, +1, BilateralOp::Selector::Both);
  const BilateralOp by = rot_op(BilateralOp::Kind::RotY, +1, BilateralOp::Selector::Both);
  int r = 0;
  for (BellLabel s : kAllBells) {
    for (BellLabel tl : kAllBells) {
      BennettTable::Row row;
      row.s_in = s;
      row.t_in = tl;
      TwoPairState v1 = apply_bilateral(biswap, bell_pair_product(s, tl));
      row.after_biswap = classify_or_throw(v1, "bennett table (i)");
      row.branch_a = classify_or_throw(apply_bilateral(ax, v1), "bennett table (ii-a)");
      row.branch_b = classify_or_throw(apply_bilateral(by, v1), "bennett table (ii-b)");
      t.rows[r++] = row;
    }
  }
  return t;
}

// ---- frozen references ----------------------------------------------------

namespace {

Complex parse_phase(const std::string& p) {
  if (p == "1") return {1, 0};
  if (p == "-1") return {-1, 0};
  if (p == "i") return {0, 1};
  if (p == "-i") return {0, -1};
  throw std::invalid_argument("parse_phase: " + p);
}

BellLabel parse_label(const std::string& s) {
  auto l = bell_from_string(s);
  if (!l) throw std::invalid_argument("parse_label: " + s);
  return *l;
}

struct Entry {
  const char* s;
  const char* t;
  const char* phase;
};

BellProduct make_product(const Entry& e) {
  return BellProduct{PhasedBell{parse_label(e.s), parse_phase(e.phase)}, parse_label(e.t)};
}

}  // namespace

const RotationTable& rotation_table_reference() {
  static const RotationTable table = [] {
    RotationTable t;
    struct E { const char* label; const char* phase; };
    // rows: Bx+, Bx-, By+, By-, Bz+, Bz- ; columns: Phi+, Phi-, Psi+, Psi-
    const E data[6][4] = {
        {{"Psi+", "i"}, {"Phi-", "1"}, {"Phi+", "i"}, {"Psi-", "1"}},
        {{"Psi+", "-i"}, {"Phi-", "1"}, {"Phi+", "-i"}, {"Psi-", "1"}},
        {{"Phi+", "1"}, {"Psi+", "-1"}, {"Phi-", "1"}, {"Psi-", "1"}},
        {{"Phi+", "1"}, {"Psi+", "1"}, {"Phi-", "-1"}, {"Psi-", "1"}},
        {{"Phi-", "1"}, {"Phi+", "1"}, {"Psi+", "-i"}, {"Psi-", "-i"}},
        {{"Phi-", "1"}, {"Phi+", "1"}, {"Psi+", "i"}, {"Psi-", "i"}},
    };
    for (int k = 0; k < 6; ++k)
      for (int i = 0; i < 4; ++i)
        t.entries[k][i] = PhasedBell{parse_label(data[k][i].label),
                                     parse_phase(data[k][i].phase)};
    return t;
  }();
  return table;
}

const DeutschTable& deutsch_table_reference() {
  static const DeutschTable table = [] {
    DeutschTable t;
    // 16 rows (S,T inputs in Phi+,Phi-,Psi+,Psi- order), 4 steps each.
    const Entry data[16][4] = {
        {{"Phi+", "Phi+", "1"}, {"Phi-", "Phi-", "1"}, {"Phi+", "Phi+", "1"}, {"Phi+", "Phi+", "1"}},
        {{"Phi+", "Psi+", "-1"}, {"Phi-", "Psi+", "i"}, {"Psi+", "Phi-", "-1"}, {"Phi-", "Phi-", "1"}},
        {{"Phi+", "Phi-", "1"}, {"Phi-", "Phi+", "1"}, {"Phi-", "Phi+", "1"}, {"Psi+", "Phi+", "1"}},
        {{"Phi+", "Psi-", "1"}, {"Phi-", "Psi-", "-i"}, {"Psi-", "Phi-", "1"}, {"Psi-", "Phi-", "1"}},
        {{"Phi-", "Phi+", "1"}, {"Phi+", "Phi-", "1"}, {"Phi+", "Phi-", "1"}, {"Phi+", "Phi-", "1"}},
        {{"Phi-", "Psi+", "-1"}, {"Phi+", "Psi+", "i"}, {"Psi+", "Phi+", "-1"}, {"Phi-", "Phi+", "1"}},
        {{"Phi-", "Phi-", "1"}, {"Phi+", "Phi+", "1"}, {"Phi-", "Phi-", "1"}, {"Psi+", "Phi-", "1"}},
        {{"Phi-", "Psi-", "1"}, {"Phi+", "Psi-", "-i"}, {"Psi-", "Phi+", "1"}, {"Psi-", "Phi+", "1"}},
        {{"Psi+", "Phi+", "1"}, {"Psi+", "Phi-", "-i"}, {"Phi-", "Psi+", "1"}, {"Psi+", "Psi+", "1"}},
        {{"Psi+", "Psi+", "-1"}, {"Psi+", "Psi+", "1"}, {"Psi-", "Psi-", "1"}, {"Psi-", "Psi-", "1"}},
        {{"Psi+", "Phi-", "1"}, {"Psi+", "Phi+", "-i"}, {"Phi+", "Psi+", "1"}, {"Phi+", "Psi+", "1"}},
        {{"Psi+", "Psi-", "1"}, {"Psi+", "Psi-", "-1"}, {"Psi+", "Psi-", "-1"}, {"Phi-", "Psi-", "1"}},
        {{"Psi-", "Phi+", "1"}, {"Psi-", "Phi-", "-i"}, {"Phi-", "Psi-", "1"}, {"Psi+", "Psi-", "1"}},
        {{"Psi-", "Psi+", "-1"}, {"Psi-", "Psi+", "1"}, {"Psi-", "Psi+", "1"}, {"Psi-", "Psi+", "1"}},
        {{"Psi-", "Phi-", "1"}, {"Psi-", "Phi+", "-i"}, {"Phi+", "Psi-", "1"}, {"Phi+", "Psi-", "1"}},
        {{"Psi-", "Psi-", "1"}, {"Psi-", "Psi-", "-1"}, {"Psi+", "Psi+", "-1"}, {"Phi-", "Psi+", "1"}},
    };
    int r = 0;
    for (BellLabel s : kAllBells) {
      for (BellLabel tl : kAllBells) {
        t.rows[r].s_in = s;
        t.rows[r].t_in = tl;
        for (int k = 0; k < 4; ++k) t.rows[r].steps[k] = make_product(data[r][k]);
        ++r;
      }
    }
    return t;
  }();
  return table;
}

const BennettTable& bennett_table_reference() {
  static const BennettTable table = [] {
    BennettTable t;
    // columns: after BiSWAP, branch (ii-a) = Bx_{S+}Bx_{T+}, branch (ii-b) = By_{S+}By_{T+}
    const Entry data[16][3] = {
        {{"Phi-", "Phi-", "1"}, {"Phi-", "Phi-", "1"}, {"Psi+", "Psi+", "1"}},
        {{"Phi+", "Phi-", "1"}, {"Psi+", "Phi-", "i"}, {"Phi+", "Psi+", "-1"}},
        {{"Psi+", "Phi+", "i"}, {"Phi+", "Psi+", "-i"}, {"Phi-", "Phi+", "i"}},
        {{"Psi-", "Phi+", "i"}, {"Psi-", "Psi+", "-1"}, {"Psi-", "Phi+", "i"}},
        {{"Phi-", "Phi+", "1"}, {"Phi-", "Psi+", "i"}, {"Psi+", "Phi+", "-1"}},
        {{"Phi+", "Phi+", "1"}, {"Psi+", "Psi+", "-1"}, {"Phi+", "Phi+", "1"}},
        {{"Psi+", "Phi-", "i"}, {"Phi+", "Phi-", "-1"}, {"Phi-", "Psi+", "-i"}},
        {{"Psi-", "Phi-", "i"}, {"Psi-", "Phi-", "i"}, {"Psi-", "Psi+", "-i"}},
        {{"Phi+", "Psi+", "i"}, {"Psi+", "Phi+", "-i"}, {"Phi+", "Phi-", "i"}},
        {{"Phi-", "Psi+", "i"}, {"Phi-", "Phi+", "-1"}, {"Psi+", "Phi-", "-i"}},
        {{"Psi-", "Psi-", "1"}, {"Psi-", "Psi-", "1"}, {"Psi-", "Psi-", "1"}},
        {{"Psi+", "Psi-", "1"}, {"Phi+", "Psi-", "i"}, {"Phi-", "Psi-", "1"}},
        {{"Phi+", "Psi-", "i"}, {"Psi+", "Psi-", "-1"}, {"Phi+", "Psi-", "i"}},
        {{"Phi-", "Psi-", "i"}, {"Phi-", "Psi-", "i"}, {"Psi+", "Psi-", "-i"}},
        {{"Psi-", "Psi+", "1"}, {"Psi-", "Phi+", "i"}, {"Psi-", "Phi-", "1"}},
        {{"Psi+", "Psi+", "1"}, {"Phi+", "Phi+", "-1"}, {"Phi-", "Phi-", "1"}},
    };
    int r = 0;
    for (BellLabel s : kAllBells) {
      for (BellLabel tl : kAllBells) {
        t.rows[r].s_in = s;
        t.rows[r].t_in = tl;
        t.rows[r].after_biswap = make_product(data[r][0]);
        t.rows[r].branch_a = make_product(data[r][1]);
        t.rows[r].branch_b = make_product(data[r][2]);
        ++r;
      }
    }
    return t;
  }();
  return table;
}

ComplexMatrix bcnot_truth_operator() {
  ComplexMatrix out = ComplexMatrix::Zero(16, 16);
  for (BellLabel s : kAllBells) {
    for (BellLabel t : kAllBells) {
      const int sb = bell_bits(s), tb = bell_bits(t);
      const int a_s = sb >> 1, p_s = sb & 1;
      const int a_t = tb >> 1, p_t = tb & 1;
      const BellLabel s2 = bell_from_bits((a_s << 1) | (p_s ^ p_t));
      const BellLabel t2 = bell_from_bits(((a_t ^ a_s) << 1) | p_t);
      out += bell_pair_product(s2, t2) * bell_pair_product(s, t).adjoint();
    }
  }
  return out;
}

ComplexMatrix bcnot_unitary() {
  return embed_gate(gates::cnot(), {kAS, kAT}, 4) *
         embed_gate(gates::cnot(), {kBS, kBT}, 4);
}

ComplexMatrix bswap_unitary() {
  return embed_gate(gates::swap_gate(), {kAS, kAT}, 4) *
         embed_gate(gates::swap_gate(), {kBS, kBT}, 4);
}

// ---- serialization --------------------------------------------------------

std::string phase_to_string(const Complex& c) {
  const double tol = 1e-9;
  if (std::abs(c - Complex(1, 0)) < tol) return "1";
  if (std::abs(c - Complex(-1, 0)) < tol) return "-1";
  if (std::abs(c - Complex(0, 1)) < tol) return "i";
  if (std::abs(c - Complex(0, -1)) < tol) return "-i";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", c.real(), c.imag());
  return buf;
}

namespace {

using nlohmann::json;

json product_json(const BellProduct& p) {
  return json{{"s", to_string(p.source.label)},
              {"t", to_string(p.target)},
              {"phase_re", p.source.phase.real()},
              {"phase_im", p.source.phase.imag()}};
}

BellProduct product_from_json(const json& j) {
  BellProduct p;
  p.source.label = parse_label(j.at("s").get<std::string>());
  p.target = parse_label(j.at("t").get<std::string>());
  p.source.phase = Complex(j.at("phase_re").get<double>(), j.at("phase_im").get<double>());
  return p;
}

std::string product_text(const BellProduct& p) {
  std::string ph = phase_to_string(p.source.phase);
  std::string out = ph == "1" ? "" : (ph == "-1" ? "-" : (ph + " "));
  return out + to_string(p.source.label) + "_S " + to_string(p.target) + "_T";
}

}  // namespace

std::string to_json(const RotationTable& t) {
  json rows = json::array();
  for (int k = 0; k < 6; ++k) {
    json cols = json::array();
    for (int i = 0; i < 4; ++i) {
      const PhasedBell& e = t.entries[k][i];
      cols.push_back(json{{"label", to_string(e.label)},
                          {"phase_re", e.phase.real()},
                          {"phase_im", e.phase.imag()}});
    }
    rows.push_back(json{{"op", RotationTable::kOpNames[k]}, {"outputs", cols}});
  }
  return json{{"table", "rotations"}, {"rows", rows}}.dump(2);
}

RotationTable rotation_table_from_json(const std::string& text) {
  RotationTable t;
  json j = json::parse(text);
  const auto& rows = j.at("rows");
  if (rows.size() != 6) throw std::invalid_argument("rotation table: need 6 rows");
  for (int k = 0; k < 6; ++k) {
    const auto& cols = rows[k].at("outputs");
    if (cols.size() != 4) throw std::invalid_argument("rotation table: need 4 outputs");
    for (int i = 0; i < 4; ++i) {
      t.entries[k][i].label = parse_label(cols[i].at("label").get<std::string>());
      t.entries[k][i].phase = Complex(cols[i].at("phase_re").get<double>(),
                                      cols[i].at("phase_im").get<double>());
    }
  }
  return t;
}

std::string to_json(const DeutschTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    json steps = json::array();
    for (const auto& s : r.steps) steps.push_back(product_json(s));
    rows.push_back(json{{"s_in", to_string(r.s_in)}, {"t_in", to_string(r.t_in)},
                        {"steps", steps}});
  }
  return json{{"table", "deutsch_replacement"}, {"rows", rows}}.dump(2);
}

DeutschTable deutsch_table_from_json(const std::string& text) {
  DeutschTable t;
  json j = json::parse(text);
  const auto& rows = j.at("rows");
  if (rows.size() != 16) throw std::invalid_argument("deutsch table: need 16 rows");
  for (int r = 0; r < 16; ++r) {
    t.rows[r].s_in = parse_label(rows[r].at("s_in").get<std::string>());
    t.rows[r].t_in = parse_label(rows[r].at("t_in").get<std::string>());
    const auto& steps = rows[r].at("steps");
    if (steps.size() != 4) throw std::invalid_argument("deutsch table: need 4 steps");
    for (int k = 0; k < 4; ++k) t.rows[r].steps[k] = product_from_json(steps[k]);
  }
  return t;
}

std::string to_json(const BennettTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    rows.push_back(json{{"s_in", to_string(r.s_in)},
                        {"t_in", to_string(r.t_in)},
                        {"after_biswap", product_json(r.after_biswap)},
                        {"branch_a", product_json(r.branch_a)},
                        {"branch_b", product_json(r.branch_b)}});
  }
  return json{{"table", "bennett"}, {"rows", rows}}.dump(2);
}

BennettTable bennett_table_from_json(const std::string& text) {
  BennettTable t;
  json j = json::parse(text);
  const auto& rows = j.at("rows");
  if (rows.size() != 16) throw std::invalid_argument("bennett table: need 16 rows");
  for (int r = 0; r < 16; ++r) {
    t.rows[r].s_in = parse_label(rows[r].at("s_in").get<std::string>());
    t.rows[r].t_in = parse_label(rows[r].at("t_in").get<std::string>());
    t.rows[r].after_biswap = product_from_json(rows[r].at("after_biswap"));
    t.rows[r].branch_a = product_from_json(rows[r].at("branch_a"));
    t.rows[r].branch_b = product_from_json(rows[r].at("branch_b"));
  }
  return t;
}

std::string to_text(const RotationTable& t) {
  std::ostringstream os;
  os << "op    Phi+        Phi-        Psi+        Psi-\n";
  for (int k = 0; k < 6; ++k) {
    os << RotationTable::kOpNames[k] << "  ";
    for (int i = 0; i < 4; ++i) {
      const PhasedBell& e = t.entries[k][i];
      std::string ph = phase_to_string(e.phase);
      std::string cell = (ph == "1" ? "" : ph + "*") + to_string(e.label);
      os << cell;
      os << std::string(cell.size() < 12 ? 12 - cell.size() : 1, ' ');
    }
    os << "\n";
  }
  return os.str();
}

std::string to_text(const DeutschTable& t) {
  std::ostringstream os;
  os << "initial          (i) By_T+         (ii) Bz_S+ Bz_T+  (iii) BiSWAP      (iv) By_S-\n";
  for (const auto& r : t.rows) {
    std::string init = to_string(r.s_in) + "_S " + to_string(r.t_in) + "_T";
    os << init << std::string(17 - init.size(), ' ');
    for (const auto& s : r.steps) {
      std::string cell = product_text(s);
      os << cell << std::string(cell.size() < 18 ? 18 - cell.size() : 1, ' ');
    }
    os << "\n";
  }
  return os.str();
}

std::string to_text(const BennettTable& t) {
  std::ostringstream os;
  os << "initial          (i) BiSWAP        (ii-a) Bx_S+ Bx_T+  (ii-b) By_S+ By_T+\n";
  for (const auto& r : t.rows) {
    std::string init = to_string(r.s_in) + "_S " + to_string(r.t_in) + "_T";
    os << init << std::string(17 - init.size(), ' ');
    for (const BellProduct* p : {&r.after_biswap, &r.branch_a, &r.branch_b}) {
      std::string cell = product_text(*p);
      os << cell << std::string(cell.size() < 20 ? 20 - cell.size() : 1, ' ');
    }
    os << "\n";
  }
  return os.str();
}

// ---- comparison -----------------------------------------------------------

namespace {

bool phase_close(const Complex& a, const Complex& b, double tol) {
  return std::abs(a - b) < tol;
}

std::string describe(const BellProduct& p) { return product_text(p); }

}  // namespace

std::string compare(const RotationTable& got, const RotationTable& want, double tol) {
  for (int k = 0; k < 6; ++k) {
    for (int i = 0; i < 4; ++i) {
      const PhasedBell &g = got.entries[k][i], &w = want.entries[k][i];
      if (g.label != w.label || !phase_close(g.phase, w.phase, tol)) {
        return std::string("rotation table, op ") + RotationTable::kOpNames[k] +
               " on " + to_string(kAllBells[i]) + ": expected " +
               phase_to_string(w.phase) + "*" + to_string(w.label) + ", got " +
               phase_to_string(g.phase) + "*" + to_string(g.label);
      }
    }
  }
  return "";
}

namespace {

std::string compare_product(const BellProduct& g, const BellProduct& w, double tol) {
  if (g.source.label != w.source.label || g.target != w.target ||
      !phase_close(g.source.phase, w.source.phase, tol)) {
    return "expected " + describe(w) + ", got " + describe(g);
  }
  return "";
}

}  // namespace

std::string compare(const DeutschTable& got, const DeutschTable& want, double tol) {
  for (int r = 0; r < 16; ++r) {
    const auto &g = got.rows[r], &w = want.rows[r];
    if (g.s_in != w.s_in || g.t_in != w.t_in)
      return "deutsch table row " + std::to_string(r) + ": input mismatch";
    for (int k = 0; k < 4; ++k) {
      std::string err = compare_product(g.steps[k], w.steps[k], tol);
      if (!err.empty())
        return "deutsch table row " + to_string(w.s_in) + "_S " + to_string(w.t_in) +
               "_T step " + std::to_string(k + 1) + ": " + err;
    }
  }
  return "";
}

std::string compare(const BennettTable& got, const BennettTable& want, double tol) {
  const char* col_names[3] = {"step (i)", "branch (ii-a)", "branch (ii-b)"};
  for (int r = 0; r < 16; ++r) {
    const auto &g = got.rows[r], &w = want.rows[r];
    if (g.s_in != w.s_in || g.t_in != w.t_in)
      return "bennett table row " + std::to_string(r) + ": input mismatch";
    const BellProduct* gp[3] = {&g.after_biswap, &g.branch_a, &g.branch_b};
    const BellProduct* wp[3] = {&w.after_biswap, &w.branch_a, &w.branch_b};
    for (int k = 0; k < 3; ++k) {
      std::string err = compare_product(*gp[k], *wp[k], tol);
      if (!err.empty())
        return "bennett table row " + to_string(w.s_in) + "_S " + to_string(w.t_in) +
               "_T " + col_names[k] + ": " + err;
    }
  }
  return "";
}

}  // namespace qpurify::bell
