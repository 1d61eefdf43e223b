#include "qpurify/circuit.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

#include "qpurify/nqubit.hpp"

namespace qpurify::rewrite {

std::string to_string(const Wire& w) {
  return (w.party == Party::Alice ? "A" : "B") + std::to_string(w.pair);
}

std::vector<int> Circuit::relabel_or_identity() const {
  if (!relabel.empty()) return relabel;
  std::vector<int> id(pair_count);
  std::iota(id.begin(), id.end(), 0);
  return id;
}

namespace {

char axis_char(gates::Axis a) {
  switch (a) {
    case gates::Axis::X: return 'x';
    case gates::Axis::Y: return 'y';
    case gates::Axis::Z: return 'z';
  }
  return '?';
}

gates::Axis axis_from(const std::string& s) {
  if (s == "x") return gates::Axis::X;
  if (s == "y") return gates::Axis::Y;
  if (s == "z") return gates::Axis::Z;
  throw std::invalid_argument("bad axis '" + s + "'");
}

const char* wiregate_name(WireGate::Kind k) {
  switch (k) {
    case WireGate::Kind::ISwap: return "ISWAP";
    case WireGate::Kind::Swap: return "SWAP";
    case WireGate::Kind::Cnot: return "CNOT";
    case WireGate::Kind::Cpf: return "CPF";
    case WireGate::Kind::SqrtSwap: return "SQSWAP";
    case WireGate::Kind::XY: return "XY";
    case WireGate::Kind::Rot: return "ROT";
    case WireGate::Kind::Had: return "HAD";
  }
  return "?";
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_pair(int pair, int count, const char* what) {
  if (pair < 0 || pair >= count)
    throw std::invalid_argument(std::string(what) + ": pair index out of range");
}

}  // namespace

void Circuit::validate() const {
  if (pair_count < 0) throw std::invalid_argument("circuit: negative pair count");
  std::vector<bool> measured(2 * std::max(pair_count, 0), false);
  auto wire_ok = [&](const Wire& w) {
    check_pair(w.pair, pair_count, "circuit wire");
  };
  auto touched = [&](const Wire& w) {
    const int idx = (w.party == Party::Alice ? 0 : pair_count) + w.pair;
    if (measured[idx]) throw std::invalid_argument("circuit: op after measurement on " + to_string(w));
  };
  for (const auto& op : ops) {
    if (const auto* g = std::get_if<BilateralGate>(&op)) {
      check_pair(g->src, pair_count, "bilateral gate");
      check_pair(g->tgt, pair_count, "bilateral gate");
      if (g->src == g->tgt) throw std::invalid_argument("bilateral gate: src == tgt");
      for (Party p : {Party::Alice, Party::Bob}) {
        touched(Wire{p, g->src});
        touched(Wire{p, g->tgt});
      }
    } else if (const auto* r = std::get_if<BilateralRot>(&op)) {
      check_pair(r->pair, pair_count, "bilateral rotation");
      if (r->sign != 1 && r->sign != -1)
        throw std::invalid_argument("bilateral rotation: sign must be +-1");
      touched(Wire{Party::Alice, r->pair});
      touched(Wire{Party::Bob, r->pair});
    } else if (const auto* u = std::get_if<UnilateralPi>(&op)) {
      check_pair(u->pair, pair_count, "unilateral pi");
      touched(Wire{u->party, u->pair});
    } else if (const auto* f = std::get_if<PauliFrame>(&op)) {
      check_pair(f->pair, pair_count, "frame");
    } else if (const auto* w = std::get_if<WireGate>(&op)) {
      wire_ok(w->a);
      touched(w->a);
      const bool two = w->kind != WireGate::Kind::Rot && w->kind != WireGate::Kind::Had;
      if (two) {
        wire_ok(w->b);
        touched(w->b);
        if (w->a == w->b) throw std::invalid_argument("wire gate: identical wires");
      }
    } else if (const auto* m = std::get_if<MeasureZ>(&op)) {
      wire_ok(m->w);
      touched(m->w);
      measured[(m->w.party == Party::Alice ? 0 : pair_count) + m->w.pair] = true;
    }
  }
  if (!relabel.empty()) {
    if (static_cast<int>(relabel.size()) != pair_count)
      throw std::invalid_argument("circuit: relabel size mismatch");
    std::vector<bool> seen(pair_count, false);
    for (int p : relabel) {
      check_pair(p, pair_count, "relabel");
      if (seen[p]) throw std::invalid_argument("circuit: relabel not a permutation");
      seen[p] = true;
    }
  }
}

// ---- text format ------------------------------------------------------------

std::string to_text(const Circuit& c) {
  std::ostringstream os;
  os << "PAIRS " << c.pair_count << "\n";
  for (const auto& op : c.ops) {
    if (const auto* g = std::get_if<BilateralGate>(&op)) {
      const char* k = g->kind == BilateralGate::Kind::BCnot   ? "BCNOT"
                      : g->kind == BilateralGate::Kind::BSwap ? "BSWAP"
                                                              : "BISWAP";
      os << k << " " << g->src << " " << g->tgt << "\n";
    } else if (const auto* r = std::get_if<BilateralRot>(&op)) {
      os << "BROT " << axis_char(r->axis) << " " << (r->sign > 0 ? '+' : '-') << " "
         << r->pair << "\n";
    } else if (const auto* u = std::get_if<UnilateralPi>(&op)) {
      os << "UNIPI " << axis_char(u->axis) << " "
         << (u->party == Party::Alice ? 'A' : 'B') << " " << u->pair << "\n";
    } else if (const auto* f = std::get_if<PauliFrame>(&op)) {
      os << "FRAME " << axis_char(f->axis) << " " << f->pair << " "
         << fmt17(f->coeff.real()) << " " << fmt17(f->coeff.imag()) << "\n";
    } else if (const auto* w = std::get_if<WireGate>(&op)) {
      os << wiregate_name(w->kind);
      os << " " << to_string(w->a);
      if (w->kind == WireGate::Kind::Rot) {
        os << " " << axis_char(w->axis) << " " << fmt17(w->param);
      } else if (w->kind == WireGate::Kind::Had) {
        // single wire only
      } else {
        os << " " << to_string(w->b);
        if (w->kind == WireGate::Kind::XY) os << " " << fmt17(w->param);
      }
      os << "\n";
    } else if (const auto* m = std::get_if<MeasureZ>(&op)) {
      os << "MEASZ " << to_string(m->w) << "\n";
    }
  }
  const auto id = c.relabel_or_identity();
  bool identity = true;
  for (int j = 0; j < c.pair_count; ++j) identity = identity && id[j] == j;
  if (!identity) {
    os << "RELABEL";
    for (int p : id) os << " " << p;
    os << "\n";
  }
  return os.str();
}

namespace {

Wire parse_wire(const std::string& tok) {
  if (tok.size() < 2 || (tok[0] != 'A' && tok[0] != 'B'))
    throw std::invalid_argument("bad wire '" + tok + "'");
  Wire w;
  w.party = tok[0] == 'A' ? Party::Alice : Party::Bob;
  w.pair = std::stoi(tok.substr(1));
  return w;
}

}  // namespace

Circuit circuit_from_text(const std::string& text) {
  Circuit c;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  bool have_pairs = false;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("circuit parse error at line " + std::to_string(lineno) +
                                ": " + why);
  };
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == '#') continue;
    try {
      if (tok == "PAIRS") {
        if (!(ls >> c.pair_count)) fail("expected pair count");
        have_pairs = true;
      } else if (!have_pairs) {
        fail("PAIRS must come first");
      } else if (tok == "BCNOT" || tok == "BSWAP" || tok == "BISWAP") {
        BilateralGate g;
        g.kind = tok == "BCNOT"   ? BilateralGate::Kind::BCnot
                 : tok == "BSWAP" ? BilateralGate::Kind::BSwap
                                  : BilateralGate::Kind::BiSwap;
        if (!(ls >> g.src >> g.tgt)) fail("expected two pair indices");
        c.ops.emplace_back(g);
      } else if (tok == "BROT") {
        BilateralRot r;
        std::string ax, sg;
        if (!(ls >> ax >> sg >> r.pair)) fail("expected axis, sign, pair");
        r.axis = axis_from(ax);
        if (sg != "+" && sg != "-") fail("bad sign '" + sg + "'");
        r.sign = sg == "+" ? +1 : -1;
        c.ops.emplace_back(r);
      } else if (tok == "UNIPI") {
        UnilateralPi u;
        std::string ax, pt;
        if (!(ls >> ax >> pt >> u.pair)) fail("expected axis, party, pair");
        u.axis = axis_from(ax);
        if (pt != "A" && pt != "B") fail("bad party '" + pt + "'");
        u.party = pt == "A" ? Party::Alice : Party::Bob;
        c.ops.emplace_back(u);
      } else if (tok == "FRAME") {
        PauliFrame f;
        std::string ax;
        double re, im;
        if (!(ls >> ax >> f.pair >> re >> im)) fail("expected axis, pair, re, im");
        f.axis = axis_from(ax);
        f.coeff = Complex(re, im);
        c.ops.emplace_back(f);
      } else if (tok == "ROT") {
        WireGate w;
        w.kind = WireGate::Kind::Rot;
        std::string wt, ax;
        if (!(ls >> wt >> ax >> w.param)) fail("expected wire, axis, angle");
        w.a = parse_wire(wt);
        w.axis = axis_from(ax);
        c.ops.emplace_back(w);
      } else if (tok == "HAD") {
        WireGate w;
        w.kind = WireGate::Kind::Had;
        std::string wt;
        if (!(ls >> wt)) fail("expected wire");
        w.a = parse_wire(wt);
        c.ops.emplace_back(w);
      } else if (tok == "ISWAP" || tok == "SWAP" || tok == "CNOT" || tok == "CPF" ||
                 tok == "SQSWAP" || tok == "XY") {
        WireGate w;
        w.kind = tok == "ISWAP"    ? WireGate::Kind::ISwap
                 : tok == "SWAP"   ? WireGate::Kind::Swap
                 : tok == "CNOT"   ? WireGate::Kind::Cnot
                 : tok == "CPF"    ? WireGate::Kind::Cpf
                 : tok == "SQSWAP" ? WireGate::Kind::SqrtSwap
                                   : WireGate::Kind::XY;
        std::string w1, w2;
        if (!(ls >> w1 >> w2)) fail("expected two wires");
        w.a = parse_wire(w1);
        w.b = parse_wire(w2);
        if (w.kind == WireGate::Kind::XY && !(ls >> w.param)) fail("expected XY angle");
        c.ops.emplace_back(w);
      } else if (tok == "MEASZ") {
        MeasureZ m;
        std::string wt;
        if (!(ls >> wt)) fail("expected wire");
        m.w = parse_wire(wt);
        c.ops.emplace_back(m);
      } else if (tok == "RELABEL") {
        c.relabel.clear();
        int p;
        while (ls >> p) c.relabel.push_back(p);
        if (static_cast<int>(c.relabel.size()) != c.pair_count)
          fail("relabel length != pair count");
      } else {
        fail("unknown op '" + tok + "'");
      }
    } catch (const std::invalid_argument& e) {
      std::string what = e.what();
      if (what.rfind("circuit parse error", 0) == 0) throw;
      fail(what);
    }
  }
  if (!have_pairs && !c.ops.empty()) {
    lineno = 1;
    fail("missing PAIRS header");
  }
  c.validate();
  return c;
}

// ---- semantics ----------------------------------------------------------------

int qubit_index(const Circuit& c, const Wire& w) {
  return (w.party == Party::Alice ? 0 : c.pair_count) + w.pair;
}

namespace {

constexpr int kMaxPairs = 3;

ComplexMatrix wiregate_matrix(const WireGate& w) {
  using K = WireGate::Kind;
  switch (w.kind) {
    case K::ISwap: return gates::iswap();
    case K::Swap: return gates::swap_gate();
    case K::Cnot: return gates::cnot();
    case K::Cpf: return gates::cpf();
    case K::SqrtSwap: return gates::sqrt_swap();
    case K::XY: return gates::xy_evolution(w.param);
    case K::Rot: return gates::rotation(w.axis, w.param);
    case K::Had: return gates::hadamard();
  }
  throw std::invalid_argument("wiregate_matrix");
}

bell::BilateralOp::Kind rot_kind(gates::Axis a) {
  switch (a) {
    case gates::Axis::X: return bell::BilateralOp::Kind::RotX;
    case gates::Axis::Y: return bell::BilateralOp::Kind::RotY;
    case gates::Axis::Z: return bell::BilateralOp::Kind::RotZ;
  }
  throw std::invalid_argument("rot_kind");
}

ComplexMatrix op_matrix(const Circuit& c, const CircuitOp& op) {
  const int n = c.pair_count;
  const int nq = 2 * n;
  auto qa = [&](int pair) { return pair; };
  auto qb = [&](int pair) { return n + pair; };
  if (const auto* g = std::get_if<BilateralGate>(&op)) {
    ComplexMatrix u;
    switch (g->kind) {
      case BilateralGate::Kind::BCnot: u = gates::cnot(); break;
      case BilateralGate::Kind::BSwap: u = gates::swap_gate(); break;
      case BilateralGate::Kind::BiSwap: u = gates::iswap(); break;
    }
    return embed_gate(u, {qa(g->src), qa(g->tgt)}, nq) *
           embed_gate(u, {qb(g->src), qb(g->tgt)}, nq);
  }
  if (const auto* r = std::get_if<BilateralRot>(&op)) {
    ComplexMatrix u = bell::bilateral_qubit_gate(rot_kind(r->axis), r->sign);
    return embed_gate(u, {qa(r->pair)}, nq) * embed_gate(u, {qb(r->pair)}, nq);
  }
  if (const auto* u = std::get_if<UnilateralPi>(&op)) {
    ComplexMatrix m = gates::rotation(u->axis, M_PI);
    const int q = u->party == Party::Alice ? qa(u->pair) : qb(u->pair);
    return embed_gate(m, {q}, nq);
  }
  if (const auto* f = std::get_if<PauliFrame>(&op)) {
    ComplexMatrix m = f->coeff * kron(gates::pauli(f->axis), gates::pauli(f->axis));
    return embed_gate(m, {qa(f->pair), qb(f->pair)}, nq);
  }
  if (const auto* w = std::get_if<WireGate>(&op)) {
    ComplexMatrix m = wiregate_matrix(*w);
    const bool two = w->kind != WireGate::Kind::Rot && w->kind != WireGate::Kind::Had;
    if (two) return embed_gate(m, {qubit_index(c, w->a), qubit_index(c, w->b)}, nq);
    return embed_gate(m, {qubit_index(c, w->a)}, nq);
  }
  throw std::invalid_argument("op_matrix: measurement has no unitary");
}

}  // namespace

ComplexMatrix ops_unitary(const Circuit& c) {
  if (c.pair_count > kMaxPairs)
    throw std::invalid_argument("ops_unitary: unsupported size (max 3 pairs)");
  const int dim = 1 << (2 * c.pair_count);
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  for (const auto& op : c.ops) {
    if (std::holds_alternative<MeasureZ>(op))
      throw std::invalid_argument("ops_unitary: circuit contains measurements");
    u = op_matrix(c, op) * u;
  }
  return u;
}

ComplexMatrix relabel_permutation_matrix(const Circuit& c) {
  const int n = c.pair_count;
  const int nq = 2 * n, dim = 1 << nq;
  const auto home = c.relabel_or_identity();
  ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    int row = 0;
    for (int party = 0; party < 2; ++party) {
      for (int j = 0; j < n; ++j) {
        const int src_q = party * n + home[j];
        const int dst_q = party * n + j;
        const int bit = (col >> (nq - 1 - src_q)) & 1;
        row |= bit << (nq - 1 - dst_q);
      }
    }
    p(row, col) = 1.0;
  }
  return p;
}

ComplexMatrix circuit_unitary(const Circuit& c) {
  return relabel_permutation_matrix(c) * ops_unitary(c);
}

SplitCircuit split_measurements(const Circuit& c) {
  c.validate();
  SplitCircuit out;
  out.prefix.pair_count = c.pair_count;
  out.prefix.relabel = c.relabel;
  for (const auto& op : c.ops) {
    if (const auto* m = std::get_if<MeasureZ>(&op)) {
      out.measured.push_back(m->w);
    } else {
      if (!out.measured.empty())
        throw std::invalid_argument("split_measurements: gate after measurement");
      out.prefix.ops.push_back(op);
    }
  }
  return out;
}

int simulate_measured_parity(const Circuit& c, const std::vector<bell::BellLabel>& labels) {
  if (static_cast<int>(labels.size()) != c.pair_count)
    throw std::invalid_argument("simulate_measured_parity: need one label per pair");
  if (c.pair_count > kMaxPairs)
    throw std::invalid_argument("simulate_measured_parity: unsupported size");
  SplitCircuit sc = split_measurements(c);
  if (sc.measured.empty()) return 0;

  // exactly one pair must be measured on both wires
  std::map<int, int> seen;
  for (const Wire& w : sc.measured) seen[w.pair] |= w.party == Party::Alice ? 1 : 2;
  int measured_pair = -1;
  for (const auto& [pair, mask] : seen) {
    if (mask != 3)
      throw std::invalid_argument("simulate_measured_parity: pair measured on one side only");
    if (measured_pair != -1)
      throw std::invalid_argument("simulate_measured_parity: more than one measured pair");
    measured_pair = pair;
  }

  const int n = c.pair_count, nq = 2 * n, dim = 1 << nq;
  // initial product of Bell pairs: amplitude over (alice bits, bob bits)
  ComplexVector psi = ComplexVector::Zero(dim);
  for (int idx = 0; idx < dim; ++idx) {
    Complex amp{1.0, 0.0};
    for (int p = 0; p < n; ++p) {
      const int a = (idx >> (nq - 1 - p)) & 1;
      const int b = (idx >> (nq - 1 - (n + p))) & 1;
      amp *= bell::bell_vector(labels[p])(2 * a + b);
      if (amp == Complex{0.0, 0.0}) break;
    }
    psi(idx) = amp;
  }
  psi = ops_unitary(sc.prefix) * psi;

  const int q_a = measured_pair, q_b = n + measured_pair;
  double prob[2] = {0.0, 0.0};
  for (int idx = 0; idx < dim; ++idx) {
    const int xa = (idx >> (nq - 1 - q_a)) & 1;
    const int xb = (idx >> (nq - 1 - q_b)) & 1;
    prob[xa ^ xb] += std::norm(psi(idx));
  }
  if (prob[0] > 1e-9 && prob[1] > 1e-9)
    throw std::runtime_error("simulate_measured_parity: outcome not deterministic");
  return prob[1] > prob[0] ? 1 : 0;
}

}  // namespace qpurify::rewrite
