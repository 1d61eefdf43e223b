#include "qpurify/rewrite.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "json.hpp"
#include "qpurify/nqubit.hpp"

namespace qpurify::rewrite {

namespace {

bool touches_pair(const CircuitOp& op, int pair) {
  if (const auto* g = std::get_if<BilateralGate>(&op)) return g->src == pair || g->tgt == pair;
  if (const auto* r = std::get_if<BilateralRot>(&op)) return r->pair == pair;
  if (const auto* u = std::get_if<UnilateralPi>(&op)) return u->pair == pair;
  if (const auto* f = std::get_if<PauliFrame>(&op)) return f->pair == pair;
  if (const auto* w = std::get_if<WireGate>(&op)) {
    const bool two = w->kind != WireGate::Kind::Rot && w->kind != WireGate::Kind::Had;
    return w->a.pair == pair || (two && w->b.pair == pair);
  }
  if (const auto* m = std::get_if<MeasureZ>(&op)) return m->w.pair == pair;
  return false;
}

struct PauliMatch {
  bool is_identity = false;
  gates::Axis axis = gates::Axis::X;
  Complex coeff{1.0, 0.0};
};

/// Matches a 2x2 matrix against c*I or c*sigma_axis.
PauliMatch match_single_pauli(const ComplexMatrix& m) {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  const std::pair<bool, gates::Axis> cands[4] = {{true, gates::Axis::X},
                                                 {false, gates::Axis::X},
                                                 {false, gates::Axis::Y},
                                                 {false, gates::Axis::Z}};
  for (const auto& [is_id, ax] : cands) {
    const ComplexMatrix base = is_id ? id : gates::pauli(ax);
    PhaseMatch pm = match_up_to_phase(m, base, 1e-10);
    if (pm.equal) {
      PauliMatch out;
      out.is_identity = is_id;
      out.axis = ax;
      // recover the full (possibly non-unit) coefficient
      Eigen::Index ri, ci;
      base.cwiseAbs().maxCoeff(&ri, &ci);
      out.coeff = m(ri, ci) / base(ri, ci);
      return out;
    }
  }
  throw std::runtime_error("match_single_pauli: not proportional to a Pauli");
}

bell::BilateralOp::Kind rot_kind(gates::Axis a) {
  switch (a) {
    case gates::Axis::X: return bell::BilateralOp::Kind::RotX;
    case gates::Axis::Y: return bell::BilateralOp::Kind::RotY;
    case gates::Axis::Z: return bell::BilateralOp::Kind::RotZ;
  }
  throw std::invalid_argument("rot_kind");
}

ComplexMatrix brot_qubit_matrix(const BilateralRot& r) {
  return bell::bilateral_qubit_gate(rot_kind(r.axis), r.sign);
}

}  // namespace

Circuit insert_swaps(const Circuit& c) {
  c.validate();
  Circuit out;
  out.pair_count = c.pair_count;
  std::vector<int> home(c.pair_count);
  std::iota(home.begin(), home.end(), 0);

  auto remap_pair = [&](int p) { return home[p]; };
  for (const auto& op : c.ops) {
    CircuitOp copy = op;
    if (auto* g = std::get_if<BilateralGate>(&copy)) {
      g->src = remap_pair(g->src);
      g->tgt = remap_pair(g->tgt);
      out.ops.push_back(copy);
      if (g->kind == BilateralGate::Kind::BCnot) {
        out.ops.push_back(BilateralGate{BilateralGate::Kind::BSwap, g->src, g->tgt});
        // find which logical pairs live at these physical slots and swap them
        int ls = -1, lt = -1;
        for (int j = 0; j < c.pair_count; ++j) {
          if (home[j] == g->src) ls = j;
          if (home[j] == g->tgt) lt = j;
        }
        std::swap(home[ls], home[lt]);
      }
    } else if (auto* r = std::get_if<BilateralRot>(&copy)) {
      r->pair = remap_pair(r->pair);
      out.ops.push_back(copy);
    } else if (auto* u = std::get_if<UnilateralPi>(&copy)) {
      u->pair = remap_pair(u->pair);
      out.ops.push_back(copy);
    } else if (auto* f = std::get_if<PauliFrame>(&copy)) {
      f->pair = remap_pair(f->pair);
      out.ops.push_back(copy);
    } else if (auto* w = std::get_if<WireGate>(&copy)) {
      w->a.pair = remap_pair(w->a.pair);
      const bool two = w->kind != WireGate::Kind::Rot && w->kind != WireGate::Kind::Had;
      if (two) w->b.pair = remap_pair(w->b.pair);
      out.ops.push_back(copy);
    } else if (auto* m = std::get_if<MeasureZ>(&copy)) {
      m->w.pair = remap_pair(m->w.pair);
      out.ops.push_back(copy);
    }
  }
  const auto base = c.relabel_or_identity();
  out.relabel.resize(c.pair_count);
  for (int j = 0; j < c.pair_count; ++j) out.relabel[j] = home[base[j]];
  out.validate();
  return out;
}

namespace {

/// Residual sign frames making the rotation+BiSWAP sequence exactly equal to
/// the [BCNOT, BSWAP] unit.  Determined once by direct operator comparison
/// and cached; throws if the residual is not a product of pair Pauli frames.
struct ReplacementFrames {
  std::vector<PauliFrame> frames;  // pair field: 0 = source slot, 1 = target slot
  bool at_end = false;             // frames follow the sequence instead of leading it
};

std::vector<CircuitOp> replacement_sequence(Direction dir, int s, int t) {
  if (dir == Direction::Forward) {
    // rotations lead, one trails: By_T+, Bz_S+, Bz_T+, BiSWAP, By_S-
    return {BilateralRot{gates::Axis::Y, +1, t}, BilateralRot{gates::Axis::Z, +1, s},
            BilateralRot{gates::Axis::Z, +1, t},
            BilateralGate{BilateralGate::Kind::BiSwap, s, t},
            BilateralRot{gates::Axis::Y, -1, s}};
  }
  // reversed placement: By_T+ leads, the rest follow the entangler
  return {BilateralRot{gates::Axis::Y, +1, t},
          BilateralGate{BilateralGate::Kind::BiSwap, s, t},
          BilateralRot{gates::Axis::Z, +1, t}, BilateralRot{gates::Axis::Z, +1, s},
          BilateralRot{gates::Axis::Y, -1, s}};
}

std::optional<std::vector<PauliFrame>> match_pair_frames(const ComplexMatrix& residual) {
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  const std::array<std::optional<gates::Axis>, 4> axes = {
      std::nullopt, gates::Axis::X, gates::Axis::Y, gates::Axis::Z};
  for (const auto& as : axes) {
    for (const auto& at : axes) {
      ComplexMatrix sa = as ? kron(gates::pauli(*as), gates::pauli(*as))
                            : ComplexMatrix(kron(id2, id2));
      ComplexMatrix st = at ? kron(gates::pauli(*at), gates::pauli(*at))
                            : ComplexMatrix(kron(id2, id2));
      ComplexMatrix cand = embed_gate(sa, {0, 2}, 4) * embed_gate(st, {1, 3}, 4);
      PhaseMatch pm = match_up_to_phase(residual, cand, 1e-10);
      if (!pm.equal) continue;
      std::vector<PauliFrame> frames;
      if (as) frames.push_back(PauliFrame{*as, 0, *pm.phase});
      if (at) frames.push_back(PauliFrame{*at, 1, as ? Complex{1, 0} : *pm.phase});
      return frames;
    }
  }
  return std::nullopt;
}

ReplacementFrames compute_frames(Direction dir) {
  Circuit unit;
  unit.pair_count = 2;
  unit.ops = {BilateralGate{BilateralGate::Kind::BCnot, 0, 1},
              BilateralGate{BilateralGate::Kind::BSwap, 0, 1}};
  Circuit seq;
  seq.pair_count = 2;
  seq.ops = replacement_sequence(dir, 0, 1);
  const ComplexMatrix target = ops_unitary(unit);
  const ComplexMatrix got = ops_unitary(seq);
  ReplacementFrames out;
  // got == target * residual: the frame precedes the sequence (input side)
  if (auto frames = match_pair_frames(ComplexMatrix(target.adjoint() * got))) {
    out.frames = *frames;
    out.at_end = false;
    return out;
  }
  // got == residual * target: the frame trails the sequence (output side)
  if (auto frames = match_pair_frames(ComplexMatrix(got * target.adjoint()))) {
    out.frames = *frames;
    out.at_end = true;
    return out;
  }
  throw std::runtime_error("replace_bcnot: residual is not a pair sign frame");
}

const ReplacementFrames& replacement_frames(Direction dir) {
  if (dir == Direction::Forward) {
    static const ReplacementFrames fwd = compute_frames(Direction::Forward);
    return fwd;
  }
  static const ReplacementFrames rev = compute_frames(Direction::Reversed);
  return rev;
}

}  // namespace

Circuit replace_bcnot(const Circuit& c, Direction dir) {
  c.validate();
  Circuit out;
  out.pair_count = c.pair_count;
  out.relabel = c.relabel;
  const ReplacementFrames& rf = replacement_frames(dir);
  for (size_t i = 0; i < c.ops.size(); ++i) {
    const auto* g = std::get_if<BilateralGate>(&c.ops[i]);
    if (!g || g->kind != BilateralGate::Kind::BCnot) {
      out.ops.push_back(c.ops[i]);
      continue;
    }
    const auto* nxt =
        i + 1 < c.ops.size() ? std::get_if<BilateralGate>(&c.ops[i + 1]) : nullptr;
    const bool swap_follows = nxt && nxt->kind == BilateralGate::Kind::BSwap &&
                              ((nxt->src == g->src && nxt->tgt == g->tgt) ||
                               (nxt->src == g->tgt && nxt->tgt == g->src));
    if (!swap_follows)
      throw std::invalid_argument("replace_bcnot: BCNOT without trailing BSWAP");
    const int s = g->src, t = g->tgt;
    auto emit_frames = [&] {
      for (const PauliFrame& f : rf.frames)
        out.ops.push_back(PauliFrame{f.axis, f.pair == 0 ? s : t, f.coeff});
    };
    if (!rf.at_end) emit_frames();
    for (CircuitOp op : replacement_sequence(dir, s, t)) out.ops.push_back(op);
    if (rf.at_end) emit_frames();
    ++i;  // consume the BSWAP
  }
  out.validate();
  return out;
}

namespace {

/// u sigma u^dag for a quarter-turn qubit gate u: always +-sigma'.
PauliFrame conjugate_frame(const PauliFrame& f, const BilateralRot& r) {
  const ComplexMatrix u = brot_qubit_matrix(r);
  const ComplexMatrix m = u * gates::pauli(f.axis) * u.adjoint();
  PauliMatch pm = match_single_pauli(m);
  if (pm.is_identity) throw std::runtime_error("conjugate_frame: degenerate");
  // pair-level coefficient is the square of the single-qubit one
  return PauliFrame{pm.axis, f.pair, f.coeff * pm.coeff * pm.coeff};
}

std::optional<PauliFrame> merge_frames(const PauliFrame& a, const PauliFrame& b) {
  const ComplexMatrix m = gates::pauli(b.axis) * gates::pauli(a.axis);
  PauliMatch pm = match_single_pauli(m);
  const Complex coeff = a.coeff * b.coeff * pm.coeff * pm.coeff;
  if (pm.is_identity) return std::nullopt;  // scalar: a pure global phase, dropped
  return PauliFrame{pm.axis, a.pair, coeff};
}

/// Doubled quarter turn collapses to a pair Pauli frame.
PauliFrame doubled_rotation_frame(const BilateralRot& r) {
  const ComplexMatrix u = brot_qubit_matrix(r);
  PauliMatch pm = match_single_pauli(ComplexMatrix(u * u));
  if (pm.is_identity) throw std::runtime_error("doubled_rotation_frame: identity");
  return PauliFrame{pm.axis, r.pair, pm.coeff * pm.coeff};
}

}  // namespace

Circuit contract_rotations(const Circuit& c) {
  Circuit out = c;
  bool changed = true;
  while (changed) {
    changed = false;

    // push frames to the right through rotations so they never block merges
    for (size_t i = 0; i + 1 < out.ops.size(); ++i) {
      const auto* f = std::get_if<PauliFrame>(&out.ops[i]);
      if (!f) continue;
      const CircuitOp& nxt = out.ops[i + 1];
      if (!touches_pair(nxt, f->pair)) {
        if (std::holds_alternative<PauliFrame>(nxt)) continue;  // keep frame order stable
        std::swap(out.ops[i], out.ops[i + 1]);
        changed = true;
        continue;
      }
      if (const auto* r = std::get_if<BilateralRot>(&nxt)) {
        PauliFrame moved = conjugate_frame(*f, *r);
        out.ops[i] = *r;
        out.ops[i + 1] = moved;
        changed = true;
      } else if (const auto* u = std::get_if<UnilateralPi>(&nxt)) {
        PauliFrame moved = *f;
        if (u->axis != f->axis) moved.coeff = -moved.coeff;
        out.ops[i] = *u;
        out.ops[i + 1] = moved;
        changed = true;
      } else if (const auto* f2 = std::get_if<PauliFrame>(&nxt)) {
        auto merged = merge_frames(*f, *f2);
        out.ops.erase(out.ops.begin() + i, out.ops.begin() + i + 2);
        if (merged) out.ops.insert(out.ops.begin() + i, *merged);
        changed = true;
      }
      if (changed) break;
    }
    if (changed) continue;

    // cancel or collapse rotation pairs separated only by disjoint ops
    for (size_t i = 0; i < out.ops.size() && !changed; ++i) {
      const auto* r1 = std::get_if<BilateralRot>(&out.ops[i]);
      if (!r1) continue;
      for (size_t j = i + 1; j < out.ops.size(); ++j) {
        if (!touches_pair(out.ops[j], r1->pair)) continue;
        const auto* r2 = std::get_if<BilateralRot>(&out.ops[j]);
        if (!r2 || r2->axis != r1->axis) break;
        if (r2->sign == -r1->sign) {
          out.ops.erase(out.ops.begin() + j);
          out.ops.erase(out.ops.begin() + i);
          changed = true;
        } else {
          PauliFrame f = doubled_rotation_frame(*r1);
          out.ops.erase(out.ops.begin() + j);
          out.ops[i] = f;
          changed = true;
        }
        break;
      }
    }
  }
  out.validate();
  return out;
}

Circuit rewrite_pipeline(const Circuit& c, Direction dir) {
  return contract_rotations(replace_bcnot(insert_swaps(c), dir));
}

// ---- templates ---------------------------------------------------------------

Circuit hashing_template(int n, const std::vector<int>& s) {
  if (n < 2) throw std::invalid_argument("hashing_template: need n >= 2 pairs");
  if (static_cast<int>(s.size()) != 2 * n)
    throw std::invalid_argument("hashing_template: subset string must have length 2n");
  for (int b : s)
    if (b != 0 && b != 1) throw std::invalid_argument("hashing_template: bits must be 0/1");

  Circuit c;
  c.pair_count = n;
  std::vector<int> contributing;
  for (int i = 0; i < n; ++i) {
    const int sa = s[2 * i], sp = s[2 * i + 1];
    if (sa == 0 && sp == 0) continue;
    contributing.push_back(i);
    if (sa == 0 && sp == 1) {
      c.ops.push_back(BilateralRot{gates::Axis::Y, +1, i});  // route the phase bit
    } else if (sa == 1 && sp == 1) {
      c.ops.push_back(BilateralRot{gates::Axis::X, +1, i});  // route the bit sum
      c.ops.push_back(UnilateralPi{gates::Axis::X, Party::Alice, i});
    }
  }
  if (contributing.empty()) return c;  // vacuous round
  const int m = contributing.back();
  for (int i : contributing)
    if (i != m) c.ops.push_back(BilateralGate{BilateralGate::Kind::BCnot, i, m});
  c.ops.push_back(MeasureZ{Wire{Party::Alice, m}});
  c.ops.push_back(MeasureZ{Wire{Party::Bob, m}});
  c.validate();
  return c;
}

int hashing_parity(const std::vector<int>& x, const std::vector<int>& s) {
  if (x.size() != s.size() || x.size() % 2 != 0)
    throw std::invalid_argument("hashing_parity: need equal even lengths");
  int p = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    if ((x[i] != 0 && x[i] != 1) || (s[i] != 0 && s[i] != 1))
      throw std::invalid_argument("hashing_parity: bits must be 0/1");
    p ^= x[i] & s[i];
  }
  return p;
}

Circuit breeding_template(int n_impure) {
  if (n_impure < 2) throw std::invalid_argument("breeding_template: need >= 2 impure pairs");
  Circuit c;
  c.pair_count = n_impure + 1;  // last pair is the pre-shared pure ancilla
  const int anc = n_impure;
  for (int i = 0; i < n_impure; ++i)
    c.ops.push_back(BilateralGate{BilateralGate::Kind::BCnot, i, anc});
  c.ops.push_back(BilateralGate{BilateralGate::Kind::BCnot, anc, 0});
  c.ops.push_back(MeasureZ{Wire{Party::Alice, anc}});
  c.ops.push_back(MeasureZ{Wire{Party::Bob, anc}});
  c.validate();
  return c;
}

// ---- equivalence ---------------------------------------------------------------

EquivalenceResult check_rewrite_equivalence(const Circuit& original,
                                            const Circuit& rewritten, double tol) {
  if (original.pair_count != rewritten.pair_count)
    throw std::invalid_argument("check_rewrite_equivalence: pair counts differ");
  if (original.pair_count > 3)
    throw std::invalid_argument("check_rewrite_equivalence: unsupported size (max 3 pairs)");

  SplitCircuit so = split_measurements(original);
  SplitCircuit sr = split_measurements(rewritten);

  // measured wires must coincide after undoing the relabelings
  auto logical_measured = [](const Circuit& c, const std::vector<Wire>& measured) {
    const auto home = c.relabel_or_identity();
    std::multiset<std::pair<int, int>> out;
    for (const Wire& w : measured) {
      int logical = -1;
      for (int j = 0; j < c.pair_count; ++j)
        if (home[j] == w.pair) logical = j;
      out.insert({w.party == Party::Alice ? 0 : 1, logical});
    }
    return out;
  };
  if (logical_measured(original, so.measured) != logical_measured(rewritten, sr.measured))
    return {false, 1.0};

  const ComplexMatrix uo = circuit_unitary(so.prefix);
  const ComplexMatrix ur = circuit_unitary(sr.prefix);
  PhaseMatch pm = match_up_to_phase(uo, ur, tol);
  return {pm.equal, pm.residual};
}

// ---- reports -------------------------------------------------------------------

int GateCounts::gates() const {
  return bcnot + bswap + biswap + bilateral_rotations + unilateral + wire_two_qubit +
         wire_single;
}

int GateCounts::two_qubit_iswap_units() const {
  // per party: CNOT-class gates cost two XY pulses, swaps six, native ones one
  return 2 * bcnot + 6 * bswap + biswap + wire_two_qubit_units;
}

GateCounts count_gates(const Circuit& c) {
  GateCounts g;
  for (const auto& op : c.ops) {
    if (const auto* b = std::get_if<BilateralGate>(&op)) {
      if (b->kind == BilateralGate::Kind::BCnot) ++g.bcnot;
      else if (b->kind == BilateralGate::Kind::BSwap) ++g.bswap;
      else ++g.biswap;
    } else if (std::holds_alternative<BilateralRot>(op)) {
      ++g.bilateral_rotations;
    } else if (std::holds_alternative<UnilateralPi>(op)) {
      ++g.unilateral;
    } else if (std::holds_alternative<PauliFrame>(op)) {
      ++g.frames;
    } else if (const auto* w = std::get_if<WireGate>(&op)) {
      const bool two = w->kind != WireGate::Kind::Rot && w->kind != WireGate::Kind::Had;
      if (two) {
        ++g.wire_two_qubit;
        switch (w->kind) {
          case WireGate::Kind::Cnot:
          case WireGate::Kind::Cpf: g.wire_two_qubit_units += 2; break;
          case WireGate::Kind::Swap: g.wire_two_qubit_units += 6; break;
          default: g.wire_two_qubit_units += 1; break;
        }
      } else {
        ++g.wire_single;
      }
    } else if (std::holds_alternative<MeasureZ>(op)) {
      ++g.measurements;
    }
  }
  return g;
}

RewriteReport make_report(const Circuit& before, const Circuit& after) {
  RewriteReport r;
  r.before = count_gates(before);
  r.after = count_gates(after);
  r.pair_count = before.pair_count;
  return r;
}

std::string report_json(const RewriteReport& r) {
  using nlohmann::json;
  auto counts = [](const GateCounts& g) {
    return json{{"bcnot", g.bcnot},
                {"bswap", g.bswap},
                {"biswap", g.biswap},
                {"bilateral_rotations", g.bilateral_rotations},
                {"unilateral_rotations", g.unilateral},
                {"wire_two_qubit", g.wire_two_qubit},
                {"wire_single", g.wire_single},
                {"measurements", g.measurements},
                {"frames", g.frames},
                {"gates_total", g.gates()},
                {"two_qubit_iswap_units", g.two_qubit_iswap_units()}};
  };
  json j{{"pairs", r.pair_count}, {"before", counts(r.before)}, {"after", counts(r.after)}};
  return j.dump(2);
}

}  // namespace qpurify::rewrite
