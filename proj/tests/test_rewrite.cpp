#include <random>

#include "doctest.h"
#include "qpurify/rewrite.hpp"

using namespace qpurify;
using namespace qpurify::rewrite;
using bell::BellLabel;

namespace {

Circuit single_bcnot() {
  Circuit c;
  c.pair_count = 2;
  c.ops = {BilateralGate{BilateralGate::Kind::BCnot, 0, 1}};
  return c;
}

std::vector<int> bits_of(int value, int width) {
  std::vector<int> v(width);
  for (int i = 0; i < width; ++i) v[i] = (value >> (width - 1 - i)) & 1;
  return v;
}

BellLabel label_of_bits(int a, int p) {
  return bell::bell_from_bits((a << 1) | p);
}

std::vector<BellLabel> labels_from_bits(const std::vector<int>& x) {
  std::vector<BellLabel> out;
  for (size_t i = 0; i + 1 < x.size(); i += 2) out.push_back(label_of_bits(x[i], x[i + 1]));
  return out;
}

}  // namespace

TEST_CASE("text format round-trips bit-exactly") {
  Circuit c;
  c.pair_count = 3;
  c.ops = {
      BilateralRot{gates::Axis::Y, +1, 0},
      UnilateralPi{gates::Axis::X, Party::Bob, 1},
      BilateralGate{BilateralGate::Kind::BCnot, 0, 2},
      BilateralGate{BilateralGate::Kind::BiSwap, 1, 2},
      PauliFrame{gates::Axis::Z, 1, Complex(-1.0, 0.0)},
      WireGate{WireGate::Kind::XY, Wire{Party::Alice, 0}, Wire{Party::Alice, 1},
               1.234567891234567, gates::Axis::Z},
      WireGate{WireGate::Kind::Rot, Wire{Party::Bob, 2}, Wire{}, 0.7853981633974483,
               gates::Axis::Y},
      MeasureZ{Wire{Party::Alice, 2}},
      MeasureZ{Wire{Party::Bob, 2}},
  };
  c.relabel = {2, 1, 0};
  const std::string text = to_text(c);
  Circuit back = circuit_from_text(text);
  CHECK(back == c);
  CHECK(to_text(back) == text);
}

TEST_CASE("parser reports the offending line") {
  try {
    circuit_from_text("PAIRS 2\nBROT q + 0\n");
    FAIL("expected a parse error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(circuit_from_text("BROT x + 0\n"), std::invalid_argument);
  CHECK(circuit_from_text("").ops.empty());
}

TEST_CASE("validation rejects malformed circuits") {
  Circuit c;
  c.pair_count = 2;
  c.ops = {MeasureZ{Wire{Party::Alice, 0}}, BilateralRot{gates::Axis::X, +1, 0}};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);  // gate after measurement

  Circuit d;
  d.pair_count = 2;
  d.ops = {BilateralGate{BilateralGate::Kind::BCnot, 0, 5}};
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);

  Circuit e;
  e.pair_count = 2;
  e.relabel = {0, 0};
  CHECK_THROWS_AS(e.validate(), std::invalid_argument);
}

TEST_CASE("insert_swaps appends a bswap per bcnot and rewires") {
  Circuit c = single_bcnot();
  Circuit s = insert_swaps(c);
  REQUIRE(s.ops.size() == 2);
  CHECK(std::get<BilateralGate>(s.ops[1]).kind == BilateralGate::Kind::BSwap);
  CHECK(s.relabel == std::vector<int>{1, 0});
  auto eq = check_rewrite_equivalence(c, s, 1e-12);
  CHECK(eq.equivalent);

  Circuit none;
  none.pair_count = 2;
  none.ops = {BilateralRot{gates::Axis::X, +1, 0}};
  Circuit after = insert_swaps(none);
  CHECK(after.ops == none.ops);

  Circuit breed = breeding_template(2);
  Circuit sb = insert_swaps(breed);
  CHECK(count_gates(sb).bswap == 3);
  CHECK(check_rewrite_equivalence(breed, sb, 1e-12).equivalent);
}

TEST_CASE("replace_bcnot emits the rotation plus biswap unit") {
  Circuit s = insert_swaps(single_bcnot());
  Circuit r = replace_bcnot(s);
  GateCounts g = count_gates(r);
  CHECK(g.bcnot == 0);
  CHECK(g.bswap == 0);
  CHECK(g.biswap == 1);
  CHECK(g.bilateral_rotations == 4);
  CHECK(g.frames == 1);
  CHECK(r.relabel == std::vector<int>{1, 0});

  // structure: By_T+, Bz_S+, Bz_T+, BiSWAP, By_S-
  size_t idx = 0;
  while (std::holds_alternative<PauliFrame>(r.ops[idx])) ++idx;
  auto rot0 = std::get<BilateralRot>(r.ops[idx]);
  CHECK(rot0.axis == gates::Axis::Y);
  CHECK(rot0.sign == +1);
  CHECK(rot0.pair == 1);
  auto rot3 = std::get<BilateralRot>(r.ops.back());
  CHECK(rot3.axis == gates::Axis::Y);
  CHECK(rot3.sign == -1);
  CHECK(rot3.pair == 0);

  CHECK(check_rewrite_equivalence(single_bcnot(), r, 1e-12).equivalent);

  CHECK_THROWS_AS(replace_bcnot(single_bcnot()), std::invalid_argument);

  Circuit empty;
  empty.pair_count = 2;
  CHECK(replace_bcnot(empty).ops.empty());
}

TEST_CASE("reversed replacement is equivalent too") {
  Circuit r = replace_bcnot(insert_swaps(single_bcnot()), Direction::Reversed);
  CHECK(count_gates(r).bcnot == 0);
  CHECK(count_gates(r).biswap == 1);
  CHECK(check_rewrite_equivalence(single_bcnot(), r, 1e-12).equivalent);
  // reversed placement: a single rotation leads, the others trail the entangler
  int before = 0, after = 0;
  bool seen_biswap = false;
  for (const auto& op : r.ops) {
    if (std::holds_alternative<BilateralGate>(op)) seen_biswap = true;
    else if (std::holds_alternative<BilateralRot>(op)) (seen_biswap ? after : before)++;
  }
  CHECK(before == 1);
  CHECK(after == 3);
}

TEST_CASE("contract_rotations removes inverse pairs exactly") {
  Circuit c;
  c.pair_count = 2;
  c.ops = {BilateralRot{gates::Axis::Z, +1, 0}, BilateralRot{gates::Axis::Z, -1, 0}};
  Circuit out = contract_rotations(c);
  CHECK(out.ops.empty());

  c.ops = {BilateralRot{gates::Axis::Z, +1, 0}, BilateralRot{gates::Axis::X, +1, 1},
           BilateralRot{gates::Axis::Z, -1, 0}};
  out = contract_rotations(c);
  CHECK(count_gates(out).bilateral_rotations == 1);
}

TEST_CASE("doubled quarter turns become recorded frames") {
  Circuit c;
  c.pair_count = 2;
  c.ops = {BilateralRot{gates::Axis::Y, +1, 0}, BilateralRot{gates::Axis::Y, +1, 0}};
  Circuit out = contract_rotations(c);
  CHECK(count_gates(out).bilateral_rotations == 0);
  REQUIRE(count_gates(out).frames == 1);
  CHECK(check_rewrite_equivalence(c, out, 1e-12).equivalent);
}

TEST_CASE("contraction never increases the gate count") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> axis(0, 2), sign(0, 1), pair(0, 1), len(0, 10);
  for (int trial = 0; trial < 50; ++trial) {
    Circuit c;
    c.pair_count = 2;
    const int n = len(rng);
    for (int k = 0; k < n; ++k)
      c.ops.push_back(BilateralRot{static_cast<gates::Axis>(axis(rng)),
                                   sign(rng) ? +1 : -1, pair(rng)});
    Circuit out = contract_rotations(c);
    CHECK(count_gates(out).gates() <= count_gates(c).gates());
    CHECK(check_rewrite_equivalence(c, out, 1e-10).equivalent);
  }
}

TEST_CASE("pipeline on random bcnot circuits preserves the unitary") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> len(1, 6), dir(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    Circuit c;
    c.pair_count = 2;
    const int n = len(rng);
    for (int k = 0; k < n; ++k) {
      const int s = dir(rng);
      c.ops.push_back(BilateralGate{BilateralGate::Kind::BCnot, s, 1 - s});
    }
    Circuit r = rewrite_pipeline(c);
    GateCounts g = count_gates(r);
    CHECK(g.bcnot == 0);
    CHECK(g.bswap == 0);
    CHECK(g.biswap == n);
    auto eq = check_rewrite_equivalence(c, r, 1e-10);
    INFO("trial ", trial, " residual ", eq.residual);
    CHECK(eq.equivalent);
  }
}

TEST_CASE("hashing template structure") {
  Circuit c = hashing_template(2, {0, 0, 0, 0});
  CHECK(c.ops.empty());

  c = hashing_template(2, {1, 0, 0, 0});
  CHECK(count_gates(c).bcnot == 0);
  CHECK(count_gates(c).measurements == 2);

  c = hashing_template(2, {1, 0, 1, 0});
  CHECK(count_gates(c).bcnot == 1);

  c = hashing_template(2, {0, 1, 1, 0});
  CHECK(count_gates(c).bilateral_rotations == 1);

  c = hashing_template(2, {1, 1, 1, 0});
  CHECK(count_gates(c).bilateral_rotations == 1);
  CHECK(count_gates(c).unilateral == 1);

  CHECK_THROWS_AS(hashing_template(1, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(hashing_template(2, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(hashing_template(2, {2, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("hashing parity oracle basics") {
  CHECK(hashing_parity({1, 1, 0, 0}, {0, 0, 0, 0}) == 0);
  CHECK(hashing_parity({1, 1, 0, 0}, {1, 0, 0, 0}) == 1);   // single-bit overlap
  CHECK(hashing_parity({1, 0, 1, 0}, {1, 0, 1, 0}) == 0);
  CHECK(hashing_parity({1, 1, 1, 1}, {1, 1, 1, 1}) == 0);
  CHECK(hashing_parity({1, 1, 1, 1}, {1, 1, 1, 0}) == 1);
  CHECK_THROWS_AS(hashing_parity({1, 0}, {1, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(hashing_parity({1, 0, 2, 0}, {1, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("bit-level parity agrees with the statevector simulation") {
  for (int xv = 0; xv < 16; ++xv) {
    const std::vector<int> x = bits_of(xv, 4);
    const std::vector<BellLabel> labels = labels_from_bits(x);
    for (int sv = 0; sv < 16; ++sv) {
      const std::vector<int> s = bits_of(sv, 4);
      Circuit plain = hashing_template(2, s);
      const int want = hashing_parity(x, s);
      INFO("x=", xv, " s=", sv);
      CHECK(simulate_measured_parity(plain, labels) == want);
      Circuit rewritten = rewrite_pipeline(plain);
      CHECK(simulate_measured_parity(rewritten, labels) == want);
    }
  }
}

TEST_CASE("hashing rewrites are unitary equivalent for every subset") {
  for (int sv = 0; sv < 16; ++sv) {
    const std::vector<int> s = bits_of(sv, 4);
    Circuit plain = hashing_template(2, s);
    Circuit rewritten = rewrite_pipeline(plain);
    GateCounts g = count_gates(rewritten);
    CHECK(g.bcnot == 0);
    CHECK(g.bswap == 0);
    CHECK(g.wire_two_qubit == 0);
    auto eq = check_rewrite_equivalence(plain, rewritten, 1e-10);
    INFO("s=", sv, " residual=", eq.residual);
    CHECK(eq.equivalent);
  }
}

TEST_CASE("breeding template and its rewrite") {
  Circuit breed = breeding_template(2);
  CHECK(breed.pair_count == 3);
  GateCounts g = count_gates(breed);
  CHECK(g.bcnot == 3);
  CHECK(g.measurements == 2);  // only the ancilla pair is read out
  for (const auto& op : breed.ops)
    if (const auto* m = std::get_if<MeasureZ>(&op)) CHECK(m->w.pair == 2);

  Circuit r = rewrite_pipeline(breed);
  GateCounts gr = count_gates(r);
  CHECK(gr.bcnot == 0);
  CHECK(gr.bswap == 0);
  CHECK(gr.biswap == 3);
  SplitCircuit sr = split_measurements(r);
  CHECK(sr.measured.size() == 2);
  CHECK(gr.bilateral_rotations < 12);  // the By series contracts
  auto eq = check_rewrite_equivalence(breed, r, 1e-10);
  INFO("residual=", eq.residual);
  CHECK(eq.equivalent);

  CHECK_THROWS_AS(breeding_template(1), std::invalid_argument);
}

TEST_CASE("breeding parity before and after rewriting") {
  // ancilla prepared pure (Phi+); the readout reveals the amplitude parity
  // of the impure pairs (the reverse link only feeds the phase side)
  Circuit breed = breeding_template(2);
  Circuit r = rewrite_pipeline(breed);
  for (int xv = 0; xv < 16; ++xv) {
    const std::vector<int> x = bits_of(xv, 4);
    std::vector<BellLabel> labels = labels_from_bits(x);
    labels.push_back(BellLabel::PhiPlus);
    const int want = x[0] ^ x[2];  // amplitude bits of the impure pairs
    CHECK(simulate_measured_parity(breed, labels) == want);
    CHECK(simulate_measured_parity(r, labels) == want);
  }
}

TEST_CASE("two-qubit cost halves per bcnot") {
  for (int sv : {0b1010, 0b0111, 0b1111}) {
    Circuit plain = hashing_template(2, bits_of(sv, 4));
    Circuit rewritten = rewrite_pipeline(plain);
    RewriteReport rep = make_report(plain, rewritten);
    CHECK(rep.before.two_qubit_iswap_units() == 2 * rep.before.bcnot);
    CHECK(rep.after.two_qubit_iswap_units() == rep.before.bcnot);
    const std::string j = report_json(rep);
    CHECK(j.find("two_qubit_iswap_units") != std::string::npos);
  }
}

TEST_CASE("circuit unitary basics") {
  Circuit c;
  c.pair_count = 2;
  c.ops = {BilateralGate{BilateralGate::Kind::BiSwap, 0, 1}};
  ComplexMatrix u = circuit_unitary(c);
  CHECK(is_unitary(u, 1e-12));

  Circuit empty;
  empty.pair_count = 2;
  CHECK(max_abs_diff(circuit_unitary(empty), ComplexMatrix::Identity(16, 16)) == 0.0);

  Circuit big;
  big.pair_count = 4;
  CHECK_THROWS_AS(circuit_unitary(big), std::invalid_argument);

  Circuit h = hashing_template(2, {1, 0, 1, 0});
  auto eq = check_rewrite_equivalence(h, h, 1e-12);
  CHECK(eq.equivalent);
  CHECK(eq.residual == 0.0);
}

TEST_CASE("equivalence check rejects measured-wire mismatches") {
  Circuit a = hashing_template(2, {1, 0, 1, 0});  // measures pair 1
  Circuit b = hashing_template(2, {1, 0, 0, 0});  // measures pair 0
  CHECK(!check_rewrite_equivalence(a, b, 1e-10).equivalent);
}
