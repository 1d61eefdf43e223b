// Acceptance suite: runs every verification criterion end to end and prints
// one PASS/FAIL line per criterion.  Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qpurify/bellgen.hpp"
#include "qpurify/hardware.hpp"
#include "qpurify/nqubit.hpp"
#include "qpurify/purify.hpp"
#include "qpurify/rewrite.hpp"

using namespace qpurify;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s  criterion %2d: %s  [%s]\n", ok ? "PASS" : "FAIL", criterion,
              name.c_str(), detail.c_str());
  if (!ok) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double elapsed_s(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. the six gate identities, residual < 1e-12 after a global phase fit
void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  bool ok = true;
  for (gates::Identity id : gates::all_identities()) {
    gates::IdentityCheck c = gates::check_identity(id, 1e-12);
    worst = std::max(worst, c.residual);
    ok = ok && c.holds;
  }
  const double dt = elapsed_s(t0);
  ok = ok && dt < 1.0;
  report(1, "gate identities", ok,
         "worst residual " + fmt(worst) + ", " + fmt(dt) + " s");
}

// 2. rotation truth table, all 24 entries with exact labels and phases
void criterion_2() {
  std::string err = bell::compare(bell::generate_rotation_table(),
                                  bell::rotation_table_reference(), 1e-9);
  report(2, "rotation table (24 entries)", err.empty(), err.empty() ? "exact" : err);
}

// 3. replacement table, 16 rows x 4 steps, plus the 16x16 operator identity
void criterion_3() {
  std::string err = bell::compare(bell::generate_deutsch_table(),
                                  bell::deutsch_table_reference(), 1e-9);
  bool ok = err.empty();
  std::string detail = ok ? "table exact" : err;

  using bell::BilateralOp;
  auto rot_op = [](BilateralOp::Kind k, int sign, BilateralOp::Selector sel) {
    BilateralOp op;
    op.kind = k;
    op.sign = sign;
    op.selector = sel;
    return op;
  };
  ComplexMatrix seq = ComplexMatrix::Identity(16, 16);
  for (const BilateralOp& op :
       {rot_op(BilateralOp::Kind::RotY, +1, BilateralOp::Selector::T),
        rot_op(BilateralOp::Kind::RotZ, +1, BilateralOp::Selector::Both),
        BilateralOp{BilateralOp::Kind::BiSwap},
        rot_op(BilateralOp::Kind::RotY, -1, BilateralOp::Selector::S)})
    seq = bell::bilateral_unitary(op) * seq;
  PhaseMatch m = match_up_to_phase(
      ComplexMatrix(bell::bswap_unitary() * bell::bcnot_truth_operator()), seq, 1e-12);
  ok = ok && m.equal;
  detail += ", operator residual " + fmt(m.residual);
  report(3, "replacement table + operator identity", ok, detail);
}

// 4. purification table and the fidelity recursion bookkeeping
void criterion_4() {
  std::string err = bell::compare(bell::generate_bennett_table(),
                                  bell::bennett_table_reference(), 1e-9);
  bool ok = err.empty();
  std::string detail = ok ? "table exact" : err;

  double worst_f = 0.0, worst_p = 0.0;
  for (int k = 0; k <= 10; ++k) {
    const double f = (10 + k) / 20.0;
    purify::RoundResult want = purify::bennett_round_analytic(f);
    purify::PairDensity rho(purify::to_density(purify::werner(f)));
    purify::RoundResult got =
        purify::bennett_round_oracle(rho, rho, purify::Variant::A, purify::PulseError(0));
    worst_f = std::max(worst_f, std::abs(got.reference_fidelity - want.reference_fidelity));
    worst_p = std::max(worst_p, std::abs(got.pass_probability - want.pass_probability));
  }
  ok = ok && worst_f < 1e-12 && worst_p < 1e-12;
  detail += ", |dF'| " + fmt(worst_f) + ", |dp| " + fmt(worst_p);
  report(4, "purification table + recursion", ok, detail);
}

// 5. pulse-error recursion and the breakeven threshold
void criterion_5() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int k = 0; k <= 10; ++k) {
    const double f = (10 + k) / 20.0;
    for (double eps : {0.0, 0.02, 0.05, 0.1}) {
      purify::RoundResult want = purify::bennett_round_with_error(f, purify::PulseError(eps));
      purify::PairDensity rho(purify::to_density(purify::werner(f)));
      for (purify::Variant v : {purify::Variant::A, purify::Variant::B}) {
        purify::RoundResult got =
            purify::bennett_round_oracle(rho, rho, v, purify::PulseError(eps));
        worst = std::max(worst, std::abs(got.reference_fidelity - want.reference_fidelity));
      }
    }
  }
  const bool oracle_ok = worst < 1e-10;

  const double be = purify::breakeven_fidelity(purify::PulseError(0.05));
  const double target = 0.5 + 3 * 0.05 * 0.05;
  const double gap = std::abs(be - target);
  const bool breakeven_ok = gap < 1e-4;
  const double dt = elapsed_s(t0);

  report(5, "pulse-error recursion + breakeven", oracle_ok && breakeven_ok && dt < 5.0,
         "worst |dF'| " + fmt(worst) + "; breakeven(0.05) " + fmt(be) + " vs " +
             fmt(target) + " gap " + fmt(gap) + (breakeven_ok ? "" : " > 1e-4") + "; " +
             fmt(dt) + " s");
}

// 6. CPF rules against the bilateral CPF unitary, and the CPF round recursion
void criterion_6() {
  bool ok = true;
  std::string detail;
  const ComplexMatrix bcpf =
      embed_gate(gates::cpf(), {0, 1}, 4) * embed_gate(gates::cpf(), {2, 3}, 4);
  for (bell::BellLabel s : bell::kAllBells) {
    for (bell::BellLabel t : bell::kAllBells) {
      bell::BellProduct want = purify::cpf_rule(s, t);
      auto got = bell::classify_bell_product(
          bell::TwoPairState(bcpf * bell::bell_pair_product(s, t)));
      const bool row_ok = got.is_product && got.product.source.label == want.source.label &&
                          got.product.target == want.target &&
                          std::abs(got.product.source.phase - want.source.phase) < 1e-12;
      if (!row_ok && ok) {
        ok = false;
        detail = "rule mismatch at " + bell::to_string(s) + "," + bell::to_string(t);
      }
    }
  }
  double worst = 0.0;
  for (int k = 0; k <= 10; ++k) {
    const double f = (10 + k) / 20.0;
    worst = std::max(worst, std::abs(purify::cpf_round(f).reference_fidelity -
                                     purify::bennett_round_analytic(f).reference_fidelity));
  }
  ok = ok && worst < 1e-12;
  if (detail.empty()) detail = "rules exact, worst |dF'| " + fmt(worst);
  report(6, "CPF rules + CPF round", ok, detail);
}

// 7. rewrite equivalence, gate classes, and the two-qubit cost drop
void criterion_7() {
  bool ok = true;
  double worst = 0.0;
  std::string detail;
  for (int sv = 0; sv < 16; ++sv) {
    std::vector<int> s(4);
    for (int i = 0; i < 4; ++i) s[i] = (sv >> (3 - i)) & 1;
    rewrite::Circuit plain = rewrite::hashing_template(2, s);
    rewrite::Circuit rewritten = rewrite::rewrite_pipeline(plain);
    auto eq = rewrite::check_rewrite_equivalence(plain, rewritten, 1e-10);
    worst = std::max(worst, eq.residual);
    rewrite::GateCounts g = rewrite::count_gates(rewritten);
    rewrite::GateCounts g0 = rewrite::count_gates(plain);
    ok = ok && eq.equivalent && g.bcnot == 0 && g.bswap == 0 && g.wire_two_qubit == 0 &&
         g.two_qubit_iswap_units() == g0.bcnot &&
         g0.two_qubit_iswap_units() == 2 * g0.bcnot;
  }
  rewrite::Circuit breed = rewrite::breeding_template(2);
  rewrite::Circuit rb = rewrite::rewrite_pipeline(breed);
  auto eq = rewrite::check_rewrite_equivalence(breed, rb, 1e-10);
  worst = std::max(worst, eq.residual);
  rewrite::GateCounts g = rewrite::count_gates(rb);
  ok = ok && eq.equivalent && g.bcnot == 0 && g.bswap == 0 && g.biswap == 3;
  report(7, "rewrite equivalence (hashing + breeding)", ok,
         "worst residual " + fmt(worst) + ", 2-qubit cost 2->1 per BCNOT");
}

// 8. bit-level parity oracle vs statevector simulation, all 256 cases
void criterion_8() {
  int checked = 0;
  bool ok = true;
  for (int xv = 0; xv < 16 && ok; ++xv) {
    std::vector<int> x(4);
    for (int i = 0; i < 4; ++i) x[i] = (xv >> (3 - i)) & 1;
    std::vector<bell::BellLabel> labels = {bell::bell_from_bits((x[0] << 1) | x[1]),
                                           bell::bell_from_bits((x[2] << 1) | x[3])};
    for (int sv = 0; sv < 16 && ok; ++sv) {
      std::vector<int> s(4);
      for (int i = 0; i < 4; ++i) s[i] = (sv >> (3 - i)) & 1;
      const int want = rewrite::hashing_parity(x, s);
      rewrite::Circuit plain = rewrite::hashing_template(2, s);
      ok = ok && rewrite::simulate_measured_parity(plain, labels) == want;
      ok = ok && rewrite::simulate_measured_parity(rewrite::rewrite_pipeline(plain),
                                                   labels) == want;
      ++checked;
    }
  }
  report(8, "hashing parity cross-check", ok,
         std::to_string(checked) + "/256 cases, pre- and post-rewrite");
}

// 9. the eight single-interaction Bell recipes and their rotation budgets
void criterion_9() {
  bool ok = true;
  double worst = 1.0;
  for (bellgen::Entangler ent : {bellgen::Entangler::ISwap, bellgen::Entangler::SqrtSwap}) {
    for (bell::BellLabel target : bell::kAllBells) {
      bellgen::BellRecipe r = bellgen::recipe_for(target, ent);
      bellgen::Execution e = bellgen::execute_recipe(r);
      worst = std::min(worst, e.fidelity_to_target);
      const int slots = bellgen::rotation_slots_from_zero(r);
      ok = ok && std::abs(e.fidelity_to_target - 1.0) < 1e-12 &&
           bellgen::two_qubit_gate_count(r) == 1 &&
           slots == (ent == bellgen::Entangler::ISwap ? 2 : 3);
    }
  }
  report(9, "Bell generation recipes", ok, "worst fidelity " + fmt(worst));
}

// 10. timing reproduction for the four device presets
void criterion_10() {
  bool ok = true;
  std::string detail;
  auto approx = [](double got, double want, double rel) {
    return std::abs(got - want) <= rel * std::abs(want);
  };
  {
    hardware::TimingReport r = hardware::protocol_times(hardware::preset_by_name("sc-charge"));
    ok = ok && approx(*r.tau_iswap, 6.25e-9, 1e-12) && approx(r.tau_rot, 125e-12, 1e-12) &&
         approx(*r.tau_puri_bcnot, 13.125e-9, 1e-12) &&
         approx(*r.tau_puri_biswap, 6.75e-9, 1e-12);
  }
  {
    hardware::TimingReport r = hardware::protocol_times(hardware::preset_by_name("flux"));
    ok = ok && approx(*r.tau_iswap, 5e-9, 1e-12) &&
         approx(*r.tau_puri_bcnot, 10.625e-9, 1e-12) &&
         approx(*r.tau_puri_biswap, 5.5e-9, 1e-12);
  }
  {
    hardware::TimingReport r = hardware::protocol_times(hardware::preset_by_name("qd-charge"));
    ok = ok && approx(*r.tau_puri_bcnot, 85.3e-12, 0.005) &&
         approx(*r.tau_puri_biswap, 48.7e-12, 0.005);
    if (!ok && detail.empty()) detail = "qd-charge off";
  }
  {
    hardware::TimingReport r = hardware::protocol_times(hardware::preset_by_name("qd-cavity"));
    ok = ok && approx(*r.tau_puri_biswap, 70e-12, 1e-12) && r.documented_discrepancy;
  }
  for (const auto& p : hardware::builtin_presets()) {
    hardware::TimingReport r = hardware::protocol_times(p);
    if (r.tau_puri_bcnot) {
      ok = ok && *r.dtau_puri_adv == *r.tau_puri_bcnot - *r.tau_puri_biswap;
      ok = ok && *r.dtau_bell_iswap == *r.tau_bell_cnot - *r.tau_bell_iswap;
    }
  }
  if (detail.empty()) detail = "all presets reproduce the published numbers";
  report(10, "timing reproduction", ok, detail);
}

// 11. Jaynes-Cummings validation of the effective coupling
void criterion_11() {
  const auto t0 = std::chrono::steady_clock::now();
  auto params = [](double alpha) {
    hardware::JCParams p;
    p.omega_q1 = p.omega_q2 = 5e9;
    p.omega_cavity = 6e9;
    p.chi1 = p.chi2 = alpha * 1e9;
    p.fock_cutoff = 5;
    return p;
  };
  hardware::JCValidation v05 = hardware::jc_validate(params(0.05));
  const double e02 = hardware::jc_validate(params(0.02)).relative_error;
  const double e05 = v05.relative_error;
  const double e10 = hardware::jc_validate(params(0.10)).relative_error;
  const double dt = elapsed_s(t0);
  const bool ok = e05 < 0.02 && e02 < e05 && e05 < e10 && dt < 30.0;
  report(11, "JC exchange-frequency validation", ok,
         "rel err(0.02/0.05/0.10) = " + fmt(e02) + "/" + fmt(e05) + "/" + fmt(e10) +
             ", " + fmt(dt) + " s");
}

// 12. byte-identical CLI outputs across repeated runs
void criterion_12() {
  const char* bin = std::getenv("QPURIFY_BIN");
  if (!bin) {
    report(12, "CLI determinism", false, "QPURIFY_BIN not set");
    return;
  }
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  char tmpl[] = "/tmp/qpurify_accept_XXXXXX";
  const char* dir = mkdtemp(tmpl);
  if (!dir) {
    report(12, "CLI determinism", false, "mkdtemp failed");
    return;
  }
  const std::string d(dir);
  bool ok = true;
  {
    const std::string cmd = std::string(bin) +
                            " purify --f0 0.6 0.7 0.8 --eps 0 0.05 --target 0.999 "
                            "--max-rounds 40 --out ";
    ok = ok && std::system((cmd + d + "/p1.csv").c_str()) == 0;
    ok = ok && std::system((cmd + d + "/p2.csv").c_str()) == 0;
    ok = ok && !slurp(d + "/p1.csv").empty() &&
         slurp(d + "/p1.csv") == slurp(d + "/p2.csv");
  }
  {
    const std::string cmd =
        std::string(bin) + " timing --preset qd-charge --json ";
    ok = ok && std::system((cmd + d + "/t1.json > /dev/null").c_str()) == 0;
    ok = ok && std::system((cmd + d + "/t2.json > /dev/null").c_str()) == 0;
    ok = ok && !slurp(d + "/t1.json").empty() &&
         slurp(d + "/t1.json") == slurp(d + "/t2.json");
  }
  report(12, "CLI determinism", ok, ok ? "purify + timing byte-identical" : "mismatch");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  if (g_failures == 0) {
    std::printf("acceptance: all 12 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return 1;
}
