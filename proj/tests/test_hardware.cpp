#include <cmath>

#include "doctest.h"
#include "qpurify/hardware.hpp"

using namespace qpurify;
using namespace qpurify::hardware;

TEST_CASE("gate times for the published presets") {
  HardwarePreset sc = preset_by_name("sc-charge");
  GateTimes t = gate_times(sc);
  CHECK(*t.tau_iswap == doctest::Approx(6.25e-9).epsilon(1e-12));
  CHECK(t.tau_rot == doctest::Approx(125e-12).epsilon(1e-12));

  HardwarePreset flux = preset_by_name("flux");
  t = gate_times(flux);
  CHECK(*t.tau_iswap == doctest::Approx(5e-9).epsilon(1e-12));

  // meV couplings under the cyclic reading: tau = pi/(4 E/h)
  HardwarePreset qd = preset_by_name("qd-charge");
  t = gate_times(qd);
  CHECK(*t.tau_iswap == doctest::Approx(M_PI * kPlanckEvS / (4 * 1e-4)).epsilon(1e-12));
  CHECK(*t.tau_iswap == doctest::Approx(32.48e-12).epsilon(1e-3));
  CHECK(t.tau_rot == doctest::Approx(4.06e-12).epsilon(1e-3));

  HardwarePreset qc = preset_by_name("qd-cavity");
  t = gate_times(qc);
  CHECK(*t.tau_iswap == doctest::Approx(30e-12).epsilon(1e-12));
  CHECK(t.tau_rot == doctest::Approx(10e-12).epsilon(1e-12));
}

TEST_CASE("protocol times reproduce the published numbers") {
  TimingReport sc = protocol_times(preset_by_name("sc-charge"));
  CHECK(*sc.tau_puri_bcnot == doctest::Approx(13.125e-9).epsilon(1e-12));
  CHECK(*sc.tau_puri_biswap == doctest::Approx(6.75e-9).epsilon(1e-12));

  TimingReport flux = protocol_times(preset_by_name("flux"));
  CHECK(*flux.tau_puri_bcnot == doctest::Approx(10.625e-9).epsilon(1e-12));
  CHECK(*flux.tau_puri_biswap == doctest::Approx(5.5e-9).epsilon(1e-12));

  TimingReport qd = protocol_times(preset_by_name("qd-charge"));
  CHECK(*qd.tau_puri_bcnot == doctest::Approx(85.3e-12).epsilon(0.005));
  CHECK(*qd.tau_puri_biswap == doctest::Approx(48.7e-12).epsilon(0.005));

  TimingReport qc = protocol_times(preset_by_name("qd-cavity"));
  CHECK(*qc.tau_puri_biswap == doctest::Approx(70e-12).epsilon(1e-12));
  CHECK(qc.documented_discrepancy);
}

TEST_CASE("difference identities hold exactly") {
  for (const auto& p : builtin_presets()) {
    TimingReport r = protocol_times(p);
    if (r.tau_puri_bcnot) {
      CHECK(*r.dtau_puri_adv == *r.tau_puri_bcnot - *r.tau_puri_biswap);
      CHECK(*r.dtau_bell_iswap == *r.tau_bell_cnot - *r.tau_bell_iswap);
    }
    if (r.tau_bell_sqrtswap)
      CHECK(*r.dtau_bell_sqrtswap == *r.tau_bell_cnot_h - *r.tau_bell_sqrtswap);
  }
}

TEST_CASE("report fields scale inversely with frequency") {
  for (double c : {2.0, 10.0}) {
    HardwarePreset p = preset_by_name("sc-charge");
    HardwarePreset q = p;
    q.coupling->value *= c;
    q.rotation_frequency.value *= c;
    TimingReport a = protocol_times(p), b = protocol_times(q);
    CHECK(b.tau_rot == doctest::Approx(a.tau_rot / c).epsilon(1e-12));
    CHECK(*b.tau_puri_biswap == doctest::Approx(*a.tau_puri_biswap / c).epsilon(1e-12));
    CHECK(*b.tau_bell_cnot == doctest::Approx(*a.tau_bell_cnot / c).epsilon(1e-12));
  }
}

TEST_CASE("sqrtswap outputs appear only with a heisenberg coupling") {
  TimingReport r = protocol_times(preset_by_name("sc-charge"));
  CHECK(!r.tau_sqrtswap.has_value());
  CHECK(!r.tau_bell_sqrtswap.has_value());

  HardwarePreset p = preset_by_name("sc-charge");
  p.heisenberg_coupling = Frequency{20.0, FreqUnit::MHz};
  TimingReport rr = protocol_times(p);
  REQUIRE(rr.tau_sqrtswap.has_value());
  // half of the swap time pi/(4 J_H)
  CHECK(*rr.tau_sqrtswap == doctest::Approx(*rr.tau_iswap / 2).epsilon(1e-12));
  CHECK(*rr.tau_bell_sqrtswap == doctest::Approx(3 * rr.tau_rot + *rr.tau_sqrtswap));
}

TEST_CASE("rounds within coherence") {
  HardwarePreset sc = preset_by_name("sc-charge");  // 500 ns, meas 0
  CHECK(rounds_within_coherence(sc, Protocol::BiSwap) == 74);

  HardwarePreset flux = preset_by_name("flux");  // 1 ms measurement dominates
  CHECK(rounds_within_coherence(flux, Protocol::BiSwap) == 0);

  HardwarePreset tight = sc;
  tight.dephasing_time_s = 1e-9;  // round longer than the coherence window
  CHECK(rounds_within_coherence(tight, Protocol::BiSwap) == 0);

  HardwarePreset qd = preset_by_name("qd-charge");  // no measurement time given
  CHECK_THROWS_AS(rounds_within_coherence(qd, Protocol::BiSwap), std::invalid_argument);
}

TEST_CASE("preset json round-trip and validation") {
  for (const auto& p : builtin_presets()) {
    HardwarePreset back = preset_from_json(preset_to_json(p));
    CHECK(back.name == p.name);
    CHECK(back.convention == p.convention);
    TimingReport a = protocol_times(p), b = protocol_times(back);
    CHECK(a.tau_rot == b.tau_rot);
    if (a.tau_iswap) CHECK(*a.tau_iswap == *b.tau_iswap);
  }
  CHECK_THROWS_AS(preset_by_name("nope"), std::invalid_argument);
  HardwarePreset bad = preset_by_name("flux");
  bad.rotation_frequency.value = -1;
  CHECK_THROWS_AS(gate_times(bad), std::invalid_argument);
}

TEST_CASE("effective coupling formula") {
  JCParams p;
  p.omega_cavity = 6e9;
  p.omega_q1 = p.omega_q2 = 5e9;
  p.chi1 = p.chi2 = 1e8;
  JCEffective e = jc_effective(p);
  CHECK(e.j_eff == doctest::Approx(p.chi1 * p.chi1 / (2 * 1e9)).epsilon(1e-12));
  CHECK(e.omega_q1_dressed == doctest::Approx(5e9 + 1e16 / 1e9).epsilon(1e-12));

  // opposite detunings cancel the exchange
  JCParams opp = p;
  opp.omega_q1 = 5e9;
  opp.omega_q2 = 7e9;  // Delta2 = -1e9 = -Delta1
  CHECK(jc_effective(opp).j_eff == doctest::Approx(0.0));

  // symmetric under swapping the two qubits
  JCParams a = p;
  a.omega_q1 = 5.0e9;
  a.omega_q2 = 5.2e9;
  a.chi1 = 0.8e8;
  a.chi2 = 1.1e8;
  JCParams b = a;
  std::swap(b.omega_q1, b.omega_q2);
  std::swap(b.chi1, b.chi2);
  CHECK(jc_effective(a).j_eff == doctest::Approx(jc_effective(b).j_eff).epsilon(1e-14));

  JCParams sing = p;
  sing.omega_q1 = p.omega_cavity;
  CHECK_THROWS_AS(jc_effective(sing), std::invalid_argument);
  JCParams strong = p;
  strong.chi1 = 5e8;  // chi/Delta = 0.5
  CHECK_THROWS_AS(jc_effective(strong), std::invalid_argument);
  JCParams shallow = p;
  shallow.fock_cutoff = 1;
  CHECK_THROWS_AS(jc_effective(shallow), std::invalid_argument);
}

namespace {
JCParams symmetric_params(double alpha) {
  JCParams p;
  p.omega_q1 = p.omega_q2 = 5e9;
  p.omega_cavity = 5e9 + 1e9;
  p.chi1 = p.chi2 = alpha * 1e9;
  p.fock_cutoff = 5;
  return p;
}
}  // namespace

TEST_CASE("jc validation recovers the exchange frequency") {
  JCValidation v = jc_validate(symmetric_params(0.05));
  CHECK(v.relative_error < 0.02);
  CHECK(v.measured_exchange_frequency ==
        doctest::Approx(v.predicted).epsilon(0.02));
  CHECK(v.max_top_level_population < 1e-6);
}

TEST_CASE("jc validation error grows with the coupling ratio") {
  const double e1 = jc_validate(symmetric_params(0.02)).relative_error;
  const double e2 = jc_validate(symmetric_params(0.05)).relative_error;
  const double e3 = jc_validate(symmetric_params(0.10)).relative_error;
  CHECK(e1 < e2);
  CHECK(e2 < e3);
  const double e4 = jc_validate(symmetric_params(0.15)).relative_error;
  CHECK(e2 < e4);
}

TEST_CASE("no exchange oscillation without coupling") {
  JCParams p = symmetric_params(0.05);
  p.chi1 = p.chi2 = 0.0;
  JCValidation v = jc_validate(p, 1e-6);
  CHECK(v.measured_exchange_frequency == doctest::Approx(0.0));
}
