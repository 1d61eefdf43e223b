#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpurify/matrix.hpp"

namespace qpurify::hardware {

// Physical constants, eV seconds.
inline constexpr double kHbarEvS = 6.582119569e-16;
inline constexpr double kPlanckEvS = 4.135667696e-15;

enum class FreqUnit { RadPerSec, Hz, MHz, GHz, MeV };

struct Frequency {
  double value = 0.0;
  FreqUnit unit = FreqUnit::RadPerSec;

  double angular() const;  // rad/s
  double cyclic() const;   // Hz (meV converts via E/h)
};

std::string to_string(FreqUnit u);
std::optional<FreqUnit> freq_unit_from_string(const std::string& s);

/// How tau = pi/(4 .) reads the coupling: ANGULAR divides by the angular
/// frequency, CYCLIC by the cyclic one.  Every preset carries the convention
/// that reproduces its published numbers.
enum class Convention { Angular, Cyclic };

struct HardwarePreset {
  std::string name;
  std::optional<Frequency> coupling;             // XY J
  std::optional<Frequency> heisenberg_coupling;  // J_H, for sqrt(SWAP) timing
  Frequency rotation_frequency;
  std::optional<double> dephasing_time_s;
  std::optional<double> measurement_time_s;
  Convention convention = Convention::Angular;
  bool documented_discrepancy = false;
  std::string note;

  void validate() const;
};

/// The four built-in device presets: qd-cavity, sc-charge, flux, qd-charge.
std::vector<HardwarePreset> builtin_presets();
HardwarePreset preset_by_name(const std::string& name);

std::string preset_to_json(const HardwarePreset& p);
HardwarePreset preset_from_json(const std::string& json_text);

struct GateTimes {
  double tau_rot = 0.0;
  std::optional<double> tau_iswap;
  std::optional<double> tau_sqrtswap;
};

/// tau_rot = pi/(4 w_rot), tau_iswap = pi/(4 J), tau_sqrtswap = pi/(8 J_H),
/// each read under the preset's convention.
GateTimes gate_times(const HardwarePreset& p);

struct TimingReport {
  std::string preset;
  Convention convention = Convention::Angular;
  double tau_rot = 0.0;
  std::optional<double> tau_iswap;
  std::optional<double> tau_sqrtswap;
  std::optional<double> tau_cnot;          // 4 rot + 2 iswap
  std::optional<double> tau_cnot_h;        // 3 rot + 2 sqrtswap
  std::optional<double> tau_puri_bcnot;    // 5 rot + 2 iswap
  std::optional<double> tau_puri_biswap;   // 4 rot + 1 iswap
  std::optional<double> dtau_puri_adv;     // rot + iswap
  std::optional<double> tau_bell_cnot;     // 5 rot + 2 iswap
  std::optional<double> tau_bell_iswap;    // 2 rot + 1 iswap
  std::optional<double> dtau_bell_iswap;   // 3 rot + iswap
  std::optional<double> tau_bell_cnot_h;   // 4 rot + 2 sqrtswap
  std::optional<double> tau_bell_sqrtswap; // 3 rot + 1 sqrtswap
  std::optional<double> dtau_bell_sqrtswap;  // rot + sqrtswap
  bool documented_discrepancy = false;
  std::string note;
};

TimingReport protocol_times(const HardwarePreset& p);

std::string report_to_json(const TimingReport& r);
std::string report_to_text(const TimingReport& r);

enum class Protocol { BiSwap, BCnot };

/// floor(dephasing / (round + measurement)); requires both times present.
int rounds_within_coherence(const HardwarePreset& p, Protocol protocol);

// ---- Jaynes-Cummings validation -------------------------------------------

struct JCParams {
  double omega_cavity = 0.0;  // rad/s
  double omega_q1 = 0.0;
  double omega_q2 = 0.0;
  double chi1 = 0.0;
  double chi2 = 0.0;
  int fock_cutoff = 5;

  void validate() const;  // dispersive guard |chi/Delta| <= 0.2, cutoff >= 2
  double delta1() const { return omega_cavity - omega_q1; }
  double delta2() const { return omega_cavity - omega_q2; }
};

struct JCEffective {
  double j_eff = 0.0;  // rad/s
  double omega_q1_dressed = 0.0;
  double omega_q2_dressed = 0.0;
};

/// J = chi1 chi2 (D1 + D2) / (4 D1 D2); dressed w_qi = w_qi + chi_i^2 / D_i.
JCEffective jc_effective(const JCParams& p);

struct JCValidation {
  double measured_exchange_frequency = 0.0;  // Omega with P_ge ~ sin^2(Omega t)
  double predicted = 0.0;                    // 2 J_eff
  double relative_error = 0.0;
  double max_top_level_population = 0.0;
};

/// Evolves |e,g,0> under the full truncated JC Hamiltonian with fixed-step
/// matrix-exponential integration and least-squares fits the qubit exchange
/// frequency; evolution_time <= 0 selects ~1.25 swap periods automatically.
JCValidation jc_validate(const JCParams& p, double evolution_time = 0.0,
                         int steps = 4000);

}  // namespace qpurify::hardware
