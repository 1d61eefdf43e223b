#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpurify/bell.hpp"
#include "qpurify/matrix.hpp"

namespace qpurify::purify {

/// Bell-diagonal weights in the order (Phi+, Psi-, Psi+, Phi-).
struct BellDiagonal {
  double a = 1.0;  // Phi+
  double b = 0.0;  // Psi-
  double c = 0.0;  // Psi+
  double d = 0.0;  // Phi-

  double weight(bell::BellLabel l) const;
  void set_weight(bell::BellLabel l, double w);
  void validate(double tol = kGateTol) const;  // nonnegative, sums to 1
};

ComplexMatrix to_density(const BellDiagonal& bd);

/// Diagonal Bell-basis weights <bell|rho|bell> (drops coherences).
BellDiagonal diagonal_weights(const ComplexMatrix& rho);

/// 4x4 density matrix; constructor validates the density invariants.
struct PairDensity {
  ComplexMatrix rho;
  explicit PairDensity(ComplexMatrix m, double tol = kGateTol);
};

/// Timing offset of the XY pulse: 2Jt = pi/2 + epsilon.
struct PulseError {
  double epsilon = 0.0;
  explicit PulseError(double eps = 0.0);
};

enum class Variant { A, B };
enum class MeasuredPair { Source, Target };

struct RoundResult {
  std::optional<BellDiagonal> kept;        // closed-form rounds
  std::optional<ComplexMatrix> kept_density;  // oracle rounds
  double pass_probability = 0.0;
  /// Weight of the complementary (unequal-outcome) projector, computed
  /// independently by the oracle rounds; pass + fail must equal 1.
  std::optional<double> fail_probability;
  double reference_fidelity = 0.0;
  bell::BellLabel reference = bell::BellLabel::PhiMinus;
};

/// Werner weights (F, (1-F)/3, (1-F)/3, (1-F)/3).
BellDiagonal werner(double fidelity);

/// One purification round on two Werner-F pairs, closed form.  The kept pair
/// is scored against Phi-; F' = (F^2 + e^2) / (F^2 + 2Fe + 5e^2), e=(1-F)/3.
RoundResult bennett_round_analytic(double fidelity);

/// Closed-form round with an imperfect XY pulse, exact trigonometric
/// coefficients k1 = (1+cos 2e)/2, k2 = (1-cos 2e)/2, k3 = 1 + k2 + sin^2(2e)/4:
///   F' = (k1^2 F^2 + k3 e^2) / (k1 F^2 + 2 F e + (5+k2) e^2).
/// The denominator equals the physical pass probability.
RoundResult bennett_round_with_error(double fidelity, PulseError err);

/// Density-matrix round: bilateral XY(pi/2 + eps) on both parties, then the
/// variant's bilateral rotations (A: Bx_{S+}Bx_{T+}; B: a unilateral pi-y
/// relabel on Alice's qubits followed by By_{S+}By_{T+}), projection of the
/// measured pair onto {|00>,|11>} (pass), and renormalization of the kept
/// pair.  Scored against Phi-.
RoundResult bennett_round_oracle(const PairDensity& rho_s, const PairDensity& rho_t,
                                 Variant variant, PulseError err,
                                 MeasuredPair measured = MeasuredPair::Target);

/// Label map of the bilateral CPF gate on a Bell pair product (exact phases):
///   Phi^p Phi^q -> +Phi^p Phi^q        Psi^p Psi^q -> -Psi^{-p} Psi^{-q}
///   Phi^p Psi^q -> -Phi^{-p} Psi^q     Psi^p Phi^q -> -Psi^p  Phi^{-q}
bell::BellProduct cpf_rule(bell::BellLabel s, bell::BellLabel t);

/// CPF-based round (By_+ both pairs, bilateral CPF, By_- both pairs, measure
/// the target pair, keep the source).  Reproduces the Phi+-referenced
/// fidelity recursion of the Bennett round; evaluated via the symbolic rule
/// table and cross-checked against bennett_round_analytic by tests.
RoundResult cpf_round(double fidelity);

/// Same round evaluated on the 16-dim unitary built from the gates module.
RoundResult cpf_round_oracle(double fidelity);

/// Deterministic average over the bilateral twirl group that fixes the
/// reference label: Bell-dephasing Paulis plus the S3 permutations of the
/// other three labels.  Preserves <ref|rho|ref> exactly.
BellDiagonal twirl_to_werner(const PairDensity& rho, bell::BellLabel reference);

/// Root of F' = F of the exact-k recursion, found by bisection on (1/2, 1).
double breakeven_fidelity(PulseError err);

struct TrajectoryPoint {
  int round = 0;
  double fidelity = 0.0;
  double pass_probability = 1.0;
  double expected_pairs = 1.0;  // raw pairs consumed per surviving pair
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  bool reached_target = false;
  bool converged = true;  // false when F' <= F occurred (below breakeven)
};

/// Repeated bennett_round_with_error; stops at the target fidelity or after
/// max_rounds; a step gaining less than 1e-12 flags non-convergence instead
/// of throwing (F0 at or below the breakeven fidelity lands here).
Trajectory iterate(double f0, PulseError err, double target_fidelity, int max_rounds);

std::string trajectory_csv(double f0, double eps, const Trajectory& t);
std::string trajectory_json(double f0, double eps, const Trajectory& t);

}  // namespace qpurify::purify
