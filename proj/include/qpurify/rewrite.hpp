#pragma once

#include <string>
#include <vector>

#include "qpurify/circuit.hpp"

namespace qpurify::rewrite {

enum class Direction { Forward, Reversed };

/// Step (i): a bilateral SWAP is appended after each BCNOT; subsequent wire
/// references and the output relabeling are rewired so the circuit's meaning
/// is unchanged.
Circuit insert_swaps(const Circuit& c);

/// Step (ii): each [BCNOT, BSWAP] unit is replaced by the bilateral rotation
/// plus BiSWAP sequence (forward: By_{T+}, Bz_{S+}, Bz_{T+}, BiSWAP, By_{S-}),
/// together with a recorded sign frame on the target pair that makes the
/// replacement exact at the operator level.  Requires every BCNOT to be
/// immediately followed by its BSWAP (run insert_swaps first).
Circuit replace_bcnot(const Circuit& c, Direction dir = Direction::Forward);

/// Step (iii): cancels adjacent inverse rotation pairs, collapses doubled
/// quarter turns into Pauli-frame records, pushes frames rightward through
/// rotations, and merges frames.  Never increases the gate count.
Circuit contract_rotations(const Circuit& c);

/// Convenience: insert_swaps, replace_bcnot, contract_rotations.
Circuit rewrite_pipeline(const Circuit& c, Direction dir = Direction::Forward);

/// One hashing round on n pairs under subset string s (2 bits per pair,
/// first bit selects the amplitude bit, second the phase bit).  Pairs with a
/// nonzero symbol are routed into the last selected pair, which is measured
/// bilaterally in z; symbol 01 swaps phase into amplitude first (By+), symbol
/// 11 routes the bit sum (Bx+ plus a unilateral pi-x).  An all-zero s yields
/// an empty round (parity 0 by definition).
Circuit hashing_template(int n, const std::vector<int>& s);

/// Subset parity the hashing measurement reveals, computed at the bit level.
int hashing_parity(const std::vector<int>& x, const std::vector<int>& s);

/// Breeding round: n_impure noisy pairs plus one pre-shared pure ancilla
/// pair (index n_impure); each impure pair is BCNOT-routed into the ancilla,
/// one reverse BCNOT feeds the phase side back, and only the ancilla is
/// measured.
Circuit breeding_template(int n_impure);

struct EquivalenceResult {
  bool equivalent = false;
  double residual = 0.0;
};

/// Compares measurement-free prefixes up to a global phase after composing
/// output relabelings and recorded frames, and checks that the measured
/// wires agree after relabeling.
EquivalenceResult check_rewrite_equivalence(const Circuit& original,
                                            const Circuit& rewritten,
                                            double tol = 1e-10);

struct GateCounts {
  int bcnot = 0, bswap = 0, biswap = 0;
  int bilateral_rotations = 0, unilateral = 0;
  int wire_two_qubit = 0, wire_single = 0;
  int measurements = 0, frames = 0;
  int wire_two_qubit_units = 0;  // iSWAP units carried by wire-level gates
  int gates() const;
  /// Two-qubit interaction count per party in iSWAP units (CNOT-class
  /// gates cost 2, swaps 6, native XY/iSWAP-class gates 1).
  int two_qubit_iswap_units() const;
};

GateCounts count_gates(const Circuit& c);

struct RewriteReport {
  GateCounts before, after;
  int pair_count = 0;
};

RewriteReport make_report(const Circuit& before, const Circuit& after);
std::string report_json(const RewriteReport& r);

}  // namespace qpurify::rewrite
