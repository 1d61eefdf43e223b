#include "qpurify/purify.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "qpurify/nqubit.hpp"

namespace qpurify::purify {

using bell::BellLabel;
using bell::BilateralOp;

namespace {

constexpr int kAS = 0, kAT = 1, kBS = 2, kBT = 3;

int label_index(BellLabel l) {
  switch (l) {
    case BellLabel::PhiPlus: return 0;
    case BellLabel::PsiMinus: return 1;
    case BellLabel::PsiPlus: return 2;
    case BellLabel::PhiMinus: return 3;
  }
  throw std::invalid_argument("label_index");
}

}  // namespace

double BellDiagonal::weight(BellLabel l) const {
  const double* w[4] = {&a, &b, &c, &d};
  return *w[label_index(l)];
}

void BellDiagonal::set_weight(BellLabel l, double v) {
  double* w[4] = {&a, &b, &c, &d};
  *w[label_index(l)] = v;
}

void BellDiagonal::validate(double tol) const {
  if (a < -tol || b < -tol || c < -tol || d < -tol)
    throw std::invalid_argument("BellDiagonal: negative weight");
  if (std::abs(a + b + c + d - 1.0) >= tol)
    throw std::invalid_argument("BellDiagonal: weights do not sum to 1");
}

ComplexMatrix to_density(const BellDiagonal& bd) {
  ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
  const std::pair<BellLabel, double> w[4] = {{BellLabel::PhiPlus, bd.a},
                                             {BellLabel::PsiMinus, bd.b},
                                             {BellLabel::PsiPlus, bd.c},
                                             {BellLabel::PhiMinus, bd.d}};
  for (const auto& [l, wt] : w) {
    ComplexVector v = bell::bell_vector(l);
    rho += wt * (v * v.adjoint());
  }
  return rho;
}

BellDiagonal diagonal_weights(const ComplexMatrix& rho) {
  BellDiagonal bd;
  for (BellLabel l : bell::kAllBells) {
    ComplexVector v = bell::bell_vector(l);
    bd.set_weight(l, std::real(Complex(v.adjoint() * rho * v)));
  }
  return bd;
}

PairDensity::PairDensity(ComplexMatrix m, double tol) : rho(std::move(m)) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw std::invalid_argument("PairDensity: need a 4x4 matrix");
  if (!is_density(rho, tol)) throw std::invalid_argument("PairDensity: not a density matrix");
}

PulseError::PulseError(double eps) : epsilon(eps) {
  if (!std::isfinite(eps) || std::abs(eps) >= M_PI / 4)
    throw std::invalid_argument("PulseError: |epsilon| must be < pi/4");
}

BellDiagonal werner(double fidelity) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0))
    throw std::invalid_argument("werner: fidelity outside [0,1]");
  const double e = (1.0 - fidelity) / 3.0;
  return BellDiagonal{fidelity, e, e, e};
}

RoundResult bennett_round_analytic(double fidelity) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0))
    throw std::invalid_argument("bennett_round_analytic: fidelity outside [0,1]");
  const double f = fidelity, e = (1.0 - f) / 3.0;
  const double den = f * f + 2 * f * e + 5 * e * e;
  RoundResult r;
  r.pass_probability = den;
  r.reference = BellLabel::PhiMinus;
  r.reference_fidelity = (f * f + e * e) / den;
  // pass-branch weights: Phi-: F^2+e^2, Psi+: 2Fe, Phi+: 2e^2, Psi-: 2e^2
  r.kept = BellDiagonal{2 * e * e / den, 2 * e * e / den, 2 * f * e / den,
                        (f * f + e * e) / den};
  return r;
}

RoundResult bennett_round_with_error(double fidelity, PulseError err) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0))
    throw std::invalid_argument("bennett_round_with_error: fidelity outside [0,1]");
  const double f = fidelity, e = (1.0 - f) / 3.0;
  const double eps = err.epsilon;
  const double k1 = (1.0 + std::cos(2 * eps)) / 2.0;
  const double k2 = (1.0 - std::cos(2 * eps)) / 2.0;
  const double s2 = std::sin(2 * eps);
  const double k3 = 1.0 + k2 + s2 * s2 / 4.0;
  const double den = k1 * f * f + 2 * f * e + (5.0 + k2) * e * e;
  RoundResult r;
  r.pass_probability = den;
  r.reference = BellLabel::PhiMinus;
  r.reference_fidelity = (k1 * k1 * f * f + k3 * e * e) / den;
  if (eps == 0.0) r.kept = bennett_round_analytic(fidelity).kept;
  return r;
}

namespace {

/// rho_S on (a_S,b_S) x rho_T on (a_T,b_T) in the 8a_S+4a_T+2b_S+b_T ordering.
ComplexMatrix two_pair_density(const ComplexMatrix& rho_s, const ComplexMatrix& rho_t) {
  ComplexMatrix out(16, 16);
  for (int r = 0; r < 16; ++r) {
    const int as = (r >> 3) & 1, at = (r >> 2) & 1, bs = (r >> 1) & 1, bt = r & 1;
    for (int c = 0; c < 16; ++c) {
      const int as2 = (c >> 3) & 1, at2 = (c >> 2) & 1, bs2 = (c >> 1) & 1, bt2 = c & 1;
      out(r, c) = rho_s(2 * as + bs, 2 * as2 + bs2) * rho_t(2 * at + bt, 2 * at2 + bt2);
    }
  }
  return out;
}

struct Measured {
  double pass_probability;
  double fail_probability;
  ComplexMatrix kept;  // renormalized 4x4 of the unmeasured pair
};

/// Projects the measured pair onto equal z outcomes (pass) and traces it
/// out; the unequal-outcome weight is accumulated independently.
Measured measure_equal_outcomes(const ComplexMatrix& rho16, MeasuredPair which) {
  const int qa = which == MeasuredPair::Target ? kAT : kAS;
  const int qb = which == MeasuredPair::Target ? kBT : kBS;
  const int ka = which == MeasuredPair::Target ? kAS : kAT;
  const int kb = which == MeasuredPair::Target ? kBS : kBT;
  auto bit = [](int idx, int q) { return (idx >> (3 - q)) & 1; };
  ComplexMatrix kept = ComplexMatrix::Zero(4, 4);
  double fail = 0.0;
  for (int r = 0; r < 16; ++r) {
    if (bit(r, qa) != bit(r, qb)) {
      fail += std::real(rho16(r, r));
      continue;
    }
    const int m = bit(r, qa);
    for (int c = 0; c < 16; ++c) {
      if (bit(c, qa) != m || bit(c, qb) != m) continue;
      kept(2 * bit(r, ka) + bit(r, kb), 2 * bit(c, ka) + bit(c, kb)) += rho16(r, c);
    }
  }
  Measured out{std::real(kept.trace()), fail, ComplexMatrix()};
  if (out.pass_probability > 0) kept /= kept.trace();
  out.kept = kept;
  return out;
}

}  // namespace

RoundResult bennett_round_oracle(const PairDensity& rho_s, const PairDensity& rho_t,
                                 Variant variant, PulseError err, MeasuredPair measured) {
  ComplexMatrix rho = two_pair_density(rho_s.rho, rho_t.rho);

  ComplexMatrix u_xy = gates::xy_evolution(M_PI / 2 + err.epsilon);
  ComplexMatrix pulse = embed_gate(u_xy, {kAS, kAT}, 4) * embed_gate(u_xy, {kBS, kBT}, 4);

  BilateralOp rot;
  rot.kind = variant == Variant::A ? BilateralOp::Kind::RotX : BilateralOp::Kind::RotY;
  rot.sign = +1;
  rot.selector = BilateralOp::Selector::Both;
  ComplexMatrix u = bell::bilateral_unitary(rot) * pulse;

  if (variant == Variant::B) {
    // relabel that moves the Werner weight onto Psi- before the round
    BilateralOp pre;
    pre.kind = BilateralOp::Kind::UnilateralPi;
    pre.axis = gates::Axis::Y;
    pre.party = bell::Party::Alice;
    pre.selector = BilateralOp::Selector::Both;
    u = u * bell::bilateral_unitary(pre);
  }

  rho = u * rho * u.adjoint();
  Measured m = measure_equal_outcomes(rho, measured);

  RoundResult r;
  r.pass_probability = m.pass_probability;
  r.fail_probability = m.fail_probability;
  r.reference = BellLabel::PhiMinus;
  if (m.pass_probability > 0) {
    r.kept_density = m.kept;
    r.kept = diagonal_weights(m.kept);
    ComplexVector ref = bell::bell_vector(BellLabel::PhiMinus);
    r.reference_fidelity = std::real(Complex(ref.adjoint() * m.kept * ref));
  }
  return r;
}

bell::BellProduct cpf_rule(BellLabel s, BellLabel t) {
  const int sb = bell::bell_bits(s), tb = bell::bell_bits(t);
  const int a_s = sb >> 1, p_s = sb & 1;
  const int a_t = tb >> 1, p_t = tb & 1;
  bell::BellProduct out;
  // phase flips ride on the partner's amplitude bit; sign is -1 unless both Phi
  out.source.label = bell::bell_from_bits((a_s << 1) | (p_s ^ a_t));
  out.target = bell::bell_from_bits((a_t << 1) | (p_t ^ a_s));
  out.source.phase = (a_s == 0 && a_t == 0) ? Complex{1, 0} : Complex{-1, 0};
  return out;
}

namespace {

// label action of By_+- on one pair: amplitude and phase bits swap
BellLabel by_label(BellLabel l) {
  const int b = bell::bell_bits(l);
  return bell::bell_from_bits(((b & 1) << 1) | (b >> 1));
}

RoundResult cpf_round_core(double fidelity, bool oracle) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0))
    throw std::invalid_argument("cpf_round: fidelity outside [0,1]");
  BellDiagonal in = werner(fidelity);

  RoundResult r;
  r.reference = BellLabel::PhiPlus;
  BellDiagonal kept{0, 0, 0, 0};
  double pass = 0.0;

  if (!oracle) {
    for (BellLabel s : bell::kAllBells) {
      for (BellLabel t : bell::kAllBells) {
        const double w = in.weight(s) * in.weight(t);
        bell::BellProduct mid = cpf_rule(by_label(s), by_label(t));
        const BellLabel s2 = by_label(mid.source.label);
        const BellLabel t2 = by_label(mid.target);
        if (bell::bell_bits(t2) >> 1) continue;  // Psi-type target: fail
        pass += w;
        kept.set_weight(s2, kept.weight(s2) + w);
      }
    }
  } else {
    ComplexMatrix bcpf = embed_gate(gates::cpf(), {kAS, kAT}, 4) *
                         embed_gate(gates::cpf(), {kBS, kBT}, 4);
    BilateralOp byp{BilateralOp::Kind::RotY, +1, BilateralOp::Selector::Both,
                    gates::Axis::X, bell::Party::Alice};
    BilateralOp bym{BilateralOp::Kind::RotY, -1, BilateralOp::Selector::Both,
                    gates::Axis::X, bell::Party::Alice};
    ComplexMatrix u = bell::bilateral_unitary(bym) * bcpf * bell::bilateral_unitary(byp);
    ComplexMatrix rho = two_pair_density(to_density(in), to_density(in));
    rho = u * rho * u.adjoint();
    Measured m = measure_equal_outcomes(rho, MeasuredPair::Target);
    pass = m.pass_probability;
    r.fail_probability = m.fail_probability;
    BellDiagonal w = diagonal_weights(m.kept);
    kept = BellDiagonal{w.a * pass, w.b * pass, w.c * pass, w.d * pass};
  }

  r.pass_probability = pass;
  r.kept = BellDiagonal{kept.a / pass, kept.b / pass, kept.c / pass, kept.d / pass};
  r.reference_fidelity = r.kept->a;
  return r;
}

}  // namespace

RoundResult cpf_round(double fidelity) { return cpf_round_core(fidelity, false); }
RoundResult cpf_round_oracle(double fidelity) { return cpf_round_core(fidelity, true); }

namespace {

/// Lifts of the label permutations fixing Phi+ (pair-level 4x4 unitaries).
std::vector<ComplexMatrix> twirl_group_phi_plus() {
  using K = BilateralOp::Kind;
  const ComplexMatrix t1 = bell::bilateral_pair_gate(K::RotY, +1);  // (Phi-,Psi+)
  const ComplexMatrix sz = kron(gates::pauli(gates::Axis::Z), ComplexMatrix::Identity(2, 2));
  const ComplexMatrix t2 = sz * bell::bilateral_pair_gate(K::RotZ, +1);  // (Psi+,Psi-)
  const ComplexMatrix id = ComplexMatrix::Identity(4, 4);
  return {id, t1, t2, t1 * t2, t2 * t1, t1 * t2 * t1};
}

/// Bell-dephasing subgroup: bilateral Paulis on the pair.
std::vector<ComplexMatrix> dephase_group() {
  std::vector<ComplexMatrix> g;
  g.push_back(ComplexMatrix::Identity(4, 4));
  for (gates::Axis a : {gates::Axis::X, gates::Axis::Y, gates::Axis::Z})
    g.push_back(kron(gates::pauli(a), gates::pauli(a)));
  return g;
}

ComplexMatrix relabel_to_phi_plus(BellLabel ref) {
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  switch (ref) {
    case BellLabel::PhiPlus: return ComplexMatrix::Identity(4, 4);
    case BellLabel::PhiMinus: return kron(gates::pauli(gates::Axis::Z), id2);
    case BellLabel::PsiPlus: return kron(gates::pauli(gates::Axis::X), id2);
    case BellLabel::PsiMinus: return kron(gates::pauli(gates::Axis::Y), id2);
  }
  throw std::invalid_argument("relabel_to_phi_plus");
}

}  // namespace

BellDiagonal twirl_to_werner(const PairDensity& rho, BellLabel reference) {
  const ComplexMatrix r = relabel_to_phi_plus(reference);
  ComplexMatrix work = r.adjoint() * rho.rho * r;

  ComplexMatrix acc = ComplexMatrix::Zero(4, 4);
  const auto perms = twirl_group_phi_plus();
  const auto deph = dephase_group();
  for (const auto& p : perms)
    for (const auto& d : deph) {
      ComplexMatrix u = d * p;
      acc += u * work * u.adjoint();
    }
  acc /= static_cast<double>(perms.size() * deph.size());
  acc = r * acc * r.adjoint();
  return diagonal_weights(acc);
}

double breakeven_fidelity(PulseError err) {
  auto gain = [&](double f) {
    return bennett_round_with_error(f, err).reference_fidelity - f;
  };
  double lo = 0.5 + 1e-12, hi = 1.0 - 1e-9;
  if (gain(lo) >= 0.0) return 0.5;  // improves everywhere above 1/2
  for (int it = 0; it < 200; ++it) {
    const double mid = (lo + hi) / 2;
    (gain(mid) < 0.0 ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

Trajectory iterate(double f0, PulseError err, double target_fidelity, int max_rounds) {
  if (!(f0 > 0.0 && f0 <= 1.0))
    throw std::invalid_argument("iterate: need 0 < F0 <= 1");
  if (!(target_fidelity <= 1.0)) throw std::invalid_argument("iterate: target > 1");
  if (max_rounds < 0) throw std::invalid_argument("iterate: negative max_rounds");

  Trajectory t;
  t.points.push_back(TrajectoryPoint{0, f0, 1.0, 1.0});
  if (f0 >= target_fidelity) {
    t.reached_target = true;
    return t;
  }
  double f = f0, pairs = 1.0;
  for (int k = 1; k <= max_rounds; ++k) {
    RoundResult r = bennett_round_with_error(f, err);
    if (r.reference_fidelity <= f + 1e-12) {  // at or below the breakeven fidelity
      t.converged = false;
      return t;
    }
    pairs *= 2.0 / r.pass_probability;
    f = r.reference_fidelity;
    t.points.push_back(TrajectoryPoint{k, f, r.pass_probability, pairs});
    if (f >= target_fidelity) {
      t.reached_target = true;
      return t;
    }
  }
  return t;
}

std::string trajectory_csv(double f0, double eps, const Trajectory& t) {
  std::ostringstream os;
  char buf[512];
  os << "F0,eps,round,F,pass_prob,expected_pairs\n";
  for (const auto& p : t.points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,%.17g,%.17g,%.17g\n", f0, eps,
                  p.round, p.fidelity, p.pass_probability, p.expected_pairs);
    os << buf;
  }
  os << "# status=" << (t.reached_target ? "reached-target"
                        : t.converged    ? "max-rounds"
                                         : "non-convergent")
     << "\n";
  return os.str();
}

std::string trajectory_json(double f0, double eps, const Trajectory& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& p : t.points)
    rows.push_back({{"round", p.round},
                    {"F", p.fidelity},
                    {"pass_probability", p.pass_probability},
                    {"expected_pairs", p.expected_pairs}});
  nlohmann::json j{{"F0", f0},
                   {"eps", eps},
                   {"status", t.reached_target ? "reached-target"
                              : t.converged    ? "max-rounds"
                                               : "non-convergent"},
                   {"trajectory", rows}};
  return j.dump(2);
}

}  // namespace qpurify::purify
