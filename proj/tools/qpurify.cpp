// Command-line front end: verification runs, purification sweeps, circuit
// rewriting, timing reports, truth tables, and the cavity-coupling check.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpurify/bellgen.hpp"
#include "qpurify/hardware.hpp"
#include "qpurify/purify.hpp"
#include "qpurify/rewrite.hpp"

using namespace qpurify;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << text;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---- verify ------------------------------------------------------------------

struct VerifyReport {
  int failures = 0;
  std::ostringstream lines;

  void record(bool ok, const std::string& what, const std::string& detail = "") {
    lines << (ok ? "PASS " : "FAIL ") << what;
    if (!detail.empty()) lines << "  " << detail;
    lines << "\n";
    if (!ok) ++failures;
  }
};

int cmd_verify(double tol, const std::string& tables_expect) {
  VerifyReport rep;

  for (gates::Identity id : gates::all_identities()) {
    gates::IdentityCheck c = gates::check_identity(id, tol);
    rep.record(c.holds, std::string("identity ") + gates::identity_name(id),
               "residual=" + fmt17(c.residual));
  }

  bell::RotationTable rot_want = bell::rotation_table_reference();
  bell::DeutschTable deu_want = bell::deutsch_table_reference();
  bell::BennettTable ben_want = bell::bennett_table_reference();
  if (!tables_expect.empty()) {
    nlohmann::json j = nlohmann::json::parse(slurp(tables_expect));
    rot_want = bell::rotation_table_from_json(j.at("rotations").dump());
    deu_want = bell::deutsch_table_from_json(j.at("deutsch_replacement").dump());
    ben_want = bell::bennett_table_from_json(j.at("bennett").dump());
  }
  {
    std::string err = bell::compare(bell::generate_rotation_table(), rot_want);
    rep.record(err.empty(), "table rotations", err);
    err = bell::compare(bell::generate_deutsch_table(), deu_want);
    rep.record(err.empty(), "table deutsch-replacement", err);
    err = bell::compare(bell::generate_bennett_table(), ben_want);
    rep.record(err.empty(), "table bennett", err);
  }
  {
    // operator-level check of the four-step replacement sequence
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
        ComplexMatrix(bell::bswap_unitary() * bell::bcnot_truth_operator()), seq, tol);
    rep.record(m.equal, "operator bcnot-replacement", "residual=" + fmt17(m.residual));
  }

  for (bellgen::Entangler ent : {bellgen::Entangler::ISwap, bellgen::Entangler::SqrtSwap}) {
    for (bell::BellLabel target : bell::kAllBells) {
      bellgen::BellRecipe r = bellgen::recipe_for(target, ent);
      bellgen::Execution e = bellgen::execute_recipe(r);
      const bool ok = std::abs(e.fidelity_to_target - 1.0) < tol;
      rep.record(ok,
                 std::string("bell-recipe ") +
                     (ent == bellgen::Entangler::ISwap ? "iswap " : "sqswap ") +
                     bell::to_string(target),
                 "fidelity=" + fmt17(e.fidelity_to_target));
    }
  }

  {
    bool all_ok = true;
    double worst = 0.0;
    for (int sv = 0; sv < 16; ++sv) {
      std::vector<int> s(4);
      for (int i = 0; i < 4; ++i) s[i] = (sv >> (3 - i)) & 1;
      rewrite::Circuit plain = rewrite::hashing_template(2, s);
      rewrite::Circuit rewritten = rewrite::rewrite_pipeline(plain);
      auto eq = rewrite::check_rewrite_equivalence(plain, rewritten, 1e-10);
      worst = std::max(worst, eq.residual);
      all_ok = all_ok && eq.equivalent;
      rewrite::GateCounts g = rewrite::count_gates(rewritten);
      all_ok = all_ok && g.bcnot == 0 && g.bswap == 0;
    }
    rep.record(all_ok, "rewrite hashing equivalence (16 subsets)",
               "worst residual=" + fmt17(worst));

    rewrite::Circuit breed = rewrite::breeding_template(2);
    auto eq = rewrite::check_rewrite_equivalence(breed, rewrite::rewrite_pipeline(breed),
                                                 1e-10);
    rep.record(eq.equivalent, "rewrite breeding equivalence",
               "residual=" + fmt17(eq.residual));
  }
  {
    bool all_ok = true;
    for (int xv = 0; xv < 16 && all_ok; ++xv) {
      std::vector<int> x(4);
      for (int i = 0; i < 4; ++i) x[i] = (xv >> (3 - i)) & 1;
      std::vector<bell::BellLabel> labels = {
          bell::bell_from_bits((x[0] << 1) | x[1]),
          bell::bell_from_bits((x[2] << 1) | x[3])};
      for (int sv = 0; sv < 16 && all_ok; ++sv) {
        std::vector<int> s(4);
        for (int i = 0; i < 4; ++i) s[i] = (sv >> (3 - i)) & 1;
        const int want = rewrite::hashing_parity(x, s);
        rewrite::Circuit plain = rewrite::hashing_template(2, s);
        all_ok = all_ok && rewrite::simulate_measured_parity(plain, labels) == want &&
                 rewrite::simulate_measured_parity(
                     rewrite::rewrite_pipeline(plain), labels) == want;
      }
    }
    rep.record(all_ok, "hashing parity oracle vs simulation (256 cases)");
  }

  std::cout << rep.lines.str();
  std::cout << (rep.failures == 0 ? "all checks passed\n"
                                  : std::to_string(rep.failures) + " check(s) failed\n");
  return rep.failures == 0 ? kExitOk : kExitCheckFailed;
}

// ---- purify --------------------------------------------------------------------

int cmd_purify(const std::vector<double>& f0s, const std::vector<double>& epss,
               double target, int max_rounds, const std::string& out_path) {
  std::ostringstream os;
  os << "F0,eps,round,F,pass_prob,expected_pairs\n";
  for (double f0 : f0s) {
    for (double eps : epss) {
      purify::Trajectory t =
          purify::iterate(f0, purify::PulseError(eps), target, max_rounds);
      for (const auto& p : t.points) {
        os << fmt17(f0) << "," << fmt17(eps) << "," << p.round << ","
           << fmt17(p.fidelity) << "," << fmt17(p.pass_probability) << ","
           << fmt17(p.expected_pairs) << "\n";
      }
      os << "# F0=" << fmt17(f0) << " eps=" << fmt17(eps) << " status="
         << (t.reached_target ? "reached-target"
             : t.converged    ? "max-rounds"
                              : "non-convergent")
         << "\n";
    }
  }
  if (out_path.empty()) std::cout << os.str();
  else spit(out_path, os.str());
  return kExitOk;
}

// ---- rewrite ---------------------------------------------------------------------

int cmd_rewrite(const std::string& in_path, const std::string& out_path,
                const std::string& report_path, const std::string& direction) {
  rewrite::Circuit in = rewrite::circuit_from_text(slurp(in_path));
  const rewrite::Direction dir = direction == "reversed" ? rewrite::Direction::Reversed
                                                         : rewrite::Direction::Forward;
  rewrite::Circuit out = rewrite::rewrite_pipeline(in, dir);
  spit(out_path, rewrite::to_text(out));
  rewrite::RewriteReport rep = rewrite::make_report(in, out);
  const std::string json = rewrite::report_json(rep);
  if (!report_path.empty()) spit(report_path, json);
  std::cout << json << "\n";
  return kExitOk;
}

// ---- timing ----------------------------------------------------------------------

hardware::HardwarePreset resolve_preset(const std::string& name,
                                        const std::string& file) {
  if (!file.empty()) return hardware::preset_from_json(slurp(file));
  if (const char* dir = std::getenv("QPURIFY_PRESET_DIR")) {
    const std::string path = std::string(dir) + "/" + name + ".json";
    std::ifstream probe(path);
    if (probe) return hardware::preset_from_json(slurp(path));
  }
  return hardware::preset_by_name(name);
}

int cmd_timing(const std::string& preset_name, const std::string& preset_file,
               const std::string& json_path) {
  hardware::HardwarePreset p = resolve_preset(preset_name, preset_file);
  hardware::TimingReport r = hardware::protocol_times(p);
  std::cout << hardware::report_to_text(r);
  if (!json_path.empty()) spit(json_path, hardware::report_to_json(r));
  return kExitOk;
}

// ---- tables ----------------------------------------------------------------------

int cmd_tables(const std::string& which, const std::string& out_path, bool text) {
  std::string payload;
  if (which == "rotations") {
    auto t = bell::generate_rotation_table();
    payload = text ? bell::to_text(t) : bell::to_json(t);
  } else if (which == "deutsch") {
    auto t = bell::generate_deutsch_table();
    payload = text ? bell::to_text(t) : bell::to_json(t);
  } else if (which == "bennett") {
    auto t = bell::generate_bennett_table();
    payload = text ? bell::to_text(t) : bell::to_json(t);
  } else if (which == "all") {
    if (text) {
      payload = bell::to_text(bell::generate_rotation_table()) + "\n" +
                bell::to_text(bell::generate_deutsch_table()) + "\n" +
                bell::to_text(bell::generate_bennett_table());
    } else {
      nlohmann::json j;
      j["rotations"] = nlohmann::json::parse(bell::to_json(bell::generate_rotation_table()));
      j["deutsch_replacement"] =
          nlohmann::json::parse(bell::to_json(bell::generate_deutsch_table()));
      j["bennett"] = nlohmann::json::parse(bell::to_json(bell::generate_bennett_table()));
      payload = j.dump(2);
    }
  } else {
    throw std::invalid_argument("--which must be rotations|deutsch|bennett|all");
  }
  if (out_path.empty()) std::cout << payload << "\n";
  else spit(out_path, payload);
  return kExitOk;
}

// ---- jc --------------------------------------------------------------------------

int cmd_jc(hardware::JCParams params, bool validate, double time, int steps,
           const std::string& params_file) {
  if (!params_file.empty()) {
    nlohmann::json j = nlohmann::json::parse(slurp(params_file));
    params.omega_cavity = j.at("omega_cavity").get<double>();
    params.omega_q1 = j.at("omega_q1").get<double>();
    params.omega_q2 = j.at("omega_q2").get<double>();
    params.chi1 = j.at("chi1").get<double>();
    params.chi2 = j.at("chi2").get<double>();
    params.fock_cutoff = j.value("fock_cutoff", 5);
  }
  hardware::JCEffective eff = hardware::jc_effective(params);
  nlohmann::json out;
  out["j_eff_rad_per_s"] = eff.j_eff;
  out["omega_q1_dressed"] = eff.omega_q1_dressed;
  out["omega_q2_dressed"] = eff.omega_q2_dressed;
  out["tau_iswap_s"] = M_PI / (4.0 * std::abs(eff.j_eff));
  if (validate) {
    hardware::JCValidation v = hardware::jc_validate(params, time, steps);
    out["measured_exchange_frequency"] = v.measured_exchange_frequency;
    out["predicted_exchange_frequency"] = v.predicted;
    out["relative_error"] = v.relative_error;
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"iSWAP-based entanglement purification toolkit"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run the self-verification suite");
  double tol = 1e-12;
  std::string tables_expect;
  verify->add_option("--tol", tol, "residual tolerance for the gate identities");
  verify->add_option("--tables-expect", tables_expect,
                     "JSON file with expected truth tables (default: built-in)");

  auto* purify_cmd = app.add_subcommand("purify", "fidelity recursion sweeps (CSV)");
  std::vector<double> f0s{0.7};
  std::vector<double> epss{0.0};
  double target = 0.99;
  int max_rounds = 30;
  std::string out_path;
  purify_cmd->add_option("--f0", f0s, "initial fidelities")->expected(-1);
  purify_cmd->add_option("--eps", epss, "pulse errors (2Jt = pi/2 + eps)")->expected(-1);
  purify_cmd->add_option("--target", target, "target fidelity");
  purify_cmd->add_option("--max-rounds", max_rounds, "round limit");
  purify_cmd->add_option("--out", out_path, "output CSV path (default stdout)");

  auto* rewrite_cmd = app.add_subcommand("rewrite", "replace BCNOTs by BiSWAP units");
  std::string in_path, rw_out, report_path, direction = "forward";
  rewrite_cmd->add_option("--in", in_path, "input circuit file")->required();
  rewrite_cmd->add_option("--out", rw_out, "output circuit file")->required();
  rewrite_cmd->add_option("--report", report_path, "gate-count report JSON path");
  rewrite_cmd->add_option("--direction", direction, "forward|reversed")
      ->check(CLI::IsMember({"forward", "reversed"}));

  auto* timing = app.add_subcommand("timing", "gate and protocol timing report");
  std::string preset_name = "sc-charge", preset_file, timing_json;
  timing->add_option("--preset", preset_name, "preset name");
  timing->add_option("--preset-file", preset_file, "preset JSON file");
  timing->add_option("--json", timing_json, "write the report as JSON here");

  auto* tables = app.add_subcommand("tables", "emit the generated truth tables");
  std::string which = "all", tables_out;
  bool tables_text = false;
  tables->add_option("--which", which, "rotations|deutsch|bennett|all");
  tables->add_option("--out", tables_out, "output path (default stdout)");
  tables->add_flag("--text", tables_text, "aligned text instead of JSON");

  auto* jc = app.add_subcommand("jc", "effective XY coupling from the cavity model");
  hardware::JCParams params;
  params.omega_cavity = 6e9;
  params.omega_q1 = params.omega_q2 = 5e9;
  params.chi1 = params.chi2 = 5e7;
  bool jc_validate_flag = false;
  double jc_time = 0.0;
  int jc_steps = 4000;
  std::string jc_params_file;
  jc->add_option("--omega", params.omega_cavity, "cavity frequency (rad/s)");
  jc->add_option("--wq1", params.omega_q1, "qubit 1 frequency (rad/s)");
  jc->add_option("--wq2", params.omega_q2, "qubit 2 frequency (rad/s)");
  jc->add_option("--chi1", params.chi1, "qubit 1 coupling (rad/s)");
  jc->add_option("--chi2", params.chi2, "qubit 2 coupling (rad/s)");
  jc->add_option("--cutoff", params.fock_cutoff, "Fock-space cutoff");
  jc->add_option("--params", jc_params_file, "JSON parameter file");
  jc->add_flag("--validate", jc_validate_flag, "run the numerical validation");
  jc->add_option("--time", jc_time, "evolution time (s); 0 = automatic");
  jc->add_option("--steps", jc_steps, "integration steps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(tol, tables_expect);
    if (*purify_cmd) return cmd_purify(f0s, epss, target, max_rounds, out_path);
    if (*rewrite_cmd) return cmd_rewrite(in_path, rw_out, report_path, direction);
    if (*timing) return cmd_timing(preset_name, preset_file, timing_json);
    if (*tables) return cmd_tables(which, tables_out, tables_text);
    if (*jc) return cmd_jc(params, jc_validate_flag, jc_time, jc_steps, jc_params_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
