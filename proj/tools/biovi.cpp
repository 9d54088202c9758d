// Command-line front door for the engine: constants, ad-hoc unit
// arithmetic, worked problems, the regression suite, pulse-stream
// simulation, and ledger import/export.
//
// Exit codes: 0 success, 1 regression failure, 2 usage error, 3 I/O
// error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "biovi/ledger.hpp"
#include "biovi/problems.hpp"
#include "biovi/regression.hpp"
#include "biovi/simulate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRegressionFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::string quantity_str(const biovi::Quantity& q) {
  std::string s = biovi::detail::format_double(q.magnitude());
  std::string unit = biovi::format(q.dim());
  if (unit != "1") s += " " + unit;
  return s;
}

biovi::ProblemMode parse_mode(const std::string& mode) {
  if (mode == "strict-paper") return biovi::ProblemMode::StrictPaper;
  if (mode == "recomputed") return biovi::ProblemMode::Recomputed;
  throw biovi::Error("--mode must be strict-paper or recomputed");
}

double to_radians(double angle, bool radians) {
  return radians ? angle : angle * std::numbers::pi / 180.0;
}

int cmd_constants() {
  for (const char* name : {"c", "h", "hbar", "t_P", "l_P", "G"})
    std::printf("%-5s %s\n", name, quantity_str(biovi::constant(name)).c_str());
  return kExitOk;
}

int cmd_problem(const std::string& id, const std::string& mode_name, bool csv) {
  biovi::SampleProblemResult r = biovi::run_sample_problem(id, parse_mode(mode_name));
  if (csv) {
    std::ostringstream os;
    biovi::serialize_problem_csv(r, os);
    std::fputs(os.str().c_str(), stdout);
  } else {
    std::printf("problem %s (%s)\n", r.problem_id.c_str(), biovi::to_string(r.mode));
    for (const auto& [label, q] : r.named_values)
      std::printf("  %-18s %s\n", label.c_str(), quantity_str(q).c_str());
  }
  return kExitOk;
}

int cmd_regress(const std::string& mode_name, bool as_json) {
  biovi::RegressionReport report = biovi::run_regression_suite(parse_mode(mode_name));
  if (as_json) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : report.entries) {
      nlohmann::json j{{"problem_id", e.problem_id},
                       {"label", e.label},
                       {"expected", e.expected.magnitude()},
                       {"expected_unit", biovi::format(e.expected.dim())},
                       {"actual", e.actual.magnitude()},
                       {"actual_unit", biovi::format(e.actual.dim())},
                       {"rel_error", e.rel_error},
                       {"pass", e.pass},
                       {"mode", biovi::to_string(e.mode)}};
      if (!e.note.empty()) j["note"] = e.note;
      entries.push_back(j);
    }
    nlohmann::json out{{"mode", biovi::to_string(report.mode)},
                       {"all_pass", report.all_pass()},
                       {"entries", entries}};
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    for (const auto& e : report.entries)
      std::printf("%-5s %-20s expected=%s actual=%s rel_error=%s %s%s%s\n", e.problem_id.c_str(),
                  e.label.c_str(), quantity_str(e.expected).c_str(), quantity_str(e.actual).c_str(),
                  biovi::detail::format_double(e.rel_error).c_str(), e.pass ? "PASS" : "FAIL",
                  e.note.empty() ? "" : "  note: ", e.note.c_str());
    std::printf("%s\n", report.all_pass() ? "all targets pass" : "some targets fail");
  }
  return report.all_pass() ? kExitOk : kExitRegressionFailure;
}

int cmd_simulate(std::size_t n, std::uint64_t seed, const std::vector<double>& mu,
                 const std::vector<double>& sigma, const std::vector<double>& theta,
                 const std::string& out_path) {
  std::array<biovi::GaussianParams, 3> params{biovi::GaussianParams{mu[0], sigma[0]},
                                              biovi::GaussianParams{mu[1], sigma[1]},
                                              biovi::GaussianParams{mu[2], sigma[2]}};
  biovi::ClassThresholds th{theta[0], theta[1], theta[2]};
  biovi::SimulationResult r = biovi::simulate_stream(n, seed, params, th);
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::fprintf(stderr, "cannot open '%s' for writing\n", out_path.c_str());
      return kExitIo;
    }
    biovi::serialize_csv(r.ledger, out);
  } else {
    std::ostringstream os;
    biovi::serialize_csv(r.ledger, os);
    std::fputs(os.str().c_str(), stdout);
  }
  std::fputs(biovi::serialize_summary(r.summary).c_str(),
             out_path.empty() ? stderr : stdout);
  std::printf("best product combination by yield: grade %d > grade %d > grade %d\n",
              r.yield_ranking[0], r.yield_ranking[1], r.yield_ranking[2]);
  return kExitOk;
}

int cmd_ledger_summarize(const std::string& path, const std::vector<double>& theta) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "cannot open '%s'\n", path.c_str());
    return kExitIo;
  }
  biovi::Ledger l = biovi::load_ledger_csv(in);
  biovi::LedgerSummary s = biovi::summarize(l, {theta[0], theta[1], theta[2]});
  std::fputs(biovi::serialize_summary(s).c_str(), stdout);
  return kExitOk;
}

int cmd_ledger_roundtrip(const std::string& in_path, const std::string& out_path) {
  std::ifstream in(in_path, std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "cannot open '%s'\n", in_path.c_str());
    return kExitIo;
  }
  biovi::Ledger l = biovi::load_ledger_csv(in);
  if (out_path.empty()) {
    std::ostringstream os;
    biovi::serialize_csv(l, os);
    std::fputs(os.str().c_str(), stdout);
    return kExitOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::fprintf(stderr, "cannot open '%s' for writing\n", out_path.c_str());
    return kExitIo;
  }
  biovi::serialize_csv(l, out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unit-aware calculation engine, pulse simulator and regression harness"};
  app.require_subcommand(1);

  bool radians = false;
  app.add_flag("--rad", radians, "interpret angles as radians (default: degrees)");

  // constants
  app.add_subcommand("constants", "print the physical constants");

  // eval <op>
  auto* eval = app.add_subcommand("eval", "evaluate one operation");
  eval->require_subcommand(1);

  std::string qa, qb;
  auto* ev_mul = eval->add_subcommand("mul", "multiply two quantities");
  ev_mul->add_option("a", qa, "first quantity, e.g. '2 m'")->required();
  ev_mul->add_option("b", qb, "second quantity")->required();
  auto* ev_div = eval->add_subcommand("div", "divide two quantities");
  ev_div->add_option("a", qa)->required();
  ev_div->add_option("b", qb)->required();
  auto* ev_add = eval->add_subcommand("add", "add two quantities");
  ev_add->add_option("a", qa)->required();
  ev_add->add_option("b", qb)->required();

  double ms_v = 0.0, ms_x = 0.0, ms_y = 0.0, ms_theta = 0.0, ms_dt = 1.0;
  auto* ev_stretch = eval->add_subcommand("motion-stretch", "v x y cos(theta) / (c^2 dt)");
  ev_stretch->add_option("--v", ms_v)->required();
  ev_stretch->add_option("--x", ms_x)->required();
  ev_stretch->add_option("--y", ms_y)->required();
  ev_stretch->add_option("--theta", ms_theta)->required();
  ev_stretch->add_option("--dt", ms_dt);

  double pv_v = 0.0;
  auto* ev_phase = eval->add_subcommand("phase-velocity", "anticipated phase velocity c^2/v");
  ev_phase->add_option("--v", pv_v)->required();

  double lf_v = 0.0;
  auto* ev_gamma = eval->add_subcommand("lorentz-factor", "1/sqrt(1 - v^2/c^2)");
  ev_gamma->add_option("--v", lf_v)->required();

  double pe_nu = 0.0;
  auto* ev_photon = eval->add_subcommand("photon-energy", "h nu");
  ev_photon->add_option("--nu", pe_nu)->required();

  double bq_nu = 0.0, bq_v = 0.0;
  auto* ev_biovi = eval->add_subcommand("biovi-quantity", "h nu v_rgb");
  ev_biovi->add_option("--nu", bq_nu)->required();
  ev_biovi->add_option("--v-rgb", bq_v)->required();

  // problem <id>
  std::string problem_id, mode_name = "strict-paper";
  bool problem_csv = false;
  auto* problem = app.add_subcommand("problem", "run a worked sample problem");
  problem->add_option("id", problem_id, "one of 2.1a, 2.1b, 2.2a, 2.2b, 2.2c")->required();
  problem->add_option("--mode", mode_name, "strict-paper (default) or recomputed");
  problem->add_flag("--csv", problem_csv, "emit the flat CSV record form");

  // regress
  bool regress_json = false;
  auto* regress = app.add_subcommand("regress", "run the full regression suite");
  regress->add_option("--mode", mode_name);
  regress->add_flag("--json", regress_json, "machine-readable JSON report");

  // simulate
  std::size_t sim_n = 100;
  std::uint64_t sim_seed = 1;
  std::vector<double> sim_mu{1.0, 2.0, 3.0}, sim_sigma{0.2, 0.3, 0.4}, sim_theta{0.5, 0.5, 0.5};
  std::string sim_out;
  auto* simulate = app.add_subcommand("simulate", "simulate a pulse stream into a ledger");
  simulate->add_option("-n,--count", sim_n, "number of pulses");
  simulate->add_option("--seed", sim_seed, "generator seed");
  simulate->add_option("--mu", sim_mu, "per-grade means (grades 1 2 3)")->expected(3);
  simulate->add_option("--sigma", sim_sigma, "per-grade deviations")->expected(3);
  simulate->add_option("--theta", sim_theta, "per-grade thresholds")->expected(3);
  simulate->add_option("-o,--out", sim_out, "ledger CSV output path (default stdout)");

  // ledger {export,import,summarize}
  auto* ledger = app.add_subcommand("ledger", "ledger file operations");
  ledger->require_subcommand(1);
  std::string ledger_in, ledger_out;
  std::vector<double> ledger_theta{0.0, 0.0, 0.0};
  auto* l_export = ledger->add_subcommand("export", "load a ledger and re-serialize it");
  l_export->add_option("input", ledger_in)->required();
  l_export->add_option("-o,--out", ledger_out);
  auto* l_import = ledger->add_subcommand("import", "validate a ledger CSV");
  l_import->add_option("input", ledger_in)->required();
  auto* l_sum = ledger->add_subcommand("summarize", "print the table-style summary");
  l_sum->add_option("input", ledger_in)->required();
  l_sum->add_option("--theta", ledger_theta, "per-grade thresholds")->expected(3);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand("constants")) return cmd_constants();
    if (app.got_subcommand("eval")) {
      if (eval->got_subcommand(ev_mul) || eval->got_subcommand(ev_div) ||
          eval->got_subcommand(ev_add)) {
        biovi::Quantity a = biovi::parse_quantity(qa);
        biovi::Quantity b = biovi::parse_quantity(qb);
        biovi::Quantity r = eval->got_subcommand(ev_mul)   ? a * b
                            : eval->got_subcommand(ev_div) ? a / b
                                                           : biovi::add(a, b, biovi::default_mode());
        std::printf("%s\n", quantity_str(r).c_str());
      } else if (eval->got_subcommand(ev_stretch)) {
        biovi::Quantity r = biovi::motion_stretch(ms_v, ms_x, ms_y, to_radians(ms_theta, radians),
                                                  ms_dt);
        std::printf("%s\n", quantity_str(r).c_str());
      } else if (eval->got_subcommand(ev_phase)) {
        biovi::PhaseVelocity pv = biovi::anticipated_phase_velocity(pv_v);
        std::printf("abs_vp  %s m s^-1\nfull_vp %s m s^-1\nc_cons  %s m s^-1\n",
                    biovi::detail::format_double(pv.abs_vp).c_str(),
                    biovi::detail::format_double(pv.full_vp).c_str(),
                    biovi::detail::format_double(pv.c_cons).c_str());
      } else if (eval->got_subcommand(ev_gamma)) {
        std::printf("%s\n", biovi::detail::format_double(biovi::lorentz_factor(lf_v)).c_str());
      } else if (eval->got_subcommand(ev_photon)) {
        std::printf("%s\n", quantity_str(biovi::photon_energy(pe_nu)).c_str());
      } else if (eval->got_subcommand(ev_biovi)) {
        std::printf("%s\n", quantity_str(biovi::biovi_quantity(bq_nu, bq_v)).c_str());
      }
      return kExitOk;
    }
    if (app.got_subcommand("problem")) return cmd_problem(problem_id, mode_name, problem_csv);
    if (app.got_subcommand("regress")) return cmd_regress(mode_name, regress_json);
    if (app.got_subcommand("simulate"))
      return cmd_simulate(sim_n, sim_seed, sim_mu, sim_sigma, sim_theta, sim_out);
    if (app.got_subcommand("ledger")) {
      if (ledger->got_subcommand(l_sum)) return cmd_ledger_summarize(ledger_in, ledger_theta);
      if (ledger->got_subcommand(l_import)) {
        std::ifstream in(ledger_in, std::ios::binary);
        if (!in) {
          std::fprintf(stderr, "cannot open '%s'\n", ledger_in.c_str());
          return kExitIo;
        }
        biovi::Ledger l = biovi::load_ledger_csv(in);
        std::printf("ok: %zu records\n", l.size());
        return kExitOk;
      }
      if (ledger->got_subcommand(l_export)) return cmd_ledger_roundtrip(ledger_in, ledger_out);
    }
  } catch (const biovi::UnknownProblem& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const biovi::FormatError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const biovi::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
