// Copyright 2026 The dressmet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// dressmet command-line driver.
//
// Exit codes: 0 success, 1 usage or input error, 2 numerical failure
// (uncertified SDP, integrator failure), 3 negative verdict under --gate.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dressmet/codespace.hpp"
#include "dressmet/criteria.hpp"
#include "dressmet/errors.hpp"
#include "dressmet/io.hpp"
#include "dressmet/nv.hpp"
#include "dressmet/sdp.hpp"
#include "dressmet/serialize.hpp"
#include "dressmet/simulate.hpp"

namespace fs = std::filesystem;
using dressmet::io::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitVerdict = 3;

// FNV-1a, 64 bit.
struct Fnv1a {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  void add(std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    add_separator();
  }
  void add_separator() {
    h ^= 0xff;
    h *= 0x100000001b3ULL;
  }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Hash of the command, its arguments and the contents of every argument that
/// names an existing file, so identical configs hash identically.
std::string config_hash(const std::vector<std::string>& args) {
  Fnv1a f;
  for (const auto& a : args) {
    f.add(a);
    std::error_code ec;
    if (fs::is_regular_file(a, ec)) f.add(slurp(a));
  }
  return f.hex();
}

struct Run {
  std::string command;
  std::vector<std::string> args;
  std::uint64_t seed = 0;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void manifest(const std::string& out) const {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const Json m{{"command", command},
                 {"config_hash", config_hash(args)},
                 {"seed", seed},
                 {"tool_version", DRESSMET_VERSION},
                 {"wall_time", wall}};
    if (out.empty()) {
      std::cerr << m.dump() << "\n";
    } else {
      dressmet::io::write_json_file(out + ".manifest.json", m);
    }
  }
};

void emit_json(const Json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    dressmet::io::write_json_file(out, j);
  }
}

std::vector<dressmet::HermitianOperator> read_operators(const std::vector<std::string>& paths) {
  std::vector<dressmet::HermitianOperator> ops;
  ops.reserve(paths.size());
  for (const auto& p : paths) ops.push_back(dressmet::io::read_operator(p));
  return ops;
}

std::uint64_t effective_seed(std::uint64_t flag) {
  if (const char* env = std::getenv("DM_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t pos = 0;
      const unsigned long long v = std::stoull(env, &pos, 0);
      if (pos != std::string(env).size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw dressmet::DomainError(std::string("DM_SEED is not an unsigned integer: '") + env + "'");
    }
  }
  return flag;
}

Json criterion_report_json(const dressmet::CriterionReport& r) {
  return Json{{"criterion", std::string(dressmet::to_string(r.criterion))},
              {"verdict", r.verdict},
              {"marginal", r.marginal},
              {"residual_norm", r.residual_norm},
              {"span_dim", r.span_dim},
              {"g_perp", dressmet::io::matrix_to_json(r.g_perp)}};
}

/// "a:b:N" or "a:b:Nlog".
std::vector<double> parse_tgrid(const std::string& s) {
  const auto c1 = s.find(':');
  const auto c2 = c1 == std::string::npos ? std::string::npos : s.find(':', c1 + 1);
  if (c2 == std::string::npos) throw dressmet::DomainError("--tgrid: expected a:b:N or a:b:Nlog, got '" + s + "'");
  std::string n_part = s.substr(c2 + 1);
  bool log = false;
  if (n_part.size() > 3 && n_part.compare(n_part.size() - 3, 3, "log") == 0) {
    log = true;
    n_part.resize(n_part.size() - 3);
  }
  try {
    std::size_t pa = 0, pb = 0, pn = 0;
    const std::string sa = s.substr(0, c1), sb = s.substr(c1 + 1, c2 - c1 - 1);
    const double a = std::stod(sa, &pa);
    const double b = std::stod(sb, &pb);
    const int n = std::stoi(n_part, &pn);
    if (pa != sa.size() || pb != sb.size() || pn != n_part.size()) throw std::invalid_argument("junk");
    return dressmet::make_grid(a, b, n, log);
  } catch (const std::logic_error&) {
    throw dressmet::DomainError("--tgrid: cannot parse '" + s + "'");
  }
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw dressmet::DomainError("cannot open '" + path + "' for writing");
    }
    os_ = path.empty() ? &std::cout : &file_;
    os_->precision(12);
  }
  std::ostream& os() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_ = nullptr;
};

// ---------------------------------------------------------------------------

struct CheckArgs {
  std::string criterion;
  std::string generator;
  std::vector<std::string> couplings;
  bool gate = false;
  std::string out;
};

int run_check(const CheckArgs& a) {
  const dressmet::Criterion c = dressmet::criterion_from_string(a.criterion);
  const dressmet::HermitianOperator g = dressmet::io::read_operator(a.generator);
  dressmet::CriterionReport r;
  if (c == dressmet::Criterion::Hnls) {
    // Lindblad operators need not be Hermitian.
    std::vector<dressmet::CMatrix> ls;
    for (const auto& p : a.couplings) ls.push_back(dressmet::io::matrix_from_json(dressmet::io::read_json_file(p)));
    r = dressmet::hnls_condition(g, ls);
  } else if (c == dressmet::Criterion::Thm1) {
    r = dressmet::thm1_condition(g, read_operators(a.couplings));
  } else {
    r = dressmet::thm2_condition(g, read_operators(a.couplings));
  }
  emit_json(criterion_report_json(r), a.out);
  return a.gate && !r.verdict ? kExitVerdict : kExitOk;
}

struct OptimizeArgs {
  std::string generator;
  std::vector<std::string> couplings;
  double tol = 1e-8;
  std::string out;
};

int run_optimize(const OptimizeArgs& a) {
  const auto problem =
      dressmet::SdpProblem::from_couplings(dressmet::io::read_operator(a.generator), read_operators(a.couplings));
  dressmet::PrimalOptions opts;
  opts.tol = a.tol;
  const dressmet::SdpSolution s = dressmet::solve_primal(problem, opts);
  emit_json(dressmet::io::solution_to_json(s, dressmet::constructive_bound(problem)), a.out);
  if (!s.certified) {
    std::cerr << "optimize: solution not certified (gap " << s.gap << ")\n";
    return kExitNumerical;
  }
  return kExitOk;
}

struct BuildCodeArgs {
  std::string from_sdp;
  double cutoff = 1e-12;
  std::string out;
};

int run_build_code(const BuildCodeArgs& a) {
  const auto g_tilde = dressmet::io::g_tilde_from_json(dressmet::io::read_json_file(a.from_sdp));
  emit_json(dressmet::io::code_to_json(dressmet::code_from_sdp(g_tilde, a.cutoff)), a.out);
  return kExitOk;
}

struct VerifyArgs {
  std::string code;
  std::string generator;
  std::vector<std::string> couplings;
  double nu0 = 1.0;
  double tol = 1e-9;
  std::string out;
};

int run_verify(const VerifyArgs& a) {
  const dressmet::CodeSpace code = dressmet::io::code_from_json(dressmet::io::read_json_file(a.code));
  const auto couplings = read_operators(a.couplings);
  const dressmet::HermitianOperator g = a.generator.empty()
                                            ? dressmet::HermitianOperator::zero(code.sys_dim())
                                            : dressmet::io::read_operator(a.generator);
  const dressmet::ConditionReport r = dressmet::check_conditions(code, g, couplings);

  // Knill-Laflamme on the secular jump operators of the two-level dressing,
  // with the couplings lifted when the code carries an ancilla.
  std::vector<dressmet::HermitianOperator> lifted;
  for (const auto& c : couplings) {
    lifted.push_back(dressmet::HermitianOperator::hermitian_part(code.lift_system(c.matrix())));
  }
  const dressmet::Dressing dressing = dressmet::two_level_dressing(code, a.nu0, lifted);
  dressmet::Tolerances tol;
  tol.membership = a.tol;
  const dressmet::KnillLaflamme kl = dressmet::verify_knill_laflamme(code, dressing.lindblads.flatten(), tol);

  Json j{{"dephasing_violation", r.dephasing_violation},
         {"relaxation_violation", r.relaxation_violation},
         {"kl_violation", r.kl_violation},
         {"signal", r.signal},
         {"passes", r.passes(a.tol)},
         {"knill_laflamme", {{"ok", kl.ok}, {"violation", kl.violation}, {"nu0", a.nu0}}}};
  j["excitation_violation"] = r.excitation_violation ? Json(*r.excitation_violation) : Json(nullptr);
  emit_json(j, a.out);
  return kExitOk;
}

struct NoGoArgs {
  std::vector<std::string> couplings;
  int restarts = 200;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out;
};

int run_no_go(const NoGoArgs& a, std::uint64_t seed) {
  const auto couplings = read_operators(a.couplings);
  if (couplings.empty()) throw dressmet::DomainError("no-go: at least one coupling is required");
  const dressmet::NoGoResult r =
      dressmet::no_go_search(couplings, couplings.front().dim(), a.restarts, seed, a.jobs);
  emit_json(Json{{"min_penalty", r.min_penalty},
                 {"restarts", r.restarts},
                 {"below_1e10", r.below_1e10},
                 {"seed", seed},
                 {"best", dressmet::io::matrix_to_json(r.best)}},
            a.out);
  return kExitOk;
}

struct SimulateArgs {
  std::string model;
  std::string config;
  std::string out;
};

int run_simulate(const SimulateArgs& a) {
  const dressmet::ProbeModel m = dressmet::io::model_from_json(dressmet::io::read_json_file(a.model));
  dressmet::SimConfig cfg = dressmet::io::sim_config_from_json(dressmet::io::read_json_file(a.config));
  dressmet::LindbladGenerator gen = m.generator();
  if (cfg.delta_omega != 0.0) gen = gen.with_hamiltonian_shift(cfg.delta_omega * m.g.matrix());
  cfg.delta_omega = 0.0;
  const dressmet::Trajectory tr = dressmet::evolve(m.input_state(), gen, cfg);

  CsvWriter csv(a.out);
  csv.os() << "t,trace,coherence,purity\n";
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    const dressmet::CMatrix& rho = tr.states[k];
    csv.os() << tr.times[k] << ',' << rho.trace().real() << ',' << m.coherence(rho) << ','
             << (rho * rho).trace().real() << '\n';
  }
  return kExitOk;
}

struct SweepArgs {
  std::string protected_model;
  std::string unprotected_model;
  std::string tgrid = "0.1:20:40log";
  int jobs = 1;
  double dt = 0.0;
  std::string out;
};

int run_sweep(const SweepArgs& a) {
  const auto prot = dressmet::io::model_from_json(dressmet::io::read_json_file(a.protected_model));
  const auto unprot = dressmet::io::model_from_json(dressmet::io::read_json_file(a.unprotected_model));
  const auto rows = dressmet::scaling_sweep(prot, unprot, parse_tgrid(a.tgrid), a.jobs, a.dt);
  CsvWriter csv(a.out);
  csv.os() << "t,qfi_protected,qfi_unprotected,coherence,crlb\n";
  for (const auto& r : rows) {
    csv.os() << r.t << ',' << r.qfi_protected << ',' << r.qfi_unprotected << ',' << r.coherence << ',' << r.crlb
             << '\n';
  }
  return kExitOk;
}

struct NvDemoArgs {
  std::string regime;
  bool ancilla = false;
  bool table = false;
  std::string format = "markdown";
  std::string export_dir;
  int restarts = 200;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out;
};

Json verdict_json(const dressmet::VerdictCell& c) {
  return Json{{"regime", c.regime},
              {"ancilla", c.ancilla},
              {"achievable", c.achievable},
              {"witness", c.witness},
              {"witness_value", c.witness_value}};
}

Json nv_noise_json(const std::string& regime) {
  return Json{{"regime", regime}, {"gamma", {{"kind", "flat"}, {"g", 1.0}, {"beta", 1.0}}}};
}

int run_nv_demo(const NvDemoArgs& a, std::uint64_t seed) {
  if (!a.export_dir.empty()) {
    const std::string regime = a.regime.empty() ? "dephasing" : a.regime;
    const Json noise = nv_noise_json(regime);
    const dressmet::BathSpectrum spectrum = dressmet::io::spectrum_from_json(noise);
    fs::create_directories(a.export_dir);
    dressmet::io::write_json_file(fs::path(a.export_dir) / "protected.json",
                                  dressmet::io::model_to_json(dressmet::nv_protected_model(spectrum), noise));
    dressmet::io::write_json_file(fs::path(a.export_dir) / "unprotected.json",
                                  dressmet::io::model_to_json(dressmet::nv_unprotected_model(spectrum), noise));
    if (a.regime.empty() && !a.table) return kExitOk;
  }
  if (a.table) {
    const dressmet::VerdictTable t = dressmet::nv_verdict_table(a.restarts, seed, a.jobs);
    if (a.format == "json") {
      Json cells = Json::array();
      for (const auto& c : t.cells) cells.push_back(verdict_json(c));
      emit_json(Json{{"cells", cells}, {"seed", seed}, {"restarts", a.restarts}}, a.out);
    } else {
      if (a.out.empty()) {
        std::cout << t.markdown();
      } else {
        std::ofstream f(a.out);
        if (!f) throw dressmet::DomainError("cannot open '" + a.out + "' for writing");
        f << t.markdown();
      }
    }
    return kExitOk;
  }
  if (a.regime.empty()) throw dressmet::DomainError("nv-demo: give --regime, --table or --export-models");
  emit_json(verdict_json(dressmet::nv_verdict(a.regime, a.ancilla, a.restarts, seed, a.jobs)), a.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heisenberg-scaling metrology under Markovian noise"};
  app.set_version_flag("--version", std::string(DRESSMET_VERSION));
  app.require_subcommand(1);

  CheckArgs check;
  auto* c_check = app.add_subcommand("check", "span-membership criterion for a generator and couplings");
  c_check->add_option("--criterion", check.criterion, "thm1 | thm2 | hnls")->required();
  c_check->add_option("--generator", check.generator, "signal generator (operator JSON)")->required()->check(CLI::ExistingFile);
  c_check->add_option("--couplings", check.couplings, "coupling operators (Lindblad operators for hnls)")
      ->required()
      ->check(CLI::ExistingFile);
  c_check->add_flag("--gate", check.gate, "exit 3 when the verdict is negative");
  c_check->add_option("--out", check.out, "output file (default stdout)");

  OptimizeArgs optimize;
  auto* c_opt = app.add_subcommand("optimize", "solve the code-design SDP");
  c_opt->add_option("--generator", optimize.generator)->required()->check(CLI::ExistingFile);
  c_opt->add_option("--couplings", optimize.couplings)->required()->check(CLI::ExistingFile);
  c_opt->add_option("--tol", optimize.tol, "barrier termination tolerance")->capture_default_str();
  c_opt->add_option("--out", optimize.out);

  BuildCodeArgs build;
  auto* c_build = app.add_subcommand("build-code", "purify an SDP optimizer into a code space");
  c_build->add_option("--from-sdp", build.from_sdp, "solution JSON from optimize")->required()->check(CLI::ExistingFile);
  c_build->add_option("--cutoff", build.cutoff, "eigenvalue cutoff")->capture_default_str();
  c_build->add_option("--out", build.out);

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "code-space conditions and Knill-Laflamme check");
  c_verify->add_option("--code", verify.code)->required()->check(CLI::ExistingFile);
  c_verify->add_option("--generator", verify.generator)->check(CLI::ExistingFile);
  c_verify->add_option("--couplings", verify.couplings)->required()->check(CLI::ExistingFile);
  c_verify->add_option("--nu0", verify.nu0, "dressing gap")->capture_default_str();
  c_verify->add_option("--tol", verify.tol)->capture_default_str();
  c_verify->add_option("--out", verify.out);

  NoGoArgs nogo;
  auto* c_nogo = app.add_subcommand("no-go", "minimize the compression penalty over random restarts");
  c_nogo->add_option("--couplings", nogo.couplings)->required()->check(CLI::ExistingFile);
  c_nogo->add_option("--restarts", nogo.restarts)->capture_default_str()->check(CLI::PositiveNumber);
  c_nogo->add_option("--seed", nogo.seed)->capture_default_str();
  c_nogo->add_option("--jobs", nogo.jobs)->capture_default_str()->check(CLI::PositiveNumber);
  c_nogo->add_option("--out", nogo.out);

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "integrate the master equation for a probe model");
  c_sim->add_option("--model", sim.model)->required()->check(CLI::ExistingFile);
  c_sim->add_option("--config", sim.config)->required()->check(CLI::ExistingFile);
  c_sim->add_option("--out", sim.out, "trajectory CSV (default stdout)");

  SweepArgs sweep;
  auto* c_sweep = app.add_subcommand("sweep", "QFI of protected and unprotected probes over a time grid");
  c_sweep->add_option("--protected", sweep.protected_model)->required()->check(CLI::ExistingFile);
  c_sweep->add_option("--unprotected", sweep.unprotected_model)->required()->check(CLI::ExistingFile);
  c_sweep->add_option("--tgrid", sweep.tgrid, "a:b:N or a:b:Nlog")->capture_default_str();
  c_sweep->add_option("--jobs", sweep.jobs)->capture_default_str()->check(CLI::PositiveNumber);
  c_sweep->add_option("--dt", sweep.dt, "step size (0: automatic)")->capture_default_str();
  c_sweep->add_option("--out", sweep.out);

  NvDemoArgs nv;
  auto* c_nv = app.add_subcommand("nv-demo", "NV centre verdicts");
  c_nv->add_option("--regime", nv.regime)->check(CLI::IsMember({"dephasing", "relaxation", "thermal"}));
  c_nv->add_flag("--ancilla", nv.ancilla);
  c_nv->add_flag("--table", nv.table, "all four verdict cells");
  c_nv->add_option("--format", nv.format)->check(CLI::IsMember({"json", "markdown"}))->capture_default_str();
  c_nv->add_option("--export-models", nv.export_dir, "write protected/unprotected model JSON to DIR");
  c_nv->add_option("--restarts", nv.restarts)->capture_default_str()->check(CLI::PositiveNumber);
  c_nv->add_option("--seed", nv.seed)->capture_default_str();
  c_nv->add_option("--jobs", nv.jobs)->capture_default_str()->check(CLI::PositiveNumber);
  c_nv->add_option("--out", nv.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  Run run;
  run.args.assign(argv + 1, argv + argc);
  try {
    int rc = kExitOk;
    std::string out;
    if (c_check->parsed()) {
      run.command = "check";
      out = check.out;
      rc = run_check(check);
    } else if (c_opt->parsed()) {
      run.command = "optimize";
      out = optimize.out;
      rc = run_optimize(optimize);
    } else if (c_build->parsed()) {
      run.command = "build-code";
      out = build.out;
      rc = run_build_code(build);
    } else if (c_verify->parsed()) {
      run.command = "verify";
      out = verify.out;
      rc = run_verify(verify);
    } else if (c_nogo->parsed()) {
      run.command = "no-go";
      out = nogo.out;
      run.seed = effective_seed(nogo.seed);
      rc = run_no_go(nogo, run.seed);
    } else if (c_sim->parsed()) {
      run.command = "simulate";
      out = sim.out;
      rc = run_simulate(sim);
    } else if (c_sweep->parsed()) {
      run.command = "sweep";
      out = sweep.out;
      rc = run_sweep(sweep);
    } else if (c_nv->parsed()) {
      run.command = "nv-demo";
      out = nv.out;
      run.seed = effective_seed(nv.seed);
      rc = run_nv_demo(nv, run.seed);
    }
    run.manifest(out);
    return rc;
  } catch (const dressmet::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    // DomainError, DimensionError, malformed JSON and unreadable files.
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
