#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nmlab/models.hpp"
#include "nmlab/oracle.hpp"
#include "nmlab/trajectory.hpp"
#include "nmlab/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNotConverged = 3;

nmlab::ModelSpec load_model(const std::string& model, const std::string& spec_path) {
  if (!spec_path.empty()) {
    std::ifstream in(spec_path);
    if (!in) throw nmlab::ParseError("cannot open spec file: " + spec_path);
    std::stringstream buf;
    buf << in.rdbuf();
    return nmlab::from_spec(buf.str());
  }
  return nmlab::catalog_model(model);
}

nmlab::EvalMode parse_mode(const std::string& mode) {
  if (mode == "exact-limit") return nmlab::EvalMode::ExactLimit;
  if (mode == "finite-eps") return nmlab::EvalMode::FiniteEps;
  if (mode == "both") return nmlab::EvalMode::Both;
  throw nmlab::ParseError("unknown mode: " + mode);
}

std::string csv_row(const nmlab::MeasurePoint& p) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                p.t, p.g, p.g_finite_eps, p.d_T, p.r_inc_rate, p.N_T, p.T_norm, p.R_cum);
  return buf;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

struct CommonFlags {
  std::string model = "dephasing-sin";
  std::string spec_path;
  double t_max = 5.0;
  double dt = 0.01;
  double eps = 1e-4;
  std::string mode = "both";
  std::string out;
  std::uint64_t seed = 0;
  int threads = 0;
  nmlab::OptimizerConfig opt;
  bool allow_hamiltonian = false;

  void attach(CLI::App* cmd, bool with_grid = true) {
    cmd->add_option("--model", model, "catalog model name");
    cmd->add_option("--spec", spec_path, "generator spec JSON file (overrides --model)");
    if (with_grid) {
      cmd->add_option("--t-max", t_max, "sweep end time");
      cmd->add_option("--dt", dt, "grid spacing");
    }
    cmd->add_option("--eps", eps, "finite-eps increment");
    cmd->add_option("--mode", mode, "exact-limit | finite-eps | both");
    cmd->add_option("--out,-o", out, "output path (default stdout)");
    cmd->add_option("--seed", seed, "seed for seeded models");
    cmd->add_option("--threads", threads, "parallel grid workers (0 = NMLAB_THREADS/auto)");
    cmd->add_option("--max-iter", opt.max_iter, "optimizer iteration cap");
    cmd->add_option("--opt-tol", opt.tol, "optimizer improvement tolerance");
    cmd->add_option("--step0", opt.step0_abs, "optimizer initial step (absolute)");
    cmd->add_flag("--allow-hamiltonian-in-free-set", allow_hamiltonian,
                  "include commutator directions in the free set");
  }

  nmlab::ModelSpec resolve() const {
    if (spec_path.empty() && model == "random-kossakowski" && seed != 0) {
      auto m = nmlab::catalog_model(model);
      return {m.name, nmlab::random_qubit_generator(seed), std::nullopt, m.note};
    }
    return load_model(model, spec_path);
  }
};

int cmd_simulate(const CommonFlags& flags) {
  const nmlab::ModelSpec model = flags.resolve();
  const auto traj = nmlab::measure_trajectory(model.generator, flags.t_max, flags.dt,
                                              flags.eps, parse_mode(flags.mode),
                                              flags.opt, flags.threads);
  std::string text = "t,g,g_finite_eps,d_T,r_inc_rate,N_T,T_norm,R_cum\n";
  for (const auto& p : traj.points) text += csv_row(p);
  write_output(flags.out, text);
  return traj.all_converged ? kExitOk : kExitNotConverged;
}

int cmd_measure(const CommonFlags& flags, double t) {
  const nmlab::ModelSpec model = flags.resolve();
  if (t < 0) throw nmlab::ParseError("measure: t must be nonnegative");
  const double t_max = std::max(t, flags.dt);
  const auto traj = nmlab::measure_trajectory(model.generator, t_max, flags.dt, flags.eps,
                                              parse_mode(flags.mode), flags.opt,
                                              flags.threads);
  // grid point nearest to the requested time
  const int idx =
      std::min<int>(int(traj.points.size()) - 1, int(std::lround(t / flags.dt)));
  const nmlab::MeasurePoint& p = traj.points[idx];

  const nmlab::DtSolver solver(model.generator.dim(), flags.allow_hamiltonian);
  const auto [d_t, rep] =
      solver.solve(nmlab::choi_derivative(model.generator, p.t), flags.opt);

  nlohmann::json j;
  j["model"] = model.name;
  j["t"] = p.t;
  j["g"] = p.g;
  j["g_finite_eps"] = p.g_finite_eps;
  j["d_T"] = d_t;
  j["r_inc_rate"] = p.r_inc_rate;
  j["N_T"] = p.N_T;
  j["T_norm"] = p.T_norm;
  j["R_cum"] = p.R_cum;
  j["optimizer"] = {{"iterations", rep.iterations},
                    {"objective", rep.objective},
                    {"converged", rep.converged}};
  write_output(flags.out, j.dump(2) + "\n");
  return rep.converged ? kExitOk : kExitNotConverged;
}

int cmd_verify(const std::string& suite, const nmlab::VerifyOptions& opt,
               const std::string& out) {
  nmlab::VerifyReport report;
  if (suite == "propositions") report = nmlab::verify_propositions(opt);
  else if (suite == "theorem1") report = nmlab::verify_theorem1(opt);
  else if (suite == "optimizer-oracle") report = nmlab::verify_optimizer_oracle(opt);
  else if (suite == "all") report = nmlab::verify_all(opt);
  else throw nmlab::ParseError("unknown suite: " + suite);

  write_output(out, report.to_json() + "\n");
  for (const auto& c : report.checks)
    std::cerr << (c.passed ? "pass" : "FAIL") << "  " << c.name << ": " << c.detail << "\n";
  return report.all_passed() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"non-Markovianity measures of time-dependent Lindblad dynamics"};
  app.require_subcommand(1);

  CommonFlags sim_flags;
  CLI::App* sim = app.add_subcommand("simulate", "sweep a time grid, emit a CSV trajectory");
  sim_flags.attach(sim);

  CommonFlags meas_flags;
  double meas_t = 1.0;
  CLI::App* meas = app.add_subcommand("measure", "all quantifiers at one time, as JSON");
  meas_flags.attach(meas, /*with_grid=*/false);
  meas->add_option("--t", meas_t, "evaluation time")->required();
  meas->add_option("--dt", meas_flags.dt, "integration grid for cumulative measures");

  std::string suite = "all";
  std::string verify_out;
  nmlab::VerifyOptions vopt;
  CLI::App* ver = app.add_subcommand("verify", "run the property verification suites");
  ver->add_option("--suite", suite, "propositions | theorem1 | optimizer-oracle | all");
  ver->add_option("--seed", vopt.seed, "randomization seed");
  ver->add_option("--trials", vopt.trials, "instances per proposition check");
  ver->add_option("--oracle-instances", vopt.oracle_instances, "oracle comparison count");
  ver->add_option("--oracle-restarts", vopt.oracle_restarts, "oracle random restarts");
  ver->add_option("--t-max", vopt.t_max, "sweep end time for theorem1");
  ver->add_option("--dt", vopt.dt, "grid spacing for theorem1");
  ver->add_option("--out,-o", verify_out, "report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (sim->parsed()) return cmd_simulate(sim_flags);
    if (meas->parsed()) return cmd_measure(meas_flags, meas_t);
    if (ver->parsed()) return cmd_verify(suite, vopt, verify_out);
  } catch (const nmlab::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nmlab::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotConverged;
  }
  return kExitOk;
}
