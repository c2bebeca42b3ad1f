#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "CLI11.hpp"
#include "bench.hpp"
#include "config.hpp"
#include "l0pen/report_io.hpp"
#include "l0pen/verify.hpp"

namespace l0pen::cli {

namespace {

std::string fmt(double v, const char* spec = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

double inner_stat_tol(const SolverConfig& c) {
  return c.penalty.inner == InnerSolver::kSpg ? c.penalty.spg.stat_tol : c.penalty.prox.stat_tol;
}

}  // namespace

std::filesystem::path default_report_path(const std::filesystem::path& instance) {
  std::filesystem::path p = instance;
  p.replace_extension(".report.json");
  return p;
}

int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err) {
  try {
    if (std::filesystem::exists(args.out) && !args.force) {
      err << "error: '" << args.out.string() << "' exists (use --force to overwrite)\n";
      return kExitUsage;
    }
    InstanceFile file;
    file.rng = RngInfo{Rng::kName, args.seed};
    if (args.kind == "portfolio") {
      if (args.n < 2) throw ConfigError("portfolio needs --n >= 2");
      file.problem = gen_portfolio(args.n, args.seed, args.rho, args.beta);
    } else if (args.kind == "dictionary") {
      if (args.n < 1 || args.l < 1 || args.m < 1) {
        throw ConfigError("dictionary needs positive --n, --l and --m");
      }
      auto g = gen_dictionary(args.n, args.l, args.m, args.seed, args.rho);
      file.problem = std::move(g.instance);
      file.start = std::make_pair(std::move(g.C0), std::move(g.D0));
    } else {
      throw ConfigError("unknown kind '" + args.kind + "' (valid: portfolio, dictionary)");
    }
    save_instance(args.out, file);
    out << "wrote " << args.out.string() << " (" << file.kind() << ", hash "
        << instance_hash(file) << ")\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  InstanceFile file;
  SolverConfig config;
  try {
    file = load_instance(args.instance);
    const std::string fallback = args.profile.value_or(default_profile(file.kind()));
    config = args.config ? load_solver_config(*args.config, fallback) : profile_config(fallback);
    if (args.family) {
      (void)family_from_name(*args.family, 1.0);
      config.family = *args.family;
    }
    if (args.inner) {
      if (*args.inner == "spg") {
        config.penalty.inner = InnerSolver::kSpg;
      } else if (*args.inner == "prox") {
        config.penalty.inner = InnerSolver::kProxGrad;
      } else {
        throw ConfigError("--inner must be spg or prox");
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const std::string method = config.penalty.inner == InnerSolver::kSpg ? "pen-spg" : "pen-prox";
  SolveReport report;
  try {
    report = run_method(method, file, config);
  } catch (const std::exception& e) {
    err << "error: solve failed: " << e.what() << '\n';
    return kExitFlagged;
  }

  out << "method          " << method << " (family " << config.family << ")\n"
      << "status          " << to_string(report.status) << '\n'
      << "spo_value       " << fmt(report.spo_value, "%.12g") << '\n'
      << "l0              " << report.l0 << '\n'
      << "complementarity " << fmt(report.complementarity, "%.3e") << '\n'
      << "stationarity    " << fmt(report.stationarity, "%.3e") << '\n'
      << "alpha_final     " << fmt(report.alpha_final) << '\n'
      << "iterations      " << report.outer_iterations << " outer, " << report.inner_iterations
      << " inner\n"
      << "time            " << fmt(report.wall_time, "%.3f") << " s\n";

  ReportMeta meta;
  meta.method = method;
  meta.family = config.family;
  meta.instance_hash = instance_hash(file);
  meta.config_hash = config_hash(config);
  meta.zero_tol = config.penalty.outer.zero_tol;
  meta.stat_tol = inner_stat_tol(config);
  const auto report_path = args.report.value_or(default_report_path(args.instance));
  try {
    save_report(report_path, report, meta);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  out << "report          " << report_path.string() << '\n';
  return report.status == SolveStatus::kConverged ? kExitOk : kExitFlagged;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  InstanceFile file;
  SolveReport report;
  ReportMeta meta;
  try {
    file = load_instance(args.instance);
    std::tie(report, meta) = load_report(args.report);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const std::string hash = instance_hash(file);
  if (meta.instance_hash != hash) {
    err << "error: report was produced for instance " << meta.instance_hash << ", but '"
        << args.instance.string() << "' hashes to " << hash << '\n';
    return kExitUsage;
  }
  if (args.oracle) {
    if (!file.is_portfolio()) {
      err << "error: the oracle only handles portfolio instances\n";
      return kExitUsage;
    }
    if (file.portfolio().dim() > kOracleMaxDim) {
      err << "error: oracle refused: n = " << file.portfolio().dim()
          << " exceeds the enumeration limit " << kOracleMaxDim << '\n';
      return kExitUsage;
    }
  }

  try {
    const SpoProblem problem = make_problem(file);
    const auto& it = report.final_iterate;
    require_dim(it.x.size(), problem.dim, "report x");
    const double tol = 10.0 * meta.stat_tol;
    const double spo = spo_objective(problem, it.x, meta.zero_tol);
    out << "spo_value       " << fmt(spo, "%.12g") << " (report " << fmt(report.spo_value, "%.12g")
        << ")\n";

    bool passed = std::abs(spo - report.spo_value) <= 1e-9 * std::max(1.0, std::abs(spo));
    if (meta.method.rfind("pen-", 0) == 0) {
      const PenaltyFamily family = family_from_name(meta.family, problem.rho);
      const auto cert = certificate(problem, family, it, report.alpha_final, meta.zero_tol);
      out << "complementarity " << fmt(cert.comp_residual, "%.3e") << '\n'
          << "pen_residual    " << fmt(cert.pg_residual, "%.3e") << '\n'
          << "tnlp_residual   " << fmt(cert.tnlp_residual, "%.3e") << '\n'
          << "y_residual      " << fmt(cert.y_block_residual, "%.3e") << '\n'
          << "feasibility     " << fmt(cert.feasibility, "%.3e") << '\n';
      passed = passed && cert.passed(tol);
    } else {
      const double feas = problem.feasible.residual(it.x);
      const double tnlp = feas <= 1e-6 ? tnlp_stationarity(problem, it.x, meta.zero_tol)
                                       : std::numeric_limits<double>::infinity();
      out << "tnlp_residual   " << fmt(tnlp, "%.3e") << '\n'
          << "feasibility     " << fmt(feas, "%.3e") << '\n';
      passed = passed && tnlp <= tol;
    }
    out << "certificate     " << (passed ? "pass" : "fail") << " (tol " << fmt(tol, "%.1e")
        << ")\n";

    if (args.oracle) {
      const auto& inst = file.portfolio();
      const OracleResult oracle = spo_bruteforce(inst, inst.rho, args.threads);
      const double gap = spo - oracle.value;
      out << "oracle_value    " << fmt(oracle.value, "%.12g") << " (support size "
          << oracle.support.size() << ")\n"
          << "gap             " << fmt(gap, "%.3e") << '\n';
      if (args.max_gap && gap > *args.max_gap) passed = false;
    }
    return passed ? kExitOk : kExitFlagged;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  BenchConfig config;
  try {
    config = load_bench_config(args.config);
    if (args.output_dir) config.output_dir = *args.output_dir;
    if (args.threads) config.threads = std::max(1u, *args.threads);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    const BenchOutcome outcome = run_bench(config, out);
    const auto& v = outcome.value;
    out << "value profile (fraction best | fraction finished):\n";
    for (std::size_t j = 0; j < v.methods.size(); ++j) {
      out << "  " << v.methods[j] << ' ' << fmt(v.fractions.front()[j], "%.3f") << " | "
          << fmt(v.fractions.back()[j], "%.3f") << '\n';
    }
    out << "wrote " << (config.output_dir / "results.csv").string() << ", profile_value.csv, "
        << "profile_time.csv\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse optimization by exact penalty: generate, solve, benchmark, verify."};
  app.name("l0pen");
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance file");
  gen_cmd->add_option("kind", gen.kind, "portfolio | dictionary")
      ->required()
      ->check(CLI::IsMember({"portfolio", "dictionary"}));
  gen_cmd->add_option("--n", gen.n, "Assets (portfolio) or signal length (dictionary)")->required();
  gen_cmd->add_option("--l", gen.l, "Dictionary atoms");
  gen_cmd->add_option("--m", gen.m, "Dictionary signals");
  gen_cmd->add_option("--seed", gen.seed, "RNG seed")->required();
  gen_cmd->add_option("--rho", gen.rho, "Sparsity weight")->capture_default_str();
  gen_cmd->add_option("--beta", gen.beta, "Return weight (portfolio)")->capture_default_str();
  gen_cmd->add_option("-o,--out", gen.out, "Output path")->required();
  gen_cmd->add_flag("--force", gen.force, "Overwrite an existing file");

  SolveArgs solve;
  std::string solve_config;
  std::string solve_report;
  std::string solve_profile;
  std::string solve_family;
  std::string solve_inner;
  auto* solve_cmd = app.add_subcommand("solve", "Run the exact penalty method on an instance");
  solve_cmd->add_option("instance", solve.instance, "Instance file")->required();
  auto* config_opt = solve_cmd->add_option("--config", solve_config, "Solver config (JSON)");
  auto* profile_opt =
      solve_cmd->add_option("--profile", solve_profile, "portfolio-paper | dictionary-paper");
  auto* family_opt = solve_cmd->add_option("--family", solve_family,
                                           "quadratic | shifted | huber | huber(<delta>)");
  auto* inner_opt = solve_cmd->add_option("--inner", solve_inner, "spg | prox");
  auto* report_opt = solve_cmd->add_option("--report", solve_report, "Report output path");

  VerifyArgs verify;
  double max_gap = 0.0;
  auto* verify_cmd = app.add_subcommand("verify", "Check a report's certificate");
  verify_cmd->add_option("instance", verify.instance, "Instance file")->required();
  verify_cmd->add_option("report", verify.report, "Report file")->required();
  verify_cmd->add_flag("--oracle", verify.oracle, "Compare with the global oracle (n <= 16)");
  verify_cmd->add_option("--threads", verify.threads, "Oracle threads")->capture_default_str();
  auto* gap_opt =
      verify_cmd->add_option("--max-gap", max_gap, "Fail when the oracle gap exceeds this");

  BenchArgs bench;
  std::string bench_out;
  unsigned bench_threads = 1;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark sweep and write profiles");
  bench_cmd->add_option("config", bench.config, "Bench config (JSON)")->required();
  auto* out_opt = bench_cmd->add_option("--out", bench_out, "Output directory");
  auto* threads_opt = bench_cmd->add_option("--threads", bench_threads, "Worker threads");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*gen_cmd) return cmd_gen(gen, out, err);
  if (*solve_cmd) {
    if (*config_opt) solve.config = solve_config;
    if (*profile_opt) solve.profile = solve_profile;
    if (*family_opt) solve.family = solve_family;
    if (*inner_opt) solve.inner = solve_inner;
    if (*report_opt) solve.report = solve_report;
    return cmd_solve(solve, out, err);
  }
  if (*verify_cmd) {
    if (*gap_opt) verify.max_gap = max_gap;
    return cmd_verify(verify, out, err);
  }
  if (*out_opt) bench.output_dir = bench_out;
  if (*threads_opt) bench.threads = bench_threads;
  return cmd_bench(bench, out, err);
}

}  // namespace l0pen::cli
