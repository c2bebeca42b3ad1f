#include "bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <charconv>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <thread>

namespace l0pen::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

using RatioFn = double (*)(const CellResult& cell, double best);

Profile profile_from_cells(const std::vector<CellResult>& cells,
                           const std::vector<std::string>& methods,
                           double (*metric)(const CellResult&), RatioFn ratio) {
  const std::size_t k = methods.size();
  require(k > 0 && cells.size() % k == 0, "profile: cells must be grouped by instance");
  std::vector<std::vector<double>> ratios;
  for (std::size_t first = 0; first < cells.size(); first += k) {
    double best = kInf;
    for (std::size_t j = 0; j < k; ++j) {
      const auto& c = cells[first + j];
      require(c.method == methods[j], "profile: method order differs from the method list");
      if (c.usable()) best = std::min(best, metric(c));
    }
    std::vector<double> row(k, kInf);
    for (std::size_t j = 0; j < k; ++j) {
      const auto& c = cells[first + j];
      if (c.usable() && std::isfinite(best)) row[j] = ratio(c, best);
    }
    ratios.push_back(std::move(row));
  }
  return performance_profile(ratios, methods);
}

double value_metric(const CellResult& c) { return c.spo_value; }
double value_ratio(const CellResult& c, double best) { return (c.spo_value - best + 1e-12) / 1e-12; }
double time_metric(const CellResult& c) { return std::max(c.wall_ms, 1e-3); }
double time_ratio(const CellResult& c, double best) { return time_metric(c) / best; }

struct BenchInstance {
  std::string id;
  InstanceFile file;
};

std::vector<BenchInstance> make_instances(const BenchConfig& config) {
  std::vector<BenchInstance> out;
  for (const auto& shape : config.dims) {
    for (const auto seed : config.seeds) {
      BenchInstance bi;
      bi.file.rng = RngInfo{Rng::kName, seed};
      if (config.problem == "portfolio") {
        bi.id = "portfolio-n" + std::to_string(shape.n) + "-s" + std::to_string(seed);
        bi.file.problem = gen_portfolio(shape.n, seed, config.rho, config.beta);
      } else {
        bi.id = "dictionary-n" + std::to_string(shape.n) + "-l" + std::to_string(shape.l) + "-m" +
                std::to_string(shape.m) + "-s" + std::to_string(seed);
        auto g = gen_dictionary(shape.n, shape.l, shape.m, seed, config.rho);
        bi.file.problem = std::move(g.instance);
        bi.file.start = std::make_pair(std::move(g.C0), std::move(g.D0));
      }
      out.push_back(std::move(bi));
    }
  }
  return out;
}

CellResult run_cell(const BenchInstance& instance, const std::string& method,
                    const SolverConfig& config) {
  CellResult cell;
  cell.instance_id = instance.id;
  cell.method = method;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const SolveReport r = run_method(method, instance.file, config);
    cell.status = to_string(r.status);
    if (r.status != SolveStatus::kUnsupported) {
      cell.spo_value = r.spo_value;
      cell.l0 = r.l0;
      cell.comp = r.complementarity;
      cell.stat = r.stationarity;
    }
  } catch (const std::exception&) {
    cell.status = "error";
  }
  cell.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return cell;
}

}  // namespace

SolveReport run_method(const std::string& method, const InstanceFile& instance,
                       const SolverConfig& config) {
  const SpoProblem problem = make_problem(instance);
  const Vector x0 = default_start(instance);
  if (method == "pen-spg" || method == "pen-prox") {
    const PenaltyFamily family = family_from_name(config.family, problem.rho);
    ExactPenaltyOptions options = config.penalty;
    options.inner = method == "pen-spg" ? InnerSolver::kSpg : InnerSolver::kProxGrad;
    return exact_penalty_solve(problem, family, x0, options);
  }
  if (method == "l0-prox") {
    return threshold_solve(problem, Thresholding::kHard, x0, config.baseline,
                           config.penalty.outer.zero_tol);
  }
  if (method == "l1-prox") {
    return threshold_solve(problem, Thresholding::kSoft, x0, config.baseline,
                           config.penalty.outer.zero_tol);
  }
  throw ConfigError("unknown method '" + method + "'");
}

bool CellResult::usable() const { return status != "error" && status != "unsupported"; }

Profile performance_profile(const std::vector<std::vector<double>>& ratios,
                            const std::vector<std::string>& methods) {
  Profile p;
  p.methods = methods;
  std::set<double> taus;
  for (const auto& row : ratios) {
    require(row.size() == methods.size(), "performance_profile: ragged ratio table");
    for (double r : row) {
      if (std::isfinite(r)) taus.insert(r);
    }
  }
  p.taus.assign(taus.begin(), taus.end());
  p.taus.push_back(kInf);
  const double count = static_cast<double>(ratios.size());
  for (double tau : p.taus) {
    std::vector<double> fractions(methods.size(), 0.0);
    for (std::size_t j = 0; j < methods.size(); ++j) {
      std::size_t hits = 0;
      for (const auto& row : ratios) {
        if (std::isinf(tau) ? std::isfinite(row[j]) : row[j] <= tau) ++hits;
      }
      fractions[j] = count > 0 ? static_cast<double>(hits) / count : 0.0;
    }
    p.fractions.push_back(std::move(fractions));
  }
  return p;
}

Profile value_profile(const std::vector<CellResult>& cells,
                      const std::vector<std::string>& methods) {
  return profile_from_cells(cells, methods, value_metric, value_ratio);
}

Profile time_profile(const std::vector<CellResult>& cells, const std::vector<std::string>& methods) {
  return profile_from_cells(cells, methods, time_metric, time_ratio);
}

void write_result_row(std::ostream& out, const CellResult& c) {
  out << c.instance_id << ',' << c.method << ',' << format_number(c.spo_value) << ',' << c.l0
      << ',' << format_number(c.comp) << ',' << format_number(c.stat) << ','
      << format_number(c.wall_ms) << ',' << c.status << '\n';
}

void write_profile_csv(std::ostream& out, const Profile& p) {
  out << "tau";
  for (const auto& m : p.methods) out << ',' << m;
  out << '\n';
  for (std::size_t t = 0; t < p.taus.size(); ++t) {
    out << format_number(p.taus[t]);
    for (double f : p.fractions[t]) out << ',' << format_number(f);
    out << '\n';
  }
}

BenchOutcome run_bench(const BenchConfig& config, std::ostream& log) {
  const auto instances = make_instances(config);
  const std::size_t k = config.methods.size();
  const std::size_t total = instances.size() * k;

  std::filesystem::create_directories(config.output_dir);
  const auto results_path = config.output_dir / "results.csv";
  std::ofstream results(results_path);
  if (!results) throw ConfigError("cannot write '" + results_path.string() + "'");
  results << kResultsHeader << '\n';

  std::vector<std::optional<CellResult>> slots(total);
  std::mutex mutex;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      CellResult cell = run_cell(instances[i / k], config.methods[i % k], config.solver);
      {
        std::lock_guard lock(mutex);
        slots[i] = std::move(cell);
      }
      ready.notify_one();
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(config.threads, total));
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);

  // Single writer: rows go out in cell order as soon as they are done.
  BenchOutcome outcome;
  for (std::size_t i = 0; i < total; ++i) {
    std::unique_lock lock(mutex);
    ready.wait(lock, [&] { return slots[i].has_value(); });
    CellResult cell = *slots[i];
    lock.unlock();
    write_result_row(results, cell);
    results.flush();
    log << cell.instance_id << ' ' << cell.method << ' ' << cell.status << " spo "
        << format_number(cell.spo_value) << " (" << format_number(cell.wall_ms) << " ms)\n";
    outcome.cells.push_back(std::move(cell));
  }
  pool.clear();

  outcome.value = value_profile(outcome.cells, config.methods);
  outcome.time = time_profile(outcome.cells, config.methods);
  for (const auto& [name, profile] :
       {std::pair{"profile_value.csv", &outcome.value}, std::pair{"profile_time.csv", &outcome.time}}) {
    const auto path = config.output_dir / name;
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    write_profile_csv(out, *profile);
  }
  return outcome;
}

}  // namespace l0pen::cli
