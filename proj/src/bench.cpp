#include "minpose/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>
#include <vector>

#include "minpose/p1p2l.hpp"
#include "minpose/p2p1l.hpp"
#include "minpose/rng.hpp"
#include "minpose/synthetic.hpp"

namespace minpose {

namespace {

// Keeps the optimizer from discarding an unobserved solver result.
inline void consume(const void* p) { asm volatile("" : : "g"(p) : "memory"); }

std::vector<Pose> dispatch_solve(Problem problem, const SyntheticInstance& inst,
                                 bool* used_alt_variant) {
  if (problem == Problem::P2P1L) {
    P2P1LDiagnostics diag;
    std::vector<Pose> sols =
        solve_p2p1l(inst.points[0], inst.points[1], inst.lines[0], &diag);
    if (used_alt_variant != nullptr) *used_alt_variant = diag.used_coplanar;
    return sols;
  }
  P1P2LDiagnostics diag;
  std::vector<Pose> sols =
      solve_p1p2l(inst.points[0], inst.lines[0], inst.lines[1], &diag);
  if (used_alt_variant != nullptr) *used_alt_variant = !diag.stabilized;
  return sols;
}

std::string csv_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9e", v);
  return buf;
}

}  // namespace

StabilityReport run_stability(const StabilityOptions& opt) {
  if (opt.n_samples < 1) throw ContractViolation("n_samples must be >= 1");
  const std::size_t n = opt.n_samples;
  const int jobs = std::max(1, opt.jobs);
  std::vector<double> rot(n), tra(n);
  std::vector<char> failed(n, 0), alt_variant(n, 0);

  auto worker = [&](int job) {
    for (std::size_t i = static_cast<std::size_t>(job); i < n;
         i += static_cast<std::size_t>(jobs)) {
      Rng rng(mix_seed(opt.seed, i));
      std::vector<Pose> sols;
      bool alt = false;
      try {
        const SyntheticInstance inst =
            sample_instance(opt.problem, opt.coplanar, 0.0, rng);
        sols = dispatch_solve(opt.problem, inst, &alt);
        const auto [re, te] = best_solution_error(sols, inst.ground_truth);
        rot[i] = re;
        tra[i] = te;
      } catch (const Error&) {
        rot[i] = M_PI;
        tra[i] = std::numeric_limits<double>::infinity();
        sols.clear();
      }
      failed[i] = sols.empty() ? 1 : 0;
      alt_variant[i] = alt ? 1 : 0;
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(jobs));
    for (int j = 0; j < jobs; ++j) threads.emplace_back(worker, j);
    for (std::thread& t : threads) t.join();
  }

  StabilityReport report;
  const std::size_t n_alt = static_cast<std::size_t>(
      std::count(alt_variant.begin(), alt_variant.end(), 1));
  const bool majority_alt = 2 * n_alt > n;
  if (opt.problem == Problem::P2P1L)
    report.solver_variant = majority_alt ? "p2p1l_coplanar" : "p2p1l_generic";
  else
    report.solver_variant =
        majority_alt ? "p1p2l_unstabilized" : "p1p2l_stabilized";
  report.rotation = compute_stats(rot);
  report.translation = compute_stats(tra);
  report.fail_count =
      static_cast<std::size_t>(std::count(failed.begin(), failed.end(), 1));
  return report;
}

std::string stability_csv(const StabilityReport& report) {
  std::string out =
      "solver_variant,mean_R,med_R,max_R,mean_T,med_T,max_T,fail_count\n";
  out += report.solver_variant;
  out += ',' + csv_value(report.rotation.mean);
  out += ',' + csv_value(report.rotation.median);
  out += ',' + csv_value(report.rotation.max);
  out += ',' + csv_value(report.translation.mean);
  out += ',' + csv_value(report.translation.median);
  out += ',' + csv_value(report.translation.max);
  out += ',' + std::to_string(report.fail_count);
  out += '\n';
  return out;
}

RuntimeReport run_runtime(const RuntimeOptions& opt) {
  if (opt.n_samples < 100) throw ContractViolation("n_samples must be >= 100");
  const std::size_t n = opt.n_samples;
  std::vector<SyntheticInstance> instances;
  instances.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(mix_seed(opt.seed, i));
    instances.push_back(sample_instance(opt.problem, false, 0.0, rng));
  }

  auto solve_one = [&](const SyntheticInstance& inst) {
    try {
      const std::vector<Pose> sols = dispatch_solve(opt.problem, inst, nullptr);
      consume(&sols);
    } catch (const Error&) {
    }
  };

  const std::size_t warmup = std::max<std::size_t>(1000, n / 10);
  for (std::size_t i = 0; i < warmup; ++i) solve_one(instances[i % n]);

  std::vector<double> times_ns(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto start = std::chrono::steady_clock::now();
    solve_one(instances[i]);
    const auto stop = std::chrono::steady_clock::now();
    times_ns[i] =
        std::chrono::duration<double, std::nano>(stop - start).count();
  }

  const ErrorStats stats = compute_stats(times_ns);
  RuntimeReport report;
  report.solver = opt.problem == Problem::P2P1L ? "p2p1l" : "p1p2l";
  report.mean_ns = stats.mean;
  report.median_ns = stats.median;
  report.min_ns = stats.min;
  report.max_ns = stats.max;
  report.n_calls = n;
  return report;
}

std::string runtime_csv(const RuntimeReport& report) {
  std::string out = "solver,mean_ns,median_ns,min_ns,max_ns,n_calls\n";
  out += report.solver;
  out += ',' + csv_value(report.mean_ns);
  out += ',' + csv_value(report.median_ns);
  out += ',' + csv_value(report.min_ns);
  out += ',' + csv_value(report.max_ns);
  out += ',' + std::to_string(report.n_calls);
  out += '\n';
  return out;
}

}  // namespace minpose
