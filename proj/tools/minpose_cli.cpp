#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "minpose/bench.hpp"
#include "minpose/corr_io.hpp"
#include "minpose/errors.hpp"
#include "minpose/metrics.hpp"
#include "minpose/p1p2l.hpp"
#include "minpose/p2p1l.hpp"
#include "minpose/ransac.hpp"
#include "minpose/rng.hpp"
#include "minpose/synthetic.hpp"

namespace {

using nlohmann::json;
using namespace minpose;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitNoSolution = 4;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ParseError(0, "cannot open file '" + out_path + "'");
  out << text;
}

Problem parse_problem(const std::string& name) {
  if (name == "p2p1l") return Problem::P2P1L;
  if (name == "p1p2l") return Problem::P1P2L;
  throw CLI::ValidationError("--problem", "must be p2p1l or p1p2l");
}

json pose_json(const Pose& pose) {
  json j;
  j["R"] = {pose.R(0, 0), pose.R(0, 1), pose.R(0, 2),
            pose.R(1, 0), pose.R(1, 1), pose.R(1, 2),
            pose.R(2, 0), pose.R(2, 1), pose.R(2, 2)};
  j["T"] = {pose.T.x(), pose.T.y(), pose.T.z()};
  return j;
}

struct StabilityArgs {
  std::string problem;
  std::size_t n = 1000;
  bool coplanar = false;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out;
};

int cmd_stability(const StabilityArgs& args) {
  StabilityOptions opt;
  opt.problem = parse_problem(args.problem);
  opt.n_samples = args.n;
  opt.coplanar = args.coplanar;
  opt.seed = args.seed;
  opt.jobs = args.jobs;
  const StabilityReport report = run_stability(opt);
  emit(stability_csv(report), args.out);
  return kExitOk;
}

struct RuntimeArgs {
  std::string problem;
  std::size_t n = 10000;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_runtime(const RuntimeArgs& args) {
  RuntimeOptions opt;
  opt.problem = parse_problem(args.problem);
  opt.n_samples = args.n;
  opt.seed = args.seed;
  const RuntimeReport report = run_runtime(opt);
  emit(runtime_csv(report), args.out);
  return kExitOk;
}

struct RansacArgs {
  std::string problem;
  std::string input;
  bool simulate = false;
  std::size_t n_corr = 200;
  double outlier_ratio = 0.5;
  double noise_px = 0.5;
  std::size_t max_iters = 100000;
  std::size_t min_iters = 1000;
  double success_prob = 0.9999;
  double threshold_px = 1.0;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_ransac(const RansacArgs& args) {
  RansacConfig cfg;
  cfg.solver = parse_problem(args.problem);
  cfg.max_iters = args.max_iters;
  cfg.min_iters = args.min_iters;
  cfg.success_prob = args.success_prob;
  cfg.inlier_threshold_px = args.threshold_px;
  cfg.seed = mix_seed(args.seed, 2);

  json j;
  RansacResult result;
  if (args.simulate) {
    Rng rng(mix_seed(args.seed, 1));
    SyntheticInstance inst =
        sample_instance(cfg.solver, false, args.noise_px, rng);
    inst = inject_outliers(inst, args.n_corr, args.outlier_ratio, rng);
    result = run_ransac(inst.points, inst.lines, cfg);

    j["rotation_error_rad"] =
        rotation_error(result.best_pose.R, inst.ground_truth.R);
    j["translation_error"] =
        translation_error(result.best_pose.T, inst.ground_truth.T);
    const std::vector<bool> labels = inst.labels();
    std::size_t true_inliers = 0, recovered = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (!labels[i]) continue;
      ++true_inliers;
      if (result.inlier_mask[i]) ++recovered;
    }
    j["true_inliers"] = true_inliers;
    j["recovered_true_inliers"] = recovered;
  } else {
    const CorrespondenceSet set = load_correspondences(args.input);
    result = run_ransac(set.points, set.lines, cfg);
  }
  j["pose"] = pose_json(result.best_pose);
  j["inlier_count"] = result.score;
  j["iterations"] = result.iterations_run;
  j["inlier_mask"] = result.inlier_mask;
  emit(j.dump(2) + "\n", args.out);
  return kExitOk;
}

struct SolveArgs {
  std::string problem;
  std::string input;
  std::string out;
};

int cmd_solve(const SolveArgs& args) {
  const Problem problem = parse_problem(args.problem);
  const CorrespondenceSet set = load_correspondences(args.input);
  const std::size_t need_points = problem == Problem::P2P1L ? 2 : 1;
  const std::size_t need_lines = problem == Problem::P2P1L ? 1 : 2;
  if (set.points.size() != need_points || set.lines.size() != need_lines) {
    std::cerr << "expected exactly " << need_points << " point(s) and "
              << need_lines << " line(s) for " << args.problem << ", got "
              << set.points.size() << " and " << set.lines.size() << "\n";
    return kExitUsage;
  }
  std::vector<Pose> poses;
  if (problem == Problem::P2P1L)
    poses = solve_p2p1l(set.points[0], set.points[1], set.lines[0]);
  else
    poses = solve_p1p2l(set.points[0], set.lines[0], set.lines[1]);

  json j;
  j["poses"] = json::array();
  for (const Pose& pose : poses) {
    json entry = pose_json(pose);
    entry["point_residuals"] = json::array();
    entry["line_residuals"] = json::array();
    for (const PointCorrespondence& pc : set.points)
      entry["point_residuals"].push_back(point_residual(pose, pc));
    for (const LineCorrespondence& lc : set.lines)
      entry["line_residuals"].push_back(line_residual(pose, lc));
    j["poses"].push_back(entry);
  }
  emit(j.dump(2) + "\n", args.out);
  return poses.empty() ? kExitNoSolution : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal-solver pose estimation benchmarks"};
  app.require_subcommand(1);

  StabilityArgs stability;
  CLI::App* stab = app.add_subcommand(
      "stability", "Accuracy statistics over noiseless synthetic instances");
  stab->add_option("--problem", stability.problem, "p2p1l or p1p2l")
      ->required();
  stab->add_option("--n", stability.n, "number of samples")
      ->check(CLI::PositiveNumber);
  stab->add_flag("--coplanar", stability.coplanar,
                 "generate coplanar world features");
  stab->add_option("--seed", stability.seed, "RNG seed");
  stab->add_option("--jobs", stability.jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  stab->add_option("--out", stability.out, "write CSV to this file");

  RuntimeArgs runtime;
  CLI::App* runt = app.add_subcommand(
      "runtime", "Per-call solver timing over synthetic instances");
  runt->add_option("--problem", runtime.problem, "p2p1l or p1p2l")
      ->required();
  runt->add_option("--n", runtime.n, "number of timed calls")
      ->check(CLI::Range(static_cast<std::size_t>(100),
                         std::numeric_limits<std::size_t>::max()));
  runt->add_option("--seed", runtime.seed, "RNG seed");
  runt->add_option("--out", runtime.out, "write CSV to this file");

  RansacArgs ransac;
  CLI::App* rans = app.add_subcommand(
      "ransac", "Robust pose estimation on a file or a simulated scene");
  rans->add_option("--problem", ransac.problem, "p2p1l or p1p2l")->required();
  CLI::Option* in_opt =
      rans->add_option("--input", ransac.input, "correspondence file");
  CLI::Option* sim_opt = rans->add_flag("--simulate", ransac.simulate,
                                        "generate a synthetic scene instead");
  in_opt->excludes(sim_opt);
  rans->add_option("--n-corr", ransac.n_corr,
                   "total correspondences when simulating");
  rans->add_option("--outlier-ratio", ransac.outlier_ratio,
                   "outlier fraction when simulating")
      ->check(CLI::Range(0.0, 0.999));
  rans->add_option("--noise-px", ransac.noise_px,
                   "image noise in pixels when simulating")
      ->check(CLI::NonNegativeNumber);
  rans->add_option("--max-iters", ransac.max_iters, "iteration cap");
  rans->add_option("--min-iters", ransac.min_iters, "iteration floor");
  rans->add_option("--success-prob", ransac.success_prob,
                   "adaptive stopping confidence");
  rans->add_option("--threshold-px", ransac.threshold_px,
                   "inlier threshold in pixels");
  rans->add_option("--seed", ransac.seed, "RNG seed");
  rans->add_option("--out", ransac.out, "write JSON to this file");

  SolveArgs solve;
  CLI::App* solv = app.add_subcommand(
      "solve", "Run one minimal solve on a correspondence file");
  solv->add_option("--problem", solve.problem, "p2p1l or p1p2l")->required();
  solv->add_option("--input", solve.input, "correspondence file")->required();
  solv->add_option("--out", solve.out, "write JSON to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (stab->parsed()) return cmd_stability(stability);
    if (runt->parsed()) return cmd_runtime(runtime);
    if (rans->parsed()) {
      if (ransac.input.empty() == !ransac.simulate) {
        std::cerr << "exactly one of --input or --simulate is required\n";
        return kExitUsage;
      }
      return cmd_ransac(ransac);
    }
    if (solv->parsed()) return cmd_solve(solve);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const InsufficientData& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const NoModel& e) {
    std::cerr << e.what() << "\n";
    return kExitNoSolution;
  } catch (const ContractViolation& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitDegenerate;
  }
  return kExitUsage;
}
