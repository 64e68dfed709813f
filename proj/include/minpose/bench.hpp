#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "minpose/geometry.hpp"
#include "minpose/metrics.hpp"

namespace minpose {

struct StabilityOptions {
  Problem problem = Problem::P2P1L;
  std::size_t n_samples = 1000;
  bool coplanar = false;
  std::uint64_t seed = 1;
  int jobs = 1;
};

struct StabilityReport {
  std::string solver_variant;
  ErrorStats rotation;
  ErrorStats translation;
  std::size_t fail_count = 0;
};

// Runs the dispatching solver over n_samples noiseless instances, sample i
// seeded from mix_seed(seed, i) so results are independent of the job
// count. Failed samples enter the statistics as (pi, +infinity).
StabilityReport run_stability(const StabilityOptions& opt);

std::string stability_csv(const StabilityReport& report);

struct RuntimeOptions {
  Problem problem = Problem::P2P1L;
  std::size_t n_samples = 10000;
  std::uint64_t seed = 1;
};

struct RuntimeReport {
  std::string solver;
  double mean_ns = 0.0;
  double median_ns = 0.0;
  double min_ns = 0.0;
  double max_ns = 0.0;
  std::size_t n_calls = 0;
};

// Per-call wall time of the full solve (framing, elimination, unframing) on
// pre-generated instances, after a warm-up of at least 1000 calls.
RuntimeReport run_runtime(const RuntimeOptions& opt);

std::string runtime_csv(const RuntimeReport& report);

}  // namespace minpose
