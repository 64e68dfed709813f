#include <algorithm>
#include <sstream>
#include <string>

#include <doctest.h>

#include "minpose/bench.hpp"

using minpose::Problem;
using minpose::RuntimeOptions;
using minpose::RuntimeReport;
using minpose::StabilityOptions;
using minpose::StabilityReport;

TEST_CASE("run_stability summarizes noiseless accuracy per variant") {
  StabilityOptions opt;
  opt.problem = Problem::P2P1L;
  opt.n_samples = 200;
  opt.seed = 11;
  const StabilityReport report = minpose::run_stability(opt);
  CHECK(report.solver_variant == "p2p1l_generic");
  CHECK(report.rotation.count == 200);
  CHECK(report.rotation.median < 1e-9);
  CHECK(report.translation.median < 1e-8);
  CHECK(report.fail_count <= 2);

  opt.coplanar = true;
  const StabilityReport flat = minpose::run_stability(opt);
  CHECK(flat.solver_variant == "p2p1l_coplanar");
  CHECK(flat.rotation.median < 1e-9);
}

TEST_CASE("run_stability labels the p1p2l frame choice") {
  StabilityOptions opt;
  opt.problem = Problem::P1P2L;
  opt.n_samples = 100;
  opt.seed = 12;
  CHECK(minpose::run_stability(opt).solver_variant == "p1p2l_stabilized");
  opt.coplanar = true;
  CHECK(minpose::run_stability(opt).solver_variant == "p1p2l_unstabilized");
}

TEST_CASE("run_stability results do not depend on the job count") {
  StabilityOptions opt;
  opt.problem = Problem::P1P2L;
  opt.n_samples = 150;
  opt.seed = 13;
  opt.jobs = 1;
  const StabilityReport serial = minpose::run_stability(opt);
  opt.jobs = 4;
  const StabilityReport parallel = minpose::run_stability(opt);
  CHECK(serial.rotation.mean == parallel.rotation.mean);
  CHECK(serial.rotation.median == parallel.rotation.median);
  CHECK(serial.translation.max == parallel.translation.max);
  CHECK(serial.fail_count == parallel.fail_count);
}

TEST_CASE("stability_csv emits a header and one data row") {
  StabilityOptions opt;
  opt.n_samples = 50;
  const std::string csv = minpose::stability_csv(minpose::run_stability(opt));
  std::istringstream lines(csv);
  std::string header, row, extra;
  REQUIRE(std::getline(lines, header));
  REQUIRE(std::getline(lines, row));
  CHECK_FALSE(std::getline(lines, extra));
  CHECK(header ==
        "solver_variant,mean_R,med_R,max_R,mean_T,med_T,max_T,fail_count");
  CHECK(row.rfind("p2p1l_generic,", 0) == 0);
  CHECK(std::count(row.begin(), row.end(), ',') == 7);
}

TEST_CASE("run_runtime times the full solve") {
  RuntimeOptions opt;
  opt.problem = Problem::P2P1L;
  opt.n_samples = 500;
  opt.seed = 14;
  const RuntimeReport report = minpose::run_runtime(opt);
  CHECK(report.solver == "p2p1l");
  CHECK(report.n_calls == 500);
  CHECK(report.mean_ns > 0.0);
  CHECK(report.min_ns <= report.median_ns);
  CHECK(report.median_ns <= report.max_ns);

  const std::string csv = minpose::runtime_csv(report);
  CHECK(csv.rfind("solver,mean_ns,median_ns,min_ns,max_ns,n_calls\n", 0) ==
        0);
  CHECK(csv.find("p2p1l,") != std::string::npos);
}
