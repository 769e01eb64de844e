#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "gep/config.hpp"

using namespace gep;

namespace {

std::filesystem::path write_cfg(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << body;
  return path;
}

int error_line(const std::filesystem::path& path) {
  try {
    parse_config(path);
  } catch (const ConfigError& e) {
    return e.line;
  }
  return -1;
}

}  // namespace

TEST_CASE("full config round-trips every section") {
  const auto path = write_cfg("gep_full.cfg", R"(# a comment
kernel.s = 0.5

field.kind = jacobi
field.lambda1 = 4
field.lambda2 = 1
conductor.kind = interval
conductor.a = -1
conductor.b = 1
conductor.points = 2001
run.N = 50
run.m = 2
run.start = 1000      # inline comment
run.strategy = exhaustive
run.shortlist = 64
analysis.reference = jacobi
analysis.tol = 1e-7
analysis.ladder = true
analysis.ladder_sizes = 51, 101, 201
output.dir = /tmp/gep_cfg_out
output.formats = points-csv, report-json
seed = 9
threads = 2
)");
  const RunConfig cfg = parse_config(path);
  CHECK(cfg.kernel_s == 0.5);
  CHECK(cfg.field_kind == "jacobi");
  CHECK(cfg.field_lambda1 == 4.0);
  CHECK(cfg.conductor_points == 2001);
  CHECK(cfg.run_n == 50);
  CHECK(cfg.run_m == 2);
  REQUIRE(cfg.run_start.has_value());
  CHECK(*cfg.run_start == 1000);
  CHECK(cfg.run_strategy == "exhaustive");
  CHECK(cfg.run_shortlist == 64);
  CHECK(cfg.reference_kind == "jacobi");
  CHECK(cfg.reference_tol == 1e-7);
  CHECK(cfg.reference_ladder);
  CHECK(cfg.ladder_sizes == std::vector<int>{51, 101, 201});
  CHECK(cfg.output_dir == "/tmp/gep_cfg_out");
  CHECK(cfg.write_points);
  CHECK_FALSE(cfg.write_trajectory);
  CHECK(cfg.write_report);
  CHECK(cfg.seed == 9);
  CHECK(cfg.threads == 2);
  std::filesystem::remove(path);
}

TEST_CASE("defaults: auto start, greedy strategy, all outputs") {
  const auto path = write_cfg("gep_min.cfg",
                              "kernel.s = 0\nconductor.kind = interval\n"
                              "conductor.points = 11\nrun.N = 5\n");
  const RunConfig cfg = parse_config(path);
  CHECK_FALSE(cfg.run_start.has_value());
  CHECK(cfg.run_strategy == "greedy");
  CHECK(cfg.run_m == 1);
  CHECK(cfg.field_kind == "zero");
  CHECK(cfg.reference_kind == "none");
  CHECK(cfg.write_points);
  CHECK(cfg.write_trajectory);
  CHECK(cfg.write_report);
  std::filesystem::remove(path);
}

TEST_CASE("run.start accepts the literal auto") {
  const auto path = write_cfg("gep_auto.cfg",
                              "kernel.s = 0\nconductor.kind = interval\n"
                              "conductor.points = 11\nrun.N = 5\nrun.start = auto\n");
  CHECK_FALSE(parse_config(path).run_start.has_value());
  std::filesystem::remove(path);
}

TEST_CASE("missing required keys are named in the error") {
  const auto no_kernel = write_cfg("gep_e1.cfg", "conductor.kind = interval\nrun.N = 5\n");
  CHECK_THROWS_WITH_AS(parse_config(no_kernel),
                       doctest::Contains("kernel.s"), ConfigError);
  std::filesystem::remove(no_kernel);

  const auto no_n = write_cfg("gep_e2.cfg", "kernel.s = 0\nconductor.kind = interval\n");
  CHECK_THROWS_WITH_AS(parse_config(no_n), doctest::Contains("run.N"), ConfigError);
  std::filesystem::remove(no_n);
}

TEST_CASE("errors carry exact line numbers") {
  const auto path = write_cfg("gep_lines.cfg",
                              "kernel.s = 0\n"
                              "conductor.kind = interval\n"
                              "bogus.key = 1\n");
  CHECK(error_line(path) == 3);
  std::filesystem::remove(path);

  const auto bad_num = write_cfg("gep_num.cfg",
                                 "kernel.s = banana\n");
  CHECK(error_line(bad_num) == 1);
  std::filesystem::remove(bad_num);

  const auto no_eq = write_cfg("gep_eq.cfg",
                               "kernel.s = 0\n\njust words\n");
  CHECK(error_line(no_eq) == 3);
  std::filesystem::remove(no_eq);
}

TEST_CASE("duplicate keys are rejected") {
  const auto path = write_cfg("gep_dup.cfg",
                              "kernel.s = 0\nkernel.s = 1\n"
                              "conductor.kind = interval\nrun.N = 5\n");
  CHECK(error_line(path) == 2);
  std::filesystem::remove(path);
}

TEST_CASE("enumerated values are validated") {
  const auto bad_strategy = write_cfg("gep_strat.cfg",
                                      "kernel.s = 0\nconductor.kind = interval\n"
                                      "run.N = 5\nrun.strategy = magic\n");
  CHECK(error_line(bad_strategy) == 4);
  std::filesystem::remove(bad_strategy);

  const auto bad_fmt = write_cfg("gep_fmt.cfg",
                                 "kernel.s = 0\nconductor.kind = interval\n"
                                 "run.N = 5\noutput.formats = pdf\n");
  CHECK(error_line(bad_fmt) == 4);
  std::filesystem::remove(bad_fmt);

  const auto bad_ref = write_cfg("gep_ref.cfg",
                                 "kernel.s = 0\nconductor.kind = interval\n"
                                 "run.N = 5\nanalysis.reference = tarot\n");
  CHECK(error_line(bad_ref) == 4);
  std::filesystem::remove(bad_ref);
}

TEST_CASE("vector-valued conductor bounds parse") {
  const auto path = write_cfg("gep_box.cfg",
                              "kernel.s = 0.8\nconductor.kind = box\n"
                              "conductor.lower = 0, 0\nconductor.upper = 1, 1\n"
                              "conductor.points = 101\nrun.N = 20\n");
  const RunConfig cfg = parse_config(path);
  CHECK(cfg.conductor_lower == std::vector<double>{0.0, 0.0});
  CHECK(cfg.conductor_upper == std::vector<double>{1.0, 1.0});
  std::filesystem::remove(path);
}

TEST_CASE("nonexistent config file reports a file-level error") {
  CHECK(error_line("/nonexistent/gep.cfg") == 0);
}
