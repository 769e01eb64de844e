#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gep/conductor.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = GEP_CLI_PATH;

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / "gep_cli_tests";
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const std::string& name, const std::string& body) {
  const auto path = scratch() / name;
  std::ofstream out(path);
  out << body;
  return path;
}

int run_cli(const std::string& args, const fs::path& capture) {
  const std::string cmd = kCli + " " + args + " > " + capture.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kBasicCfg =
    "kernel.s = 0\n"
    "field.kind = abs\n"
    "conductor.kind = interval\n"
    "conductor.points = 201\n"
    "run.N = 25\n"
    "analysis.reference = riesz-interval\n";

}  // namespace

TEST_CASE("run writes the three outputs and succeeds") {
  const auto out_dir = scratch() / "run1";
  fs::remove_all(out_dir);
  const auto cfg = write_file("basic.cfg", kBasicCfg + "output.dir = " + out_dir.string() + "\n");
  CHECK(run_cli("run " + cfg.string(), scratch() / "log1.txt") == 0);
  CHECK(fs::exists(out_dir / "points.csv"));
  CHECK(fs::exists(out_dir / "trajectory.csv"));
  CHECK(fs::exists(out_dir / "report.json"));
}

TEST_CASE("reruns are byte-identical") {
  const auto dir_a = scratch() / "rerun_a";
  const auto dir_b = scratch() / "rerun_b";
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
  const auto cfg = write_file("rerun.cfg", kBasicCfg + "seed = 3\n");
  REQUIRE(run_cli("run " + cfg.string() + " --output-dir " + dir_a.string(),
                  scratch() / "log_a.txt") == 0);
  REQUIRE(run_cli("run " + cfg.string() + " --output-dir " + dir_b.string(),
                  scratch() / "log_b.txt") == 0);
  for (const char* name : {"points.csv", "trajectory.csv", "report.json"}) {
    CHECK(slurp(dir_a / name) == slurp(dir_b / name));
  }
}

TEST_CASE("points.csv round-trips through load_points") {
  const auto out_dir = scratch() / "roundtrip";
  fs::remove_all(out_dir);
  const auto cfg = write_file("rt.cfg", kBasicCfg + "output.dir = " + out_dir.string() + "\n");
  REQUIRE(run_cli("run " + cfg.string(), scratch() / "log_rt.txt") == 0);
  const gep::CandidateSet pts = gep::load_points(out_dir / "points.csv");
  CHECK(pts.size() == 25);
  CHECK(pts.dim == 1);

  // loading and re-saving produces the identical candidate set
  const auto copy = scratch() / "copy.csv";
  {
    std::ofstream out(copy);
    out << "x1\n";
    out << slurp(out_dir / "points.csv").substr(3);  // drop original "x1\n" header
  }
  const gep::CandidateSet again = gep::load_points(copy);
  CHECK(again.coords == pts.coords);
}

TEST_CASE("missing kernel.s exits 2 and names the key") {
  const auto cfg = write_file("missing.cfg", "conductor.kind = interval\nrun.N = 5\n");
  const auto log = scratch() / "log_missing.txt";
  CHECK(run_cli("run " + cfg.string(), log) == 2);
  CHECK(slurp(log).find("kernel.s") != std::string::npos);
}

TEST_CASE("line-precise message for a bad key") {
  const auto cfg = write_file("badkey.cfg",
                              "kernel.s = 0\nconductor.kind = interval\n"
                              "run.N = 5\nnot.a.key = 1\n");
  const auto log = scratch() / "log_badkey.txt";
  CHECK(run_cli("run " + cfg.string(), log) == 2);
  CHECK(slurp(log).find("line 4") != std::string::npos);
}

TEST_CASE("guard exceeded exits 3") {
  const auto cfg = write_file("guard.cfg",
                              "kernel.s = 0\nconductor.kind = interval\n"
                              "conductor.points = 501\nrun.N = 8\n"
                              "run.strategy = optimal\n"
                              "output.dir = " + (scratch() / "guard_out").string() + "\n");
  CHECK(run_cli("run " + cfg.string(), scratch() / "log_guard.txt") == 3);
}

TEST_CASE("unwritable output directory exits 4") {
  const auto cfg = write_file("io.cfg", kBasicCfg +
                              "output.dir = /proc/not_writable/gep\n");
  CHECK(run_cli("run " + cfg.string(), scratch() / "log_io.txt") == 4);
}

TEST_CASE("compare rejects incomparable configs with exit 2") {
  const auto a = write_file("cmp_a.cfg", kBasicCfg);
  const auto b = write_file("cmp_b.cfg",
                            "kernel.s = 1\nfield.kind = abs\nconductor.kind = interval\n"
                            "conductor.points = 201\nrun.N = 25\n");
  CHECK(run_cli("compare " + a.string() + " " + b.string(), scratch() / "log_cmp.txt") == 2);
}

TEST_CASE("compare emits a ratio table; greedy never beats the oracle") {
  const auto greedy = write_file("cg.cfg",
                                 "kernel.s = 0.5\nconductor.kind = interval\n"
                                 "conductor.points = 21\nrun.N = 5\n");
  const auto optimal = write_file("co.cfg",
                                  "kernel.s = 0.5\nconductor.kind = interval\n"
                                  "conductor.points = 21\nrun.N = 5\n"
                                  "run.strategy = optimal\n");
  const auto log = scratch() / "log_table.txt";
  REQUIRE(run_cli("compare " + greedy.string() + " " + optimal.string(), log) == 0);
  std::ifstream in(log);
  std::string header;
  std::getline(in, header);
  CHECK(header == "N,energy_a,energy_b,ratio");
  std::string row;
  int rows = 0;
  while (std::getline(in, row)) {
    if (row.empty()) continue;
    const auto last_comma = row.rfind(',');
    const double ratio = std::stod(row.substr(last_comma + 1));
    CHECK(ratio >= 1.0 - 1e-12);
    ++rows;
  }
  CHECK(rows == 4);  // N = 2..5
}

TEST_CASE("equilibrium subcommand dumps density and cdf samples") {
  const auto out_dir = scratch() / "eq_out";
  fs::remove_all(out_dir);
  const auto cfg = write_file("eq.cfg", kBasicCfg + "output.dir = " + out_dir.string() + "\n");
  REQUIRE(run_cli("equilibrium " + cfg.string(), scratch() / "log_eq.txt") == 0);
  std::ifstream in(out_dir / "reference.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "x,density,cdf");
}

TEST_CASE("brute subcommand writes the optimal points") {
  const auto out_dir = scratch() / "brute_out";
  fs::remove_all(out_dir);
  const auto cfg = write_file("brute.cfg",
                              "kernel.s = 0\nconductor.kind = interval\n"
                              "conductor.points = 21\nrun.N = 3\n"
                              "output.dir = " + out_dir.string() + "\n");
  REQUIRE(run_cli("brute " + cfg.string(), scratch() / "log_brute.txt") == 0);
  const gep::CandidateSet pts = gep::load_points(out_dir / "points.csv");
  CHECK(pts.size() == 3);
}

TEST_CASE("distinct kernels give distinct point sets on the same grid") {
  const auto dir_a = scratch() / "s0";
  const auto dir_b = scratch() / "s05";
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
  const std::string base =
      "conductor.kind = interval\nconductor.points = 101\nrun.N = 30\nrun.start = 0\n";
  const auto a = write_file("s0.cfg", "kernel.s = 0\n" + base +
                            "output.dir = " + dir_a.string() + "\n");
  const auto b = write_file("s05.cfg", "kernel.s = 0.5\n" + base +
                            "output.dir = " + dir_b.string() + "\n");
  REQUIRE(run_cli("run " + a.string(), scratch() / "log_s0.txt") == 0);
  REQUIRE(run_cli("run " + b.string(), scratch() / "log_s05.txt") == 0);
  CHECK(slurp(dir_a / "points.csv") != slurp(dir_b / "points.csv"));
}
