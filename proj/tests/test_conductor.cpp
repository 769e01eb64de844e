#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "gep/conductor.hpp"

using namespace gep;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("interval grid endpoints, spacing, and symmetry") {
  const CandidateSet g = interval_grid(-1.0, 1.0, 21);
  REQUIRE(g.size() == 21);
  CHECK(g.dim == 1);
  CHECK(g.coords.front() == -1.0);
  CHECK(g.coords.back() == 1.0);
  CHECK(g.coords[10] == 0.0);
  CHECK(g.mesh_scale == doctest::Approx(0.1).epsilon(1e-15));
  // exact negation symmetry, bitwise
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(g.coords[i] == -g.coords[g.size() - 1 - i]);
  }
  CHECK(std::is_sorted(g.coords.begin(), g.coords.end()));

  CHECK_THROWS_AS(interval_grid(1.0, -1.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(interval_grid(0.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("box grid enumerates the full tensor product") {
  const std::vector<double> lo{0.0, 0.0}, hi{1.0, 2.0};
  const CandidateSet g = box_grid(lo, hi, 3);
  REQUIRE(g.size() == 9);
  CHECK(g.dim == 2);
  CHECK(g.mesh_scale == doctest::Approx(1.0).epsilon(1e-15));  // widest axis
  // first point is the lower corner, last is the upper corner
  CHECK(g.point(0)[0] == 0.0);
  CHECK(g.point(0)[1] == 0.0);
  CHECK(g.point(8)[0] == 1.0);
  CHECK(g.point(8)[1] == 2.0);
  // center of the grid
  CHECK(g.point(4)[0] == 0.5);
  CHECK(g.point(4)[1] == 1.0);

  CHECK_THROWS_AS(box_grid(lo, std::vector<double>{1.0}, 3), std::invalid_argument);
}

TEST_CASE("ball grid keeps exactly the nodes inside the ball") {
  const CandidateSet g = ball_grid(1.0, 2, 3);
  // 3x3 grid on [-1,1]^2: the 4 corners (|x| = sqrt 2) are dropped
  REQUIRE(g.size() == 5);
  for (std::size_t i = 0; i < g.size(); ++i) {
    double sq = 0.0;
    for (double v : g.point(i)) sq += v * v;
    CHECK(std::sqrt(sq) <= 1.0 + 1e-12);
  }
  CHECK_THROWS_AS(ball_grid(-1.0, 2, 3), std::invalid_argument);
}

TEST_CASE("ball grid matches a direct count in 3d") {
  const CandidateSet g = ball_grid(1.2, 3, 9);
  std::size_t expected = 0;
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) {
      for (int k = 0; k < 9; ++k) {
        const double x = -1.2 + 0.3 * i, y = -1.2 + 0.3 * j, z = -1.2 + 0.3 * k;
        if (std::sqrt(x * x + y * y + z * z) <= 1.2 + 1e-12) ++expected;
      }
    }
  }
  CHECK(g.size() == expected);
}

TEST_CASE("sphere points lie on the unit sphere") {
  const CandidateSet g = sphere_points(3, 200);
  REQUIRE(g.size() == 200);
  for (std::size_t i = 0; i < g.size(); ++i) {
    double sq = 0.0;
    for (double v : g.point(i)) sq += v * v;
    CHECK(std::sqrt(sq) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(g.mesh_scale > 0.0);
  // quasi-uniform: mesh scale near the ideal spacing ~ sqrt(4 pi / N)
  CHECK(g.mesh_scale > 0.3 * std::sqrt(4.0 * 3.14159265 / 200.0));
  CHECK_THROWS_AS(sphere_points(2, 100), std::invalid_argument);
}

TEST_CASE("load_points reads a plain CSV") {
  const auto path = write_temp("gep_pts.csv", "0.5,1.5\n-0.25,0\n1,1\n");
  const CandidateSet g = load_points(path);
  REQUIRE(g.size() == 3);
  CHECK(g.dim == 2);
  CHECK(g.point(1)[0] == -0.25);
  std::filesystem::remove(path);
}

TEST_CASE("load_points skips one optional header line") {
  const auto path = write_temp("gep_hdr.csv", "x1,x2\n0,0\n1,0\n");
  const CandidateSet g = load_points(path);
  REQUIRE(g.size() == 2);
  CHECK(g.mesh_scale == doctest::Approx(1.0));
  std::filesystem::remove(path);
}

TEST_CASE("load_points rejects malformed input") {
  const auto bad_width = write_temp("gep_bad1.csv", "0,0\n1\n");
  CHECK_THROWS_AS(load_points(bad_width), std::runtime_error);
  std::filesystem::remove(bad_width);

  const auto mid_text = write_temp("gep_bad2.csv", "0,0\nfoo,bar\n");
  CHECK_THROWS_AS(load_points(mid_text), std::runtime_error);
  std::filesystem::remove(mid_text);

  const auto single = write_temp("gep_bad3.csv", "0.5\n");
  CHECK_THROWS_AS(load_points(single), std::runtime_error);
  std::filesystem::remove(single);

  CHECK_THROWS_AS(load_points("/nonexistent/path.csv"), std::runtime_error);
}

TEST_CASE("box grid node formula is endpoint symmetric") {
  const std::vector<double> lo{-0.7}, hi{0.7};
  const CandidateSet g = box_grid(lo, hi, 15);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(g.coords[i] == -g.coords[g.size() - 1 - i]);
  }
}
