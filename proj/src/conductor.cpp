#include "gep/conductor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace gep {

namespace {

double min_pairwise_distance(const CandidateSet& set) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = set.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double sq = 0.0;
      auto a = set.point(i);
      auto b = set.point(j);
      for (int k = 0; k < set.dim; ++k) {
        const double d = a[k] - b[k];
        sq += d * d;
      }
      if (sq > 0.0) best = std::min(best, std::sqrt(sq));
    }
  }
  return best;
}

// Endpoint-symmetric node formula: for a = -b, negating the set maps node i
// to node M-1-i exactly in floating point.
double grid_node(double a, double b, int i, int last) {
  return (static_cast<double>(i) * b + static_cast<double>(last - i) * a) /
         static_cast<double>(last);
}

}  // namespace

CandidateSet interval_grid(double a, double b, int points) {
  if (!(a < b)) throw std::invalid_argument("interval_grid: need a < b");
  if (points < 2) throw std::invalid_argument("interval_grid: need at least 2 points");
  CandidateSet set;
  set.dim = 1;
  set.coords.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) set.coords.push_back(grid_node(a, b, i, points - 1));
  set.mesh_scale = (b - a) / static_cast<double>(points - 1);
  set.label = "interval";
  return set;
}

CandidateSet box_grid(std::span<const double> lower, std::span<const double> upper,
                      int points_per_axis) {
  const int p = static_cast<int>(lower.size());
  if (p < 1 || upper.size() != lower.size()) {
    throw std::invalid_argument("box_grid: lower/upper dimension mismatch");
  }
  if (points_per_axis < 2) throw std::invalid_argument("box_grid: need at least 2 points per axis");
  double h = 0.0;
  for (int k = 0; k < p; ++k) {
    if (!(lower[k] < upper[k])) throw std::invalid_argument("box_grid: degenerate box");
    h = std::max(h, (upper[k] - lower[k]) / static_cast<double>(points_per_axis - 1));
  }
  CandidateSet set;
  set.dim = p;
  std::size_t total = 1;
  for (int k = 0; k < p; ++k) total *= static_cast<std::size_t>(points_per_axis);
  set.coords.reserve(total * static_cast<std::size_t>(p));
  std::vector<int> idx(static_cast<std::size_t>(p), 0);
  for (std::size_t n = 0; n < total; ++n) {
    for (int k = 0; k < p; ++k) {
      set.coords.push_back(grid_node(lower[k], upper[k], idx[static_cast<std::size_t>(k)],
                                     points_per_axis - 1));
    }
    for (int k = p - 1; k >= 0; --k) {
      if (++idx[static_cast<std::size_t>(k)] < points_per_axis) break;
      idx[static_cast<std::size_t>(k)] = 0;
    }
  }
  set.mesh_scale = h;
  set.label = "box";
  return set;
}

CandidateSet ball_grid(double radius, int p, int points_per_axis) {
  if (!(radius > 0.0)) throw std::invalid_argument("ball_grid: radius must be > 0");
  if (p < 1) throw std::invalid_argument("ball_grid: dimension must be >= 1");
  if (points_per_axis < 2) throw std::invalid_argument("ball_grid: need at least 2 points per axis");
  std::vector<double> lower(static_cast<std::size_t>(p), -radius);
  std::vector<double> upper(static_cast<std::size_t>(p), radius);
  CandidateSet box = box_grid(lower, upper, points_per_axis);
  CandidateSet set;
  set.dim = p;
  const double r_tol = radius + 1e-12;
  for (std::size_t i = 0; i < box.size(); ++i) {
    auto pt = box.point(i);
    double sq = 0.0;
    for (double v : pt) sq += v * v;
    if (std::sqrt(sq) <= r_tol) {
      set.coords.insert(set.coords.end(), pt.begin(), pt.end());
    }
  }
  if (set.size() < 2) {
    throw std::runtime_error("ball_grid: grid too coarse, ball contains fewer than 2 nodes");
  }
  set.mesh_scale = 2.0 * radius / static_cast<double>(points_per_axis - 1);
  set.label = "ball";
  return set;
}

CandidateSet sphere_points(int p, int points) {
  if (p != 3) throw std::invalid_argument("sphere_points: only p = 3 is supported");
  if (points < 4) throw std::invalid_argument("sphere_points: need at least 4 points");
  CandidateSet set;
  set.dim = 3;
  set.coords.reserve(static_cast<std::size_t>(points) * 3);
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < points; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / static_cast<double>(points);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * static_cast<double>(i);
    set.coords.push_back(rho * std::cos(phi));
    set.coords.push_back(rho * std::sin(phi));
    set.coords.push_back(z);
  }
  set.mesh_scale = min_pairwise_distance(set);
  set.label = "sphere";
  return set;
}

CandidateSet load_points(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_points: cannot open " + path.string());
  CandidateSet set;
  set.dim = 0;
  std::string line;
  std::size_t line_no = 0;
  bool first_row = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t pos = 0;
        row.push_back(std::stod(cell, &pos));
        while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
        if (pos != cell.size()) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
      if (!numeric) break;
    }
    if (!numeric) {
      if (first_row) {  // optional header line
        first_row = false;
        continue;
      }
      throw std::runtime_error("load_points: parse failure at line " +
                               std::to_string(line_no));
    }
    first_row = false;
    if (set.dim == 0) {
      set.dim = static_cast<int>(row.size());
    } else if (static_cast<int>(row.size()) != set.dim) {
      throw std::runtime_error("load_points: inconsistent row width at line " +
                               std::to_string(line_no));
    }
    set.coords.insert(set.coords.end(), row.begin(), row.end());
  }
  if (set.dim == 0 || set.size() < 2) {
    throw std::runtime_error("load_points: fewer than 2 points");
  }
  set.mesh_scale = min_pairwise_distance(set);
  if (!std::isfinite(set.mesh_scale)) {
    throw std::runtime_error("load_points: fewer than 2 distinct points");
  }
  set.label = path.filename().string();
  return set;
}

}  // namespace gep
