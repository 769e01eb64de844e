#ifndef GEP_CONDUCTOR_HPP
#define GEP_CONDUCTOR_HPP

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace gep {

/// Finite discretization of a conductor A in R^p.
struct CandidateSet {
  std::vector<double> coords;  // row-major, size() * dim entries
  int dim = 1;
  double mesh_scale = 0.0;  // representative nearest-neighbor spacing
  std::string label;

  std::size_t size() const { return coords.size() / static_cast<std::size_t>(dim); }
  std::span<const double> point(std::size_t i) const {
    return {coords.data() + i * static_cast<std::size_t>(dim),
            static_cast<std::size_t>(dim)};
  }
};

/// M equally spaced points on [a, b] including endpoints; h = (b-a)/(M-1).
CandidateSet interval_grid(double a, double b, int points);

/// Tensor grid with points_per_axis^p nodes; h is the largest axis spacing.
CandidateSet box_grid(std::span<const double> lower, std::span<const double> upper,
                      int points_per_axis);

/// Tensor grid on [-radius, radius]^p restricted to the closed ball |x| <= radius.
CandidateSet ball_grid(double radius, int p, int points_per_axis);

/// Quasi-uniform points on the unit sphere S^2 (Fibonacci spiral). p must be 3.
CandidateSet sphere_points(int p, int points);

/// CSV of one point per row, comma-separated coordinates, no header required
/// (a leading non-numeric header line is skipped).
CandidateSet load_points(const std::filesystem::path& path);

}  // namespace gep

#endif
