#ifndef GEP_KERNEL_HPP
#define GEP_KERNEL_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace gep {

/// Riesz kernel family: K(t;s) = t^{-s} for s > 0, -log(t) for s = 0.
/// Values are extended reals; coincident points evaluate to +infinity.
struct KernelSpec {
  double s = 0.0;

  explicit KernelSpec(double s_exponent);
};

/// K(t;s) for t >= 0. Returns +infinity at t = 0.
double kernel_radial(double t, double s);

double kernel_eval(const KernelSpec& spec, std::span<const double> x,
                   std::span<const double> y);

/// An ordered list of points in R^p, stored row-major. Duplicates permitted.
struct Configuration {
  std::vector<double> coords;
  int dim = 1;

  Configuration() = default;
  Configuration(std::vector<double> flat_coords, int dimension);

  std::size_t size() const { return coords.size() / static_cast<std::size_t>(dim); }
  std::span<const double> point(std::size_t i) const {
    return {coords.data() + i * static_cast<std::size_t>(dim),
            static_cast<std::size_t>(dim)};
  }
};

/// E(w_N) = sum over ordered pairs i != j of k(x_i, x_j).
double energy(const KernelSpec& spec, const Configuration& cfg);

struct FieldSpec;

/// E_f(w_N) = E(w_N) + 2(N-1) sum_i f(x_i).
double weighted_energy(const KernelSpec& spec, const FieldSpec& field,
                       const Configuration& cfg);

}  // namespace gep

#endif
