#include "gep/kernel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gep/field.hpp"

namespace gep {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

KernelSpec::KernelSpec(double s_exponent) : s(s_exponent) {
  if (!(s >= 0.0)) {
    throw std::invalid_argument("KernelSpec: Riesz exponent s must be >= 0");
  }
}

double kernel_radial(double t, double s) {
  if (t <= 0.0) return kInf;
  return s > 0.0 ? std::pow(t, -s) : -std::log(t);
}

double kernel_eval(const KernelSpec& spec, std::span<const double> x,
                   std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("kernel_eval: dimension mismatch");
  }
  double sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    sq += d * d;
  }
  return kernel_radial(std::sqrt(sq), spec.s);
}

Configuration::Configuration(std::vector<double> flat_coords, int dimension)
    : coords(std::move(flat_coords)), dim(dimension) {
  if (dim < 1) throw std::invalid_argument("Configuration: dimension must be >= 1");
  if (coords.size() % static_cast<std::size_t>(dim) != 0) {
    throw std::invalid_argument("Configuration: coordinate count not divisible by dimension");
  }
}

double energy(const KernelSpec& spec, const Configuration& cfg) {
  const std::size_t n = cfg.size();
  if (n < 2) throw std::invalid_argument("energy: need at least 2 points");
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      total += 2.0 * kernel_eval(spec, cfg.point(i), cfg.point(j));
    }
  }
  return total;
}

double weighted_energy(const KernelSpec& spec, const FieldSpec& field,
                       const Configuration& cfg) {
  const std::size_t n = cfg.size();
  if (n < 2) throw std::invalid_argument("weighted_energy: need at least 2 points");
  double field_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) field_sum += field_eval(field, cfg.point(i));
  return energy(spec, cfg) + 2.0 * static_cast<double>(n - 1) * field_sum;
}

}  // namespace gep
