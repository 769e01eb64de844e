#ifndef GEP_FIELD_HPP
#define GEP_FIELD_HPP

#include <span>
#include <string>

#include "gep/kernel.hpp"

namespace gep {

enum class FieldKind {
  Zero,
  AbsoluteValue,
  JacobiLogWeight,  // f(x) = -lambda1*log(1-x) - lambda2*log(1+x), 1-D only
  RadialPower,      // f(x) = coefficient * |x|^exponent
  QuadraticNorm,    // f(x) = |x|^2
};

/// External field from the fixed catalog. Extended-real valued: the Jacobi
/// log-weight is +infinity at the interval endpoints and outside (-1, 1).
struct FieldSpec {
  FieldKind kind = FieldKind::Zero;
  int dim = 1;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double exponent = 0.0;
  double coefficient = 0.0;

  static FieldSpec zero(int dim);
  static FieldSpec absolute_value(int dim);
  static FieldSpec jacobi_log_weight(double lambda1, double lambda2);
  static FieldSpec radial_power(double exponent, double coefficient, int dim);
  static FieldSpec quadratic_norm(int dim);
};

double field_eval(const FieldSpec& field, std::span<const double> x);

/// True when the field depends on x only through |x|.
bool field_is_radial(const FieldSpec& field);

/// f(r) for radial fields, r >= 0.
double field_radial_value(const FieldSpec& field, double r);

/// f'(r) for radial fields, r > 0.
double field_radial_derivative(const FieldSpec& field, double r);

struct GrowthCheck {
  bool admissible = false;
  std::string note;
};

/// Checks the growth condition f(x) -> +infinity as |x| -> infinity.
/// Advisory only: callers emit warnings, runs are never blocked.
GrowthCheck growth_admissible(const FieldSpec& field, const KernelSpec& kernel,
                              bool unbounded_conductor = false);

}  // namespace gep

#endif
