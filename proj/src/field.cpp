#include "gep/field.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gep {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double norm(std::span<const double> x) {
  double sq = 0.0;
  for (double v : x) sq += v * v;
  return std::sqrt(sq);
}
}  // namespace

FieldSpec FieldSpec::zero(int dim) { return {FieldKind::Zero, dim}; }

FieldSpec FieldSpec::absolute_value(int dim) {
  return {FieldKind::AbsoluteValue, dim};
}

FieldSpec FieldSpec::jacobi_log_weight(double lambda1, double lambda2) {
  if (!(lambda1 > 0.0) || !(lambda2 > 0.0)) {
    throw std::invalid_argument("jacobi_log_weight: lambda1, lambda2 must be > 0");
  }
  FieldSpec f{FieldKind::JacobiLogWeight, 1};
  f.lambda1 = lambda1;
  f.lambda2 = lambda2;
  return f;
}

FieldSpec FieldSpec::radial_power(double exponent, double coefficient, int dim) {
  if (!(exponent > 0.0) || !(coefficient > 0.0)) {
    throw std::invalid_argument("radial_power: exponent and coefficient must be > 0");
  }
  FieldSpec f{FieldKind::RadialPower, dim};
  f.exponent = exponent;
  f.coefficient = coefficient;
  return f;
}

FieldSpec FieldSpec::quadratic_norm(int dim) {
  return {FieldKind::QuadraticNorm, dim};
}

double field_eval(const FieldSpec& field, std::span<const double> x) {
  if (static_cast<int>(x.size()) != field.dim) {
    throw std::invalid_argument("field_eval: dimension mismatch");
  }
  switch (field.kind) {
    case FieldKind::Zero:
      return 0.0;
    case FieldKind::AbsoluteValue:
      return norm(x);
    case FieldKind::JacobiLogWeight: {
      const double t = x[0];
      if (t <= -1.0 || t >= 1.0) return kInf;  // l.s.c. extension
      return -field.lambda1 * std::log(1.0 - t) - field.lambda2 * std::log(1.0 + t);
    }
    case FieldKind::RadialPower:
      return field.coefficient * std::pow(norm(x), field.exponent);
    case FieldKind::QuadraticNorm: {
      double sq = 0.0;
      for (double v : x) sq += v * v;
      return sq;
    }
  }
  throw std::logic_error("field_eval: unknown kind");
}

bool field_is_radial(const FieldSpec& field) {
  switch (field.kind) {
    case FieldKind::Zero:
    case FieldKind::AbsoluteValue:
    case FieldKind::RadialPower:
    case FieldKind::QuadraticNorm:
      return true;
    case FieldKind::JacobiLogWeight:
      return false;
  }
  return false;
}

double field_radial_value(const FieldSpec& field, double r) {
  switch (field.kind) {
    case FieldKind::Zero:
      return 0.0;
    case FieldKind::AbsoluteValue:
      return r;
    case FieldKind::RadialPower:
      return field.coefficient * std::pow(r, field.exponent);
    case FieldKind::QuadraticNorm:
      return r * r;
    case FieldKind::JacobiLogWeight:
      break;
  }
  throw std::invalid_argument("field_radial_value: field is not radial");
}

double field_radial_derivative(const FieldSpec& field, double r) {
  switch (field.kind) {
    case FieldKind::Zero:
      return 0.0;
    case FieldKind::AbsoluteValue:
      return 1.0;
    case FieldKind::RadialPower:
      return field.coefficient * field.exponent * std::pow(r, field.exponent - 1.0);
    case FieldKind::QuadraticNorm:
      return 2.0 * r;
    case FieldKind::JacobiLogWeight:
      break;
  }
  throw std::invalid_argument("field_radial_derivative: field is not radial");
}

GrowthCheck growth_admissible(const FieldSpec& field, const KernelSpec& /*kernel*/,
                              bool unbounded_conductor) {
  switch (field.kind) {
    case FieldKind::Zero:
      if (unbounded_conductor) {
        return {false, "constant field does not grow at infinity; "
                       "greedy asymptotics need a compact conductor"};
      }
      return {true, "conductor is compact, growth condition vacuous"};
    case FieldKind::JacobiLogWeight:
      return {true, "field lives on a bounded interval, growth condition vacuous"};
    case FieldKind::AbsoluteValue:
    case FieldKind::RadialPower:
    case FieldKind::QuadraticNorm:
      return {true, ""};
  }
  return {false, "unknown field kind"};
}

}  // namespace gep
