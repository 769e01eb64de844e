#ifndef GEP_EQUILIBRIUM_HPP
#define GEP_EQUILIBRIUM_HPP

#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "gep/conductor.hpp"
#include "gep/field.hpp"
#include "gep/kernel.hpp"

namespace gep {

struct DiscreteMeasure {
  std::vector<double> weights;  // nonnegative, sum to 1
};

enum class ReferenceKind { RieszInterval, JacobiLogInterval, RadialNewtonian, Discrete };

/// Closed-form or numerically computed equilibrium model. The 1-D members
/// (density, cdf) describe the measure on [support_lo, support_hi]; for the
/// radial Newtonian reference they describe the distribution of |x|.
/// Vf and Wf are NaN until supplied (closed forms for them are not available
/// for the interval families; use refinement_ladder).
struct EquilibriumReference {
  ReferenceKind kind = ReferenceKind::Discrete;
  double Vf = std::numeric_limits<double>::quiet_NaN();
  double Wf = std::numeric_limits<double>::quiet_NaN();
  double support_lo = 0.0;
  double support_hi = 0.0;

  std::function<double(double)> density;  // may be empty
  std::function<double(double)> cdf;      // may be empty
  std::function<double(std::span<const double>)> potential;  // may be empty

  // Discrete references only.
  DiscreteMeasure measure;
  std::shared_ptr<const CandidateSet> nodes;
  bool converged = true;
  double fw_gap = 0.0;
  int iterations = 0;
  bool objective_monotone = true;

  bool has_cdf() const { return static_cast<bool>(cdf); }
  bool has_potential() const { return static_cast<bool>(potential); }
};

/// Riesz equilibrium measure of [-1,1] for s in [0,1):
/// density c_s (1-x^2)^{(s-1)/2} with c_s = Gamma(1+s/2)/(sqrt(pi) Gamma((1+s)/2)).
EquilibriumReference riesz_interval_reference(double s);

struct JacobiSupport {
  double a = 0.0;
  double b = 0.0;
};

/// Support endpoints [a, b] of the Jacobi log-weight equilibrium measure.
JacobiSupport jacobi_support(double lambda1, double lambda2);

/// Equilibrium measure on [-1,1] for the logarithmic kernel with external
/// field -log((1-x)^l1 (1+x)^l2): density (1+l1+l2) sqrt((x-a)(b-x)) / (pi (1-x^2)).
EquilibriumReference jacobi_reference(double lambda1, double lambda2);

/// Radial Newtonian equilibrium in R^p (p >= 3, s = p-2) for a radial field:
/// support r0 <= |x| <= R0 with R0 solving R0^{p-1} f'(R0) = p-2, radial
/// density (r^{p-1} f'(r))'/(p-2), Wf = 1/R0^{p-2} + f(R0), and the
/// three-branch closed-form potential.
EquilibriumReference radial_newtonian_reference(int p, const FieldSpec& field);

/// Minimizes w.Kw + 2 w.f over the probability simplex by projected gradient
/// descent with a fixed step and the Frank-Wolfe gap as stopping rule. The
/// Gram matrix uses K(h/2; s) on the diagonal. Candidates with f = +infinity
/// are held at weight zero. Non-convergence is reported via `converged`,
/// never thrown.
EquilibriumReference discrete_equilibrium(const KernelSpec& kernel,
                                          const FieldSpec& field,
                                          const CandidateSet& cand, double tol,
                                          int max_iters);

/// Candidate indices with U^mu(x) + f(x) <= Wf + slack.
std::vector<std::size_t> essential_support(const EquilibriumReference& ref,
                                           const CandidateSet& cand,
                                           const FieldSpec& field, double slack);

struct LadderResult {
  std::vector<int> sizes;
  std::vector<double> Vf_levels;
  std::vector<double> Wf_levels;
  double Vf = 0.0;  // Aitken-extrapolated
  double Wf = 0.0;
  bool converged = true;
};

/// Runs discrete_equilibrium on a ladder of grids of increasing resolution and
/// extrapolates Vf, Wf (Aitken delta-squared on the last three levels).
LadderResult refinement_ladder(const KernelSpec& kernel, const FieldSpec& field,
                               const std::function<CandidateSet(int)>& make_grid,
                               const std::vector<int>& sizes, double tol,
                               int max_iters);

}  // namespace gep

#endif
