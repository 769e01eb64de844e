#ifndef GEP_ANALYSIS_HPP
#define GEP_ANALYSIS_HPP

#include <cstddef>
#include <vector>

#include "gep/equilibrium.hpp"
#include "gep/selector.hpp"

namespace gep {

struct TrajectoryPoint {
  std::size_t n = 0;
  double value = 0.0;
};

/// (N, E_f(alpha_N)/N^2) per prefix; block traces are normalized by (mN)^2.
std::vector<TrajectoryPoint> energy_trajectory(const GreedyTrace& trace);

/// Single-point traces: (n, U_n^f(a_n)/n) for n >= 2.
/// Block traces: (N, U_{mN}^{(f,m)}/N), whose limit carries a factor m^2.
std::vector<TrajectoryPoint> robin_trajectory(const GreedyTrace& trace);

/// Sup over sorted sample points of max(|F(x_i) - i/N|, |F(x_i) - (i-1)/N|).
double ks_distance_1d(std::vector<double> points, const EquilibriumReference& ref);

/// KS distance between the radii {|x_i|} and the reference's radial CDF.
double ks_distance_radial(const Configuration& cfg, const EquilibriumReference& ref);

/// max over selected points (n >= 2) of U^mu(a_n) + f(a_n) - Wf.
/// Nonpositive (up to discretization error) when the greedy points stay in
/// the essential support.
double support_violation(const GreedyTrace& trace, const EquilibriumReference& ref,
                         const FieldSpec& field, const CandidateSet& cand);

/// Max relative residual over all prefixes of the identity
/// E_f(alpha_N) = 2 sum_{i=2}^N U_i^f(a_i) + 2 sum_{i=1}^N (N-i) f(a_i).
double energy_identity_residual(const GreedyTrace& trace, const FieldSpec& field,
                                const CandidateSet& cand);

/// Diagnostic pairing of the two limit statements: does the Robin-type
/// trajectory T_n(b_n)/n trend to Wf while E_f/N^2 trends to Vf?
struct SequenceCheckReport {
  double robin_tail_mean = 0.0;
  double energy_tail_mean = 0.0;
  double target_Wf = 0.0;
  double target_Vf = 0.0;
  bool hypothesis_ok = false;   // |robin_tail_mean - Wf| <= robin_tol, finite
  bool conclusion_ok = false;   // |energy_tail_mean - Vf| <= energy_tol
};

SequenceCheckReport sequence_energy_check(const std::vector<std::size_t>& points,
                                          const KernelSpec& kernel,
                                          const FieldSpec& field,
                                          const CandidateSet& cand,
                                          const EquilibriumReference& ref,
                                          double robin_tol, double energy_tol);

/// Mean of the last quartile of a trajectory (greedy limits oscillate, so
/// tail means are used for limit estimates).
double tail_mean(const std::vector<TrajectoryPoint>& traj);

struct ConvergenceReport {
  std::vector<std::size_t> n_values;
  std::vector<double> normalized_energy;
  std::vector<double> robin_values;
  std::vector<double> ks_distances;  // empty when no usable reference CDF
  double target_Vf = std::numeric_limits<double>::quiet_NaN();
  double target_Wf = std::numeric_limits<double>::quiet_NaN();
  double support_violation = std::numeric_limits<double>::quiet_NaN();
};

/// Assembles the per-N diagnostics for a trace against an optional reference
/// (pass nullptr for none).
ConvergenceReport build_report(const GreedyTrace& trace, const KernelSpec& kernel,
                               const FieldSpec& field, const CandidateSet& cand,
                               const EquilibriumReference* ref);

}  // namespace gep

#endif
