#ifndef GEP_RUNNER_HPP
#define GEP_RUNNER_HPP

#include <iosfwd>
#include <memory>
#include <optional>

#include "gep/analysis.hpp"
#include "gep/config.hpp"
#include "gep/equilibrium.hpp"
#include "gep/selector.hpp"

namespace gep {

KernelSpec build_kernel(const RunConfig& cfg);
FieldSpec build_field(const RunConfig& cfg);
CandidateSet build_conductor(const RunConfig& cfg);

/// Builds the analysis reference named by the config (nullptr for "none").
/// When analysis.ladder is true, Vf/Wf targets come from a refinement ladder.
std::unique_ptr<EquilibriumReference> build_reference(const RunConfig& cfg,
                                                      const KernelSpec& kernel,
                                                      const FieldSpec& field,
                                                      const CandidateSet& cand);

struct RunResult {
  GreedyTrace trace;                 // greedy / block strategies
  std::optional<OptimalResult> optimal;  // "optimal" strategy
  ConvergenceReport report;
  double identity_residual = std::numeric_limits<double>::quiet_NaN();
};

/// Executes a run config end to end and writes the requested output files.
RunResult execute_run(const RunConfig& cfg, std::ostream& log);

struct CompareRow {
  std::size_t n = 0;
  double energy_a = 0.0;
  double energy_b = 0.0;
  double ratio = 0.0;  // energy_a / energy_b
};

struct CompareReport {
  std::vector<CompareRow> rows;
  double final_a = 0.0;
  double final_b = 0.0;
};

/// Side-by-side energies at every common prefix size. Throws ConfigError if
/// the two configs disagree on kernel, field, or conductor.
CompareReport compare_runs(const RunConfig& a, const RunConfig& b, std::ostream& out);

/// Writes density/CDF samples of the configured reference to reference.csv.
void dump_reference(const RunConfig& cfg, std::ostream& log);

/// Runs the brute-force optimal oracle and writes points + energy.
OptimalResult run_brute(const RunConfig& cfg, std::ostream& log);

}  // namespace gep

#endif
