#ifndef GEP_SELECTOR_HPP
#define GEP_SELECTOR_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gep/conductor.hpp"
#include "gep/field.hpp"
#include "gep/kernel.hpp"

namespace gep {

/// Thrown when a brute-force enumeration would exceed its tuple-count guard.
struct GuardExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Result of a greedy or block-greedy run. Selected points are stored as
/// candidate indices so runs can be replayed and deduplicated exactly.
struct GreedyTrace {
  std::vector<std::size_t> selected;

  // Single-point runs (block_size == 1): u_values[n-1] = U_n^f(a_n) for
  // n >= 2, u_values[0] = 0. Block runs leave this empty.
  std::vector<double> u_values;

  // E_f of each prefix. Single-point runs: entry k is E_f of the first k+2
  // points. Block runs: entry b is E_f of the first (b+1)*m points.
  std::vector<double> energy_prefix;

  // Block runs only: the minimized block functional U_{mN}^{(f,m)} for each
  // block after the first (N = 1, 2, ...).
  std::vector<double> block_values;

  int block_size = 1;
};

/// Single-point greedy sequence: a_{n+1} minimizes sum_i k(x, a_i) + n f(x)
/// over the candidate set, ties broken by lowest index. start = nullopt picks
/// the candidate minimizing f. Each step costs O(M) kernel evaluations via a
/// running potential accumulator.
GreedyTrace greedy_run(const KernelSpec& kernel, const FieldSpec& field,
                       const CandidateSet& cand, std::size_t n_points,
                       std::optional<std::size_t> start = std::nullopt,
                       int threads = 1);

enum class BlockStrategy { Exhaustive, AlternatingRefinement };

struct BlockOptions {
  BlockStrategy strategy = BlockStrategy::Exhaustive;
  // Exhaustive: when nonzero, enumerate m-subsets of the `shortlist` best
  // candidates ranked by single-point marginal score instead of all of them.
  std::size_t shortlist = 0;
  int restarts = 8;  // AlternatingRefinement multi-start count
  std::uint64_t seed = 0;
};

/// m-point block greedy sequence. The first block minimizes E_f over
/// m-subsets; each later block minimizes the joint functional
/// U_{mN}^{(f,m)} = sum_i sum_l k(x_i, a_l) + sum_{i<j} k(x_i, x_j)
///                  + ((N+1)m - 1) sum_i f(x_i).
/// Within a block, indices are assigned in ascending candidate order.
GreedyTrace block_greedy_run(const KernelSpec& kernel, const FieldSpec& field,
                             const CandidateSet& cand, int m,
                             std::size_t n_blocks,
                             const BlockOptions& opts = {});

struct OptimalResult {
  std::vector<std::size_t> indices;  // ascending
  double energy = 0.0;               // E_f of the minimizing subset
};

/// Brute-force optimal weighted N-point configuration: exhaustively minimizes
/// E_f over N-subsets (lexicographically smallest subset on ties).
/// Guard: C(M, N) <= 1e7 enumerated tuples.
OptimalResult optimal_configuration(const KernelSpec& kernel,
                                    const FieldSpec& field,
                                    const CandidateSet& cand, int n_points);

}  // namespace gep

#endif
