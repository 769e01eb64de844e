#include "gep/selector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

namespace gep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kComboGuard = 1e7;

double binomial_count(std::size_t n, int k) {
  double c = 1.0;
  for (int i = 0; i < k; ++i) {
    c *= static_cast<double>(n - static_cast<std::size_t>(i)) / (i + 1.0);
    if (c > 1e18) return c;
  }
  return c;
}

std::vector<double> field_values(const FieldSpec& field, const CandidateSet& cand) {
  std::vector<double> f(cand.size());
  for (std::size_t i = 0; i < cand.size(); ++i) f[i] = field_eval(field, cand.point(i));
  return f;
}

// Adds k(x, new_point) to the accumulator for every candidate x.
void add_to_accumulator(std::vector<double>& acc, const KernelSpec& kernel,
                        const CandidateSet& cand, std::size_t new_index,
                        int threads) {
  const auto pt = cand.point(new_index);
  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      acc[i] += kernel_eval(kernel, cand.point(i), pt);
    }
  };
  if (threads <= 1) {
    work(0, cand.size());
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (cand.size() + threads - 1) / static_cast<std::size_t>(threads);
  for (int t = 0; t < threads; ++t) {
    const std::size_t lo = std::min(cand.size(), static_cast<std::size_t>(t) * chunk);
    const std::size_t hi = std::min(cand.size(), lo + chunk);
    if (lo < hi) pool.emplace_back(work, lo, hi);
  }
  for (auto& th : pool) th.join();
}

struct ScoredIndex {
  double score = kInf;
  std::size_t index = 0;
};

// Deterministic regardless of partitioning: ties resolve to the lowest index.
ScoredIndex combine(const ScoredIndex& a, const ScoredIndex& b) {
  if (b.score < a.score || (b.score == a.score && b.index < a.index)) return b;
  return a;
}

ScoredIndex argmin_score(const std::vector<double>& acc, const std::vector<double>& f,
                         double field_weight, int threads) {
  auto scan = [&](std::size_t lo, std::size_t hi) {
    ScoredIndex best;
    for (std::size_t i = lo; i < hi; ++i) {
      const double s = acc[i] + field_weight * f[i];
      if (s < best.score) best = {s, i};
    }
    return best;
  };
  if (threads <= 1) return scan(0, acc.size());
  std::vector<ScoredIndex> partial(static_cast<std::size_t>(threads));
  std::vector<std::thread> pool;
  const std::size_t chunk = (acc.size() + threads - 1) / static_cast<std::size_t>(threads);
  for (int t = 0; t < threads; ++t) {
    const std::size_t lo = std::min(acc.size(), static_cast<std::size_t>(t) * chunk);
    const std::size_t hi = std::min(acc.size(), lo + chunk);
    pool.emplace_back([&partial, t, lo, hi, &scan] { partial[static_cast<std::size_t>(t)] = scan(lo, hi); });
  }
  for (auto& th : pool) th.join();
  ScoredIndex best;
  for (const auto& p : partial) best = combine(best, p);
  return best;
}

// Enumerates k-subsets of `pool` in lexicographic order, minimizing
//   sum_i acc[x_i] + sum_{i<j} kernel(x_i, x_j) + field_weight * sum_i f[x_i].
// Returns the first minimizer encountered (lexicographically smallest on ties).
struct SubsetMinimizer {
  const KernelSpec& kernel;
  const CandidateSet& cand;
  const std::vector<double>& acc;
  const std::vector<double>& f;
  const std::vector<std::size_t>& pool;
  double field_weight;
  int k;

  std::vector<std::size_t> chosen;
  std::vector<std::size_t> best;
  double best_value = kInf;

  void run() {
    chosen.clear();
    best.clear();
    best_value = kInf;
    recurse(0, 0.0);
  }

 private:
  void recurse(std::size_t start, double partial) {
    if (static_cast<int>(chosen.size()) == k) {
      if (partial < best_value) {
        best_value = partial;
        best = chosen;
      }
      return;
    }
    const std::size_t remaining = static_cast<std::size_t>(k) - chosen.size();
    for (std::size_t i = start; i + remaining <= pool.size(); ++i) {
      const std::size_t idx = pool[i];
      double add = acc[idx] + field_weight * f[idx];
      for (std::size_t prev : chosen) {
        add += kernel_eval(kernel, cand.point(idx), cand.point(prev));
      }
      chosen.push_back(idx);
      recurse(i + 1, partial + add);
      chosen.pop_back();
    }
  }
};

}  // namespace

GreedyTrace greedy_run(const KernelSpec& kernel, const FieldSpec& field,
                       const CandidateSet& cand, std::size_t n_points,
                       std::optional<std::size_t> start, int threads) {
  const std::size_t M = cand.size();
  if (n_points < 2) throw std::invalid_argument("greedy_run: need N >= 2");
  const std::vector<double> f = field_values(field, cand);

  std::size_t first;
  if (start) {
    first = *start;
    if (first >= M) throw std::invalid_argument("greedy_run: start index out of range");
    if (!(f[first] < kInf)) {
      throw std::invalid_argument("greedy_run: f(start) must be finite");
    }
  } else {
    ScoredIndex best;
    for (std::size_t i = 0; i < M; ++i) {
      if (f[i] < best.score) best = {f[i], i};
    }
    if (!(best.score < kInf)) {
      throw std::runtime_error("greedy_run: field is +inf on every candidate");
    }
    first = best.index;
  }

  GreedyTrace trace;
  trace.block_size = 1;
  trace.selected.reserve(n_points);
  trace.u_values.reserve(n_points);
  trace.energy_prefix.reserve(n_points - 1);
  trace.selected.push_back(first);
  trace.u_values.push_back(0.0);

  std::vector<double> acc(M, 0.0);  // acc[x] = sum over selected of k(x, a_i)
  double pair_sum = 0.0;
  double field_sum = f[first];

  for (std::size_t n = 1; n < n_points; ++n) {
    add_to_accumulator(acc, kernel, cand, trace.selected.back(), threads);
    const ScoredIndex best = argmin_score(acc, f, static_cast<double>(n), threads);
    if (!(best.score < kInf)) {
      throw std::runtime_error("greedy_run: all candidates scored +inf at step " +
                               std::to_string(n + 1));
    }
    trace.selected.push_back(best.index);
    trace.u_values.push_back(best.score);
    pair_sum += acc[best.index];
    field_sum += f[best.index];
    trace.energy_prefix.push_back(2.0 * pair_sum +
                                  2.0 * static_cast<double>(n) * field_sum);
  }
  return trace;
}

GreedyTrace block_greedy_run(const KernelSpec& kernel, const FieldSpec& field,
                             const CandidateSet& cand, int m,
                             std::size_t n_blocks, const BlockOptions& opts) {
  if (m < 2) throw std::invalid_argument("block_greedy_run: m must be >= 2");
  if (n_blocks < 1) throw std::invalid_argument("block_greedy_run: need at least one block");
  const std::size_t M = cand.size();
  const std::vector<double> f = field_values(field, cand);

  std::vector<std::size_t> all_indices(M);
  for (std::size_t i = 0; i < M; ++i) all_indices[i] = i;

  GreedyTrace trace;
  trace.block_size = m;
  std::vector<double> acc(M, 0.0);
  double pair_sum = 0.0;
  double field_sum = 0.0;

  std::mt19937_64 rng(opts.seed);

  auto block_value = [&](const std::vector<std::size_t>& block, double weight) {
    double v = 0.0;
    for (std::size_t i = 0; i < block.size(); ++i) {
      v += acc[block[i]] + weight * f[block[i]];
      for (std::size_t j = i + 1; j < block.size(); ++j) {
        v += kernel_eval(kernel, cand.point(block[i]), cand.point(block[j]));
      }
    }
    return v;
  };

  // Cyclic single-coordinate re-optimization until a full sweep improves nothing.
  auto refine = [&](std::vector<std::size_t> block, double weight) {
    auto coordinate_score = [&](std::size_t x, int skip) {
      double s = acc[x] + weight * f[x];
      for (int i = 0; i < m; ++i) {
        if (i == skip) continue;
        s += kernel_eval(kernel, cand.point(x), cand.point(block[static_cast<std::size_t>(i)]));
      }
      return s;
    };
    bool improved = true;
    while (improved) {
      improved = false;
      for (int c = 0; c < m; ++c) {
        ScoredIndex best;
        for (std::size_t x = 0; x < M; ++x) {
          const double s = coordinate_score(x, c);
          if (s < best.score) best = {s, x};
        }
        const double current = coordinate_score(block[static_cast<std::size_t>(c)], c);
        if (best.score < current) {
          block[static_cast<std::size_t>(c)] = best.index;
          improved = true;
        }
      }
    }
    return block;
  };

  auto pick_block = [&](std::size_t block_no) {
    // field weight ((N+1)m - 1) for block N; the first block (N = 0) carries
    // (m - 1), which makes the objective E_f / 2 over the m-subset.
    const double weight = static_cast<double>((block_no + 1) * static_cast<std::size_t>(m) - 1);
    if (opts.strategy == BlockStrategy::Exhaustive) {
      std::vector<std::size_t> pool = all_indices;
      if (opts.shortlist > 0 && opts.shortlist < M) {
        // Rank by single-point marginal score, keep the best `shortlist`.
        std::vector<std::size_t> order = all_indices;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
          return acc[a] + weight * f[a] < acc[b] + weight * f[b];
        });
        order.resize(opts.shortlist);
        std::sort(order.begin(), order.end());
        pool = std::move(order);
      }
      if (binomial_count(pool.size(), m) > kComboGuard) {
        throw GuardExceeded("block_greedy_run: C(M, m) exceeds enumeration guard");
      }
      SubsetMinimizer minimizer{kernel, cand, acc, f, pool, weight, m};
      minimizer.run();
      if (!(minimizer.best_value < kInf)) {
        throw std::runtime_error("block_greedy_run: every m-subset scored +inf");
      }
      return std::pair{minimizer.best, minimizer.best_value};
    }

    // AlternatingRefinement: multi-start coordinate descent.
    std::vector<std::vector<std::size_t>> starts;
    {  // single-point greedy continuation as one start
      std::vector<std::size_t> g;
      std::vector<double> acc_local = acc;
      for (int i = 0; i < m; ++i) {
        ScoredIndex best;
        for (std::size_t x = 0; x < M; ++x) {
          const double s = acc_local[x] + weight * f[x];
          if (s < best.score) best = {s, x};
        }
        g.push_back(best.index);
        for (std::size_t x = 0; x < M; ++x) {
          acc_local[x] += kernel_eval(kernel, cand.point(x), cand.point(best.index));
        }
      }
      starts.push_back(std::move(g));
    }
    std::uniform_int_distribution<std::size_t> dist(0, M - 1);
    for (int r = 0; r < opts.restarts; ++r) {
      std::vector<std::size_t> b;
      while (static_cast<int>(b.size()) < m) {
        const std::size_t x = dist(rng);
        if (std::find(b.begin(), b.end(), x) == b.end()) b.push_back(x);
      }
      starts.push_back(std::move(b));
    }
    std::vector<std::size_t> best_block;
    double best_val = kInf;
    for (auto& s0 : starts) {
      auto b = refine(std::move(s0), weight);
      const double v = block_value(b, weight);
      std::sort(b.begin(), b.end());
      if (v < best_val || (v == best_val && b < best_block)) {
        best_val = v;
        best_block = b;
      }
    }
    return std::pair{best_block, best_val};
  };

  for (std::size_t blk = 0; blk < n_blocks; ++blk) {
    auto [block, value] = pick_block(blk);
    std::sort(block.begin(), block.end());
    if (blk > 0) trace.block_values.push_back(value);
    // Fold the block into the running sums before refreshing the accumulator.
    for (std::size_t i = 0; i < block.size(); ++i) {
      pair_sum += acc[block[i]];
      field_sum += f[block[i]];
      for (std::size_t j = i + 1; j < block.size(); ++j) {
        pair_sum += kernel_eval(kernel, cand.point(block[i]), cand.point(block[j]));
      }
    }
    for (std::size_t idx : block) {
      trace.selected.push_back(idx);
      add_to_accumulator(acc, kernel, cand, idx, 1);
    }
    const double n_sel = static_cast<double>(trace.selected.size());
    trace.energy_prefix.push_back(2.0 * pair_sum + 2.0 * (n_sel - 1.0) * field_sum);
  }
  return trace;
}

OptimalResult optimal_configuration(const KernelSpec& kernel, const FieldSpec& field,
                                    const CandidateSet& cand, int n_points) {
  const std::size_t M = cand.size();
  if (n_points < 2) throw std::invalid_argument("optimal_configuration: need N >= 2");
  if (static_cast<std::size_t>(n_points) > M) {
    throw std::invalid_argument("optimal_configuration: N exceeds candidate count");
  }
  if (binomial_count(M, n_points) > kComboGuard) {
    throw GuardExceeded("optimal_configuration: C(M, N) exceeds enumeration guard");
  }
  const std::vector<double> f = field_values(field, cand);
  std::vector<std::size_t> all_indices(M);
  for (std::size_t i = 0; i < M; ++i) all_indices[i] = i;
  const std::vector<double> zero_acc(M, 0.0);
  SubsetMinimizer minimizer{kernel, cand,        zero_acc,
                            f,      all_indices, static_cast<double>(n_points - 1),
                            n_points};
  minimizer.run();
  OptimalResult result;
  result.indices = minimizer.best;
  result.energy = 2.0 * minimizer.best_value;  // objective was E_f / 2
  return result;
}

}  // namespace gep
