#include "gep/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gep {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::vector<TrajectoryPoint> energy_trajectory(const GreedyTrace& trace) {
  std::vector<TrajectoryPoint> out;
  out.reserve(trace.energy_prefix.size());
  const std::size_t m = static_cast<std::size_t>(trace.block_size);
  for (std::size_t k = 0; k < trace.energy_prefix.size(); ++k) {
    const std::size_t n_points = trace.block_size == 1 ? k + 2 : (k + 1) * m;
    const double denom = static_cast<double>(n_points) * static_cast<double>(n_points);
    out.push_back({n_points, trace.energy_prefix[k] / denom});
  }
  return out;
}

std::vector<TrajectoryPoint> robin_trajectory(const GreedyTrace& trace) {
  std::vector<TrajectoryPoint> out;
  if (trace.block_size == 1) {
    for (std::size_t n = 2; n <= trace.u_values.size(); ++n) {
      out.push_back({n, trace.u_values[n - 1] / static_cast<double>(n)});
    }
  } else {
    for (std::size_t b = 0; b < trace.block_values.size(); ++b) {
      out.push_back({b + 1, trace.block_values[b] / static_cast<double>(b + 1)});
    }
  }
  return out;
}

double ks_distance_1d(std::vector<double> points, const EquilibriumReference& ref) {
  if (!ref.has_cdf()) {
    throw std::invalid_argument("ks_distance_1d: reference has no CDF");
  }
  if (points.empty()) throw std::invalid_argument("ks_distance_1d: empty sample");
  std::sort(points.begin(), points.end());
  const double n = static_cast<double>(points.size());
  double dist = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double F = ref.cdf(points[i]);
    dist = std::max(dist, std::abs(F - static_cast<double>(i + 1) / n));
    dist = std::max(dist, std::abs(F - static_cast<double>(i) / n));
  }
  return dist;
}

double ks_distance_radial(const Configuration& cfg, const EquilibriumReference& ref) {
  if (ref.kind != ReferenceKind::RadialNewtonian) {
    throw std::invalid_argument("ks_distance_radial: reference is not radial");
  }
  std::vector<double> radii;
  radii.reserve(cfg.size());
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    double sq = 0.0;
    for (double v : cfg.point(i)) sq += v * v;
    radii.push_back(std::sqrt(sq));
  }
  EquilibriumReference radial_as_1d;
  radial_as_1d.cdf = ref.cdf;
  return ks_distance_1d(std::move(radii), radial_as_1d);
}

double support_violation(const GreedyTrace& trace, const EquilibriumReference& ref,
                         const FieldSpec& field, const CandidateSet& cand) {
  if (!ref.has_potential() || std::isnan(ref.Wf)) {
    throw std::invalid_argument("support_violation: reference lacks potential or Wf");
  }
  double worst = -kInf;
  for (std::size_t n = 1; n < trace.selected.size(); ++n) {
    const auto x = cand.point(trace.selected[n]);
    worst = std::max(worst, ref.potential(x) + field_eval(field, x) - ref.Wf);
  }
  return worst;
}

double energy_identity_residual(const GreedyTrace& trace, const FieldSpec& field,
                                const CandidateSet& cand) {
  if (trace.block_size != 1) {
    throw std::invalid_argument("energy_identity_residual: single-point traces only");
  }
  const std::size_t n_points = trace.selected.size();
  std::vector<double> f(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    f[i] = field_eval(field, cand.point(trace.selected[i]));
  }
  double u_sum = 0.0;
  double worst = 0.0;
  for (std::size_t n = 2; n <= n_points; ++n) {
    u_sum += trace.u_values[n - 1];
    double weighted_f = 0.0;
    for (std::size_t i = 1; i <= n; ++i) weighted_f += static_cast<double>(n - i) * f[i - 1];
    const double reconstructed = 2.0 * u_sum + 2.0 * weighted_f;
    const double direct = trace.energy_prefix[n - 2];
    const double scale = std::max({1.0, std::abs(direct), std::abs(reconstructed)});
    worst = std::max(worst, std::abs(direct - reconstructed) / scale);
  }
  return worst;
}

double tail_mean(const std::vector<TrajectoryPoint>& traj) {
  if (traj.empty()) throw std::invalid_argument("tail_mean: empty trajectory");
  const std::size_t start = traj.size() * 3 / 4;
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = start; i < traj.size(); ++i) {
    sum += traj[i].value;
    ++count;
  }
  return sum / static_cast<double>(count);
}

SequenceCheckReport sequence_energy_check(const std::vector<std::size_t>& points,
                                          const KernelSpec& kernel,
                                          const FieldSpec& field,
                                          const CandidateSet& cand,
                                          const EquilibriumReference& ref,
                                          double robin_tol, double energy_tol) {
  if (points.size() < 4) {
    throw std::invalid_argument("sequence_energy_check: need at least 4 points");
  }
  const std::size_t N = points.size();
  std::vector<double> f(N);
  for (std::size_t i = 0; i < N; ++i) f[i] = field_eval(field, cand.point(points[i]));

  // T_n(b_n)/n and E_f/N^2 trajectories via the incremental accumulator.
  std::vector<TrajectoryPoint> robin, en;
  double pair_sum = 0.0;
  double field_sum = f[0];
  for (std::size_t n = 1; n < N; ++n) {
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      t += kernel_eval(kernel, cand.point(points[n]), cand.point(points[i]));
    }
    pair_sum += t;
    field_sum += f[n];
    const double T = t + static_cast<double>(n) * f[n];
    robin.push_back({n + 1, T / static_cast<double>(n + 1)});
    const double ef = 2.0 * pair_sum + 2.0 * static_cast<double>(n) * field_sum;
    en.push_back({n + 1, ef / static_cast<double>((n + 1) * (n + 1))});
  }

  SequenceCheckReport report;
  report.target_Wf = ref.Wf;
  report.target_Vf = ref.Vf;
  report.robin_tail_mean = tail_mean(robin);
  report.energy_tail_mean = tail_mean(en);
  report.hypothesis_ok = std::isfinite(report.robin_tail_mean) &&
                         std::abs(report.robin_tail_mean - ref.Wf) <= robin_tol;
  report.conclusion_ok = std::isfinite(report.energy_tail_mean) &&
                         std::abs(report.energy_tail_mean - ref.Vf) <= energy_tol;
  return report;
}

ConvergenceReport build_report(const GreedyTrace& trace, const KernelSpec& /*kernel*/,
                               const FieldSpec& field, const CandidateSet& cand,
                               const EquilibriumReference* ref) {
  ConvergenceReport report;
  const auto en = energy_trajectory(trace);
  const auto robin = robin_trajectory(trace);
  for (const auto& pt : en) {
    report.n_values.push_back(pt.n);
    report.normalized_energy.push_back(pt.value);
  }
  report.robin_values.reserve(robin.size());
  for (const auto& pt : robin) report.robin_values.push_back(pt.value);

  if (ref != nullptr) {
    report.target_Vf = ref->Vf;
    report.target_Wf = ref->Wf;
    const bool radial = ref->kind == ReferenceKind::RadialNewtonian;
    const bool can_ks = ref->has_cdf() && (cand.dim == 1 || radial);
    if (can_ks) {
      const std::size_t m = static_cast<std::size_t>(trace.block_size);
      for (std::size_t k = 0; k < report.n_values.size(); ++k) {
        const std::size_t n_points = trace.block_size == 1 ? k + 2 : (k + 1) * m;
        if (radial) {
          Configuration cfg;
          cfg.dim = cand.dim;
          for (std::size_t i = 0; i < n_points; ++i) {
            auto p = cand.point(trace.selected[i]);
            cfg.coords.insert(cfg.coords.end(), p.begin(), p.end());
          }
          report.ks_distances.push_back(ks_distance_radial(cfg, *ref));
        } else {
          std::vector<double> xs;
          for (std::size_t i = 0; i < n_points; ++i) xs.push_back(cand.coords[trace.selected[i]]);
          report.ks_distances.push_back(ks_distance_1d(std::move(xs), *ref));
        }
      }
    }
    if (ref->has_potential() && !std::isnan(ref->Wf)) {
      report.support_violation = support_violation(trace, *ref, field, cand);
    }
  }
  return report;
}

}  // namespace gep
