#include "gep/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Cumulative trapezoid table of `integrand` over [lo, hi], normalized so the
// last entry is 1. Returned lambda interpolates linearly.
std::function<double(double)> cumulative_cdf(const std::function<double(double)>& integrand,
                                             double lo, double hi, int n_nodes) {
  std::vector<double> grid(static_cast<std::size_t>(n_nodes));
  std::vector<double> cum(static_cast<std::size_t>(n_nodes), 0.0);
  const double h = (hi - lo) / (n_nodes - 1);
  double prev = integrand(lo);
  grid[0] = lo;
  for (int i = 1; i < n_nodes; ++i) {
    const double x = lo + i * h;
    const double cur = integrand(x);
    grid[static_cast<std::size_t>(i)] = x;
    cum[static_cast<std::size_t>(i)] = cum[static_cast<std::size_t>(i) - 1] + 0.5 * (prev + cur) * h;
    prev = cur;
  }
  const double total = cum.back();
  for (double& c : cum) c /= total;
  return [grid = std::move(grid), cum = std::move(cum), lo, hi](double x) {
    if (x <= lo) return 0.0;
    if (x >= hi) return 1.0;
    const auto it = std::upper_bound(grid.begin(), grid.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - grid.begin());
    const double t = (x - grid[i - 1]) / (grid[i] - grid[i - 1]);
    return cum[i - 1] + t * (cum[i] - cum[i - 1]);
  };
}

double aitken(double v0, double v1, double v2) {
  const double d1 = v1 - v0;
  const double d2 = v2 - v1;
  const double denom = d2 - d1;
  if (std::abs(denom) < 1e-14 * std::max(1.0, std::abs(v2))) return v2;
  return v2 - d2 * d2 / denom;
}

// Euclidean projection onto the probability simplex restricted to `feasible`.
void project_simplex(std::vector<double>& w, const std::vector<std::size_t>& feasible) {
  std::vector<double> u;
  u.reserve(feasible.size());
  for (std::size_t i : feasible) u.push_back(w[i]);
  std::vector<double> sorted = u;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double css = 0.0;
  double theta = 0.0;
  for (std::size_t r = 0; r < sorted.size(); ++r) {
    css += sorted[r];
    const double t = (css - 1.0) / static_cast<double>(r + 1);
    if (sorted[r] - t > 0.0) theta = t;
  }
  for (std::size_t j = 0; j < feasible.size(); ++j) {
    w[feasible[j]] = std::max(0.0, u[j] - theta);
  }
}

}  // namespace

EquilibriumReference riesz_interval_reference(double s) {
  if (!(s >= 0.0 && s < 1.0)) {
    throw std::invalid_argument("riesz_interval_reference: s must be in [0, 1)");
  }
  const double c = std::tgamma(1.0 + s / 2.0) /
                   (std::sqrt(std::numbers::pi) * std::tgamma((1.0 + s) / 2.0));
  EquilibriumReference ref;
  ref.kind = ReferenceKind::RieszInterval;
  ref.support_lo = -1.0;
  ref.support_hi = 1.0;
  ref.density = [c, s](double x) {
    if (x < -1.0 || x > 1.0) return 0.0;
    const double w = 1.0 - x * x;
    if (w <= 0.0) return s < 1.0 ? kInf : c;
    return c * std::pow(w, (s - 1.0) / 2.0);
  };
  // Substitution x = sin(theta) removes the endpoint singularity.
  auto theta_cdf = cumulative_cdf(
      [c, s](double th) { return c * std::pow(std::cos(th), s); },
      -std::numbers::pi / 2.0, std::numbers::pi / 2.0, 8001);
  ref.cdf = [theta_cdf](double x) {
    return theta_cdf(std::asin(std::clamp(x, -1.0, 1.0)));
  };
  return ref;
}

JacobiSupport jacobi_support(double lambda1, double lambda2) {
  if (!(lambda1 > 0.0) || !(lambda2 > 0.0)) {
    throw std::invalid_argument("jacobi_support: lambda1, lambda2 must be > 0");
  }
  const double total = 1.0 + lambda1 + lambda2;
  const double t1 = lambda1 / total;
  const double t2 = lambda2 / total;
  const double sum = t1 + t2;
  const double diff = t1 - t2;
  const double delta = (1.0 - sum * sum) * (1.0 - diff * diff);
  const double center = t2 * t2 - t1 * t1;
  return {center - std::sqrt(delta), center + std::sqrt(delta)};
}

EquilibriumReference jacobi_reference(double lambda1, double lambda2) {
  const JacobiSupport sup = jacobi_support(lambda1, lambda2);
  const double scale = (1.0 + lambda1 + lambda2) / std::numbers::pi;
  EquilibriumReference ref;
  ref.kind = ReferenceKind::JacobiLogInterval;
  ref.support_lo = sup.a;
  ref.support_hi = sup.b;
  ref.density = [sup, scale](double x) {
    if (x < sup.a || x > sup.b) return 0.0;
    const double q = (x - sup.a) * (sup.b - x);
    return scale * std::sqrt(std::max(0.0, q)) / (1.0 - x * x);
  };
  // Substitution x = mid + half*sin(theta): sqrt((x-a)(b-x)) = half*cos(theta).
  const double mid = 0.5 * (sup.a + sup.b);
  const double half = 0.5 * (sup.b - sup.a);
  auto theta_cdf = cumulative_cdf(
      [mid, half, scale](double th) {
        const double x = mid + half * std::sin(th);
        const double cth = std::cos(th);
        return scale * half * half * cth * cth / (1.0 - x * x);
      },
      -std::numbers::pi / 2.0, std::numbers::pi / 2.0, 8001);
  ref.cdf = [theta_cdf, mid, half, sup](double x) {
    if (x <= sup.a) return 0.0;
    if (x >= sup.b) return 1.0;
    return theta_cdf(std::asin(std::clamp((x - mid) / half, -1.0, 1.0)));
  };
  return ref;
}

EquilibriumReference radial_newtonian_reference(int p, const FieldSpec& field) {
  if (p < 3) throw std::invalid_argument("radial_newtonian_reference: p must be >= 3");
  if (!field_is_radial(field) || field.kind == FieldKind::Zero) {
    throw std::invalid_argument("radial_newtonian_reference: field must be radial and growing");
  }
  const double target = static_cast<double>(p - 2);
  // captured by value: the closure outlives this call inside cdf/density
  auto shell = [field, p](double r) {
    return std::pow(r, p - 1) * field_radial_derivative(field, r);
  };

  double r0 = 0.0;
  if (!(field_radial_derivative(field, 1e-12) > 0.0)) {
    double lo = 1e-12, hi = 1.0;
    while (!(field_radial_derivative(field, hi) > 0.0)) {
      hi *= 2.0;
      if (hi > 1e8) throw std::runtime_error("radial_newtonian_reference: f' never positive");
    }
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (field_radial_derivative(field, mid) > 0.0 ? hi : lo) = mid;
    }
    r0 = hi;
  }

  double lo = std::max(r0, 1e-12), hi = std::max(1.0, 2.0 * lo);
  while (shell(hi) < target) {
    hi *= 2.0;
    if (hi > 1e8) throw std::runtime_error("radial_newtonian_reference: no root for R0");
  }
  for (int it = 0; it < 200 && (hi - lo) > 1e-12 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (shell(mid) < target ? lo : hi) = mid;
  }
  const double R0 = 0.5 * (lo + hi);

  const double w_r0 = r0 > 0.0 ? shell(r0) : 0.0;
  auto radial_cdf = [shell, w_r0, target, r0, R0](double r) {
    if (r <= r0) return 0.0;
    if (r >= R0) return 1.0;
    return std::clamp((shell(r) - w_r0) / target, 0.0, 1.0);
  };

  EquilibriumReference ref;
  ref.kind = ReferenceKind::RadialNewtonian;
  ref.support_lo = r0;
  ref.support_hi = R0;
  ref.cdf = radial_cdf;
  ref.density = [shell, target, r0, R0](double r) {
    if (r < r0 || r > R0) return 0.0;
    const double h = 1e-6 * std::max(1.0, r);
    const double a = std::max(r - h, r0);
    const double b = std::min(r + h, R0 * (1.0 + 1e-12));
    return (shell(b) - shell(a)) / ((b - a) * target);
  };
  ref.Wf = std::pow(R0, -(p - 2)) + field_radial_value(field, R0);

  // integral of f dlambda = f(R0) - integral of f'(r) F(r) dr on [r0, R0]
  double integral = 0.0;
  {
    const int n = 4001;
    const double h = (R0 - r0) / (n - 1);
    for (int i = 0; i < n; ++i) {
      const double r = r0 + i * h;
      const double v = field_radial_derivative(field, std::max(r, 1e-12)) * radial_cdf(r);
      integral += (i == 0 || i == n - 1) ? 0.5 * v : v;
    }
    integral *= h;
  }
  const double mean_field = field_radial_value(field, R0) - integral;
  ref.Vf = ref.Wf + mean_field;

  const double w_top = ref.Wf;  // 1/R0^{p-2} + f(R0)
  const double f_r0 = field_radial_value(field, r0);
  ref.potential = [p, r0, R0, w_top, f_r0, field](std::span<const double> x) {
    double sq = 0.0;
    for (double v : x) sq += v * v;
    const double r = std::sqrt(sq);
    if (r <= r0) return w_top - f_r0;
    if (r < R0) return w_top - field_radial_value(field, r);
    return std::pow(r, -(p - 2));
  };
  return ref;
}

EquilibriumReference discrete_equilibrium(const KernelSpec& kernel,
                                          const FieldSpec& field,
                                          const CandidateSet& cand, double tol,
                                          int max_iters) {
  const std::size_t M = cand.size();
  if (M > 8000) {
    throw std::invalid_argument("discrete_equilibrium: candidate set too large for a dense solve");
  }
  std::vector<double> f(M);
  std::vector<std::size_t> feasible;
  for (std::size_t i = 0; i < M; ++i) {
    f[i] = field_eval(field, cand.point(i));
    if (f[i] < kInf) feasible.push_back(i);
  }
  if (feasible.size() < 2) {
    throw std::runtime_error("discrete_equilibrium: field is finite on fewer than 2 candidates");
  }

  const double diagonal = kernel_radial(cand.mesh_scale / 2.0, kernel.s);
  std::vector<double> K(M * M);
  for (std::size_t i = 0; i < M; ++i) {
    K[i * M + i] = diagonal;
    for (std::size_t j = i + 1; j < M; ++j) {
      const double v = kernel_eval(kernel, cand.point(i), cand.point(j));
      K[i * M + j] = v;
      K[j * M + i] = v;
    }
  }

  // Crude Lipschitz bound for the gradient 2(Kw + f).
  double max_row = 0.0;
  for (std::size_t i : feasible) {
    double row = 0.0;
    for (std::size_t j : feasible) row += std::abs(K[i * M + j]);
    max_row = std::max(max_row, row);
  }
  const double step = 1.0 / (2.0 * max_row);

  std::vector<double> w(M, 0.0);
  for (std::size_t i : feasible) w[i] = 1.0 / static_cast<double>(feasible.size());

  std::vector<double> Kw(M, 0.0);
  auto apply = [&]() {
    for (std::size_t i : feasible) {
      double acc = 0.0;
      const double* row = K.data() + i * M;
      for (std::size_t j : feasible) acc += row[j] * w[j];
      Kw[i] = acc;
    }
  };

  EquilibriumReference ref;
  ref.kind = ReferenceKind::Discrete;
  ref.objective_monotone = true;
  double objective = kInf;
  double gap = kInf;
  int it = 0;
  for (; it < max_iters; ++it) {
    apply();
    double J = 0.0;
    for (std::size_t i : feasible) J += w[i] * (Kw[i] + 2.0 * f[i]);
    if (J > objective + 1e-12 * std::max(1.0, std::abs(objective))) {
      ref.objective_monotone = false;
    }
    objective = J;

    double grad_dot_w = 0.0;
    double grad_min = kInf;
    for (std::size_t i : feasible) {
      const double g = 2.0 * (Kw[i] + f[i]);
      grad_dot_w += g * w[i];
      grad_min = std::min(grad_min, g);
    }
    gap = grad_dot_w - grad_min;
    if (gap <= tol || it == max_iters - 1) break;

    for (std::size_t i : feasible) w[i] -= step * 2.0 * (Kw[i] + f[i]);
    project_simplex(w, feasible);
  }

  ref.converged = gap <= tol;
  ref.fw_gap = gap;
  ref.iterations = it;
  ref.measure.weights = w;
  auto nodes = std::make_shared<CandidateSet>(cand);
  ref.nodes = nodes;

  double wf = 0.0;
  for (std::size_t i : feasible) wf += w[i] * f[i];
  ref.Vf = objective;
  ref.Wf = objective - wf;

  const double s = kernel.s;
  const double floor_dist = cand.mesh_scale / 2.0;  // consistent with the Gram diagonal
  ref.potential = [nodes, w, s, floor_dist](std::span<const double> x) {
    double u = 0.0;
    for (std::size_t j = 0; j < nodes->size(); ++j) {
      if (w[j] <= 0.0) continue;
      const auto y = nodes->point(j);
      double sq = 0.0;
      for (std::size_t k = 0; k < y.size(); ++k) {
        const double d = x[k] - y[k];
        sq += d * d;
      }
      u += w[j] * kernel_radial(std::max(std::sqrt(sq), floor_dist), s);
    }
    return u;
  };

  if (cand.dim == 1) {
    std::vector<std::pair<double, double>> atoms;
    for (std::size_t i = 0; i < M; ++i) {
      if (w[i] > 0.0) atoms.emplace_back(cand.coords[i], w[i]);
    }
    std::sort(atoms.begin(), atoms.end());
    std::vector<double> xs, cum;
    double c = 0.0;
    for (auto& [x, wt] : atoms) {
      c += wt;
      xs.push_back(x);
      cum.push_back(c);
    }
    if (!xs.empty()) {
      ref.support_lo = xs.front();
      ref.support_hi = xs.back();
    }
    ref.cdf = [xs = std::move(xs), cum = std::move(cum)](double x) {
      const auto it2 = std::upper_bound(xs.begin(), xs.end(), x);
      if (it2 == xs.begin()) return 0.0;
      return cum[static_cast<std::size_t>(it2 - xs.begin()) - 1];
    };
  }
  return ref;
}

std::vector<std::size_t> essential_support(const EquilibriumReference& ref,
                                           const CandidateSet& cand,
                                           const FieldSpec& field, double slack) {
  if (!ref.has_potential()) {
    throw std::invalid_argument("essential_support: reference has no potential evaluator");
  }
  if (std::isnan(ref.Wf)) {
    throw std::invalid_argument("essential_support: reference has no Wf value");
  }
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    const auto x = cand.point(i);
    if (ref.potential(x) + field_eval(field, x) <= ref.Wf + slack) idx.push_back(i);
  }
  return idx;
}

LadderResult refinement_ladder(const KernelSpec& kernel, const FieldSpec& field,
                               const std::function<CandidateSet(int)>& make_grid,
                               const std::vector<int>& sizes, double tol,
                               int max_iters) {
  if (sizes.empty()) throw std::invalid_argument("refinement_ladder: no sizes given");
  LadderResult ladder;
  ladder.sizes = sizes;
  for (int size : sizes) {
    const CandidateSet grid = make_grid(size);
    const EquilibriumReference ref = discrete_equilibrium(kernel, field, grid, tol, max_iters);
    ladder.Vf_levels.push_back(ref.Vf);
    ladder.Wf_levels.push_back(ref.Wf);
    ladder.converged = ladder.converged && ref.converged;
  }
  const std::size_t n = ladder.Vf_levels.size();
  if (n >= 3) {
    ladder.Vf = aitken(ladder.Vf_levels[n - 3], ladder.Vf_levels[n - 2], ladder.Vf_levels[n - 1]);
    ladder.Wf = aitken(ladder.Wf_levels[n - 3], ladder.Wf_levels[n - 2], ladder.Wf_levels[n - 1]);
  } else {
    ladder.Vf = ladder.Vf_levels.back();
    ladder.Wf = ladder.Wf_levels.back();
  }
  return ladder;
}

}  // namespace gep
