#include "gep/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>

#include <json.hpp>

namespace gep {

namespace {

using json = nlohmann::ordered_json;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json finite_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

void write_points_csv(const std::filesystem::path& path, const CandidateSet& cand,
                      const std::vector<std::size_t>& indices) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot write " + path.string());
  for (int k = 0; k < cand.dim; ++k) out << (k ? "," : "") << "x" << (k + 1);
  out << "\n";
  for (std::size_t idx : indices) {
    const auto pt = cand.point(idx);
    for (int k = 0; k < cand.dim; ++k) out << (k ? "," : "") << fmt_double(pt[k]);
    out << "\n";
  }
}

}  // namespace

KernelSpec build_kernel(const RunConfig& cfg) { return KernelSpec(cfg.kernel_s); }

FieldSpec build_field(const RunConfig& cfg) {
  const int dim = cfg.conductor_kind == "interval" ? 1
                  : cfg.conductor_kind == "box"
                      ? static_cast<int>(cfg.conductor_lower.size())
                      : cfg.conductor_dim;
  if (cfg.field_kind == "zero") return FieldSpec::zero(dim);
  if (cfg.field_kind == "abs") return FieldSpec::absolute_value(dim);
  if (cfg.field_kind == "jacobi") {
    return FieldSpec::jacobi_log_weight(cfg.field_lambda1, cfg.field_lambda2);
  }
  if (cfg.field_kind == "radial-power") {
    return FieldSpec::radial_power(cfg.field_exponent, cfg.field_coefficient, dim);
  }
  if (cfg.field_kind == "quadratic") return FieldSpec::quadratic_norm(dim);
  throw ConfigError(0, "unknown field.kind '" + cfg.field_kind + "'");
}

CandidateSet build_conductor(const RunConfig& cfg) {
  if (cfg.conductor_kind == "interval") {
    return interval_grid(cfg.conductor_a, cfg.conductor_b, cfg.conductor_points);
  }
  if (cfg.conductor_kind == "box") {
    return box_grid(cfg.conductor_lower, cfg.conductor_upper, cfg.conductor_points);
  }
  if (cfg.conductor_kind == "ball") {
    return ball_grid(cfg.conductor_radius, cfg.conductor_dim, cfg.conductor_points);
  }
  if (cfg.conductor_kind == "sphere") {
    return sphere_points(cfg.conductor_dim == 0 ? 3 : cfg.conductor_dim, cfg.conductor_points);
  }
  if (cfg.conductor_kind == "csv") return load_points(cfg.conductor_path);
  throw ConfigError(0, "unknown conductor.kind '" + cfg.conductor_kind + "'");
}

std::unique_ptr<EquilibriumReference> build_reference(const RunConfig& cfg,
                                                      const KernelSpec& kernel,
                                                      const FieldSpec& field,
                                                      const CandidateSet& cand) {
  if (cfg.reference_kind == "none") return nullptr;

  auto ladder_grid = [&cfg, &cand](int size) -> CandidateSet {
    if (cfg.conductor_kind == "interval") {
      return interval_grid(cfg.conductor_a, cfg.conductor_b, size);
    }
    if (cfg.conductor_kind == "box") {
      return box_grid(cfg.conductor_lower, cfg.conductor_upper, size);
    }
    if (cfg.conductor_kind == "ball") {
      return ball_grid(cfg.conductor_radius, cand.dim, size);
    }
    return cand;  // csv/sphere conductors refine nothing
  };

  std::unique_ptr<EquilibriumReference> ref;
  if (cfg.reference_kind == "riesz-interval") {
    const double s = std::isnan(cfg.reference_s) ? kernel.s : cfg.reference_s;
    ref = std::make_unique<EquilibriumReference>(riesz_interval_reference(s));
  } else if (cfg.reference_kind == "jacobi") {
    const double l1 = std::isnan(cfg.reference_lambda1) ? field.lambda1 : cfg.reference_lambda1;
    const double l2 = std::isnan(cfg.reference_lambda2) ? field.lambda2 : cfg.reference_lambda2;
    ref = std::make_unique<EquilibriumReference>(jacobi_reference(l1, l2));
  } else if (cfg.reference_kind == "radial-newtonian") {
    const int p = cfg.reference_p > 0 ? cfg.reference_p : cand.dim;
    ref = std::make_unique<EquilibriumReference>(radial_newtonian_reference(p, field));
  } else if (cfg.reference_kind == "discrete") {
    const CandidateSet grid = ladder_grid(cfg.reference_grid);
    ref = std::make_unique<EquilibriumReference>(
        discrete_equilibrium(kernel, field, grid, cfg.reference_tol, cfg.reference_max_iters));
  } else {
    throw ConfigError(0, "unknown analysis.reference '" + cfg.reference_kind + "'");
  }

  if (cfg.reference_ladder && std::isnan(ref->Vf)) {
    const LadderResult ladder = refinement_ladder(kernel, field, ladder_grid, cfg.ladder_sizes,
                                                  cfg.reference_tol, cfg.reference_max_iters);
    ref->Vf = ladder.Vf;
    ref->Wf = ladder.Wf;
  }
  return ref;
}

RunResult execute_run(const RunConfig& cfg, std::ostream& log) {
  const KernelSpec kernel = build_kernel(cfg);
  const FieldSpec field = build_field(cfg);
  const CandidateSet cand = build_conductor(cfg);

  const GrowthCheck growth = growth_admissible(field, kernel);
  if (!growth.admissible) log << "warning: " << growth.note << "\n";

  RunResult result;
  if (cfg.run_strategy == "optimal") {
    result.optimal = optimal_configuration(kernel, field, cand,
                                           static_cast<int>(cfg.run_n));
  } else if (cfg.run_m > 1) {
    BlockOptions opts;
    opts.strategy = cfg.run_strategy == "alternating" ? BlockStrategy::AlternatingRefinement
                                                      : BlockStrategy::Exhaustive;
    opts.shortlist = cfg.run_shortlist;
    opts.seed = cfg.seed;
    result.trace = block_greedy_run(kernel, field, cand, cfg.run_m, cfg.run_n, opts);
  } else {
    result.trace = greedy_run(kernel, field, cand, cfg.run_n, cfg.run_start, cfg.threads);
  }

  const auto ref = build_reference(cfg, kernel, field, cand);
  if (!result.optimal) {
    result.report = build_report(result.trace, kernel, field, cand, ref.get());
    if (result.trace.block_size == 1) {
      result.identity_residual = energy_identity_residual(result.trace, field, cand);
    }
  }

  std::filesystem::create_directories(cfg.output_dir);
  const std::vector<std::size_t>& indices =
      result.optimal ? result.optimal->indices : result.trace.selected;

  if (cfg.write_points) {
    write_points_csv(cfg.output_dir / "points.csv", cand, indices);
  }
  if (cfg.write_trajectory && !result.optimal) {
    std::ofstream out(cfg.output_dir / "trajectory.csv");
    if (!out) throw std::ios_base::failure("cannot write trajectory.csv");
    out << "N,normalized_energy,robin_value,ks_distance\n";
    const auto& rep = result.report;
    for (std::size_t k = 0; k < rep.n_values.size(); ++k) {
      out << rep.n_values[k] << "," << fmt_double(rep.normalized_energy[k]) << ",";
      // Single-point runs have one fewer robin value than energy rows never;
      // both start at N = 2, blocks lack a value for the first block.
      const std::size_t robin_idx = result.trace.block_size == 1 ? k : (k == 0 ? SIZE_MAX : k - 1);
      if (robin_idx != SIZE_MAX && robin_idx < rep.robin_values.size()) {
        out << fmt_double(rep.robin_values[robin_idx]);
      }
      out << ",";
      if (k < rep.ks_distances.size()) out << fmt_double(rep.ks_distances[k]);
      out << "\n";
    }
  }
  if (cfg.write_report) {
    json j;
    j["kernel"] = {{"s", kernel.s}};
    j["field"] = {{"kind", cfg.field_kind}};
    j["conductor"] = {{"kind", cfg.conductor_kind},
                      {"size", cand.size()},
                      {"dim", cand.dim},
                      {"mesh_scale", cand.mesh_scale}};
    j["run"] = {{"N", cfg.run_n},
                {"m", cfg.run_m},
                {"strategy", cfg.run_strategy},
                {"seed", cfg.seed}};
    if (result.optimal) {
      j["optimal_energy"] = finite_or_null(result.optimal->energy);
    } else {
      j["targets"] = {{"Vf", finite_or_null(result.report.target_Vf)},
                      {"Wf", finite_or_null(result.report.target_Wf)}};
      json final;
      final["N"] = result.report.n_values.empty() ? 0 : result.report.n_values.back();
      final["normalized_energy"] = result.report.normalized_energy.empty()
                                       ? json(nullptr)
                                       : finite_or_null(result.report.normalized_energy.back());
      if (!result.report.robin_values.empty()) {
        std::vector<TrajectoryPoint> robin;
        for (std::size_t i = 0; i < result.report.robin_values.size(); ++i) {
          robin.push_back({i, result.report.robin_values[i]});
        }
        final["robin_tail_mean"] = finite_or_null(tail_mean(robin));
      }
      if (!result.report.ks_distances.empty()) {
        final["ks_distance"] = finite_or_null(result.report.ks_distances.back());
      }
      final["support_violation"] = finite_or_null(result.report.support_violation);
      final["energy_identity_residual"] = finite_or_null(result.identity_residual);
      j["final"] = final;
      if (ref) {
        j["reference"] = {{"kind", cfg.reference_kind},
                          {"converged", ref->converged},
                          {"fw_gap", ref->fw_gap}};
      }
    }
    std::ofstream out(cfg.output_dir / "report.json");
    if (!out) throw std::ios_base::failure("cannot write report.json");
    out << j.dump(2) << "\n";
  }
  return result;
}

CompareReport compare_runs(const RunConfig& a, const RunConfig& b, std::ostream& out) {
  auto same = [](double x, double y) { return x == y || (std::isnan(x) && std::isnan(y)); };
  if (a.kernel_s != b.kernel_s || a.field_kind != b.field_kind ||
      !same(a.field_lambda1, b.field_lambda1) || !same(a.field_lambda2, b.field_lambda2) ||
      !same(a.field_exponent, b.field_exponent) ||
      !same(a.field_coefficient, b.field_coefficient) ||
      a.conductor_kind != b.conductor_kind || a.conductor_points != b.conductor_points ||
      a.conductor_a != b.conductor_a || a.conductor_b != b.conductor_b ||
      a.conductor_radius != b.conductor_radius || a.conductor_dim != b.conductor_dim ||
      a.conductor_lower != b.conductor_lower || a.conductor_upper != b.conductor_upper ||
      a.conductor_path != b.conductor_path) {
    throw ConfigError(0, "configs are not comparable: kernel, field, and conductor must match");
  }

  const KernelSpec kernel = build_kernel(a);
  const FieldSpec field = build_field(a);
  const CandidateSet cand = build_conductor(a);

  // Per-prefix-size E_f for one config.
  auto energies = [&](const RunConfig& cfg) {
    std::vector<std::pair<std::size_t, double>> out_e;
    if (cfg.run_strategy == "optimal") {
      for (std::size_t n = 2; n <= cfg.run_n; ++n) {
        const auto opt = optimal_configuration(kernel, field, cand, static_cast<int>(n));
        out_e.emplace_back(n, opt.energy);
      }
    } else if (cfg.run_m > 1) {
      BlockOptions opts;
      opts.strategy = cfg.run_strategy == "alternating" ? BlockStrategy::AlternatingRefinement
                                                        : BlockStrategy::Exhaustive;
      opts.shortlist = cfg.run_shortlist;
      opts.seed = cfg.seed;
      const auto trace = block_greedy_run(kernel, field, cand, cfg.run_m, cfg.run_n, opts);
      for (std::size_t k = 0; k < trace.energy_prefix.size(); ++k) {
        out_e.emplace_back((k + 1) * static_cast<std::size_t>(cfg.run_m), trace.energy_prefix[k]);
      }
    } else {
      const auto trace = greedy_run(kernel, field, cand, cfg.run_n, cfg.run_start, cfg.threads);
      for (std::size_t k = 0; k < trace.energy_prefix.size(); ++k) {
        out_e.emplace_back(k + 2, trace.energy_prefix[k]);
      }
    }
    return out_e;
  };

  const auto ea = energies(a);
  const auto eb = energies(b);

  CompareReport report;
  out << "N,energy_a,energy_b,ratio\n";
  for (const auto& [n, va] : ea) {
    for (const auto& [n2, vb] : eb) {
      if (n2 != n) continue;
      CompareRow row{n, va, vb, va / vb};
      report.rows.push_back(row);
      out << n << "," << fmt_double(va) << "," << fmt_double(vb) << ","
          << fmt_double(row.ratio) << "\n";
    }
  }
  if (!ea.empty()) report.final_a = ea.back().second;
  if (!eb.empty()) report.final_b = eb.back().second;
  return report;
}

void dump_reference(const RunConfig& cfg, std::ostream& log) {
  const KernelSpec kernel = build_kernel(cfg);
  const FieldSpec field = build_field(cfg);
  const CandidateSet cand = build_conductor(cfg);
  const auto ref = build_reference(cfg, kernel, field, cand);
  if (!ref) throw ConfigError(0, "analysis.reference is 'none'; nothing to dump");

  std::filesystem::create_directories(cfg.output_dir);
  std::ofstream out(cfg.output_dir / "reference.csv");
  if (!out) throw std::ios_base::failure("cannot write reference.csv");
  out << "x,density,cdf\n";
  const int samples = 501;
  const double lo = ref->support_lo;
  const double hi = ref->support_hi;
  for (int i = 0; i < samples; ++i) {
    const double x = lo + (hi - lo) * i / (samples - 1);
    out << fmt_double(x) << ",";
    if (ref->density) out << fmt_double(ref->density(x));
    out << ",";
    if (ref->cdf) out << fmt_double(ref->cdf(x));
    out << "\n";
  }
  log << "wrote " << (cfg.output_dir / "reference.csv").string() << "\n";
}

OptimalResult run_brute(const RunConfig& cfg, std::ostream& log) {
  const KernelSpec kernel = build_kernel(cfg);
  const FieldSpec field = build_field(cfg);
  const CandidateSet cand = build_conductor(cfg);
  const auto opt = optimal_configuration(kernel, field, cand, static_cast<int>(cfg.run_n));
  std::filesystem::create_directories(cfg.output_dir);
  write_points_csv(cfg.output_dir / "points.csv", cand, opt.indices);
  log << "optimal E_f = " << fmt_double(opt.energy) << "\n";
  return opt;
}

}  // namespace gep
