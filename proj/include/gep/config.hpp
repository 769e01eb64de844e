#ifndef GEP_CONFIG_HPP
#define GEP_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gep {

/// Config file error with a 1-based line number (0 = file-level problem).
struct ConfigError : std::runtime_error {
  int line = 0;
  ConfigError(int line_no, const std::string& message)
      : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + message
                                       : message),
        line(line_no) {}
};

struct RunConfig {
  // kernel
  double kernel_s = 0.0;

  // field
  std::string field_kind = "zero";
  double field_lambda1 = 0.0;
  double field_lambda2 = 0.0;
  double field_exponent = 0.0;
  double field_coefficient = 0.0;

  // conductor
  std::string conductor_kind;
  double conductor_a = -1.0;
  double conductor_b = 1.0;
  int conductor_points = 0;  // grid nodes (per axis for box/ball)
  std::vector<double> conductor_lower;
  std::vector<double> conductor_upper;
  double conductor_radius = 0.0;
  int conductor_dim = 1;
  std::string conductor_path;

  // run
  std::size_t run_n = 0;
  int run_m = 1;
  std::optional<std::size_t> run_start;  // nullopt = "auto"
  std::string run_strategy = "greedy";   // greedy|exhaustive|alternating|optimal
  std::size_t run_shortlist = 0;

  // analysis
  // Unset analysis parameters (NaN / 0) fall back to the kernel/field/conductor values.
  std::string reference_kind = "none";  // none|riesz-interval|jacobi|radial-newtonian|discrete
  double reference_s = std::numeric_limits<double>::quiet_NaN();
  double reference_lambda1 = std::numeric_limits<double>::quiet_NaN();
  double reference_lambda2 = std::numeric_limits<double>::quiet_NaN();
  int reference_p = 0;
  double reference_tol = 1e-6;
  int reference_max_iters = 100000;
  int reference_grid = 201;          // discrete reference grid size
  bool reference_ladder = false;     // attach Vf/Wf targets from a refinement ladder
  std::vector<int> ladder_sizes = {101, 201, 401};

  // output
  std::filesystem::path output_dir = ".";
  bool write_points = true;
  bool write_trajectory = true;
  bool write_report = true;

  std::uint64_t seed = 0;
  int threads = 1;
};

RunConfig parse_config(const std::filesystem::path& path);

}  // namespace gep

#endif
