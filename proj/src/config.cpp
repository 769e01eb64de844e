#include "gep/config.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace gep {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_real(const std::string& value, int line) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(line, "expected a real number, got '" + value + "'");
  }
}

long parse_int(const std::string& value, int line) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(line, "expected an integer, got '" + value + "'");
  }
}

std::vector<double> parse_reals(const std::string& value, int line) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(parse_real(trim(cell), line));
  if (out.empty()) throw ConfigError(line, "expected a comma-separated list of reals");
  return out;
}

}  // namespace

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open config file " + path.string());

  RunConfig cfg;
  std::map<std::string, int> seen;  // key -> line, to reject duplicates
  bool have_kernel_s = false;
  bool have_conductor = false;
  bool have_run_n = false;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(line_no, "expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "empty key");
    if (value.empty()) throw ConfigError(line_no, "empty value for key '" + key + "'");
    if (auto [it, inserted] = seen.emplace(key, line_no); !inserted) {
      throw ConfigError(line_no, "duplicate key '" + key + "' (first at line " +
                                     std::to_string(it->second) + ")");
    }

    if (key == "kernel.s") {
      cfg.kernel_s = parse_real(value, line_no);
      have_kernel_s = true;
    } else if (key == "field.kind") {
      cfg.field_kind = value;
    } else if (key == "field.lambda1") {
      cfg.field_lambda1 = parse_real(value, line_no);
    } else if (key == "field.lambda2") {
      cfg.field_lambda2 = parse_real(value, line_no);
    } else if (key == "field.exponent") {
      cfg.field_exponent = parse_real(value, line_no);
    } else if (key == "field.coefficient") {
      cfg.field_coefficient = parse_real(value, line_no);
    } else if (key == "conductor.kind") {
      cfg.conductor_kind = value;
      have_conductor = true;
    } else if (key == "conductor.a") {
      cfg.conductor_a = parse_real(value, line_no);
    } else if (key == "conductor.b") {
      cfg.conductor_b = parse_real(value, line_no);
    } else if (key == "conductor.points") {
      cfg.conductor_points = static_cast<int>(parse_int(value, line_no));
    } else if (key == "conductor.lower") {
      cfg.conductor_lower = parse_reals(value, line_no);
    } else if (key == "conductor.upper") {
      cfg.conductor_upper = parse_reals(value, line_no);
    } else if (key == "conductor.radius") {
      cfg.conductor_radius = parse_real(value, line_no);
    } else if (key == "conductor.dim") {
      cfg.conductor_dim = static_cast<int>(parse_int(value, line_no));
    } else if (key == "conductor.path") {
      cfg.conductor_path = value;
    } else if (key == "run.N") {
      cfg.run_n = static_cast<std::size_t>(parse_int(value, line_no));
      have_run_n = true;
    } else if (key == "run.m") {
      cfg.run_m = static_cast<int>(parse_int(value, line_no));
    } else if (key == "run.start") {
      if (value == "auto") {
        cfg.run_start.reset();
      } else {
        const long idx = parse_int(value, line_no);
        if (idx < 0) throw ConfigError(line_no, "run.start must be >= 0 or 'auto'");
        cfg.run_start = static_cast<std::size_t>(idx);
      }
    } else if (key == "run.strategy") {
      if (value != "greedy" && value != "exhaustive" && value != "alternating" &&
          value != "optimal") {
        throw ConfigError(line_no, "run.strategy must be one of greedy|exhaustive|alternating|optimal");
      }
      cfg.run_strategy = value;
    } else if (key == "run.shortlist") {
      cfg.run_shortlist = static_cast<std::size_t>(parse_int(value, line_no));
    } else if (key == "analysis.reference") {
      if (value != "none" && value != "riesz-interval" && value != "jacobi" &&
          value != "radial-newtonian" && value != "discrete") {
        throw ConfigError(line_no,
                          "analysis.reference must be one of none|riesz-interval|jacobi|"
                          "radial-newtonian|discrete");
      }
      cfg.reference_kind = value;
    } else if (key == "analysis.s") {
      cfg.reference_s = parse_real(value, line_no);
    } else if (key == "analysis.lambda1") {
      cfg.reference_lambda1 = parse_real(value, line_no);
    } else if (key == "analysis.lambda2") {
      cfg.reference_lambda2 = parse_real(value, line_no);
    } else if (key == "analysis.p") {
      cfg.reference_p = static_cast<int>(parse_int(value, line_no));
    } else if (key == "analysis.tol") {
      cfg.reference_tol = parse_real(value, line_no);
    } else if (key == "analysis.max_iters") {
      cfg.reference_max_iters = static_cast<int>(parse_int(value, line_no));
    } else if (key == "analysis.grid") {
      cfg.reference_grid = static_cast<int>(parse_int(value, line_no));
    } else if (key == "analysis.ladder") {
      if (value != "true" && value != "false") {
        throw ConfigError(line_no, "analysis.ladder must be true or false");
      }
      cfg.reference_ladder = value == "true";
    } else if (key == "analysis.ladder_sizes") {
      cfg.ladder_sizes.clear();
      for (double v : parse_reals(value, line_no)) cfg.ladder_sizes.push_back(static_cast<int>(v));
    } else if (key == "output.dir") {
      cfg.output_dir = value;
    } else if (key == "output.formats") {
      cfg.write_points = cfg.write_trajectory = cfg.write_report = false;
      std::stringstream ss(value);
      std::string fmt;
      while (std::getline(ss, fmt, ',')) {
        fmt = trim(fmt);
        if (fmt == "points-csv") {
          cfg.write_points = true;
        } else if (fmt == "trajectory-csv") {
          cfg.write_trajectory = true;
        } else if (fmt == "report-json") {
          cfg.write_report = true;
        } else {
          throw ConfigError(line_no, "unknown output format '" + fmt + "'");
        }
      }
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(value, line_no));
    } else if (key == "threads") {
      cfg.threads = static_cast<int>(parse_int(value, line_no));
    } else {
      throw ConfigError(line_no, "unknown key '" + key + "'");
    }
  }

  if (!have_kernel_s) throw ConfigError(0, "missing required key 'kernel.s'");
  if (!have_conductor) throw ConfigError(0, "missing required key 'conductor.kind'");
  if (!have_run_n) throw ConfigError(0, "missing required key 'run.N'");
  return cfg;
}

}  // namespace gep
