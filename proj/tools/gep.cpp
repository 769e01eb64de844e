#include <algorithm>
#include <exception>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "gep/config.hpp"
#include "gep/runner.hpp"
#include "gep/selector.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitGuard = 3;
constexpr int kExitIo = 4;

struct CommonFlags {
  std::string output_dir;
  int threads = -1;  // -1 = keep config value, 0 = auto
};

void apply_flags(gep::RunConfig& cfg, const CommonFlags& flags) {
  if (!flags.output_dir.empty()) cfg.output_dir = flags.output_dir;
  if (flags.threads >= 0) {
    cfg.threads = flags.threads == 0
                      ? static_cast<int>(std::max(1u, std::thread::hardware_concurrency()))
                      : flags.threads;
  }
  if (cfg.threads < 1) cfg.threads = 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Greedy minimal-energy point sequences on discretized conductors"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string config_path, config_a, config_b;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--output-dir", flags.output_dir, "override output.dir");
    cmd->add_option("--threads", flags.threads, "worker threads (0 = auto)");
  };

  CLI::App* run = app.add_subcommand("run", "generate a sequence and write outputs");
  run->add_option("config", config_path, "run config file")->required();
  add_common(run);

  CLI::App* compare = app.add_subcommand("compare", "per-N energy table for two configs");
  compare->add_option("config_a", config_a, "first config")->required();
  compare->add_option("config_b", config_b, "second config")->required();
  add_common(compare);

  CLI::App* equilibrium =
      app.add_subcommand("equilibrium", "dump reference density/CDF samples");
  equilibrium->add_option("config", config_path, "run config file")->required();
  add_common(equilibrium);

  CLI::App* brute = app.add_subcommand("brute", "brute-force optimal configuration");
  brute->add_option("config", config_path, "run config file")->required();
  add_common(brute);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      gep::RunConfig cfg = gep::parse_config(config_path);
      apply_flags(cfg, flags);
      gep::execute_run(cfg, std::cerr);
    } else if (compare->parsed()) {
      gep::RunConfig a = gep::parse_config(config_a);
      gep::RunConfig b = gep::parse_config(config_b);
      apply_flags(a, flags);
      apply_flags(b, flags);
      gep::compare_runs(a, b, std::cout);
    } else if (equilibrium->parsed()) {
      gep::RunConfig cfg = gep::parse_config(config_path);
      apply_flags(cfg, flags);
      gep::dump_reference(cfg, std::cerr);
    } else if (brute->parsed()) {
      gep::RunConfig cfg = gep::parse_config(config_path);
      apply_flags(cfg, flags);
      gep::run_brute(cfg, std::cerr);
    }
  } catch (const gep::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const gep::GuardExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGuard;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}
