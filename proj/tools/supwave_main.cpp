// supwave: experiment driver for the truncated cubic wave flow with
// randomized data. One subcommand per experiment; see README for the
// config keys and output schemas.
#include <CLI11.hpp>

#include "supwave/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"pseudo-spectral experiments for the truncated cubic wave equation"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int workers = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;

  for (const std::string& name : supwave::experiment_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "configuration file (key = value lines)");
    sub->add_option("--out", out_dir, "output directory (default: config out_dir, then $SUPWAVE_OUT)");
    sub->add_option("--workers", workers, "worker threads (0 = hardware)");
    sub->add_option("--seed", seed, "override the ensemble master seed")->each([&](const std::string&) {
      seed_set = true;
    });
  }

  CLI11_PARSE(app, argc, argv);

  const std::string name = app.get_subcommands().front()->get_name();
  supwave::Config cfg;
  try {
    if (!config_path.empty()) cfg = supwave::Config::parse_file(config_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return supwave::kExitConfigError;
  }
  supwave::RunOptions opts;
  opts.out_dir = out_dir;
  opts.workers = workers;
  if (seed_set) opts.seed_override = seed;
  return supwave::run_experiment(name, cfg, opts);
}
