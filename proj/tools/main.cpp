#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Design and analysis of broadband SFWM photon-pair sources in photonic crystal fibre"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path, out_dir;
  std::size_t threads = 0;
  long long seed = 0;
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "Output directory (default: output_dir from the config)");
  app.add_option("--threads", threads, "Worker threads (default: config value, 0 = all cores)");
  auto* seed_opt = app.add_option("--seed", seed, "Reserved; every computation is deterministic");
  app.set_version_flag("--version", sfwm::cli::kVersion);
  for (const auto& [name, cmd] : sfwm::cli::commands()) app.add_subcommand(name, "run the " + name + " analysis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : sfwm::exit_code(sfwm::ErrorKind::config);
  }

  try {
    const auto cfg = sfwm::io::load_config(config_path);
    sfwm::set_default_threads(threads > 0 ? threads : cfg.threads);
    const std::string cmd = app.get_subcommands().front()->get_name();
    const std::string dir = out_dir.empty() ? cfg.output_dir : out_dir;
    std::optional<long long> s;
    if (seed_opt->count() > 0) s = seed;
    sfwm::cli::run_and_write(cmd, cfg, dir, s);
    std::cout << cmd << ": wrote results to " << dir << "\n";
    return 0;
  } catch (const sfwm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return sfwm::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return sfwm::exit_code(sfwm::ErrorKind::numeric);
  }
}
