#include <CLI11.hpp>
#include <iostream>

#include "bethe/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"bethecert: exact certificates for Bethe subalgebra instances"};
  app.require_subcommand(1);

  std::string cfg_path, grid, json_out;
  bethe::RunOptions opt;
  long dim_cap_override = -1;
  long seed_override = -1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", cfg_path, "config file")->required();
    sub->add_option("--jobs", opt.jobs, "parallel workers");
    sub->add_option("--seed", seed_override, "override config seed");
    sub->add_option("--dim-cap", dim_cap_override, "override module dimension cap");
    sub->add_option("--json", json_out, "write the JSON report to this file");
    sub->add_flag("--no-cache", opt.no_cache, "bypass the module cache");
    sub->add_option("--cache-dir", opt.cache_dir, "cache directory");
    sub->add_flag("--timings", opt.include_timings, "include wall-clock time in the report");
  };
  CLI::App* run = app.add_subcommand("run", "run all checks in a config");
  add_common(run);
  CLI::App* sweep = app.add_subcommand("sweep", "run a config over a parameter grid");
  add_common(sweep);
  sweep->add_option("--grid", grid, "grid spec, e.g. z2=0,1/3,1/2")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    bethe::RunConfig cfg = bethe::parse_config_file(cfg_path);
    if (seed_override >= 0) cfg.seed = static_cast<unsigned long>(seed_override);
    if (dim_cap_override > 0) cfg.dim_cap = dim_cap_override;
    bethe::Report rep =
        app.got_subcommand(sweep) ? bethe::run_sweep(cfg, grid, opt) : bethe::run_config(cfg, opt);
    std::string text = rep.json.dump(2) + "\n";
    if (!json_out.empty()) {
      std::ofstream out(json_out);
      out << text;
    }
    std::cout << text;
    return rep.exit_code;
  } catch (const bethe::ConfigError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
