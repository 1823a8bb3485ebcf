#include <iostream>

#include "CLI11.hpp"
#include "shadowlab/cli/cli.hpp"

namespace shadowlab::cli {

namespace {

void add_common(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--matrix", config.matrix, "diag:v1,v2,... | file:<csv> | fixture:<name>")
      ->required();
  cmd->add_option("--ensemble", config.ensemble,
                  "complex | real | quaternion | mixed:K | entangled-complex | entangled-real")
      ->capture_default_str();
  cmd->add_option("--out", config.out, "output CSV (default stdout)");
  cmd->add_option("--svg", config.svg, "optional SVG plot");
}

void add_sampling(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--samples", config.samples, "number of Monte Carlo draws")->capture_default_str();
  cmd->add_option("--seed", config.seed, "RNG seed (default: $SHADOWLAB_SEED, else 1)");
  cmd->add_option("--threads", config.threads, "worker threads (0 = all cores)");
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Numerical shadows of matrices: closed-form densities and Monte Carlo checks"};
  app.require_subcommand(1);
  RunConfig config;

  auto* density = app.add_subcommand("density", "evaluate the closed-form density on a grid");
  add_common(density, config);
  density->add_option("--grid", config.grid, "lo:hi:points (default: support, 1001 points)");
  density->add_option("--quad-order", config.quad_order,
                      "fixed quadrature order for real shadows (default: adaptive)");

  auto* sample = app.add_subcommand("sample", "draw shadow values from an ensemble");
  add_common(sample, config);
  add_sampling(sample, config);
  sample->add_option("--bins", config.bins, "histogram bins")->capture_default_str();
  sample->add_option("--hist", config.hist, "histogram CSV bin_left,bin_right,count");

  auto* compare = app.add_subcommand("compare", "check the closed form against Monte Carlo");
  add_common(compare, config);
  add_sampling(compare, config);
  compare->add_option("--model", config.model,
                      "ensemble whose closed form is tested (default: the sampled one)")
      ->capture_default_str();
  compare->add_option("--quad-order", config.quad_order, "fixed quadrature order");
  compare->add_option("--ks-threshold", config.ks_threshold, "KS pass threshold")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (density->parsed()) return cmd_density(config, std::cout);
    if (sample->parsed()) return cmd_sample(config, std::cout);
    return cmd_compare(config, std::cout);
  } catch (const ParseError& e) {
    std::cerr << "shadowlab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "shadowlab: " << e.what() << '\n';
    return kExitUnsupported;
  }
}

}  // namespace shadowlab::cli
