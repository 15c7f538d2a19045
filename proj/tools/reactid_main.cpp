#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "reactid/config.hpp"
#include "reactid/pipeline.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  bool vtk = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON run configuration")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", args.out_dir, "output directory (overrides the config)");
  cmd->add_flag("--vtk", args.vtk, "also write legacy ASCII VTK files");
}

int load_and_apply(const CommonArgs& args, reactid::RunConfig& cfg) {
  try {
    cfg = reactid::load_config(args.config_path);
  } catch (const std::exception& e) {
    std::cerr << "error [config]: " << e.what() << "\n";
    return 1;
  }
  if (!args.out_dir.empty()) cfg.output_directory = args.out_dir;
  if (args.vtk) cfg.vtk = true;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reaction-coefficient identification from final-time observations"};
  app.require_subcommand(1);

  CommonArgs forward_args, generate_args, identify_args;
  std::string psi_path;

  CLI::App* forward = app.add_subcommand("forward", "solve the direct problem");
  add_common(forward, forward_args);

  CLI::App* generate = app.add_subcommand("generate-data", "produce final-time data");
  add_common(generate, generate_args);

  CLI::App* identify = app.add_subcommand("identify", "reconstruct the reaction coefficient");
  add_common(identify, identify_args);
  identify->add_option("--psi", psi_path, "final-time data file (field CSV)")
      ->required()
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  reactid::RunConfig cfg;
  if (forward->parsed()) {
    if (int rc = load_and_apply(forward_args, cfg)) return rc;
    return reactid::cmd_forward(cfg);
  }
  if (generate->parsed()) {
    if (int rc = load_and_apply(generate_args, cfg)) return rc;
    return reactid::cmd_generate_data(cfg);
  }
  if (int rc = load_and_apply(identify_args, cfg)) return rc;
  return reactid::cmd_identify(cfg, psi_path);
}
