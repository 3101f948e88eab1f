// Command-line driver: shockstab <settings> [--validate] [--sweep] [--dump-matrix]
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "shockstab/app.hpp"
#include "shockstab/error.hpp"

int main(int argc, char** argv) {
  CLI::App cli{"Matrix stability analysis of shock-capturing schemes"};
  std::string settings_path;
  bool validate = false;
  bool sweep = false;
  bool dump_matrix = false;
  cli.add_option("settings", settings_path, "Settings file (key = value lines)")->required();
  cli.add_flag("--validate", validate, "Also run the growth-rate validation and write validation.csv");
  cli.add_flag("--sweep", sweep, "Run the sweep over sweep_mach x sweep_solver x sweep_reconstruction");
  cli.add_flag("--dump-matrix", dump_matrix, "Write the stability matrix as row/col/value triplets");
  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : shockstab::kExitError;
  }

  shockstab::Settings settings;
  try {
    settings = shockstab::parse_settings(settings_path);
  } catch (const shockstab::Error& e) {
    std::cerr << "error " << e.what() << '\n';
    return shockstab::kExitError;
  }
  settings.validate = settings.validate || validate;
  settings.sweep = settings.sweep || sweep;
  settings.dump_matrix = settings.dump_matrix || dump_matrix;
  return shockstab::run(settings, std::cout, std::cerr);
}
