// Command-line driver: parses flags and an optional config file, then hands
// off to run_command. Exit 0 ok, 1 numerical failure, 2 bad configuration.
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qaperture/commands.hpp"
#include "qaperture/errors.hpp"

int main(int argc, char** argv) {
  using namespace qaperture;

  CLI::App app{"Focused vector beams driving a single atom: focal maps, angular scans, coupling."};
  app.set_version_flag("--version", std::string(kVersion));

  std::string command;
  std::string config_path;
  std::map<std::string, std::string> overrides;
  std::string f, z_in, model, radius, phi_steps, out;
  bool optimize = false;

  app.add_option("command", command, "focal-map | angular-scan | coupling | check")
      ->required()
      ->check(CLI::IsMember({"focal-map", "angular-scan", "coupling", "check"}));
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--f", f, "focal length in wavelengths");
  app.add_option("--z-in", z_in, "input Rayleigh range in wavelengths");
  app.add_option("--model", model, "exact | paraxial");
  app.add_option("--radius", radius, "detector radius in wavelengths");
  app.add_option("--phi-steps", phi_steps, "number of scan angles");
  app.add_flag("--optimize", optimize, "maximize R_s over z_in before reporting");
  app.add_option("--out", out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (!f.empty()) overrides["f"] = f;
  if (!z_in.empty()) overrides["z_in"] = z_in;
  if (!model.empty()) overrides["model"] = model;
  if (!radius.empty()) overrides["radius"] = radius;
  if (!phi_steps.empty()) overrides["phi_steps"] = phi_steps;
  if (!out.empty()) overrides["out"] = out;
  if (optimize) overrides["optimize"] = "true";

  try {
    std::string text;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("config", "cannot read '" + config_path + "'");
      std::ostringstream buf;
      buf << in.rdbuf();
      text = buf.str();
    }
    const RunConfig config = parse_config(text, overrides);
    return run_command(command, config, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "config error [" << e.key() << "]: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
