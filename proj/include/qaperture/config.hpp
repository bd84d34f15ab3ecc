#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "qaperture/focusing.hpp"
#include "qaperture/observables.hpp"

namespace qaperture {

/// Resolved run parameters. Lengths in wavelengths except lambda_nm; gamma and
/// detuning in rad/s.
struct RunConfig {
  double lambda_nm = 852.0;
  double gamma = 2.0 * kPi * 5.0e6;
  double detuning = 0.0;
  double f = 500.0;
  double z_in = 6.0e4;
  BeamModel model = BeamModel::exact;
  double radius = 50.0;
  double phi_min = 0.0;
  double phi_max = kPi / 2.0;
  int phi_steps = 200;
  double azimuth = 0.0;
  double map_x_min = -3.0;
  double map_x_max = 3.0;
  int map_x_count = 61;
  double map_z_min = -25.0;
  double map_z_max = 10.0;
  int map_z_count = 71;
  double omega_over_gamma = 0.01;
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_depth = 40;
  int min_nodes_per_oscillation = 8;
  bool optimize = false;
  double zin_min = 1.0e3;
  double zin_max = 1.0e6;
  std::string out = ".";

  BeamSpec beam() const;
  AtomSpec atom() const;  // rates converted to natural units, position unset
  ScanConfig scan() const;
  MapGrid grid() const;
};

/// Parses `key = value` lines ('#' starts a comment), then applies overrides.
/// Unknown keys, malformed values and constraint violations throw ConfigError
/// naming the key.
RunConfig parse_config(const std::string& text, const std::map<std::string, std::string>& overrides = {});

/// Checks every constraint; throws ConfigError naming the first offending key.
void validate(const RunConfig& config);

nlohmann::ordered_json to_json(const RunConfig& config);

/// Shortest round-trip decimal form of x.
std::string format_double(double x);

}  // namespace qaperture
