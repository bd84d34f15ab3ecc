#include "qaperture/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <functional>
#include <sstream>
#include <system_error>

#include "qaperture/atom.hpp"
#include "qaperture/errors.hpp"

namespace qaperture {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw ConfigError(key, "expected a finite number, got '" + text + "'");
  }
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  int v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw ConfigError(key, "expected an integer, got '" + text + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError(key, "expected true or false, got '" + text + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

Setter real(double RunConfig::*field) {
  return [field](RunConfig& c, const std::string& k, const std::string& v) { c.*field = parse_double(k, v); };
}

Setter integer(int RunConfig::*field) {
  return [field](RunConfig& c, const std::string& k, const std::string& v) { c.*field = parse_int(k, v); };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"lambda_nm", real(&RunConfig::lambda_nm)},
      {"gamma", real(&RunConfig::gamma)},
      {"detuning", real(&RunConfig::detuning)},
      {"f", real(&RunConfig::f)},
      {"z_in", real(&RunConfig::z_in)},
      {"model",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         if (v == "exact") {
           c.model = BeamModel::exact;
         } else if (v == "paraxial") {
           c.model = BeamModel::paraxial;
         } else {
           throw ConfigError(k, "expected exact or paraxial, got '" + v + "'");
         }
       }},
      {"radius", real(&RunConfig::radius)},
      {"phi_min", real(&RunConfig::phi_min)},
      {"phi_max", real(&RunConfig::phi_max)},
      {"phi_steps", integer(&RunConfig::phi_steps)},
      {"azimuth", real(&RunConfig::azimuth)},
      {"map_x_min", real(&RunConfig::map_x_min)},
      {"map_x_max", real(&RunConfig::map_x_max)},
      {"map_x_count", integer(&RunConfig::map_x_count)},
      {"map_z_min", real(&RunConfig::map_z_min)},
      {"map_z_max", real(&RunConfig::map_z_max)},
      {"map_z_count", integer(&RunConfig::map_z_count)},
      {"omega_over_gamma", real(&RunConfig::omega_over_gamma)},
      {"rel_tol", real(&RunConfig::rel_tol)},
      {"abs_tol", real(&RunConfig::abs_tol)},
      {"max_depth", integer(&RunConfig::max_depth)},
      {"min_nodes_per_oscillation", integer(&RunConfig::min_nodes_per_oscillation)},
      {"optimize", [](RunConfig& c, const std::string& k, const std::string& v) { c.optimize = parse_bool(k, v); }},
      {"zin_min", real(&RunConfig::zin_min)},
      {"zin_max", real(&RunConfig::zin_max)},
      {"out",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         if (v.empty()) throw ConfigError(k, "must not be empty");
         c.out = v;
       }},
  };
  return table;
}

void apply(RunConfig& c, const std::string& key, const std::string& value) {
  const auto it = setters().find(key);
  if (it == setters().end()) throw ConfigError(key, "unknown key");
  it->second(c, key, value);
}

void require(bool ok, const char* key, const std::string& what) {
  if (!ok) throw ConfigError(key, what);
}

}  // namespace

BeamSpec RunConfig::beam() const {
  BeamSpec b;
  b.f = f;
  b.z_in = z_in;
  b.model = model;
  b.quad = {rel_tol, abs_tol, max_depth, min_nodes_per_oscillation};
  return b;
}

AtomSpec RunConfig::atom() const {
  AtomSpec a;
  a.gamma = natural_rate(gamma, lambda_nm);
  a.detuning = natural_rate(detuning, lambda_nm);
  return a;
}

ScanConfig RunConfig::scan() const {
  ScanConfig s;
  s.radius = radius;
  s.phi_min = phi_min;
  s.phi_max = phi_max;
  s.count = phi_steps;
  s.omega_over_gamma = omega_over_gamma;
  s.azimuth = azimuth;
  return s;
}

MapGrid RunConfig::grid() const {
  return {map_x_min, map_x_max, map_x_count, map_z_min, map_z_max, map_z_count};
}

void validate(const RunConfig& c) {
  require(c.lambda_nm > 0.0, "lambda_nm", "must be positive");
  require(c.gamma > 0.0, "gamma", "must be positive");
  require(c.f > 0.0, "f", "must be positive");
  require(c.z_in > 0.0, "z_in", "must be positive");
  require(c.radius >= 10.0, "radius", "must be at least 10 wavelengths");
  require(c.phi_min >= 0.0, "phi_min", "must be >= 0");
  require(c.phi_max > c.phi_min && c.phi_max <= kPi, "phi_max", "must lie in (phi_min, pi]");
  require(c.phi_steps >= 2, "phi_steps", "must be >= 2");
  require(c.map_x_max > c.map_x_min, "map_x_max", "must exceed map_x_min");
  require(c.map_x_count >= 2, "map_x_count", "must be >= 2");
  require(c.map_z_max > c.map_z_min, "map_z_max", "must exceed map_z_min");
  require(c.map_z_count >= 2, "map_z_count", "must be >= 2");
  require(c.omega_over_gamma > 0.0, "omega_over_gamma", "must be positive");
  require(c.rel_tol > 0.0, "rel_tol", "must be positive");
  require(c.abs_tol >= 0.0, "abs_tol", "must be >= 0");
  require(c.max_depth >= 1, "max_depth", "must be >= 1");
  require(c.min_nodes_per_oscillation >= 4, "min_nodes_per_oscillation", "must be >= 4");
  require(c.zin_min > 0.0, "zin_min", "must be positive");
  require(c.zin_max > c.zin_min, "zin_max", "must exceed zin_min");
}

RunConfig parse_config(const std::string& text, const std::map<std::string, std::string>& overrides) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number), "expected key = value, got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(number), "missing key");
    apply(c, key, trim(line.substr(eq + 1)));
  }
  for (const auto& [key, value] : overrides) apply(c, key, value);
  validate(c);
  return c;
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["lambda_nm"] = c.lambda_nm;
  j["gamma"] = c.gamma;
  j["detuning"] = c.detuning;
  j["f"] = c.f;
  j["z_in"] = c.z_in;
  j["model"] = to_string(c.model);
  j["radius"] = c.radius;
  j["phi_min"] = c.phi_min;
  j["phi_max"] = c.phi_max;
  j["phi_steps"] = c.phi_steps;
  j["azimuth"] = c.azimuth;
  j["map_x_min"] = c.map_x_min;
  j["map_x_max"] = c.map_x_max;
  j["map_x_count"] = c.map_x_count;
  j["map_z_min"] = c.map_z_min;
  j["map_z_max"] = c.map_z_max;
  j["map_z_count"] = c.map_z_count;
  j["omega_over_gamma"] = c.omega_over_gamma;
  j["rel_tol"] = c.rel_tol;
  j["abs_tol"] = c.abs_tol;
  j["max_depth"] = c.max_depth;
  j["min_nodes_per_oscillation"] = c.min_nodes_per_oscillation;
  j["optimize"] = c.optimize;
  j["zin_min"] = c.zin_min;
  j["zin_max"] = c.zin_max;
  j["out"] = c.out;
  return j;
}

std::string format_double(double x) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf.data(), ptr);
}

}  // namespace qaperture
