#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "qaperture/commands.hpp"
#include "qaperture/config.hpp"
#include "qaperture/errors.hpp"
#include "qaperture/parallel.hpp"

using namespace qaperture;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qaperture_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string key_of(const std::string& text, const std::map<std::string, std::string>& overrides = {}) {
  try {
    parse_config(text, overrides);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

}  // namespace

TEST_CASE("defaults") {
  const RunConfig c = parse_config("");
  CHECK(c.f == 500.0);
  CHECK(c.z_in == 60000.0);
  CHECK(c.model == BeamModel::exact);
  CHECK(c.radius == 50.0);
  CHECK(c.phi_steps == 200);
  CHECK(c.lambda_nm == 852.0);
}

TEST_CASE("parsing and precedence") {
  const RunConfig c = parse_config("# comment\n f = 20 \nz_in=30\nmodel = exact\n\n", {{"model", "paraxial"}});
  CHECK(c.f == 20.0);
  CHECK(c.z_in == 30.0);
  CHECK(c.model == BeamModel::paraxial);
  CHECK(parse_config("optimize = true").optimize);
  CHECK(parse_config("", {{"f", "7"}}).f == 7.0);
}

TEST_CASE("errors name the key") {
  CHECK(key_of("f=-1") == "f");
  CHECK(key_of("", {{"f", "-1"}}) == "f");
  CHECK(key_of("z_in = 0") == "z_in");
  CHECK(key_of("colour = blue") == "colour");
  CHECK(key_of("radius = fifty") == "radius");
  CHECK(key_of("radius = 5") == "radius");
  CHECK(key_of("phi_steps = 2.5") == "phi_steps");
  CHECK(key_of("model = vector") == "model");
  CHECK(key_of("f = nan") == "f");
  CHECK(key_of("optimize = maybe") == "optimize");
  CHECK(key_of("f 500") == "line 1");
  CHECK(key_of("") == "");
}

TEST_CASE("shortest round-trip formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(500.0) == "500");
  CHECK(format_double(1e-300) == "1e-300");
  for (double x : {kPi, 1.0 / 3.0, 4.166377e-7}) CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("angular-scan output contract and determinism") {
  RunConfig c = parse_config("phi_steps = 40");
  std::vector<std::string> csv;
  std::vector<std::string> side;
  const int saved = worker_threads();
  c.out = scratch_dir("scan").string();
  for (int threads : {1, 4, 1}) {
    set_worker_threads(threads);
    std::ostringstream log;
    REQUIRE(run_command("angular-scan", c, log) == kExitOk);
    csv.push_back(slurp(fs::path(c.out) / "angular_scan.csv"));
    side.push_back(slurp(fs::path(c.out) / "angular_scan.json"));
  }
  set_worker_threads(saved);
  CHECK(csv[0] == csv[1]);
  CHECK(csv[0] == csv[2]);
  CHECK(side[0] != "");

  const std::vector<std::string> rows = lines(csv[0]);
  REQUIRE(rows.size() == 42);
  CHECK(rows[0].rfind("# {", 0) == 0);
  CHECK(rows[1] == "phi_rad,I_L,I_d,I_int,I_total,g2");
  CHECK(csv[0].find('\r') == std::string::npos);
  double last = -1.0;
  for (std::size_t i = 2; i < rows.size(); ++i) {
    const double phi = std::stod(rows[i].substr(0, rows[i].find(',')));
    CHECK(phi > last);
    last = phi;
  }

  const auto meta = nlohmann::json::parse(rows[0].substr(2));
  CHECK(meta["command"] == "angular-scan");
  CHECK(meta["config"]["phi_steps"] == 40);
  const auto json = nlohmann::json::parse(side[0]);
  CHECK(json["config"] == meta["config"]);
  CHECK(json.contains("max_g2"));
  CHECK(json.contains("crossover_phi_rad"));
}

TEST_CASE("coupling with optimization") {
  RunConfig c = parse_config("optimize = true");
  c.out = scratch_dir("coupling").string();
  std::ostringstream log;
  REQUIRE(run_command("coupling", c, log) == kExitOk);
  const auto j = nlohmann::json::parse(slurp(fs::path(c.out) / "coupling.json"));
  CHECK(j["R_s"].get<double>() >= 0.08);
  CHECK(j["R_s"].get<double>() <= 0.12);
  CHECK(j["optimum"]["at_boundary"] == false);
}

TEST_CASE("focal-map output") {
  RunConfig c = parse_config("map_x_count = 5\nmap_z_count = 4");
  c.out = scratch_dir("map").string();
  std::ostringstream log;
  REQUIRE(run_command("focal-map", c, log) == kExitOk);
  const std::vector<std::string> rows = lines(slurp(fs::path(c.out) / "focal_map.csv"));
  REQUIRE(rows.size() == 2 + 20);
  CHECK(rows[1] == "X,Z,I_plus,I_minus,I_z");
  CHECK(fs::exists(fs::path(c.out) / "focal_map.json"));
}

TEST_CASE("focal map behind the lens is a config error") {
  RunConfig c = parse_config("f = 7");
  c.out = scratch_dir("behind").string();
  std::ostringstream log;
  try {
    run_command("focal-map", c, log);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "map_z_min");
  }
}

TEST_CASE("unknown command") {
  std::ostringstream log;
  CHECK_THROWS(run_command("plot", parse_config(""), log));
}
