#include "qaperture/commands.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qaperture/checks.hpp"
#include "qaperture/coupling.hpp"
#include "qaperture/errors.hpp"
#include "qaperture/observables.hpp"

namespace qaperture {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

ordered_json metadata(const std::string& command, const RunConfig& config) {
  ordered_json j;
  j["program"] = "qaperture";
  j["version"] = kVersion;
  j["command"] = command;
  j["config"] = to_json(config);
  return j;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << text;
  if (!os) throw std::runtime_error("failed writing " + path.string());
}

void write_json(const fs::path& path, const ordered_json& j) { write_text(path, j.dump(2) + "\n"); }

// One '#' metadata line, the header, then rows.
class CsvWriter {
 public:
  CsvWriter(const ordered_json& meta, const std::string& header) {
    text_ << "# " << meta.dump() << '\n' << header << '\n';
  }
  template <class... T>
  void row(T... values) {
    bool first = true;
    ((text_ << (first ? "" : ",") << format_double(values), first = false), ...);
    text_ << '\n';
  }
  std::string str() const { return text_.str(); }

 private:
  std::ostringstream text_;
};

ordered_json spot_json(const SpotMetrics& s) {
  ordered_json j;
  j["z_focus"] = s.z_focus;
  j["peak_intensity"] = s.peak_intensity;
  j["area_halfmax"] = s.area_halfmax;
  return j;
}

int focal_map_command(const RunConfig& config, const fs::path& dir, std::ostream& log) {
  const BeamSpec spec = config.beam();
  if (spec.model == BeamModel::exact && spec.z_0() + config.map_z_min < 0.0) {
    throw ConfigError("map_z_min", "map reaches behind the lens at z_0 = " + format_double(spec.z_0()));
  }
  const FocalMap map = focal_map(spec, config.grid());
  const ordered_json meta = metadata("focal-map", config);
  CsvWriter csv(meta, "X,Z,I_plus,I_minus,I_z");
  for (const MapCell& c : map.cells) csv.row(c.x, c.z, c.plus, c.minus, c.axial);
  write_text(dir / "focal_map.csv", csv.str());

  ordered_json side = meta;
  side["z_R"] = spec.z_R();
  side["z_0"] = spec.z_0();
  side["w_R"] = spec.w_R();
  side["peak_X"] = map.peak_x;
  side["peak_Z"] = map.peak_z;
  side["columns"] = {"X", "Z", "I_plus", "I_minus", "I_z"};
  write_json(dir / "focal_map.json", side);
  log << "focal map peak at X=" << map.peak_x << " Z=" << map.peak_z << "\n";
  return kExitOk;
}

int angular_scan_command(const RunConfig& config, const fs::path& dir, std::ostream& log) {
  const BeamSpec spec = config.beam();
  const Scene scene = Scene::at_focus(spec, config.atom(), config.omega_over_gamma);
  const AngularScan scan = angular_scan(scene, config.scan());
  const ordered_json meta = metadata("angular-scan", config);
  CsvWriter csv(meta, "phi_rad,I_L,I_d,I_int,I_total,g2");
  for (const ScanRow& r : scan.rows) csv.row(r.phi, r.laser, r.dipole, r.interference, r.total, r.g2);
  write_text(dir / "angular_scan.csv", csv.str());

  const ScanSummary& s = scan.summary;
  ordered_json side = meta;
  side["z_R"] = spec.z_R();
  side["z_0"] = spec.z_0();
  side["z_atom"] = scene.atom().position.z;
  side["alpha"] = scene.alpha().real();
  side["crossover_phi_rad"] = s.crossover_phi ? ordered_json(*s.crossover_phi) : ordered_json(nullptr);
  side["max_g2"] = s.max_g2;
  side["max_g2_phi_rad"] = s.max_g2_phi;
  side["max_g2_I_int"] = s.max_g2_interference;
  side["forward_ratio_IL_over_Id"] = s.forward_ratio;
  side["I_d_forward"] = s.dipole_forward;
  side["columns"] = {"phi_rad", "I_L", "I_d", "I_int", "I_total", "g2"};
  write_json(dir / "angular_scan.json", side);
  log << "crossover "
      << (s.crossover_phi ? format_double(*s.crossover_phi * 180.0 / kPi) + " deg" : std::string("none"))
      << ", max g2 " << s.max_g2 << " at " << s.max_g2_phi * 180.0 / kPi << " deg, forward I_L/I_d "
      << s.forward_ratio << "\n";
  return kExitOk;
}

int coupling_command(const RunConfig& config, const fs::path& dir, std::ostream& log) {
  BeamSpec spec = config.beam();
  ordered_json j = metadata("coupling", config);
  if (config.optimize) {
    const ZinOptimum opt = optimize_zin(spec, {config.zin_min, config.zin_max});
    spec.z_in = opt.z_in;
    ordered_json o;
    o["z_in"] = opt.z_in;
    o["R_s"] = opt.R_s;
    o["at_boundary"] = opt.at_boundary;
    o["bounds"] = {config.zin_min, config.zin_max};
    j["optimum"] = o;
  }
  const CouplingReport r = coupling_report(spec, config.atom(), config.radius, config.omega_over_gamma);
  ordered_json rep;
  rep["f"] = r.f;
  rep["z_in"] = r.z_in;
  rep["z_R"] = r.z_R;
  rep["z_0"] = r.z_0;
  rep["z_focus"] = r.z_focus;
  rep["R_s"] = r.R_s;
  rep["R_s_component_plus"] = scattering_ratio_at(spec, r.z_focus, DipolePolicy::component_plus);
  rep["R_s_paraxial_formula"] = 3.0 / (kPi * r.z_R);
  rep["forward_ratio_IL_over_Id"] = r.forward_ratio;
  rep["g2_forward"] = r.g2_forward;
  rep["spot"] = spot_json(r.spot);
  j["report"] = rep;
  j["R_s"] = r.R_s;
  write_json(dir / "coupling.json", j);
  log << "R_s = " << r.R_s << " at f=" << r.f << " z_in=" << r.z_in << "\n";
  return kExitOk;
}

int check_command(const RunConfig& config, const fs::path& dir, std::ostream& log) {
  const std::vector<CheckResult> results = run_checks(config.beam(), config.atom());
  ordered_json j = metadata("check", config);
  ordered_json list = ordered_json::array();
  bool all = true;
  for (const CheckResult& c : results) {
    ordered_json e;
    e["name"] = c.name;
    e["value"] = c.value;
    e["tolerance"] = c.tolerance;
    e["pass"] = c.pass;
    list.push_back(e);
    all = all && c.pass;
    log << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.value << " (tol " << c.tolerance << ")\n";
  }
  j["checks"] = list;
  j["all_pass"] = all;
  write_json(dir / "check.json", j);
  return all ? kExitOk : kExitNumerical;
}

}  // namespace

int run_command(const std::string& command, const RunConfig& config, std::ostream& log) {
  validate(config);
  const fs::path dir(config.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("out", "cannot create directory: " + ec.message());
  if (command == "focal-map") return focal_map_command(config, dir, log);
  if (command == "angular-scan") return angular_scan_command(config, dir, log);
  if (command == "coupling") return coupling_command(config, dir, log);
  if (command == "check") return check_command(config, dir, log);
  throw ConfigError("command", "unknown command '" + command + "'");
}

}  // namespace qaperture
