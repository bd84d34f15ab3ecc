// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
//
//   acceptance [--expect-fail 2,3,...] [--report PATH]
//
// Exit status is 0 when every criterion's outcome matches the expectation
// (pass unless listed), 1 otherwise. Listed criteria still print FAIL.
#include <chrono>
#include <fstream>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qaperture/checks.hpp"
#include "qaperture/coupling.hpp"
#include "qaperture/observables.hpp"

using namespace qaperture;

namespace {

struct Item {
  std::string label;
  std::string detail;
  bool pass;
};

struct Criterion {
  int id;
  std::string title;
  double limit_s;
  std::function<std::vector<Item>()> run;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

double deg(double d) { return d * kPi / 180.0; }

BeamSpec make_spec(double f, double z_in, BeamModel model = BeamModel::exact) {
  BeamSpec s;
  s.f = f;
  s.z_in = z_in;
  s.model = model;
  return s;
}

Item within(const std::string& label, double value, double lo, double hi) {
  return {label, fmt("%.6g in [%.6g, %.6g]", value, lo, hi), value >= lo && value <= hi};
}

Item below(const std::string& label, double value, double limit) {
  return {label, fmt("%.3g <= %.3g", value, limit), value <= limit};
}

// Fig. 2/3 scene: atom at the on-axis maximum, weak resonant drive.
struct ScanResult {
  Scene scene;
  AngularScan scan;
};

ScanResult weak_scan(const BeamSpec& spec, double omega_over_gamma = 0.01) {
  Scene scene = Scene::at_focus(spec, AtomSpec{}, omega_over_gamma);
  ScanConfig cfg;
  cfg.omega_over_gamma = omega_over_gamma;
  AngularScan scan = angular_scan(scene, cfg);
  return {std::move(scene), std::move(scan)};
}

std::vector<Item> criterion_parameters() {
  const DerivedParams p = derived_params(make_spec(500.0, 6.0e4));
  return {within("z_R", p.z_R, 4.12, 4.22), within("z_0", p.z_0, 499.5, 500.5)};
}

std::vector<Item> criterion_focal_shift() {
  const BeamSpec spec = make_spec(500.0, 6.0e4);
  const SpotMetrics spot = find_focus(spec);
  const double threshold = kPi * spec.w_R() * spec.w_R() * std::log(2.0);
  Item area{"half-max area",
            fmt("%.4g > %.4g (Gaussian half-max area pi w_R^2 ln2 / 2 = %.4g)", spot.area_halfmax, threshold,
                threshold / 2.0),
            spot.area_halfmax > threshold};
  return {within("z_0 - z_focus", spec.z_0() - spot.z_focus, 2.0, 10.0), area};
}

std::vector<Item> criterion_angular_scan() {
  const ScanResult r = weak_scan(make_spec(500.0, 6.0e4));
  ScanConfig cfg;
  const double g2_side = g2_zero_delay(r.scene, detector_offset(cfg, deg(89.0)));
  const auto& s = r.scan.summary;
  std::vector<Item> items;
  items.push_back(within("g2(0)", r.scan.rows.front().g2, 0.9, 1.1));
  items.push_back(below("g2(89 deg)", g2_side, 0.05));
  if (s.crossover_phi) {
    items.push_back(within("crossover phi_0 [deg]", *s.crossover_phi * 180.0 / kPi, 35.0, 45.0));
  } else {
    items.push_back({"crossover phi_0", "no crossing in the scan", false});
  }
  items.push_back(within("forward I_d/I_L", 1.0 / s.forward_ratio, 3e-4, 3e-3));
  return items;
}

std::vector<Item> criterion_paraxial() {
  const ScanResult par = weak_scan(make_spec(500.0, 6.0e4, BeamModel::paraxial));
  const ScanResult ex = weak_scan(make_spec(500.0, 6.0e4));
  const auto& s = par.scan.summary;
  std::vector<Item> items;
  if (s.crossover_phi) {
    items.push_back(within("paraxial crossover phi_0 [deg]", *s.crossover_phi * 180.0 / kPi, 21.0, 31.0));
  } else {
    items.push_back({"paraxial crossover phi_0", "no crossing in the scan", false});
  }
  items.push_back(within("paraxial max g2", s.max_g2, 50.0, 200.0));

  // Both beams carry unit power; compare |F|^2 on the detector sphere about each atom.
  ScanConfig cfg;
  auto laser = [&](const ScanResult& r, double phi) {
    return r.scene.beam().field(r.scene.atom().position + detector_offset(cfg, phi)).norm2();
  };
  const double p0 = laser(par, 0.0);
  const double e0 = laser(ex, 0.0);
  const double p60 = laser(par, deg(60.0));
  const double e60 = laser(ex, deg(60.0));
  items.push_back({"I_L(0) paraxial > exact", fmt("%.4g vs %.4g", p0, e0), p0 > e0});
  items.push_back({"I_L(60 deg) paraxial < exact", fmt("%.4g vs %.4g", p60, e60), p60 < e60});
  return items;
}

std::vector<Item> criterion_coupling_optimum() {
  const ZinOptimum opt = optimize_zin(make_spec(500.0, 1.0), {1e3, 1e6});
  const JointOptimum joint = joint_optimize(BeamSpec{});
  Item z{"f=500 optimum", fmt("R_s %.5g at z_in %.6g, boundary %g", opt.R_s, opt.z_in, opt.at_boundary ? 1 : 0),
         opt.R_s >= 0.08 && opt.R_s <= 0.12 && !opt.at_boundary};
  Item j{"joint max R_s <= 0.52",
         fmt("R_s %.5g at f %.4g, z_in %.4g", joint.R_s, joint.f, joint.z_in) +
             (joint.at_boundary ? " (boundary)" : "") + ", " + std::to_string(joint.infeasible) +
             " seed points without a focus",
         joint.R_s <= 0.52};
  return {z, j};
}

std::vector<Item> criterion_extreme() {
  const BeamSpec spec = make_spec(2.0, 4.0);
  const Scene scene = Scene::at_focus(spec, AtomSpec{}, 0.01);
  return {within("R_s", scattering_ratio(spec), 0.40, 0.52), within("forward I_L/I_d", forward_ratio(scene), 17.0, 25.0),
          within("g2(0)", g2_zero_delay(scene, {0.0, 0.0, 50.0}), 0.92, 0.98)};
}

std::vector<Item> criterion_properties() {
  const BeamSpec fig = make_spec(500.0, 6.0e4);
  std::vector<Item> items;
  for (const CheckResult& c : run_checks(fig, AtomSpec{})) {
    items.push_back({c.name, fmt("%.3g <= %.3g", c.value, c.tolerance), c.pass});
  }

  // kappa on the tight beam as well, over the full kt range.
  double worst = 0.0;
  const BeamSpec tight = make_spec(2.0, 4.0);
  for (int j = 1; j <= 19; ++j) {
    for (int s : {1, -1}) {
      const double kt = 0.05 * j;
      const cplx a = kappa(tight, kt, 1, s);
      worst = std::max(worst, std::abs(kappa_numeric(tight, kt, s) - a) / std::abs(a));
    }
  }
  items.push_back(below("kappa closed form vs projection (f=2, z_in=4)", worst, 1e-8));

  const double spectral = spectral_power(fig);
  items.push_back(below("plane power at z=10 vs spectrum", std::abs(plane_power(fig, 10.0) - spectral) / spectral, 1e-6));

  // Weak-field factorization of sigma_ee and its quadratic approach.
  auto defect = [](double ratio) {
    const RabiVector omega{cplx{0.6, 0.2} * ratio, cplx{-0.3, 0.5} * ratio, cplx{0.0, 0.4} * ratio};
    double norm = 0.0;
    for (const cplx& w : omega) norm += std::norm(w);
    RabiVector scaled;
    for (int i = 0; i < 3; ++i) scaled[i] = omega[i] * (ratio / std::sqrt(norm));
    const AtomState st = steady_state(scaled, 0.0, 1.0);
    double d = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        d = std::max(d, std::abs(st.sigma_ee(i, j) - std::conj(st.sigma_eg[i]) * st.sigma_eg[j]));
      }
    }
    return d / st.sigma_ee.cwiseAbs().maxCoeff();
  };
  items.push_back(below("sigma_ee factorization at Omega/Gamma=0.05", defect(0.05), 0.01));
  const double slope = std::log2(defect(0.05) / defect(0.025));
  items.push_back({"factorization defect order", fmt("slope %.4f, expected 2", slope), std::abs(slope - 2.0) < 0.05});

  // Exact coherent and fluorescence limits across the scan.
  const Scene scene = Scene::at_focus(fig, AtomSpec{}, 0.01);
  const Scene laser_only = scene.with_state(AtomState{});
  const Scene fluorescence = Scene(fig, scene.atom(), 0.0).with_state(scene.state());
  ScanConfig cfg;
  double d1 = 0.0;
  double d0 = 0.0;
  for (int j = 0; j <= 90; ++j) {
    const Vec3 r = detector_offset(cfg, deg(j));
    d1 = std::max(d1, std::abs(g2_zero_delay(laser_only, r) - 1.0));
    d0 = std::max(d0, std::abs(g2_zero_delay(fluorescence, r)));
  }
  items.push_back({"g2 = 1 for the laser alone, every degree", fmt("max deviation %.3g", d1), d1 == 0.0});
  items.push_back({"g2 = 0 for fluorescence alone, every degree", fmt("max deviation %.3g", d0), d0 == 0.0});

  // R_s under alpha -> 5 alpha.
  const double z = locate_axial_peak(fig, default_focus_bracket(fig)).z;
  const ComplexVec3 raw = focused_field(fig, {0.0, 0.0, z});
  auto rs = [&](cplx alpha) { return 3.0 / (2.0 * kPi) * (raw * alpha).norm2() / (std::norm(alpha) * spectral); };
  const cplx alpha{0.3, -0.7};
  const double drs = std::abs(rs(5.0 * alpha) - rs(alpha)) / rs(alpha);
  items.push_back(below("R_s under alpha -> 5 alpha", drs, 1e-12));

  // Normalized scan rows at Omega/Gamma 0.01 and 0.02, every field of the row.
  const AngularScan a = weak_scan(fig, 0.01).scan;
  const AngularScan b = weak_scan(fig, 0.02).scan;
  double worst_intensity = 0.0;
  double worst_g2 = 0.0;
  double worst_g2_phi = 0.0;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const ScanRow& x = a.rows[i];
    const ScanRow& y = b.rows[i];
    const double scale = x.laser + x.dipole;
    worst_intensity = std::max({worst_intensity, std::abs(x.laser - y.laser) / x.laser,
                                std::abs(x.dipole - y.dipole) / x.dipole,
                                std::abs(x.interference - y.interference) / scale,
                                std::abs(x.total - y.total) / scale});
    const double dg = std::abs(x.g2 - y.g2) / x.g2;
    if (dg > worst_g2) {
      worst_g2 = dg;
      worst_g2_phi = x.phi;
    }
  }
  items.push_back(below("scan intensities under drive doubling", worst_intensity, 0.01));
  items.push_back({"scan g2 under drive doubling",
                   fmt("%.3g <= 0.01 (worst at %.2f deg)", worst_g2, worst_g2_phi * 180.0 / kPi), worst_g2 <= 0.01});
  return items;
}

std::set<int> parse_ids(const std::string& list) {
  std::set<int> ids;
  std::stringstream in(list);
  for (std::string tok; std::getline(in, tok, ',');) {
    if (!tok.empty()) ids.insert(std::stoi(tok));
  }
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expect_fail;
  std::ofstream report;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--expect-fail" && i + 1 < argc) {
      expect_fail = parse_ids(argv[++i]);
    } else if (arg == "--report" && i + 1 < argc) {
      report.open(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--expect-fail 2,3,...] [--report PATH]\n";
      return 2;
    }
  }
  auto emit = [&](const std::string& line) {
    std::cout << line << "\n" << std::flush;
    if (report.is_open()) report << line << "\n" << std::flush;
  };

  const std::vector<Criterion> criteria = {
      {1, "derived beam parameters", 1.0, criterion_parameters},
      {2, "focal shift and spot area", 60.0, criterion_focal_shift},
      {3, "angular scan, exact beam, weak drive", 300.0, criterion_angular_scan},
      {4, "paraxial comparison", 300.0, criterion_paraxial},
      {5, "coupling optimum", 600.0, criterion_coupling_optimum},
      {6, "extreme focusing f=2, z_in=4", 120.0, criterion_extreme},
      {7, "property suite", 600.0, criterion_properties},
  };

  int passed = 0;
  int unexpected = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<Item> items;
    std::string error;
    try {
      items = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = error.empty() && elapsed <= c.limit_s;
    for (const Item& it : items) ok = ok && it.pass;
    passed += ok ? 1 : 0;
    const bool expected_ok = expect_fail.count(c.id) == 0;
    if (ok != expected_ok) ++unexpected;

    emit(std::string(ok ? "PASS" : "FAIL") + "  [" + std::to_string(c.id) + "] " + c.title +
         fmt("  (%.2f s, limit %.0f s)", elapsed, c.limit_s) +
         (ok == expected_ok ? "" : (ok ? "  UNEXPECTED PASS" : "  UNEXPECTED FAIL")));
    for (const Item& it : items) emit("        " + std::string(it.pass ? "ok   " : "miss ") + it.label + ": " + it.detail);
    if (!error.empty()) emit("        error: " + error);
  }
  std::string tail = std::to_string(passed) + "/" + std::to_string(criteria.size()) + " criteria pass";
  if (!expect_fail.empty()) tail += "; " + std::to_string(unexpected) + " outcome(s) differ from the expected list";
  emit(tail);
  return unexpected == 0 ? 0 : 1;
}
