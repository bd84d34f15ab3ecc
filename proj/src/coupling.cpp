#include "qaperture/coupling.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qaperture/errors.hpp"

namespace qaperture {
namespace {

constexpr double kInfeasible = -1.0;

// R_s, or kInfeasible when the beam has no interior on-axis maximum.
double scattering_ratio_or_infeasible(const BeamSpec& spec, DipolePolicy policy) {
  try {
    return scattering_ratio(spec, policy);
  } catch (const BracketError&) {
    return kInfeasible;
  }
}

}  // namespace

std::string to_string(DipolePolicy policy) {
  return policy == DipolePolicy::aligned ? "aligned" : "component_plus";
}

double scattering_ratio_at(const BeamSpec& spec, double z_atom, DipolePolicy policy) {
  const FocusedBeam beam(spec);
  const ComplexVec3 e = beam.field(Cylindrical{0.0, 0.0, z_atom});
  const double coupled = policy == DipolePolicy::aligned ? e.norm2() : std::norm(e.plus);
  // The beam carries unit power through every transverse plane.
  return 3.0 / (2.0 * kPi) * coupled;
}

double scattering_ratio(const BeamSpec& spec, DipolePolicy policy) {
  const AxialPeak peak = locate_axial_peak(spec, default_focus_bracket(spec));
  return scattering_ratio_at(spec, peak.z, policy);
}

double forward_ratio(const Scene& scene, double radius) {
  const Intensities in = intensities(scene, {0.0, 0.0, radius});
  if (in.dipole == 0.0) throw NumericalError("forward_ratio: scattered intensity vanishes");
  return in.laser / in.dipole;
}

double forward_ratio(const BeamSpec& spec, const AtomSpec& atom, double radius, double omega_over_gamma) {
  return forward_ratio(Scene::at_focus(spec, atom, omega_over_gamma), radius);
}

CouplingReport coupling_report(const BeamSpec& spec, const AtomSpec& atom, double radius, double omega_over_gamma,
                               DipolePolicy policy) {
  CouplingReport r;
  r.f = spec.f;
  r.z_in = spec.z_in;
  r.z_R = spec.z_R();
  r.z_0 = spec.z_0();
  r.spot = find_focus(spec);
  r.z_focus = r.spot.z_focus;
  r.R_s = scattering_ratio_at(spec, r.z_focus, policy);
  const Scene scene = Scene::at_focus(spec, atom, omega_over_gamma);
  r.forward_ratio = forward_ratio(scene, radius);
  r.g2_forward = g2_zero_delay(scene, {0.0, 0.0, radius});
  return r;
}

GoldenResult golden_maximize(const std::function<double(double)>& g, double lo, double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("golden_maximize: requires lo < hi");
  if (!(tol > 0.0)) throw std::invalid_argument("golden_maximize: tol must be positive");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = g(x1);
  double f2 = g(x2);
  int evaluations = 2;
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = g(x1);
    }
    ++evaluations;
  }
  GoldenResult out;
  out.x = 0.5 * (a + b);
  out.value = g(out.x);
  out.evaluations = evaluations + 1;
  out.at_boundary = out.x - lo <= tol || hi - out.x <= tol;
  return out;
}

ZinOptimum optimize_zin(const BeamSpec& base, std::pair<double, double> bounds, double rel_tol,
                        DipolePolicy policy) {
  if (!(bounds.first > 0.0 && bounds.first < bounds.second)) {
    throw std::invalid_argument("optimize_zin: bounds must satisfy 0 < lo < hi");
  }
  auto objective = [&](double log_zin) {
    BeamSpec spec = base;
    spec.z_in = std::exp(log_zin);
    return scattering_ratio_or_infeasible(spec, policy);
  };
  const GoldenResult g = golden_maximize(objective, std::log(bounds.first), std::log(bounds.second), rel_tol);
  if (g.value == kInfeasible) throw BracketError("optimize_zin: no interior focus anywhere in the search");
  return {std::exp(g.x), g.value, g.at_boundary};
}

JointOptimum joint_optimize(const BeamSpec& base, const JointBounds& bounds, double rel_tol, DipolePolicy policy) {
  const double lf0 = std::log(bounds.f.first);
  const double lf1 = std::log(bounds.f.second);
  const double lz0 = std::log(bounds.z_in.first);
  const double lz1 = std::log(bounds.z_in.second);
  if (!(lf0 < lf1) || !(lz0 < lz1)) throw std::invalid_argument("joint_optimize: empty bounds");

  JointOptimum best;
  best.R_s = kInfeasible;
  auto evaluate = [&](double log_f, double log_zin) {
    BeamSpec spec = base;
    spec.f = std::exp(log_f);
    spec.z_in = std::exp(log_zin);
    return scattering_ratio_or_infeasible(spec, policy);
  };

  constexpr int kSeed = 8;
  double lf = lf0;
  double lz = lz0;
  for (int i = 0; i < kSeed; ++i) {
    for (int j = 0; j < kSeed; ++j) {
      const double a = lf0 + (lf1 - lf0) * i / (kSeed - 1);
      const double b = lz0 + (lz1 - lz0) * j / (kSeed - 1);
      const double v = evaluate(a, b);
      if (v == kInfeasible) ++best.infeasible;
      if (v > best.R_s) {
        best.R_s = v;
        lf = a;
        lz = b;
      }
    }
  }
  if (best.R_s == kInfeasible) throw BracketError("joint_optimize: no interior focus on the seed grid");

  for (int sweep = 0; sweep < 8; ++sweep) {
    const double before = best.R_s;
    const GoldenResult gf = golden_maximize([&](double x) { return evaluate(x, lz); }, lf0, lf1, rel_tol);
    if (gf.value > best.R_s) {
      best.R_s = gf.value;
      lf = gf.x;
    }
    const GoldenResult gz = golden_maximize([&](double x) { return evaluate(lf, x); }, lz0, lz1, rel_tol);
    if (gz.value > best.R_s) {
      best.R_s = gz.value;
      lz = gz.x;
    }
    if (best.R_s - before <= rel_tol * best.R_s) break;
  }
  best.f = std::exp(lf);
  best.z_in = std::exp(lz);
  best.at_boundary = lf - lf0 <= rel_tol || lf1 - lf <= rel_tol || lz - lz0 <= rel_tol || lz1 - lz <= rel_tol;
  return best;
}

}  // namespace qaperture
