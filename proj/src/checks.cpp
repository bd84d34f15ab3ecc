#include "qaperture/checks.hpp"

#include <cmath>
#include <cstdint>
#include <random>

#include "qaperture/modes.hpp"
#include "qaperture/observables.hpp"

namespace qaperture {
namespace {

// Uniform draw in [lo, hi) from raw engine output, identical on every platform.
double draw(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

CheckResult make(std::string name, double value, double tolerance) {
  return {std::move(name), value, tolerance, value <= tolerance};
}

double relative_distance(const ComplexVec3& a, const ComplexVec3& b) {
  return (a - b).norm() / std::max(a.norm(), 1e-300);
}

}  // namespace

std::vector<CheckResult> run_checks(const BeamSpec& spec, const AtomSpec& atom) {
  spec.validate();
  std::vector<CheckResult> out;
  std::mt19937_64 gen(20240611);

  double worst = 0.0;
  for (int n = 0; n < 20; ++n) {
    const ModeIndex mu{draw(gen, 0.05, 1.0), 1, n % 2 == 0 ? 1 : -1};
    const Cylindrical r{draw(gen, 0.0, 5.0), draw(gen, -kPi, kPi), draw(gen, -5.0, 5.0)};
    worst = std::max(worst, relative_distance(mode_field(mu, r), mode_field_oracle(mu, r, 256)));
  }
  out.push_back(make("mode closed form vs angular spectrum", worst, 1e-9));

  worst = 0.0;
  for (int n = 0; n < 6; ++n) {
    const ModeIndex mu{draw(gen, 0.1, 0.95), 1, n % 2 == 0 ? 1 : -1};
    const Vec3 r{draw(gen, -2.0, 2.0), draw(gen, -2.0, 2.0), draw(gen, -2.0, 2.0)};
    worst = std::max(worst, relative_divergence(
                                [&](const Vec3& p) { return mode_field_oracle(mu, Cylindrical::from_cartesian(p)); },
                                r, 1e-4));
  }
  out.push_back(make("mode divergence", worst, 1e-6));

  if (spec.model == BeamModel::exact) {
    worst = 0.0;
    for (int n = 1; n <= 19; n += 2) {
      const double kt = 0.05 * n;
      for (int s : {1, -1}) {
        const cplx a = kappa(spec, kt, 1, s);
        worst = std::max(worst, std::abs(a - kappa_numeric(spec, kt, s)) / std::abs(a));
      }
    }
    out.push_back(make("kappa closed form vs projection", worst, 1e-8));
  }

  const AxialPeak peak = locate_axial_peak(spec, default_focus_bracket(spec));
  const double spectral = spectral_power(spec);
  const double at_focus = plane_power(spec, peak.z);
  const double behind = plane_power(spec, std::max(peak.z - 4.0 * spec.z_R(), 0.5 * peak.z));
  out.push_back(make("plane power vs spectrum", std::abs(at_focus - spectral) / spectral, 1e-6));
  out.push_back(make("plane power z invariance", std::abs(at_focus - behind) / spectral, 1e-6));

  BeamSpec fine = spec;
  fine.quad.rel_tol = 1e-12;
  fine.quad.abs_tol = 0.0;
  const Vec3 near_focus{0.3, 0.2, peak.z};
  out.push_back(make("beam divergence",
                     relative_divergence(
                         [&](const Vec3& p) { return focused_field(fine, Cylindrical::from_cartesian(p)); },
                         near_focus, 1e-4),
                     spec.model == BeamModel::exact ? 1e-6 : 1.0));

  worst = 0.0;
  for (int n = 0; n < 3; ++n) {
    const RabiVector omega{cplx{draw(gen, -1.0, 1.0), draw(gen, -1.0, 1.0)},
                           cplx{draw(gen, -1.0, 1.0), draw(gen, -1.0, 1.0)},
                           cplx{draw(gen, -1.0, 1.0), draw(gen, -1.0, 1.0)}};
    const double delta = draw(gen, -1.0, 1.0);
    const AtomState a = steady_state(omega, delta, 1.0);
    const AtomState b = steady_state_oracle(omega, delta, 1.0, 40.0);
    for (int i = 0; i < 3; ++i) {
      worst = std::max(worst, std::abs(a.sigma_eg[i] - b.sigma_eg[i]));
      for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(a.sigma_ee(i, j) - b.sigma_ee(i, j)));
    }
  }
  out.push_back(make("steady state vs master equation", worst, 1e-6));

  AtomSpec placed = atom;
  placed.position = {0.0, 0.0, peak.z};
  const FocusedBeam beam(spec);
  const double alpha = 0.01 * placed.gamma / (2.0 * placed.dipole() * beam.field(placed.position).norm());
  const Scene scene(spec, placed, alpha);
  const Vec3 detector{20.0, 0.0, 30.0};
  out.push_back(make("g2 of the laser alone", std::abs(g2_zero_delay(scene.with_state({}), detector) - 1.0), 0.0));
  const Scene dark(spec, placed, 0.0);
  const Scene fluorescence = dark.with_state(scene.state());
  out.push_back(make("g2 of the fluorescence alone", std::abs(g2_zero_delay(fluorescence, detector)), 0.0));

  const Intensities in = intensities(scene, detector);
  out.push_back(make("intensity decomposition",
                     std::abs(in.total - (in.laser + in.dipole + in.interference)) / in.total, 1e-12));
  return out;
}

}  // namespace qaperture
