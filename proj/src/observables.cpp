#include "qaperture/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qaperture/errors.hpp"
#include "qaperture/parallel.hpp"

namespace qaperture {
namespace {

struct Detection {
  Intensities intensity;
  double g2;
};

// Field amplitudes at the detector: laser a = alpha F and the dipole fields.
struct LocalFields {
  ComplexVec3 laser;
  std::array<ComplexVec3, 3> dipole;
};

LocalFields local_fields(const Scene& scene, const Vec3& r_rel) {
  LocalFields out;
  out.laser = scene.beam().field(scene.atom().position + r_rel) * scene.alpha();
  for (int i = 0; i < 3; ++i) out.dipole[i] = dipole_far_field(scene.atom(), i, r_rel);
  return out;
}

Intensities intensities_from(const Scene& scene, const LocalFields& f) {
  const AtomState& st = scene.state();
  ComplexVec3 source;
  for (int i = 0; i < 3; ++i) source += f.dipole[i] * st.sigma_eg[i];
  double dipole = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) dipole += (inner(f.dipole[i], f.dipole[j]) * st.sigma_ee(i, j)).real();
  }
  Intensities out;
  out.laser = f.laser.norm2();
  out.dipole = dipole;
  out.interference = 2.0 * inner(f.laser, source).real();
  out.total = out.laser + out.dipole + out.interference;
  return out;
}

Detection detect(const Scene& scene, const Vec3& r_rel, bool with_g2) {
  const LocalFields f = local_fields(scene, r_rel);
  Detection d{intensities_from(scene, f), 0.0};
  if (!with_g2) return d;
  const Intensities& in = d.intensity;
  if (!(in.total > 0.0)) throw UndefinedCorrelation("g2_zero_delay: total intensity vanishes");
  const AtomState& st = scene.state();
  const double a2 = in.laser;
  double cross = 0.0;
  std::array<cplx, 3> proj{};
  for (int i = 0; i < 3; ++i) proj[i] = inner(f.laser, f.dipole[i]);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) cross += (std::conj(proj[i]) * proj[j] * st.sigma_ee(i, j)).real();
  }
  const double g2 = a2 * a2 + 2.0 * a2 * in.interference + 2.0 * a2 * in.dipole + 2.0 * cross;
  d.g2 = g2 / (in.total * in.total);
  return d;
}

template <class Loop>
AngularScan scan_impl(const Scene& scene, const ScanConfig& config, Loop&& loop) {
  config.validate();
  const int n = config.count;
  std::vector<Detection> raw(static_cast<std::size_t>(n));
  std::vector<double> phis(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    phis[i] = config.phi_min + (config.phi_max - config.phi_min) * i / (n - 1);
  }
  loop(static_cast<std::ptrdiff_t>(n),
       [&](std::ptrdiff_t i) { raw[i] = detect(scene, detector_offset(config, phis[i]), true); });

  const Intensities forward = detect(scene, detector_offset(config, 0.0), false).intensity;
  if (!(forward.dipole > 0.0)) throw NumericalError("angular_scan: I_d(0) vanishes, nothing to normalize to");

  AngularScan out;
  out.rows.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const Intensities& in = raw[i].intensity;
    const double s = 1.0 / forward.dipole;
    out.rows[i] = {phis[i], in.laser * s, in.dipole * s, in.interference * s, in.total * s, raw[i].g2};
  }

  ScanSummary& sum = out.summary;
  sum.dipole_forward = forward.dipole;
  sum.forward_ratio = forward.laser / forward.dipole;

  // First crossing of I_L and I_d, bisected to 1e-5 rad.
  auto excess = [&](double phi) {
    const Intensities in = detect(scene, detector_offset(config, phi), false).intensity;
    return in.laser - in.dipole;
  };
  for (std::size_t i = 1; i < raw.size(); ++i) {
    const double before = raw[i - 1].intensity.laser - raw[i - 1].intensity.dipole;
    const double after = raw[i].intensity.laser - raw[i].intensity.dipole;
    if ((before > 0.0) != (after > 0.0)) {
      double lo = phis[i - 1];
      double hi = phis[i];
      const bool lo_positive = before > 0.0;
      while (hi - lo > 1e-5) {
        const double mid = 0.5 * (lo + hi);
        ((excess(mid) > 0.0) == lo_positive ? lo : hi) = mid;
      }
      sum.crossover_phi = 0.5 * (lo + hi);
      break;
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < raw.size(); ++i) {
    if (raw[i].g2 > raw[best].g2) best = i;
  }
  sum.max_g2 = raw[best].g2;
  sum.max_g2_phi = phis[best];
  sum.max_g2_interference = out.rows[best].interference;

  // Peaks of g2 can be much narrower than the grid spacing: refine every
  // local maximum by golden section between its neighbouring angles.
  auto g2_at = [&](double phi) { return detect(scene, detector_offset(config, phi), true).g2; };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const bool left_ok = i == 0 || raw[i].g2 >= raw[i - 1].g2;
    const bool right_ok = i + 1 == raw.size() || raw[i].g2 >= raw[i + 1].g2;
    if (!left_ok || !right_ok) continue;
    double a = phis[i > 0 ? i - 1 : i];
    double b = phis[i + 1 < raw.size() ? i + 1 : i];
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = g2_at(x1);
    double f2 = g2_at(x2);
    while (b - a > 1e-7) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + inv_phi * (b - a);
        f2 = g2_at(x2);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - inv_phi * (b - a);
        f1 = g2_at(x1);
      }
    }
    const double phi = 0.5 * (a + b);
    const Detection d = detect(scene, detector_offset(config, phi), true);
    if (d.g2 > sum.max_g2) {
      sum.max_g2 = d.g2;
      sum.max_g2_phi = phi;
      sum.max_g2_interference = d.intensity.interference / forward.dipole;
    }
  }
  return out;
}

template <class Loop>
FocalMap map_impl(const BeamSpec& spec, const MapGrid& grid, Loop&& loop) {
  grid.validate();
  spec.validate();
  const std::size_t nx = static_cast<std::size_t>(grid.x_count);
  const std::size_t nz = static_cast<std::size_t>(grid.z_count);
  const double z0 = spec.z_0();
  if (spec.model == BeamModel::exact && z0 + grid.z_min < 0.0) {
    throw std::invalid_argument("focal_map: grid reaches behind the lens");
  }
  FocalMap out;
  out.cells.resize(nx * nz);
  for (std::size_t iz = 0; iz < nz; ++iz) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      MapCell& c = out.cells[iz * nx + ix];
      c.x = grid.x_min + (grid.x_max - grid.x_min) * static_cast<double>(ix) / static_cast<double>(nx - 1);
      c.z = grid.z_min + (grid.z_max - grid.z_min) * static_cast<double>(iz) / static_cast<double>(nz - 1);
    }
  }
  loop(static_cast<std::ptrdiff_t>(out.cells.size()), [&](std::ptrdiff_t i) {
    MapCell& c = out.cells[i];
    const ComplexVec3 f = focused_field(spec, Cylindrical::from_cartesian({c.x, 0.0, z0 + c.z}));
    c.plus = std::norm(f.plus);
    c.minus = std::norm(f.minus);
    c.axial = std::norm(f.z);
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < out.cells.size(); ++i) {
    if (out.cells[i].plus > out.cells[best].plus) best = i;
  }
  out.peak_raw = out.cells[best].plus;
  out.peak_x = out.cells[best].x;
  out.peak_z = out.cells[best].z;
  if (out.peak_raw > 0.0) {
    for (auto& c : out.cells) {
      c.plus /= out.peak_raw;
      c.minus /= out.peak_raw;
      c.axial /= out.peak_raw;
    }
  }
  return out;
}

}  // namespace

Scene::Scene(const BeamSpec& spec, const AtomSpec& atom, cplx alpha) : beam_(spec), atom_(atom), alpha_(alpha) {
  atom_.validate();
  rabi_ = rabi_vector(atom_, beam_.field(atom_.position), alpha_);
  state_ = steady_state(rabi_, atom_.detuning, atom_.gamma);
}

Scene Scene::at_focus(const BeamSpec& spec, AtomSpec atom, double omega_over_gamma) {
  if (!(omega_over_gamma > 0.0)) throw std::invalid_argument("Scene: omega_over_gamma must be positive");
  atom.validate();
  const SpotMetrics spot = find_focus(spec);
  atom.position = {0.0, 0.0, spot.z_focus};
  const FocusedBeam beam(spec);
  const double local = beam.field(atom.position).norm();
  const double alpha = omega_over_gamma * atom.gamma / (2.0 * atom.dipole() * local);
  return Scene(spec, atom, alpha);
}

Scene Scene::with_state(const AtomState& state) const {
  Scene copy = *this;
  copy.state_ = state;
  return copy;
}

Intensities intensities(const Scene& scene, const Vec3& r_rel) { return detect(scene, r_rel, false).intensity; }

double g2_zero_delay(const Scene& scene, const Vec3& r_rel) { return detect(scene, r_rel, true).g2; }

void ScanConfig::validate() const {
  if (!(radius >= 10.0)) throw std::invalid_argument("ScanConfig: radius must be >= 10 wavelengths");
  if (count < 2) throw std::invalid_argument("ScanConfig: count must be >= 2");
  if (!(phi_min >= 0.0 && phi_min < phi_max && phi_max <= kPi)) {
    throw std::invalid_argument("ScanConfig: need 0 <= phi_min < phi_max <= pi");
  }
  if (!(omega_over_gamma > 0.0)) throw std::invalid_argument("ScanConfig: omega_over_gamma must be positive");
}

Vec3 detector_offset(const ScanConfig& config, double phi) {
  const double s = std::sin(phi);
  return Vec3{s * std::cos(config.azimuth), s * std::sin(config.azimuth), std::cos(phi)} * config.radius;
}

AngularScan angular_scan(const Scene& scene, const ScanConfig& config) {
  return scan_impl(scene, config, [](std::ptrdiff_t n, auto&& body) { parallel_for(n, body); });
}

AngularScan angular_scan_serial(const Scene& scene, const ScanConfig& config) {
  return scan_impl(scene, config, [](std::ptrdiff_t n, auto&& body) { serial_for(n, body); });
}

void MapGrid::validate() const {
  if (x_count < 2 || z_count < 2) throw std::invalid_argument("MapGrid: counts must be >= 2");
  if (!(x_min < x_max) || !(z_min < z_max)) throw std::invalid_argument("MapGrid: empty range");
}

FocalMap focal_map(const BeamSpec& spec, const MapGrid& grid) {
  return map_impl(spec, grid, [](std::ptrdiff_t n, auto&& body) { parallel_for(n, body); });
}

FocalMap focal_map_serial(const BeamSpec& spec, const MapGrid& grid) {
  return map_impl(spec, grid, [](std::ptrdiff_t n, auto&& body) { serial_for(n, body); });
}

}  // namespace qaperture
