#pragma once

#include <optional>
#include <vector>

#include "qaperture/atom.hpp"
#include "qaperture/focusing.hpp"

namespace qaperture {

/// A focused beam of unit plane power, scaled by alpha, driving one atom.
/// The steady state is solved once at construction.
class Scene {
 public:
  Scene(const BeamSpec& spec, const AtomSpec& atom, cplx alpha);

  /// Atom placed at the on-axis intensity maximum, alpha real and chosen so
  /// that |Omega| / Gamma equals omega_over_gamma.
  static Scene at_focus(const BeamSpec& spec, AtomSpec atom, double omega_over_gamma);

  const FocusedBeam& beam() const noexcept { return beam_; }
  const AtomSpec& atom() const noexcept { return atom_; }
  cplx alpha() const noexcept { return alpha_; }
  const AtomState& state() const noexcept { return state_; }
  const RabiVector& rabi() const noexcept { return rabi_; }
  /// Same scene with the atom's expectation values replaced.
  Scene with_state(const AtomState& state) const;

 private:
  FocusedBeam beam_;
  AtomSpec atom_;
  cplx alpha_;
  RabiVector rabi_{};
  AtomState state_;
};

struct Intensities {
  double laser = 0.0;         // I_L = |alpha F|^2
  double dipole = 0.0;        // I_d
  double interference = 0.0;  // 2 Re[alpha* F* . sum_i Psi_i sigma_eg^i]
  double total = 0.0;
};

/// Intensities at detector displacement r_rel from the atom (|r_rel| >= 10).
Intensities intensities(const Scene& scene, const Vec3& r_rel);

/// Zero-delay intensity correlation G2 / I^2 at r_rel. Throws
/// UndefinedCorrelation when the total intensity vanishes.
double g2_zero_delay(const Scene& scene, const Vec3& r_rel);

struct ScanConfig {
  double radius = 50.0;
  double phi_min = 0.0;
  double phi_max = kPi / 2.0;
  int count = 200;
  double omega_over_gamma = 0.01;
  /// Detector azimuth about the beam axis; 0 keeps detectors in the x-z plane.
  double azimuth = 0.0;

  void validate() const;
  bool weak() const { return omega_over_gamma <= 0.05; }
};

/// Detector position at polar angle phi on the sphere about the atom.
Vec3 detector_offset(const ScanConfig& config, double phi);

struct ScanRow {
  double phi = 0.0;
  double laser = 0.0;
  double dipole = 0.0;
  double interference = 0.0;
  double total = 0.0;
  double g2 = 0.0;
};

struct ScanSummary {
  double dipole_forward = 0.0;  // I_d(phi = 0) before normalization
  std::optional<double> crossover_phi;
  double max_g2_phi = 0.0;
  double max_g2 = 0.0;
  double max_g2_interference = 0.0;  // normalized I_int at the maximum
  double forward_ratio = 0.0;        // I_L / I_d at phi = 0
};

struct AngularScan {
  std::vector<ScanRow> rows;  // ascending phi, intensities relative to I_d(0)
  ScanSummary summary;
};

AngularScan angular_scan(const Scene& scene, const ScanConfig& config);
AngularScan angular_scan_serial(const Scene& scene, const ScanConfig& config);

struct MapGrid {
  double x_min = -3.0;
  double x_max = 3.0;
  int x_count = 61;
  double z_min = -25.0;  // relative to z_0
  double z_max = 10.0;
  int z_count = 71;

  void validate() const;
};

struct MapCell {
  double x = 0.0;  // x in wavelengths
  double z = 0.0;  // (z - z_0) in wavelengths
  double plus = 0.0;
  double minus = 0.0;
  double axial = 0.0;
};

struct FocalMap {
  std::vector<MapCell> cells;  // z-major, then ascending x; normalized to max |F . e+|^2
  double peak_x = 0.0;
  double peak_z = 0.0;
  double peak_raw = 0.0;
};

FocalMap focal_map(const BeamSpec& spec, const MapGrid& grid);
FocalMap focal_map_serial(const BeamSpec& spec, const MapGrid& grid);

}  // namespace qaperture
