#pragma once

#include <string>
#include <utility>

#include "qaperture/quadrature.hpp"
#include "qaperture/vec3.hpp"

namespace qaperture {

enum class BeamModel { exact, paraxial };

std::string to_string(BeamModel model);
BeamModel beam_model_from_string(const std::string& name);

/// Thin lens of focal length f illuminated by a circularly polarized (e+)
/// Gaussian whose waist of Rayleigh range z_in sits in the lens plane z = 0.
/// Lengths in wavelengths.
struct BeamSpec {
  double f = 500.0;
  double z_in = 6.0e4;
  BeamModel model = BeamModel::exact;
  QuadratureSpec quad{1e-10, 1e-14, 40, 8};

  void validate() const;
  double z_R() const;  // f^2 z_in / (z_in^2 + f^2)
  double z_0() const;  // f z_in^2 / (z_in^2 + f^2)
  cplx xi() const;     // z_R - i z_0
  double w_R() const;  // sqrt(z_R / pi)
};

struct DerivedParams {
  double z_R;
  double z_0;
};

DerivedParams derived_params(const BeamSpec& spec);

/// Lens coupling coefficient of mode (kt, m, s):
///   pi delta_m1 kt (kz + s) xi exp(-pi kt^2 xi).
cplx kappa(const BeamSpec& spec, double kt, int m, int s);

/// The same coefficient by projecting the lensed input field onto the mode in
/// the plane z = 0: 2 pi k kt int dS F_mu* . F_lensed. The azimuth is summed
/// with a trapezoid rule, the radius adaptively out to where the input Gaussian
/// has fallen by e^-40.
cplx kappa_numeric(const BeamSpec& spec, double kt, int s, int m = 1);

/// Unnormalized output field behind the lens. Exact model: the kt integral of
/// sum_s kappa F_(kt,1,s); requires z >= 0. Paraxial model: a fundamental
/// Gaussian with waist z_R at z_0 and unit waist amplitude.
ComplexVec3 focused_field(const BeamSpec& spec, const Cylindrical& r);

/// Power through any transverse plane from the mode spectrum (closed form).
double spectral_power(const BeamSpec& spec);

/// Power through the plane at z by direct radial integration of |F|^2.
/// Costly for the exact model: each radial node is a full field synthesis.
double plane_power(const BeamSpec& spec, double z);

/// Output beam scaled to unit plane power.
class FocusedBeam {
 public:
  explicit FocusedBeam(const BeamSpec& spec);

  const BeamSpec& spec() const noexcept { return spec_; }
  double raw_power() const noexcept { return power_; }
  ComplexVec3 field(const Vec3& r) const;
  ComplexVec3 field(const Cylindrical& r) const;

 private:
  BeamSpec spec_;
  double power_;
  double scale_;
};

struct SpotMetrics {
  double z_focus = 0.0;
  double peak_intensity = 0.0;  // |F|^2 at the focus, unit plane power
  double area_halfmax = 0.0;    // in wavelengths^2
};

struct AxialPeak {
  double z = 0.0;
  double intensity = 0.0;  // unnormalized |F|^2
};

/// On-axis intensity maximum inside the bracket: coarse scan, then golden
/// section to 1e-3 wavelengths. Throws BracketError if the largest sample sits
/// at an end of the bracket.
AxialPeak locate_axial_peak(const BeamSpec& spec, std::pair<double, double> bracket);

/// Default axial search interval for the on-axis maximum.
std::pair<double, double> default_focus_bracket(const BeamSpec& spec);

/// Axial peak plus the half-maximum area in its transverse plane.
SpotMetrics find_focus(const BeamSpec& spec, std::pair<double, double> bracket);
SpotMetrics find_focus(const BeamSpec& spec);

}  // namespace qaperture
