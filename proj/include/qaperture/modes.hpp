#pragma once

#include "qaperture/quadrature.hpp"
#include "qaperture/vec3.hpp"

namespace qaperture {

/// Label of one propagating cylindrical vector mode. kt is the transverse
/// wavenumber in units of k, so kz/k = sqrt(1 - kt^2).
struct ModeIndex {
  double kt = 0.0;
  int m = 1;
  int s = 1;

  void validate() const;
  double kz() const;
};

/// Closed Bessel form of the mode at a point (lengths in wavelengths):
///   F = e^{i kz z}/(2 pi) [ (kz+s)/2 i^{m-1} J_{m-1} e^{i(m-1)phi} e+
///                         + (kz-s)/2 i^{m+1} J_{m+1} e^{i(m+1)phi} e-
///                         - kt/sqrt2 i^m J_m e^{i m phi} z ],
/// with Bessel argument k kt rho. Normalized so that
///   int dS F_a* . F_b = delta(kt_a - kt_b) delta_mm' delta_ss' / (2 pi kt).
ComplexVec3 mode_field(const ModeIndex& mu, const Cylindrical& r);

/// Independent construction: trapezoidal sum over the azimuth of the plane-wave
/// spectrum (1/2pi) int dphi/2pi e^{i m phi} e_s(k) e^{i k.r}. Spectrally
/// convergent in n_nodes (>= 64).
ComplexVec3 mode_field_oracle(const ModeIndex& mu, const Cylindrical& r, int n_nodes = 256);

/// Overlap int_{rho <= window} dS F_a* . F_b in the plane z = 0 for two modes
/// sharing m. Window radius in wavelengths, >= 50.
cplx orthonormality_defect(double kt_a, double kt_b, int m, int s_a, int s_b, double window_radius,
                           const QuadratureSpec& spec = {1e-12, 1e-16, 40, 8});

/// Sum of squared component prefactors, ((kz+s)^2 + (kz-s)^2)/4 + kt^2/2.
/// Identically one for every propagating mode.
double mode_amplitude_weight(double kt, int s);

}  // namespace qaperture
