#pragma once

#include <array>

#include <Eigen/Dense>

#include "qaperture/vec3.hpp"

namespace qaperture {

/// J=0 -> J=1 atom. Natural units hbar = eps0 = c = 1 with lengths in beam
/// wavelengths, so the optical angular frequency is 2 pi. Component index i
/// follows ComplexVec3: 0 -> e+, 1 -> e-, 2 -> z.
struct AtomSpec {
  double lambda_a = 1.0;  // transition wavelength; 1 means resonant
  double gamma = 1.0;     // decay rate of each excited sublevel
  double detuning = 0.0;  // drive minus transition frequency
  Vec3 position{};

  void validate() const;
  double wavenumber() const;
  /// Reduced dipole moment, from Gamma = d^2 k^3 / (3 pi).
  double dipole() const;
};

/// Converts a decay rate in rad/s to the natural unit c / lambda.
double natural_rate(double rate_per_second, double lambda_nm);

using RabiVector = std::array<cplx, 3>;

/// sigma_eg[i] = <sigma_i^->, sigma_ee(i, j) = <sigma_i^+ sigma_j^->, rotating frame.
struct AtomState {
  std::array<cplx, 3> sigma_eg{};
  Eigen::Matrix3cd sigma_ee = Eigen::Matrix3cd::Zero();
};

/// Omega_i = 2 d (u_i* . E) with E = alpha * field at the atom.
RabiVector rabi_vector(const AtomSpec& atom, const ComplexVec3& field, cplx alpha);

/// Closed-form steady state through the bright superposition of excited levels.
AtomState steady_state(const RabiVector& omega, double delta, double gamma);

/// Master-equation integration (fixed-step RK4) of the 4-level density matrix
/// from the ground state to t_end. Throws IntegrationError if the trace drifts
/// by more than 1e-8.
AtomState steady_state_oracle(const RabiVector& omega, double delta, double gamma, double t_end);

/// Radiated far field of a unit sigma_i^- at displacement r_rel from the atom:
///   (k^2/4pi) d [u_i - (u_i . n) n] e^{i k r} / r.
/// Throws std::domain_error for |r_rel| < 10 wavelengths.
ComplexVec3 dipole_far_field(const AtomSpec& atom, int i, const Vec3& r_rel);

struct RadiativeConstants {
  double cross_section;        // 3 lambda^2 / 2 pi
  double saturation_intensity;  // omega Gamma / (2 sigma)
};

RadiativeConstants radiative_constants(const AtomSpec& atom);

}  // namespace qaperture
