#include "qaperture/modes.hpp"

#include <cmath>
#include <stdexcept>

#include "qaperture/bessel.hpp"
#include "qaperture/polarization.hpp"

namespace qaperture {
namespace {

cplx i_pow(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

void ModeIndex::validate() const {
  if (!(kt > 0.0 && kt <= 1.0)) throw std::invalid_argument("ModeIndex: kt must lie in (0, 1]");
  if (s != 1 && s != -1) throw std::invalid_argument("ModeIndex: s must be +1 or -1");
  if (std::abs(m) + 1 > 32) throw std::invalid_argument("ModeIndex: |m| must be <= 31");
}

double ModeIndex::kz() const { return std::sqrt((1.0 - kt) * (1.0 + kt)); }

ComplexVec3 mode_field(const ModeIndex& mu, const Cylindrical& r) {
  mu.validate();
  const double kz = mu.kz();
  const double x = kWavenumber * mu.kt * r.rho;
  const cplx prefactor = std::polar(1.0 / (2.0 * kPi), kWavenumber * kz * r.z);
  const int m = mu.m;
  ComplexVec3 out;
  out.plus = prefactor * (0.5 * (kz + mu.s)) * i_pow(m - 1) * bessel_j_signed(m - 1, x) *
             std::polar(1.0, (m - 1) * r.phi);
  out.minus = prefactor * (0.5 * (kz - mu.s)) * i_pow(m + 1) * bessel_j_signed(m + 1, x) *
              std::polar(1.0, (m + 1) * r.phi);
  out.z = prefactor * (-mu.kt / kSqrt2) * i_pow(m) * bessel_j_signed(m, x) * std::polar(1.0, m * r.phi);
  return out;
}

ComplexVec3 mode_field_oracle(const ModeIndex& mu, const Cylindrical& r, int n_nodes) {
  mu.validate();
  if (n_nodes < 64) throw std::invalid_argument("mode_field_oracle: n_nodes must be >= 64");
  const double theta = std::asin(mu.kt);
  const Vec3 pos = r.cartesian();
  ComplexVec3 sum;
  for (int j = 0; j < n_nodes; ++j) {
    const double phi_k = 2.0 * kPi * j / n_nodes;
    const Vec3 khat = direction(theta, phi_k);
    const cplx wave = std::polar(1.0, mu.m * phi_k + kWavenumber * khat.dot(pos));
    sum += rotated_polarization(theta, phi_k, mu.s) * wave;
  }
  return sum * cplx{1.0 / (2.0 * kPi * n_nodes)};
}

cplx orthonormality_defect(double kt_a, double kt_b, int m, int s_a, int s_b, double window_radius,
                           const QuadratureSpec& spec) {
  const ModeIndex a{kt_a, m, s_a};
  const ModeIndex b{kt_b, m, s_b};
  a.validate();
  b.validate();
  if (!(window_radius >= 50.0)) throw std::invalid_argument("orthonormality_defect: window must be >= 50");
  const double ca = a.kz();
  const double cb = b.kz();
  const double w_minus = 0.25 * (ca + s_a) * (cb + s_b);
  const double w_plus = 0.25 * (ca - s_a) * (cb - s_b);
  const double w_z = 0.5 * kt_a * kt_b;
  auto integrand = [&](double rho) {
    const double xa = kWavenumber * kt_a * rho;
    const double xb = kWavenumber * kt_b * rho;
    const double v = w_minus * bessel_j_signed(m - 1, xa) * bessel_j_signed(m - 1, xb) +
                     w_plus * bessel_j_signed(m + 1, xa) * bessel_j_signed(m + 1, xb) +
                     w_z * bessel_j_signed(m, xa) * bessel_j_signed(m, xb);
    return std::array<cplx, 1>{cplx{rho * v}};
  };
  const double rate = kWavenumber * (kt_a + kt_b);
  const auto r = integrate_vector<1>(integrand, 0.0, window_radius, spec, rate);
  // The azimuthal integral contributes 2 pi; the mode prefactors (1/2pi)^2.
  return r.value[0] / (2.0 * kPi);
}

double mode_amplitude_weight(double kt, int s) {
  const double kz = std::sqrt((1.0 - kt) * (1.0 + kt));
  return 0.25 * ((kz + s) * (kz + s) + (kz - s) * (kz - s)) + 0.5 * kt * kt;
}

}  // namespace qaperture
