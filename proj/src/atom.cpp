#include "qaperture/atom.hpp"

#include <cmath>
#include <stdexcept>

#include "qaperture/errors.hpp"

namespace qaperture {
namespace {

constexpr double kSpeedOfLight = 299792458.0;

using Matrix4 = Eigen::Matrix4cd;

Matrix4 lindblad_rhs(const Matrix4& rho, const Matrix4& h, double gamma) {
  const cplx i{0.0, 1.0};
  Matrix4 out = -i * (h * rho - rho * h);
  // Each excited level k = 1..3 decays to the ground level 0.
  for (int k = 1; k < 4; ++k) {
    out(0, 0) += gamma * rho(k, k);
    for (int j = 0; j < 4; ++j) {
      out(k, j) -= 0.5 * gamma * rho(k, j);
      out(j, k) -= 0.5 * gamma * rho(j, k);
    }
  }
  return out;
}

}  // namespace

void AtomSpec::validate() const {
  if (!(lambda_a > 0.0)) throw std::invalid_argument("AtomSpec: lambda_a must be positive");
  if (!(gamma > 0.0)) throw std::invalid_argument("AtomSpec: gamma must be positive");
  if (!std::isfinite(detuning)) throw std::invalid_argument("AtomSpec: detuning must be finite");
}

double AtomSpec::wavenumber() const { return kWavenumber / lambda_a; }

double AtomSpec::dipole() const {
  const double k = wavenumber();
  return std::sqrt(3.0 * kPi * gamma / (k * k * k));
}

double natural_rate(double rate_per_second, double lambda_nm) {
  return rate_per_second * lambda_nm * 1e-9 / kSpeedOfLight;
}

RabiVector rabi_vector(const AtomSpec& atom, const ComplexVec3& field, cplx alpha) {
  const double two_d = 2.0 * atom.dipole();
  return {two_d * alpha * field.plus, two_d * alpha * field.minus, two_d * alpha * field.z};
}

AtomState steady_state(const RabiVector& omega, double delta, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("steady_state: gamma must be positive");
  AtomState out;
  const double omega2 = std::norm(omega[0]) + std::norm(omega[1]) + std::norm(omega[2]);
  if (omega2 == 0.0) return out;
  const double magnitude = std::sqrt(omega2);
  const double rho_bb = 0.25 * omega2 / (delta * delta + 0.25 * gamma * gamma + 0.5 * omega2);
  const cplx sigma_b = cplx{0.0, magnitude} * (1.0 - 2.0 * rho_bb) / cplx{gamma, -2.0 * delta};
  for (int i = 0; i < 3; ++i) out.sigma_eg[i] = omega[i] / magnitude * sigma_b;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      out.sigma_ee(i, j) = std::conj(omega[i]) * omega[j] / omega2 * rho_bb;
    }
  }
  return out;
}

AtomState steady_state_oracle(const RabiVector& omega, double delta, double gamma, double t_end) {
  if (!(gamma > 0.0)) throw std::invalid_argument("steady_state_oracle: gamma must be positive");
  if (!(t_end >= 10.0 / gamma)) throw std::invalid_argument("steady_state_oracle: t_end must be >= 10/gamma");
  Matrix4 h = Matrix4::Zero();
  for (int k = 1; k < 4; ++k) {
    h(k, k) = -delta;
    h(k, 0) = -0.5 * omega[k - 1];
    h(0, k) = -0.5 * std::conj(omega[k - 1]);
  }
  const double omega_max = std::sqrt(std::norm(omega[0]) + std::norm(omega[1]) + std::norm(omega[2]));
  const double fastest = std::max({gamma, omega_max, std::abs(delta)});
  const auto steps = static_cast<long>(std::ceil(t_end * fastest / 0.02));
  const double dt = t_end / static_cast<double>(steps);

  Matrix4 rho = Matrix4::Zero();
  rho(0, 0) = 1.0;
  for (long n = 0; n < steps; ++n) {
    const Matrix4 k1 = lindblad_rhs(rho, h, gamma);
    const Matrix4 k2 = lindblad_rhs(rho + 0.5 * dt * k1, h, gamma);
    const Matrix4 k3 = lindblad_rhs(rho + 0.5 * dt * k2, h, gamma);
    const Matrix4 k4 = lindblad_rhs(rho + dt * k3, h, gamma);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  const double drift = std::abs(rho.trace() - 1.0);
  if (drift > 1e-8) throw IntegrationError("steady_state_oracle: trace drift " + std::to_string(drift));

  AtomState out;
  for (int i = 0; i < 3; ++i) out.sigma_eg[i] = rho(i + 1, 0);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out.sigma_ee(i, j) = rho(j + 1, i + 1);
  }
  return out;
}

ComplexVec3 dipole_far_field(const AtomSpec& atom, int i, const Vec3& r_rel) {
  if (i < 0 || i > 2) throw std::invalid_argument("dipole_far_field: component index must be 0, 1 or 2");
  const double r = r_rel.norm();
  if (!(r >= 10.0)) throw std::domain_error("dipole_far_field: |r| must be >= 10 wavelengths");
  const Vec3 n = r_rel * (1.0 / r);
  ComplexVec3 u;
  u[static_cast<std::size_t>(i)] = 1.0;
  const ComplexVec3 transverse = u - from_real(n) * dot(n, u);
  const double k = atom.wavenumber();
  const cplx radial = std::polar(k * k / (4.0 * kPi) * atom.dipole() / r, k * r);
  return transverse * radial;
}

RadiativeConstants radiative_constants(const AtomSpec& atom) {
  atom.validate();
  const double sigma = 3.0 * atom.lambda_a * atom.lambda_a / (2.0 * kPi);
  return {sigma, atom.wavenumber() * atom.gamma / (2.0 * sigma)};
}

}  // namespace qaperture
