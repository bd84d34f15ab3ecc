#include "qaperture/polarization.hpp"

#include <stdexcept>

namespace qaperture {

ComplexVec3 rotated_polarization(double theta, double phi_k, int s) {
  if (s != 1 && s != -1) throw std::invalid_argument("rotated_polarization: s must be +1 or -1");
  if (!(theta >= 0.0 && theta <= 0.5 * kPi + 1e-15)) {
    throw std::invalid_argument("rotated_polarization: theta must lie in [0, pi/2]");
  }
  const double c = std::cos(theta);
  const cplx turn = std::polar(1.0, phi_k);
  return {0.5 * (c + s) * std::conj(turn), 0.5 * (c - s) * turn, cplx{-std::sin(theta) / kSqrt2}};
}

Vec3 direction(double theta, double phi_k) {
  const double st = std::sin(theta);
  return {st * std::cos(phi_k), st * std::sin(phi_k), std::cos(theta)};
}

}  // namespace qaperture
