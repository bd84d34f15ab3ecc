#pragma once

#include "qaperture/vec3.hpp"

namespace qaperture {

/// Helicity polarization vector of a plane wave travelling along
/// k = (sin t cos p, sin t sin p, cos t): the circular vector e_s of the z axis
/// carried along by R_z(p) R_y(t). s = +1 or -1; 0 <= theta <= pi/2.
ComplexVec3 rotated_polarization(double theta, double phi_k, int s);

/// Unit propagation direction for polar angle theta and azimuth phi_k.
Vec3 direction(double theta, double phi_k);

}  // namespace qaperture
