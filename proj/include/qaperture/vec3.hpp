#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace qaperture {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSqrt2 = std::numbers::sqrt2;
/// Vacuum wavenumber with every length measured in wavelengths.
inline constexpr double kWavenumber = 2.0 * kPi;

/// Real Cartesian 3-vector (positions, directions).
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
};

/// Cylindrical coordinates about the beam axis: rho >= 0, phi in radians.
struct Cylindrical {
  double rho = 0.0;
  double phi = 0.0;
  double z = 0.0;

  static Cylindrical from_cartesian(const Vec3& r) {
    return {std::hypot(r.x, r.y), std::atan2(r.y, r.x), r.z};
  }
  Vec3 cartesian() const { return {rho * std::cos(phi), rho * std::sin(phi), z}; }
};

/// Complex field amplitude in the circular basis
/// e+ = (x + i y)/sqrt2, e- = (x - i y)/sqrt2, z.
struct ComplexVec3 {
  cplx plus{};
  cplx minus{};
  cplx z{};

  static ComplexVec3 from_cartesian(const std::array<cplx, 3>& v) {
    const cplx i{0.0, 1.0};
    return {(v[0] - i * v[1]) / kSqrt2, (v[0] + i * v[1]) / kSqrt2, v[2]};
  }

  std::array<cplx, 3> cartesian() const {
    const cplx i{0.0, 1.0};
    return {(plus + minus) / kSqrt2, i * (plus - minus) / kSqrt2, z};
  }

  double norm2() const { return std::norm(plus) + std::norm(minus) + std::norm(z); }
  double norm() const { return std::sqrt(norm2()); }

  cplx& operator[](std::size_t i) { return i == 0 ? plus : (i == 1 ? minus : z); }
  const cplx& operator[](std::size_t i) const { return i == 0 ? plus : (i == 1 ? minus : z); }

  ComplexVec3 operator+(const ComplexVec3& o) const { return {plus + o.plus, minus + o.minus, z + o.z}; }
  ComplexVec3 operator-(const ComplexVec3& o) const { return {plus - o.plus, minus - o.minus, z - o.z}; }
  ComplexVec3 operator*(cplx s) const { return {plus * s, minus * s, z * s}; }
  ComplexVec3& operator+=(const ComplexVec3& o) {
    plus += o.plus;
    minus += o.minus;
    z += o.z;
    return *this;
  }
};

inline ComplexVec3 operator*(cplx s, const ComplexVec3& v) { return v * s; }

/// Hermitian inner product a* . b (the circular basis is orthonormal).
inline cplx inner(const ComplexVec3& a, const ComplexVec3& b) {
  return std::conj(a.plus) * b.plus + std::conj(a.minus) * b.minus + std::conj(a.z) * b.z;
}

/// Bilinear product n . v with a real direction n.
inline cplx dot(const Vec3& n, const ComplexVec3& v) {
  const auto c = v.cartesian();
  return n.x * c[0] + n.y * c[1] + n.z * c[2];
}

inline ComplexVec3 from_real(const Vec3& n) {
  return ComplexVec3::from_cartesian({cplx{n.x}, cplx{n.y}, cplx{n.z}});
}

}  // namespace qaperture
