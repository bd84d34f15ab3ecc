#include "qaperture/focusing.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qaperture/bessel.hpp"
#include "qaperture/errors.hpp"

namespace qaperture {
namespace {

constexpr cplx kI{0.0, 1.0};

// Switch the kt integral to the kz variable beyond this distance from the lens.
constexpr double kSubstitutionDepth = 10.0;

std::string describe(const BeamSpec& spec, const Cylindrical& r) {
  std::ostringstream os;
  os.precision(17);
  os << "f=" << spec.f << " z_in=" << spec.z_in << " at (rho=" << r.rho << ", phi=" << r.phi
     << ", z=" << r.z << ")";
  return os.str();
}

// Radial integrals V0 = int (1+c^2) J0, V1 = int u^2 J2, V2 = int u c J1, all
// weighted by u exp(-pi u^2 xi) exp(i k c z) du over u in [0, 1].
std::array<cplx, 3> exact_radial_integrals(const BeamSpec& spec, double rho, double z) {
  const cplx xi = spec.xi();
  const double k = kWavenumber;
  const double z0 = spec.z_0();

  auto terms = [&](double u, double c, double weight) {
    std::array<double, 3> j{};
    bessel_j_sequence(2, k * u * rho, j);
    const cplx g = weight * std::exp(-kPi * u * u * xi + kI * (k * c * z));
    return std::array<cplx, 3>{g * (1.0 + c * c) * j[0], g * (u * u) * j[2], g * (u * c) * j[1]};
  };

  if (std::abs(z) > kSubstitutionDepth) {
    // u du = c dc: the integrand becomes analytic in c on [0, 1].
    auto integrand = [&](double c) {
      const double u = std::sqrt(std::max(0.0, (1.0 - c) * (1.0 + c)));
      return terms(u, c, c);
    };
    const double rate = k * (std::max(std::abs(z), std::abs(z - z0)) + rho);
    return integrate_vector<3>(integrand, 0.0, 1.0, spec.quad, rate).value;
  }
  auto integrand = [&](double u) {
    const double c = std::sqrt(std::max(0.0, (1.0 - u) * (1.0 + u)));
    return terms(u, c, u);
  };
  const double rate = k * (std::abs(z) + z0 + rho);
  return integrate_vector<3>(integrand, 0.0, 1.0, spec.quad, rate).value;
}

ComplexVec3 exact_field(const BeamSpec& spec, const Cylindrical& r) {
  if (!(r.z >= 0.0)) throw std::domain_error("focused_field: exact model requires z >= 0");
  std::array<cplx, 3> v;
  try {
    v = exact_radial_integrals(spec, r.rho, r.z);
  } catch (const NonConvergence& e) {
    throw NonConvergence(std::string(e.what()) + " [focused_field " + describe(spec, r) + "]", e.estimate(),
                         e.error_bound());
  }
  const cplx pre = kPi * spec.xi();
  return {pre * v[0], pre * std::polar(1.0, 2.0 * r.phi) * v[1],
          pre * std::polar(1.0, r.phi) * (-kI * kSqrt2) * v[2]};
}

ComplexVec3 paraxial_field(const BeamSpec& spec, const Cylindrical& r) {
  const double zr = spec.z_R();
  const cplx q = 1.0 + kI * ((r.z - spec.z_0()) / zr);
  const cplx amp = std::exp(-kWavenumber * r.rho * r.rho / (2.0 * zr * q) + kI * (kWavenumber * r.z)) / q;
  return {amp, 0.0, 0.0};
}

double on_axis_intensity(const BeamSpec& spec, double z) {
  return focused_field(spec, Cylindrical{0.0, 0.0, z}).norm2();
}

}  // namespace

std::string to_string(BeamModel model) { return model == BeamModel::exact ? "exact" : "paraxial"; }

BeamModel beam_model_from_string(const std::string& name) {
  if (name == "exact") return BeamModel::exact;
  if (name == "paraxial") return BeamModel::paraxial;
  throw std::invalid_argument("unknown beam model '" + name + "'");
}

void BeamSpec::validate() const {
  if (!(f > 0.0) || !std::isfinite(f)) throw std::invalid_argument("BeamSpec: f must be positive");
  if (!(z_in > 0.0) || !std::isfinite(z_in)) throw std::invalid_argument("BeamSpec: z_in must be positive");
  quad.validate();
}

double BeamSpec::z_R() const { return f * f * z_in / (z_in * z_in + f * f); }
double BeamSpec::z_0() const { return f * z_in * z_in / (z_in * z_in + f * f); }
cplx BeamSpec::xi() const { return {z_R(), -z_0()}; }
double BeamSpec::w_R() const { return std::sqrt(z_R() / kPi); }

DerivedParams derived_params(const BeamSpec& spec) {
  spec.validate();
  return {spec.z_R(), spec.z_0()};
}

cplx kappa(const BeamSpec& spec, double kt, int m, int s) {
  spec.validate();
  if (!(kt >= 0.0 && kt <= 1.0)) throw std::invalid_argument("kappa: kt must lie in [0, 1]");
  if (s != 1 && s != -1) throw std::invalid_argument("kappa: s must be +1 or -1");
  if (m != 1) return 0.0;
  const double kz = std::sqrt((1.0 - kt) * (1.0 + kt));
  const cplx xi = spec.xi();
  return kPi * kt * (kz + s) * xi * std::exp(-kPi * kt * kt * xi);
}

cplx kappa_numeric(const BeamSpec& spec, double kt, int s, int m) {
  spec.validate();
  if (!(kt > 0.0 && kt <= 1.0)) throw std::invalid_argument("kappa_numeric: kt must lie in (0, 1]");
  if (s != 1 && s != -1) throw std::invalid_argument("kappa_numeric: s must be +1 or -1");
  const double k = kWavenumber;
  const double kz = std::sqrt((1.0 - kt) * (1.0 + kt));

  constexpr int kAzimuthNodes = 64;
  cplx azimuth{};
  for (int j = 0; j < kAzimuthNodes; ++j) {
    azimuth += std::polar(1.0, -(m - 1) * 2.0 * kPi * j / kAzimuthNodes);
  }
  azimuth *= 2.0 * kPi / kAzimuthNodes;

  const double rho_max = std::sqrt(40.0 * spec.z_in / kPi);
  auto integrand = [&](double rho) {
    const cplx lensed = std::exp(cplx{-kPi * rho * rho / spec.z_in, -kPi * rho * rho / spec.f});
    return std::array<cplx, 1>{rho * bessel_j_signed(m - 1, k * kt * rho) * lensed};
  };
  QuadratureSpec q = spec.quad;
  q.rel_tol = std::min(q.rel_tol, 1e-12);
  q.abs_tol = 0.0;
  const double rate = k * (rho_max / spec.f + kt);
  const cplx radial = integrate_vector<1>(integrand, 0.0, rho_max, q, rate).value[0];

  // conj(i^(m-1)) from the mode's e+ component.
  cplx phase{1.0, 0.0};
  for (int n = 0; n < ((m - 1) % 4 + 4) % 4; ++n) phase *= -kI;
  return k * kt * 0.5 * (kz + s) * phase * azimuth * radial;
}

ComplexVec3 focused_field(const BeamSpec& spec, const Cylindrical& r) {
  return spec.model == BeamModel::exact ? exact_field(spec, r) : paraxial_field(spec, r);
}

double spectral_power(const BeamSpec& spec) {
  spec.validate();
  if (spec.model == BeamModel::paraxial) return 0.5 * spec.z_R();
  // pi |xi|^2 int_0^1 u (1 + c^2) exp(-2 pi z_R u^2) du, with t = u^2.
  const double a = 2.0 * kPi * spec.z_R();
  const double e = std::exp(-a);
  const double first = -std::expm1(-a) / a;
  const double second = (-std::expm1(-a) - a * e) / (a * a);
  return kPi * std::norm(spec.xi()) * (first - 0.5 * second);
}

double plane_power(const BeamSpec& spec, double z) {
  spec.validate();
  const double zr = spec.z_R();
  const double dz = z - spec.z_0();
  const double width = spec.w_R() * std::sqrt(1.0 + (dz / zr) * (dz / zr));
  double rho_max = 6.0 * width + 10.0;
  if (spec.model == BeamModel::exact) {
    // The plane wave of transverse number u crosses the plane near
    // rho = u (z_0 - z / kz): spherical aberration pushes power far out.
    // Follow it down to spectral power fractions of 1e-8.
    const double u_cut = std::min(std::sqrt(18.4 / (2.0 * kPi * zr)), 0.999);
    double reach = 0.0;
    for (int i = 1; i <= 200; ++i) {
      const double u = u_cut * i / 200.0;
      const double c = std::sqrt((1.0 - u) * (1.0 + u));
      reach = std::max(reach, std::abs(u * (spec.z_0() - z / c)));
    }
    rho_max = std::min(rho_max + 1.2 * reach, 6.0 * width + 2000.0);
  }
  auto integrand = [&](double rho) {
    return std::array<cplx, 1>{cplx{rho * focused_field(spec, Cylindrical{rho, 0.0, z}).norm2()}};
  };
  QuadratureSpec q = spec.quad;
  q.rel_tol = std::max(q.rel_tol, 1e-9);
  // |F|^2 carries no propagation phase; ring structure varies at most at ~2k.
  const double rate = 2.0 * kWavenumber;
  return 2.0 * kPi * integrate_vector<1>(integrand, 0.0, rho_max, q, rate).value[0].real();
}

FocusedBeam::FocusedBeam(const BeamSpec& spec)
    : spec_(spec), power_(spectral_power(spec)), scale_(1.0 / std::sqrt(power_)) {}

ComplexVec3 FocusedBeam::field(const Cylindrical& r) const { return focused_field(spec_, r) * cplx{scale_}; }

ComplexVec3 FocusedBeam::field(const Vec3& r) const { return field(Cylindrical::from_cartesian(r)); }

std::pair<double, double> default_focus_bracket(const BeamSpec& spec) {
  const double z0 = spec.z_0();
  const double zr = spec.z_R();
  return {std::max(0.01, z0 - 0.2 * spec.f - 10.0 * zr), z0 + 2.0 * zr + 1.0};
}

SpotMetrics find_focus(const BeamSpec& spec) { return find_focus(spec, default_focus_bracket(spec)); }

AxialPeak locate_axial_peak(const BeamSpec& spec, std::pair<double, double> bracket) {
  spec.validate();
  auto [lo, hi] = bracket;
  if (!(lo < hi)) throw std::invalid_argument("find_focus: empty bracket");
  if (spec.model == BeamModel::exact && lo < 0.0) throw std::invalid_argument("find_focus: bracket below lens");

  constexpr int kCoarse = 97;
  int best = 0;
  double best_value = -1.0;
  for (int i = 0; i < kCoarse; ++i) {
    const double z = lo + (hi - lo) * i / (kCoarse - 1);
    const double v = on_axis_intensity(spec, z);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  if (best == 0 || best == kCoarse - 1) {
    std::ostringstream os;
    os << "find_focus: on-axis maximum at bracket end [" << lo << ", " << hi << "] for f=" << spec.f
       << " z_in=" << spec.z_in;
    throw BracketError(os.str());
  }
  const double step = (hi - lo) / (kCoarse - 1);
  double a = lo + step * (best - 1);
  double b = lo + step * (best + 1);

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = on_axis_intensity(spec, x1);
  double f2 = on_axis_intensity(spec, x2);
  while (b - a > 1e-3) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = on_axis_intensity(spec, x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = on_axis_intensity(spec, x1);
    }
  }
  const double z = 0.5 * (a + b);
  return {z, on_axis_intensity(spec, z)};
}

SpotMetrics find_focus(const BeamSpec& spec, std::pair<double, double> bracket) {
  const AxialPeak axial = locate_axial_peak(spec, bracket);
  const double peak = axial.intensity;
  SpotMetrics out;
  out.z_focus = axial.z;
  const double power = spectral_power(spec);
  out.peak_intensity = peak / power;

  // Walk outward to the first half-maximum crossing, then bisect.
  auto intensity = [&](double rho) { return focused_field(spec, Cylindrical{rho, 0.0, out.z_focus}).norm2(); };
  const double dr = 0.02 * std::max(spec.w_R(), 0.05);
  double inner = 0.0;
  double outer = dr;
  while (intensity(outer) >= 0.5 * peak) {
    inner = outer;
    outer += dr;
    if (outer > 1e4) throw BracketError("find_focus: no half-maximum crossing");
  }
  while (outer - inner > 1e-9 * std::max(1.0, outer)) {
    const double mid = 0.5 * (inner + outer);
    (intensity(mid) >= 0.5 * peak ? inner : outer) = mid;
  }
  const double r_half = 0.5 * (inner + outer);
  out.area_halfmax = kPi * r_half * r_half;
  return out;
}

}  // namespace qaperture
