#include <cmath>
#include <complex>
#include <random>

#include <doctest.h>

#include "qaperture/bessel.hpp"
#include "qaperture/errors.hpp"
#include "qaperture/polarization.hpp"
#include "qaperture/quadrature.hpp"
#include "qaperture/vec3.hpp"

using namespace qaperture;

namespace {

// Power series in long double; fine for small arguments only.
double series_j(int n, double x) {
  long double term = 1.0L;
  for (int k = 1; k <= n; ++k) term *= static_cast<long double>(x) / (2.0L * k);
  long double sum = term;
  const long double q = -static_cast<long double>(x) * x / 4.0L;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<long double>(k) * (k + n));
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum)) break;
  }
  return static_cast<double>(sum);
}

// Bessel's integral over a full period; the trapezoid rule is spectrally exact.
double integral_j(int n, double x) {
  const int nodes = 2 * static_cast<int>(x + n) + 64;
  double sum = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const double t = 2.0 * kPi * j / nodes;
    sum += std::cos(n * t - x * std::sin(t));
  }
  return sum / nodes;
}

// Composite Simpson on a fixed grid.
template <class F>
std::complex<double> simpson(F f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  std::complex<double> s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * (h / 3.0);
}

}  // namespace

TEST_CASE("bessel_j special values") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(1, 0.0) == 0.0);
  CHECK(bessel_j(7, 0.0) == 0.0);
  // First zero of J0 located by bisection on the independent series.
  double lo = 2.0, hi = 3.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (series_j(0, mid) > 0.0 ? lo : hi) = mid;
  }
  CHECK(std::abs(bessel_j(0, 2.404826)) < 1e-6);
  CHECK(std::abs(bessel_j(0, lo)) < 1e-13);
}

TEST_CASE("bessel_j rejects unsupported input") {
  CHECK_THROWS_AS(bessel_j(33, 1.0), UnsupportedOrder);
  CHECK_THROWS_AS(bessel_j(-1, 1.0), UnsupportedOrder);
  CHECK_THROWS_AS(bessel_j(0, -1.0), std::domain_error);
  CHECK_THROWS_AS(bessel_j(0, std::nan("")), std::domain_error);
  CHECK(bessel_j_signed(-3, 2.0) == doctest::Approx(-bessel_j(3, 2.0)).epsilon(1e-15));
}

TEST_CASE("bessel_j matches the series for small arguments") {
  for (int n = 0; n <= 32; n += 1) {
    for (double x : {0.01, 0.5, 1.0, 3.0, 7.5, 12.0}) {
      INFO("n=" << n << " x=" << x);
      CHECK(std::abs(bessel_j(n, x) - series_j(n, x)) <= 1e-13);
    }
  }
}

TEST_CASE("bessel_j matches Bessel's integral up to x = 1000") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> ux(0.0, 1000.0);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = trial % 33;
    const double x = ux(gen);
    INFO("n=" << n << " x=" << x);
    CHECK(std::abs(bessel_j(n, x) - integral_j(n, x)) <= 1e-12);
  }
  for (int n : {0, 1, 2, 5, 20, 32}) {
    for (double x : {8.0, n + 8.0, 25.0 + n * n - 0.5, 25.0 + n * n + 0.5, 999.0}) {
      if (x > 1000.0) continue;
      INFO("n=" << n << " x=" << x);
      CHECK(std::abs(bessel_j(n, x) - integral_j(n, x)) <= 1e-12);
    }
  }
}

TEST_CASE("bessel_j agrees with the standard library") {
  for (int n = 0; n <= 10; ++n) {
    for (double x = 0.05; x < 200.0; x *= 1.37) {
      INFO("n=" << n << " x=" << x);
      CHECK(std::abs(bessel_j(n, x) - std::cyl_bessel_j(static_cast<double>(n), x)) <= 1e-12);
    }
  }
}

TEST_CASE("bessel recurrence residual") {
  for (int n = 1; n <= 8; ++n) {
    for (double x = 0.1; x <= 100.0; x *= 1.21) {
      const double r = bessel_j(n - 1, x) + bessel_j(n + 1, x) - 2.0 * n / x * bessel_j(n, x);
      CHECK(std::abs(r) <= 1e-10);
    }
  }
}

TEST_CASE("bessel_j_sequence equals pointwise evaluation") {
  std::array<double, 33> seq{};
  for (double x : {0.0, 0.3, 6.0, 40.0, 700.0}) {
    bessel_j_sequence(32, x, seq);
    for (int n = 0; n <= 32; ++n) CHECK(std::abs(seq[n] - bessel_j(n, x)) <= 1e-13);
  }
}

TEST_CASE("adaptive_integrate on analytic integrals") {
  const QuadratureSpec spec;
  const auto sine = adaptive_integrate([](double x) { return std::complex<double>(std::sin(x)); }, 0.0, kPi, spec, 1.0);
  CHECK(std::abs(sine.value - 2.0) <= 1e-10);

  const auto osc = adaptive_integrate([](double x) { return std::polar(1.0, 200.0 * x); }, 0.0, 1.0, spec, 200.0);
  const std::complex<double> exact = (std::polar(1.0, 200.0) - 1.0) / std::complex<double>(0.0, 200.0);
  CHECK(std::abs(osc.value - exact) <= 1e-8);

  auto xj0 = [](double x) { return std::complex<double>(x * bessel_j(0, 5.0 * x)); };
  const auto r = adaptive_integrate(xj0, 0.0, 1.0, spec, 5.0);
  CHECK(std::abs(r.value - bessel_j(1, 5.0) / 5.0) <= 1e-9);
  CHECK(std::abs(simpson(xj0, 0.0, 1.0, 20000) - r.value) <= 1e-9);
}

TEST_CASE("adaptive_integrate honours the node floor") {
  const QuadratureSpec spec{1e-10, 1e-14, 40, 8};
  const auto r = adaptive_integrate([](double x) { return std::polar(1.0, 3000.0 * x); }, 0.0, 1.0, spec, 3000.0);
  const double oscillations = 3000.0 / (2.0 * kPi);
  CHECK(static_cast<double>(r.evaluations) >= 8.0 * oscillations);
  CHECK(r.error <= 1e-10 * std::abs(r.value) + 1e-14);
}

TEST_CASE("adaptive_integrate is linear") {
  const QuadratureSpec spec;
  auto f = [](double x) { return std::complex<double>(std::exp(-x) * std::cos(13.0 * x), x * x); };
  auto g = [](double x) { return std::polar(1.0 / (1.0 + x), 40.0 * x); };
  const auto rf = adaptive_integrate(f, 0.0, 3.0, spec, 13.0);
  const auto rg = adaptive_integrate(g, 0.0, 3.0, spec, 40.0);
  const auto rs = adaptive_integrate([&](double x) { return f(x) + g(x); }, 0.0, 3.0, spec, 40.0);
  CHECK(std::abs(rs.value - rf.value - rg.value) <= rf.error + rg.error + rs.error + 1e-13);
}

TEST_CASE("adaptive_integrate reports non-convergence") {
  const QuadratureSpec spec{1e-12, 0.0, 3, 8};
  auto spike = [](double x) { return std::complex<double>(1.0 / std::sqrt(std::abs(x - 0.3)) ); };
  try {
    (void)adaptive_integrate(spike, 0.0, 1.0, spec, 1.0);
    FAIL("expected NonConvergence");
  } catch (const NonConvergence& e) {
    CHECK(std::isfinite(e.estimate().real()));
    CHECK(e.error_bound() > 0.0);
  }
  CHECK_THROWS_AS(adaptive_integrate(spike, 1.0, 0.0, QuadratureSpec{}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((QuadratureSpec{0.0, 0.0, 10, 8}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((QuadratureSpec{1e-8, 0.0, 0, 8}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((QuadratureSpec{1e-8, 0.0, 10, 3}.validate()), std::invalid_argument);
}

TEST_CASE("ComplexVec3 basis round trip") {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const ComplexVec3 v{{n(gen), n(gen)}, {n(gen), n(gen)}, {n(gen), n(gen)}};
    const auto c = v.cartesian();
    const ComplexVec3 back = ComplexVec3::from_cartesian(c);
    CHECK((back - v).norm() <= 1e-14 * v.norm());
    const double cart2 = std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2]);
    CHECK(std::abs(cart2 - v.norm2()) <= 1e-14 * cart2);
  }
}

namespace {

// R_z(p) R_y(t) applied to a Cartesian vector.
std::array<std::complex<double>, 3> rotate(double t, double p, const std::array<std::complex<double>, 3>& v) {
  const std::complex<double> x1 = std::cos(t) * v[0] + std::sin(t) * v[2];
  const std::complex<double> z1 = -std::sin(t) * v[0] + std::cos(t) * v[2];
  return {std::cos(p) * x1 - std::sin(p) * v[1], std::sin(p) * x1 + std::cos(p) * v[1], z1};
}

}  // namespace

TEST_CASE("rotated_polarization examples") {
  // No rotation: e+ itself, up to the azimuthal phase e^{-i phi_k} that R_z carries.
  const ComplexVec3 a0 = rotated_polarization(0.0, 0.0, 1);
  CHECK(std::abs(a0.plus - 1.0) < 1e-15);
  const ComplexVec3 a = rotated_polarization(0.0, 1.234, 1);
  CHECK(std::abs(a.plus - std::polar(1.0, -1.234)) < 1e-15);
  CHECK(std::abs(a.minus) < 1e-15);
  CHECK(std::abs(a.z) < 1e-15);

  const ComplexVec3 b = rotated_polarization(kPi / 2.0, 0.0, 1);
  CHECK(std::abs(b.plus - 0.5) < 1e-15);
  CHECK(std::abs(b.minus + 0.5) < 1e-15);
  CHECK(std::abs(b.z + 1.0 / kSqrt2) < 1e-15);

  CHECK(std::abs(rotated_polarization(1.0, 2.0, -1).norm() - 1.0) < 1e-14);
  CHECK_THROWS_AS(rotated_polarization(0.3, 0.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(rotated_polarization(2.0, 0.0, 1), std::invalid_argument);
}

TEST_CASE("rotated_polarization equals the rotated circular vector") {
  const std::complex<double> i{0.0, 1.0};
  for (int s : {1, -1}) {
    const std::array<std::complex<double>, 3> e{1.0 / kSqrt2, static_cast<double>(s) * i / kSqrt2, 0.0};
    for (int a = 0; a < 20; ++a) {
      for (int b = 0; b < 20; ++b) {
        const double t = kPi / 2.0 * a / 19.0;
        const double p = 2.0 * kPi * b / 20.0;
        const ComplexVec3 expect = ComplexVec3::from_cartesian(rotate(t, p, e));
        const ComplexVec3 got = rotated_polarization(t, p, s);
        CHECK((got - expect).norm() <= 1e-13);
        CHECK(std::abs(got.norm() - 1.0) <= 1e-13);
        CHECK(std::abs(dot(direction(t, p), got)) <= 1e-13);
      }
    }
  }
}
