#include "qaperture/bessel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "qaperture/errors.hpp"
#include "qaperture/vec3.hpp"

namespace qaperture {
namespace {

// Below this the power series is used for every order; cancellation costs
// at most two digits here.
constexpr double kSeriesLimit = 8.0;
// Hankel asymptotics for J_n need x well past n^2/2; the extra margin keeps
// the smallest asymptotic term below double epsilon.
constexpr double kHankelBase = 25.0;

double hankel_threshold(int n) { return kHankelBase + static_cast<double>(n) * n; }

double series(int n, double x) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= half / k;
  if (term == 0.0) return 0.0;
  const double q = -half * half;
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * (k + n));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

double hankel(int n, double x) {
  const double mu = 4.0 * n * n;
  const double inv8x = 1.0 / (8.0 * x);
  double p = 1.0;
  double q = 0.0;
  double t = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    t *= (mu - odd * odd) * inv8x / k;
    if (std::abs(t) > std::abs(prev)) break;  // asymptotic series turned around
    switch (k % 4) {
      case 1: q += t; break;
      case 2: p -= t; break;
      case 3: q -= t; break;
      default: p += t; break;
    }
    if (std::abs(t) < 1e-17) break;
    prev = t;
  }
  const double shift = (0.5 * n + 0.25) * kPi;
  const double sx = std::sin(x);
  const double cx = std::cos(x);
  const double cos_chi = cx * std::cos(shift) + sx * std::sin(shift);
  const double sin_chi = sx * std::cos(shift) - cx * std::sin(shift);
  return std::sqrt(2.0 / (kPi * x)) * (p * cos_chi - q * sin_chi);
}

// Downward recurrence from an order well above max(n_max, x), normalized with
// J_0 + 2 sum_k J_2k = 1.
void miller(int n_max, double x, std::span<double> out) {
  const double top = std::max(static_cast<double>(n_max), x);
  int m = static_cast<int>(top) + 16 + static_cast<int>(std::sqrt(64.0 * top));
  m += m % 2;
  double above = 0.0;
  double current = 1.0;
  double sum = 2.0;  // m is even, so J_m itself enters the normalization
  const double two_over_x = 2.0 / x;
  for (int j = m; j >= 1; --j) {
    const double below = j * two_over_x * current - above;
    above = current;
    current = below;
    const int order = j - 1;
    if (std::abs(current) > 1e200) {
      constexpr double s = 1e-200;
      current *= s;
      above *= s;
      sum *= s;
      for (int k = order + 1; k <= n_max; ++k) out[k] *= s;
    }
    if (order <= n_max) out[order] = current;
    if (order > 0 && order % 2 == 0) sum += 2.0 * current;
  }
  const double norm = current + sum;
  for (int k = 0; k <= n_max; ++k) out[k] /= norm;
}

void check_args(int n, double x) {
  if (n < 0 || n > kMaxBesselOrder) throw UnsupportedOrder(n);
  if (!std::isfinite(x) || x < 0.0) throw std::domain_error("bessel_j: argument must be finite and >= 0");
}

}  // namespace

double bessel_j(int n, double x) {
  check_args(n, x);
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (x < kSeriesLimit) return series(n, x);
  if (x >= hankel_threshold(n)) return hankel(n, x);
  std::array<double, kMaxBesselOrder + 1> buf{};
  miller(n, x, buf);
  return buf[n];
}

double bessel_j_signed(int n, double x) {
  if (n >= 0) return bessel_j(n, x);
  const double v = bessel_j(-n, x);
  return (n % 2 == 0) ? v : -v;
}

void bessel_j_sequence(int n_max, double x, std::span<double> out) {
  check_args(n_max, x);
  if (out.size() < static_cast<std::size_t>(n_max + 1)) {
    throw std::invalid_argument("bessel_j_sequence: output span too small");
  }
  if (x == 0.0) {
    std::fill(out.begin(), out.begin() + n_max + 1, 0.0);
    out[0] = 1.0;
    return;
  }
  if (x < kSeriesLimit) {
    for (int n = 0; n <= n_max; ++n) out[n] = series(n, x);
    return;
  }
  if (x >= hankel_threshold(n_max)) {
    // Upward recurrence is stable for n < x.
    out[0] = hankel(0, x);
    if (n_max >= 1) out[1] = hankel(1, x);
    for (int n = 1; n < n_max; ++n) out[n + 1] = (2.0 * n / x) * out[n] - out[n - 1];
    return;
  }
  miller(n_max, x, out);
}

}  // namespace qaperture
