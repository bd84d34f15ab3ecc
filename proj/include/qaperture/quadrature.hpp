#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "qaperture/errors.hpp"

namespace qaperture {

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_depth = 40;
  /// Kronrod nodes per 2*pi of accumulated phase in the initial partition.
  int min_nodes_per_oscillation = 8;

  void validate() const {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("QuadratureSpec: rel_tol must be > 0");
    if (!(abs_tol >= 0.0)) throw std::invalid_argument("QuadratureSpec: abs_tol must be >= 0");
    if (max_depth < 1) throw std::invalid_argument("QuadratureSpec: max_depth must be >= 1");
    if (min_nodes_per_oscillation < 4) {
      throw std::invalid_argument("QuadratureSpec: min_nodes_per_oscillation must be >= 4");
    }
  }
};

template <std::size_t N>
struct VectorQuadratureResult {
  std::array<std::complex<double>, N> value{};
  double error = 0.0;
  std::size_t evaluations = 0;
  std::size_t panels = 0;
};

struct QuadratureResult {
  std::complex<double> value{};
  double error = 0.0;
  std::size_t evaluations = 0;
  std::size_t panels = 0;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair; abscissae in descending order, the
// last entry is the centre.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline constexpr std::size_t kMaxPanels = std::size_t{1} << 21;

template <std::size_t N>
struct Panel {
  double a;
  double b;
  int depth;
  std::array<std::complex<double>, N> value;
  double error;
  bool at_roundoff;

  bool operator<(const Panel& o) const { return error < o.error; }
};

template <std::size_t N>
double max_abs(const std::array<std::complex<double>, N>& v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, std::abs(c));
  return m;
}

template <std::size_t N, class F>
Panel<N> kronrod_panel(F& f, double a, double b, int depth) {
  using Vec = std::array<std::complex<double>, N>;
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const Vec fc = f(centre);
  Vec kronrod{};
  Vec gauss{};
  std::array<double, N> magnitude{};
  for (std::size_t i = 0; i < N; ++i) {
    kronrod[i] = kKronrodWeights[7] * fc[i];
    gauss[i] = kGaussWeights[3] * fc[i];
    magnitude[i] = kKronrodWeights[7] * std::abs(fc[i]);
  }
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const Vec lo = f(centre - dx);
    const Vec hi = f(centre + dx);
    for (std::size_t i = 0; i < N; ++i) {
      const auto pair = lo[i] + hi[i];
      kronrod[i] += kKronrodWeights[j] * pair;
      magnitude[i] += kKronrodWeights[j] * (std::abs(lo[i]) + std::abs(hi[i]));
      if (j % 2 == 1) gauss[i] += kGaussWeights[j / 2] * pair;
    }
  }
  Panel<N> p{a, b, depth, {}, 0.0, false};
  double roundoff = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    p.value[i] = kronrod[i] * half;
    p.error = std::max(p.error, std::abs((kronrod[i] - gauss[i]) * half));
    roundoff = std::max(roundoff, 50.0 * std::numeric_limits<double>::epsilon() * magnitude[i] * std::abs(half));
  }
  if (p.error <= roundoff) {
    p.error = roundoff;
    p.at_roundoff = true;
  }
  return p;
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of a vector of N complex
/// integrands sharing one set of nodes. The initial partition places at least
/// `min_nodes_per_oscillation` Kronrod nodes per 2*pi of phase, given the
/// caller's bound `phase_rate` (radians per unit of the integration variable).
/// Converged when the summed error is <= max(rel_tol * max|I_i|, abs_tol).
template <std::size_t N, class F>
VectorQuadratureResult<N> integrate_vector(F&& f, double a, double b, const QuadratureSpec& spec,
                                           double phase_rate) {
  spec.validate();
  if (!(a < b)) throw std::invalid_argument("adaptive_integrate: requires a < b");
  using Vec = std::array<std::complex<double>, N>;
  using detail::Panel;

  const double oscillations = std::abs(phase_rate) * (b - a) / (2.0 * std::numbers::pi);
  const double wanted = std::ceil(oscillations * spec.min_nodes_per_oscillation / 15.0);
  const auto initial = static_cast<std::size_t>(std::clamp(wanted, 1.0, static_cast<double>(1 << 18)));

  std::priority_queue<Panel<N>> heap;
  Vec total{};
  double error = 0.0;
  std::size_t evaluations = 0;
  const double width = (b - a) / static_cast<double>(initial);
  for (std::size_t k = 0; k < initial; ++k) {
    const double lo = a + width * static_cast<double>(k);
    const double hi = (k + 1 == initial) ? b : a + width * static_cast<double>(k + 1);
    auto p = detail::kronrod_panel<N>(f, lo, hi, 0);
    evaluations += 15;
    for (std::size_t i = 0; i < N; ++i) total[i] += p.value[i];
    error += p.error;
    heap.push(std::move(p));
  }

  auto resum = [&] {
    Vec t{};
    double e = 0.0;
    auto copy = heap;
    while (!copy.empty()) {
      const auto& p = copy.top();
      for (std::size_t i = 0; i < N; ++i) t[i] += p.value[i];
      e += p.error;
      copy.pop();
    }
    total = t;
    error = e;
  };

  std::size_t splits = 0;
  while (true) {
    const double target = std::max(spec.rel_tol * detail::max_abs<N>(total), spec.abs_tol);
    if (error <= target) {
      resum();
      if (error <= std::max(spec.rel_tol * detail::max_abs<N>(total), spec.abs_tol)) break;
    }
    const Panel<N> worst = heap.top();
    if (worst.at_roundoff) break;  // the remaining error is rounding noise
    if (worst.depth >= spec.max_depth || heap.size() >= detail::kMaxPanels) {
      resum();
      std::size_t lead = 0;
      for (std::size_t i = 1; i < N; ++i) {
        if (std::abs(total[i]) > std::abs(total[lead])) lead = i;
      }
      throw NonConvergence("adaptive_integrate: no convergence on [" + std::to_string(a) + ", " +
                               std::to_string(b) + "], error " + std::to_string(error),
                           total[lead], error);
    }
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    auto left = detail::kronrod_panel<N>(f, worst.a, mid, worst.depth + 1);
    auto right = detail::kronrod_panel<N>(f, mid, worst.b, worst.depth + 1);
    evaluations += 30;
    for (std::size_t i = 0; i < N; ++i) total[i] += left.value[i] + right.value[i] - worst.value[i];
    error += left.error + right.error - worst.error;
    heap.push(std::move(left));
    heap.push(std::move(right));
    if (++splits % 256 == 0) resum();
  }

  VectorQuadratureResult<N> out;
  out.value = total;
  out.error = error;
  out.evaluations = evaluations;
  out.panels = heap.size();
  return out;
}

/// Scalar complex integral of f over [a, b]; see integrate_vector.
inline QuadratureResult adaptive_integrate(const std::function<std::complex<double>(double)>& f, double a,
                                           double b, const QuadratureSpec& spec, double phase_rate) {
  auto wrapped = [&f](double x) { return std::array<std::complex<double>, 1>{f(x)}; };
  const auto r = integrate_vector<1>(wrapped, a, b, spec, phase_rate);
  return {r.value[0], r.error, r.evaluations, r.panels};
}

}  // namespace qaperture
