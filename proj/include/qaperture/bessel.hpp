#pragma once

#include <span>

namespace qaperture {

inline constexpr int kMaxBesselOrder = 32;

/// Integer-order Bessel function of the first kind J_n(x), n in [0, 32], x >= 0.
/// Throws UnsupportedOrder for n outside that range, std::domain_error for
/// negative or non-finite x.
double bessel_j(int n, double x);

/// J_n for negative orders via J_{-n} = (-1)^n J_n.
double bessel_j_signed(int n, double x);

/// Fills out[0..n_max] with J_0(x) ... J_{n_max}(x) in one pass.
/// out.size() must be at least n_max + 1.
void bessel_j_sequence(int n_max, double x, std::span<double> out);

}  // namespace qaperture
