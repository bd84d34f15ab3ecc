#pragma once

#include <functional>
#include <string>
#include <utility>

#include "qaperture/atom.hpp"
#include "qaperture/focusing.hpp"
#include "qaperture/observables.hpp"

namespace qaperture {

/// Orientation of the atomic dipole in the scattering ratio.
enum class DipolePolicy {
  aligned,         // along the local polarization of the beam at the atom
  component_plus,  // fixed to e+
};

std::string to_string(DipolePolicy policy);

/// R_s = (3/2pi) |u . E(r0)|^2 / P for an atom at the on-axis intensity
/// maximum, with P the power through the focal plane.
double scattering_ratio(const BeamSpec& spec, DipolePolicy policy = DipolePolicy::aligned);

/// Same, with the atom at a given axial position instead of the focus.
double scattering_ratio_at(const BeamSpec& spec, double z_atom, DipolePolicy policy = DipolePolicy::aligned);

/// I_L / I_d in the forward direction at distance `radius` from the atom.
/// Throws NumericalError when I_d vanishes.
double forward_ratio(const Scene& scene, double radius = 50.0);

/// Same for an atom placed at the focus and driven weakly.
double forward_ratio(const BeamSpec& spec, const AtomSpec& atom, double radius = 50.0,
                     double omega_over_gamma = 0.01);

struct CouplingReport {
  double f = 0.0;
  double z_in = 0.0;
  double z_R = 0.0;
  double z_0 = 0.0;
  double z_focus = 0.0;
  double R_s = 0.0;
  double forward_ratio = 0.0;
  double g2_forward = 0.0;
  SpotMetrics spot;
  bool at_boundary = false;
};

CouplingReport coupling_report(const BeamSpec& spec, const AtomSpec& atom, double radius = 50.0,
                               double omega_over_gamma = 0.01, DipolePolicy policy = DipolePolicy::aligned);

struct GoldenResult {
  double x = 0.0;
  double value = 0.0;
  bool at_boundary = false;
  int evaluations = 0;
};

/// Golden-section maximization of g on [lo, hi] until the interval is below
/// tol. Flags results that end within tol of either bound.
GoldenResult golden_maximize(const std::function<double(double)>& g, double lo, double hi, double tol);

struct ZinOptimum {
  double z_in = 0.0;
  double R_s = 0.0;
  bool at_boundary = false;
};

/// Maximizes R_s over z_in at fixed f, golden section in log z_in to relative
/// tolerance rel_tol.
ZinOptimum optimize_zin(const BeamSpec& base, std::pair<double, double> bounds, double rel_tol = 1e-3,
                        DipolePolicy policy = DipolePolicy::aligned);

struct JointOptimum {
  double f = 0.0;
  double z_in = 0.0;
  double R_s = 0.0;
  bool at_boundary = false;
  int infeasible = 0;  // grid points without an interior focus
};

struct JointBounds {
  std::pair<double, double> f{1.5, 500.0};
  std::pair<double, double> z_in{1.0, 3.0e5};
};

/// Joint search over (f, z_in): 8x8 log-grid seed, then alternating golden
/// sections in log f and log z_in.
JointOptimum joint_optimize(const BeamSpec& base, const JointBounds& bounds = {}, double rel_tol = 1e-3,
                            DipolePolicy policy = DipolePolicy::aligned);

}  // namespace qaperture
