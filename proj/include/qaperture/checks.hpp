#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "qaperture/atom.hpp"
#include "qaperture/focusing.hpp"

namespace qaperture {

struct CheckResult {
  std::string name;
  double value = 0.0;      // measured discrepancy
  double tolerance = 0.0;  // pass when value <= tolerance
  bool pass = false;
};

/// Mode, beam and atom invariants evaluated for one beam.
/// Cheap enough to run from the CLI on every configuration.
std::vector<CheckResult> run_checks(const BeamSpec& spec, const AtomSpec& atom);

/// |div F| / (k max|F|) by central differences of step h.
template <class Field>
double relative_divergence(Field&& field, const Vec3& r, double h) {
  const std::array<Vec3, 3> axes{Vec3{h, 0.0, 0.0}, Vec3{0.0, h, 0.0}, Vec3{0.0, 0.0, h}};
  cplx div{};
  double scale = 0.0;
  for (std::size_t a = 0; a < 3; ++a) {
    const auto hi = field(r + axes[a]).cartesian();
    const auto lo = field(r - axes[a]).cartesian();
    div += (hi[a] - lo[a]) / (2.0 * h);
    for (std::size_t c = 0; c < 3; ++c) scale = std::max({scale, std::abs(hi[c]), std::abs(lo[c])});
  }
  return std::abs(div) / (kWavenumber * scale);
}

}  // namespace qaperture
