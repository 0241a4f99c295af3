#pragma once

#include "kdv/types.hpp"

namespace kdv {

/// Single-soliton parameters of u = A sech^2(k (x - s t - x0)).
struct SolitonShape {
  double amplitude;
  double speed;  // s = eta*A/3
  double width;  // k = sqrt(eta*A/12)/delta

  static SolitonShape of(const KdVParams& params, double amplitude);
  /// int A sech^2(k x) dx over the real line = 2A/k.
  double mass() const noexcept { return 2.0 * amplitude / width; }
};

/// Pointwise value of the traveling wave, without periodic wrapping.
double soliton_value(const SolitonShape& s, double x0, double t, double x);

/// Samples A sech^2(k (x - s t - x0)) on the grid. The offset x - s t - x0 is
/// reduced to the nearest periodic image, so the wave re-enters at xmin after
/// leaving at xmax. Throws InvalidArgument when eta*A <= 0.
Field analytic_one_soliton(const KdVParams& params, double amplitude,
                           double x0, double t, const Discretization& grid);

}  // namespace kdv
