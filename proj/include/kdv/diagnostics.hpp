#pragma once

#include <utility>
#include <vector>

#include "kdv/types.hpp"

namespace kdv {

struct FieldDistance {
  double linf = 0.0;
  double l2 = 0.0;  // sqrt(h * sum d^2)
};

/// Max-norm and h-weighted 2-norm of a - b.
FieldDistance compare_fields(FieldView a, FieldView b, double h);

/// Least-squares slope of log(error) against log(h). Needs at least three
/// levels with h strictly decreasing (or strictly increasing) and positive
/// errors.
double convergence_order(const std::vector<std::pair<double, double>>& h_error);

/// Distance to the analytic one-soliton at time t.
FieldDistance soliton_error(FieldView u, const KdVParams& params,
                            const Discretization& grid, double amplitude,
                            double x0, double t);

/// Argmax with a three-point parabolic refinement, periodic in x; the result
/// lies in [xmin, xmax).
double peak_location(FieldView u, const Discretization& grid);

struct ConservationRecord {
  long step = 0;
  double time = 0.0;
  double mass = 0.0;
  double linf = 0.0;
  double l2 = 0.0;  // sqrt(h * sum u^2)
  int iterations = 0;
  double residual = 0.0;
};

ConservationRecord conservation_record(long step, double time, FieldView u,
                                       double h, int iterations,
                                       double residual);

}  // namespace kdv
