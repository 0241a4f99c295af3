#include "kdv/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "kdv/errors.hpp"
#include "kdv/field_ops.hpp"
#include "kdv/soliton.hpp"

namespace kdv {

FieldDistance compare_fields(FieldView a, FieldView b, double h) {
  ops::require_same_size(a, b, "compare_fields");
  FieldDistance d;
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double e = std::abs(a[i] - b[i]);
    d.linf = std::max(d.linf, e);
    s += e * e;
  }
  d.l2 = std::sqrt(h * s);
  return d;
}

double convergence_order(const std::vector<std::pair<double, double>>& he) {
  if (he.size() < 3)
    throw InvalidArgument("convergence_order needs at least 3 refinement levels");
  const bool down = he[1].first < he[0].first;
  for (std::size_t k = 0; k < he.size(); ++k) {
    if (!(he[k].first > 0.0) || !(he[k].second > 0.0))
      throw InvalidArgument("convergence_order needs positive h and errors");
    if (k > 0 && (down ? !(he[k].first < he[k - 1].first)
                       : !(he[k].first > he[k - 1].first)))
      throw InvalidArgument("convergence_order: refinements are not monotone in h");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(he.size());
  for (auto [h, e] : he) {
    const double x = std::log(h), y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

FieldDistance soliton_error(FieldView u, const KdVParams& params,
                            const Discretization& grid, double amplitude,
                            double x0, double t) {
  const Field exact = analytic_one_soliton(params, amplitude, x0, t, grid);
  return compare_fields(u, exact, grid.h());
}

double peak_location(FieldView u, const Discretization& grid) {
  const int n = static_cast<int>(u.size());
  if (n != grid.n() || n < 3)
    throw InvalidArgument("peak_location: field length differs from grid");
  const int k = static_cast<int>(std::max_element(u.begin(), u.end()) - u.begin());
  const double ym = u[(k + n - 1) % n], y0 = u[k], yp = u[(k + 1) % n];
  const double den = ym - 2.0 * y0 + yp;
  const double off = den != 0.0 ? 0.5 * (ym - yp) / den : 0.0;
  const double L = grid.h() * n;
  double x = grid.x(k) + off * grid.h() - grid.xmin();
  x = std::fmod(x, L);
  if (x < 0) x += L;
  return grid.xmin() + x;
}

ConservationRecord conservation_record(long step, double time, FieldView u,
                                       double h, int iterations,
                                       double residual) {
  ConservationRecord r;
  r.step = step;
  r.time = time;
  r.mass = discrete_mass(u, h);
  double s = 0.0;
  for (double x : u) {
    r.linf = std::max(r.linf, std::abs(x));
    s += x * x;
  }
  r.l2 = std::sqrt(h * s);
  r.iterations = iterations;
  r.residual = residual;
  return r;
}

}  // namespace kdv
