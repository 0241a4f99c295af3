#include "kdv/soliton.hpp"

#include <cmath>

#include "kdv/errors.hpp"

namespace kdv {

SolitonShape SolitonShape::of(const KdVParams& params, double amplitude) {
  if (!(params.eta * amplitude > 0.0))
    throw InvalidArgument("soliton needs eta*A > 0 for a real width");
  if (params.delta == 0.0) throw InvalidArgument("soliton needs delta != 0");
  return {amplitude, params.eta * amplitude / 3.0,
          std::sqrt(params.eta * amplitude / 12.0) / std::abs(params.delta)};
}

double soliton_value(const SolitonShape& s, double x0, double t, double x) {
  const double c = std::cosh(s.width * (x - s.speed * t - x0));
  return s.amplitude / (c * c);
}

Field analytic_one_soliton(const KdVParams& params, double amplitude,
                           double x0, double t, const Discretization& grid) {
  const auto shape = SolitonShape::of(params, amplitude);
  const double period = params.length();
  Field u(grid.n());
  for (int i = 0; i < grid.n(); ++i) {
    double xi = grid.x(i) - shape.speed * t - x0;
    xi -= period * std::round(xi / period);
    u[i] = soliton_value(shape, 0.0, 0.0, xi);
  }
  return u;
}

}  // namespace kdv
