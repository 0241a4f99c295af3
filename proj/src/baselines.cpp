#include "kdv/baselines.hpp"

#include <cmath>
#include <string>

#include "kdv/errors.hpp"
#include "kdv/field_ops.hpp"

namespace kdv {

namespace {

// 2 tau times the semi-discrete right-hand side at u.
Field leapfrog_increment(FieldView u, const KdVParams& params,
                         const Discretization& grid) {
  const int n = static_cast<int>(u.size());
  if (n != grid.n()) throw InvalidArgument("ZK: field length differs from grid");
  if (n < 5) throw InvalidArgument("ZK needs n >= 5");
  const double h = grid.h(), tau = grid.tau();
  const double a = params.eta * tau / (3.0 * h);
  const double b = params.delta * params.delta * tau / (h * h * h);
  Field out(n);
  for (int i = 0; i < n; ++i) {
    const double up2 = u[(i + 2) % n], up1 = u[(i + 1) % n];
    const double um1 = u[(i + n - 1) % n], um2 = u[(i + n - 2) % n];
    out[i] = -a * (up1 + u[i] + um1) * (up1 - um1) -
             b * (up2 - 2.0 * up1 + 2.0 * um1 - um2);
  }
  return out;
}

void check_blowup(FieldView u, long step) {
  const double m = ops::max_abs(u);
  if (!ops::all_finite(u) || m > kZkBlowup)
    throw BlowupError("Zabusky-Kruskal scheme blew up at step " +
                          std::to_string(step),
                      step, std::isfinite(m) ? m : INFINITY);
}

}  // namespace

Field zk_step(const TwoLevelState& state, const KdVParams& params,
              const Discretization& grid, long step) {
  ops::require_same_size(state.u_prev, state.u_curr, "zk_step");
  Field out = leapfrog_increment(state.u_curr, params, grid);
  ops::add_in_place(out, state.u_prev);
  check_blowup(out, step);
  return out;
}

Field zk_bootstrap(FieldView u0, const KdVParams& params,
                   const Discretization& grid) {
  Field out = leapfrog_increment(u0, params, grid);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = u0[i] + 0.5 * out[i];
  check_blowup(out, 1);
  return out;
}

}  // namespace kdv
