#include "kdv/stencil_schemes.hpp"

#include <cmath>
#include <string>

#include "kdv/errors.hpp"
#include "kdv/field_ops.hpp"
#include "kdv/potential.hpp"

namespace kdv {

using ops::add_in_place;
using ops::max_abs;
using ops::max_abs_diff;

namespace {

CirculantMatrix time_stencil(int n, double tau) {
  const double k = 1.0 / (4.0 * tau);
  return CirculantMatrix::from_stencil(
      n, {{1, k}, {0, 3.0 * k}, {-1, 3.0 * k}, {-2, k}});
}

CirculantMatrix dispersion_stencil(int n, double delta, double h) {
  const double k = delta * delta / (h * h * h);
  return CirculantMatrix::from_stencil(
      n, {{1, k}, {0, -3.0 * k}, {-1, 3.0 * k}, {-2, -k}});
}

CirculantMatrix sum(const CirculantMatrix& a, const CirculantMatrix& b) {
  Field row = a.first_row();
  add_in_place(row, b.first_row());
  return CirculantMatrix(std::move(row));
}

int checked_n(const Discretization& grid) {
  if (grid.n() < 4)
    throw InvalidArgument("the stencil schemes need n >= 4 (got " +
                          std::to_string(grid.n()) + ")");
  return grid.n();
}

// (1/h)[V'(m_i) - V'(m_{i-2})] where m_i = mean of a and b over (i, i+1).
Field cell_flux(FieldView a, FieldView b, double weight_a,
                const KdVParams& params, double h) {
  const int n = static_cast<int>(a.size());
  Field vp(n);
  for (int i = 0; i < n; ++i) {
    const int ip = (i + 1) % n;
    const double m = weight_a * (a[i] + a[ip]) + (0.5 - weight_a) * (b[i] + b[ip]);
    vp[i] = potential_Vprime(m, params);
  }
  Field out(n);
  for (int i = 0; i < n; ++i) out[i] = (vp[i] - vp[(i + n - 2) % n]) / h;
  return out;
}

}  // namespace

EightPointOperator::EightPointOperator(const KdVParams& params,
                                       const Discretization& grid)
    : params_(params),
      grid_(grid),
      T_(time_stencil(checked_n(grid), grid.tau())),
      D_(dispersion_stencil(grid.n(), params.delta, grid.h())),
      L_(sum(T_, D_)) {}

Field EightPointOperator::flux_difference(FieldView u_old,
                                          FieldView u_new) const {
  return cell_flux(u_old, u_new, 0.25, params_, grid_.h());
}

StencilStep EightPointOperator::step(FieldView u, const IterationControl& ctl) const {
  ctl.validate();
  if (static_cast<int>(u.size()) != grid_.n())
    throw InvalidArgument("eight-point step: field length differs from grid");
  // T u - D u is fixed over the sweeps.
  Field rhs0 = T_.apply(u);
  add_in_place(rhs0, D_.apply(u), -1.0);

  StencilStep out{Field(u.begin(), u.end()), {}};
  for (int l = 1; l <= ctl.max_iter; ++l) {
    Field rhs = rhs0;
    add_in_place(rhs, flux_difference(u, out.u), -1.0);
    Field u_new = L_.solve(rhs);
    const double diff = max_abs_diff(u_new, out.u);
    out.u = std::move(u_new);
    out.stats = {l, diff};
    const double size = max_abs(out.u);
    if (!std::isfinite(diff) || !(size <= ctl.divergence_threshold))
      throw DivergenceError("eight-point iteration diverged: max|u| = " +
                                std::to_string(size),
                            diff, l);
    if (diff <= ctl.tol) return out;
  }
  throw DivergenceError("eight-point iteration did not converge in " +
                            std::to_string(ctl.max_iter) + " sweeps",
                        out.stats.residual, ctl.max_iter);
}

Field EightPointOperator::explicit_step(FieldView u, long step) const {
  if (static_cast<int>(u.size()) != grid_.n())
    throw InvalidArgument("eight-point step: field length differs from grid");
  Field rhs = T_.apply(u);
  add_in_place(rhs, D_.apply(u), -1.0);
  add_in_place(rhs, cell_flux(u, u, 0.5, params_, grid_.h()), -1.0);
  Field u_new = L_.solve(rhs);
  const double m = max_abs(u_new);
  if (!ops::all_finite(u_new) || m > kStencilBlowup)
    throw BlowupError("explicit eight-point scheme blew up at step " +
                          std::to_string(step),
                      step, std::isfinite(m) ? m : INFINITY);
  return u_new;
}

StencilStep EightPointOperator::twelve_step(FieldView u_prev, FieldView u_curr,
                                            const IterationControl& ctl) const {
  ctl.validate();
  const int n = grid_.n();
  if (static_cast<int>(u_prev.size()) != n ||
      static_cast<int>(u_curr.size()) != n)
    throw InvalidArgument("twelve-point step: field length differs from grid");
  // (1/4)[T(u'' - u) + D(u'' + 2u' + u) + flux(u, u') + flux(u', u'')] = 0,
  // so (T + D) u'' = T u - D (2u' + u) - flux(u, u') - flux(u', u'').
  Field rhs0 = T_.apply(u_prev);
  add_in_place(rhs0, D_.apply(u_prev), -1.0);
  add_in_place(rhs0, D_.apply(u_curr), -2.0);
  add_in_place(rhs0, flux_difference(u_prev, u_curr), -1.0);

  StencilStep out{Field(u_curr.begin(), u_curr.end()), {}};
  for (int l = 1; l <= ctl.max_iter; ++l) {
    Field rhs = rhs0;
    add_in_place(rhs, flux_difference(u_curr, out.u), -1.0);
    Field u_new = L_.solve(rhs);
    const double diff = max_abs_diff(u_new, out.u);
    out.u = std::move(u_new);
    out.stats = {l, diff};
    const double size = max_abs(out.u);
    if (!std::isfinite(diff) || !(size <= ctl.divergence_threshold))
      throw DivergenceError("twelve-point iteration diverged", diff, l);
    if (diff <= ctl.tol) return out;
  }
  throw DivergenceError("twelve-point iteration did not converge in " +
                            std::to_string(ctl.max_iter) + " sweeps",
                        out.stats.residual, ctl.max_iter);
}

StencilStep eight_point_step(FieldView u_prev, const KdVParams& params,
                             const Discretization& grid,
                             const IterationControl& ctl) {
  return EightPointOperator(params, grid).step(u_prev, ctl);
}

Field eight_point_explicit_step(FieldView u_prev, const KdVParams& params,
                                const Discretization& grid) {
  return EightPointOperator(params, grid).explicit_step(u_prev);
}

StencilStep twelve_point_step(const TwoLevelState& state,
                              const KdVParams& params,
                              const Discretization& grid,
                              const IterationControl& ctl) {
  return EightPointOperator(params, grid)
      .twelve_step(state.u_prev, state.u_curr, ctl);
}

StencilResidual twelve_point_residual(const ThreeLevelState& levels,
                                      const KdVParams& params,
                                      const Discretization& grid) {
  const int n = checked_n(grid);
  const auto& a = levels.u_prev2;
  const auto& b = levels.u_prev;
  const auto& c = levels.u_curr;
  if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n ||
      static_cast<int>(c.size()) != n)
    throw InvalidArgument("twelve_point_residual: level length differs from grid");
  const double h = grid.h();
  const CirculantMatrix T = time_stencil(n, grid.tau());
  const CirculantMatrix D = dispersion_stencil(n, params.delta, h);

  const Field time = T.apply(ops::lincomb(0.25, c, -0.25, a));
  Field disp_arg = ops::lincomb(0.25, c, 0.25, a);
  add_in_place(disp_arg, b, 0.5);
  const Field disp = D.apply(disp_arg);
  const Field f1 = cell_flux(a, b, 0.25, params, h);
  const Field f2 = cell_flux(b, c, 0.25, params, h);

  StencilResidual res;
  for (int i = 0; i < n; ++i) {
    const double fl = 0.25 * (f1[i] + f2[i]);
    res.max_abs = std::max(res.max_abs, std::abs(time[i] + disp[i] + fl));
    res.scale = std::max({res.scale, std::abs(time[i]), std::abs(disp[i]),
                          std::abs(fl)});
  }
  return res;
}

}  // namespace kdv
