#include "kdv/reduced_schemes.hpp"

#include <cmath>
#include <string>

#include "kdv/errors.hpp"
#include "kdv/field_ops.hpp"

namespace kdv {

using ops::add_in_place;
using ops::lincomb;
using ops::mass_vector;
using ops::max_abs;
using ops::max_abs_diff;

namespace {

void check(const ReducedOperators& o, int n) {
  if (n % 2 == 0)
    throw SingularityError("A singular for even n (n = " + std::to_string(n) +
                           "); the reduced schemes need odd n");
  if (n != o.n) throw InvalidArgument("operators built for another grid");
}

Field squares(FieldView a, double scale) {
  Field out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = scale * a[i];
    out[i] = x * x;
  }
  return out;
}

// M1 (q - cvec/h) + M2 (p + cvec): the iteration-independent part of p'.
Field p_base(const ReducedState& s, const Field& cv, const ReducedOperators& o,
             OperatorVariant variant) {
  Field out = apply_dense(o.M1, lincomb(1.0, s.q, -1.0 / o.h, cv));
  add_in_place(out, apply_dense(o.M2(variant), lincomb(1.0, s.p, 1.0, cv)));
  return out;
}

Field q_from_p(const ReducedState& s, FieldView p_new, const Field& cv,
               double h) {
  Field q = lincomb(-1.0, s.q, 2.0 / h, p_new);
  add_in_place(q, s.p, 2.0 / h);
  add_in_place(q, cv, 2.0 / h);
  return q;
}

void check_blowup(FieldView q, long step, const char* scheme) {
  const double m = max_abs(q);
  if (!ops::all_finite(q) || m > kReducedBlowup)
    throw BlowupError(std::string(scheme) + " blew up at step " +
                          std::to_string(step) + " (max|q| = " +
                          std::to_string(m) + ")",
                      step, std::isfinite(m) ? m : INFINITY);
}

// (2/h)[(M1 + (h/2) M2) z + C cvec]: everything in z' except the M3 term.
Field z_linear(const ZState& s, const Field& cv, const ReducedOperators& o,
               OperatorVariant variant) {
  const Matrix& M2 = o.M2(variant);
  Field out = apply_dense(o.M1, s.z);
  add_in_place(out, apply_dense(M2, s.z), 0.5 * o.h);
  const double k = variant == OperatorVariant::Exact ? 2.0 / o.h : 1.0 / o.h;
  add_in_place(out, cv);
  add_in_place(out, apply_dense(M2, cv));
  add_in_place(out, apply_dense(o.M1, cv), -k);
  for (auto& x : out) x *= 2.0 / o.h;
  return out;
}

ZState z_explicit(const ZState& s, const Field& nonlinear_arg_sq,
                  MassConstant mass, const ReducedOperators& o,
                  OperatorVariant variant, long step, const char* name) {
  const Field cv = mass_vector(s.size(), mass.c);
  Field z_new = z_linear(s, cv, o, variant);
  add_in_place(z_new, apply_dense(o.M3, nonlinear_arg_sq), 2.0 / o.h);
  ZState out{z_new, lincomb(1.0, z_new, -1.0, s.q)};
  check_blowup(out.q, step, name);
  return out;
}

void check_z(const ZState& s, const ReducedOperators& o) {
  if (s.q.size() != s.z.size()) throw InvalidArgument("ZState: length mismatch");
  check(o, s.size());
}

}  // namespace

ReducedState make_reduced_state(FieldView u0, MassConstant mass, double h) {
  const int n = static_cast<int>(u0.size());
  ReducedState s;
  s.q = apply_A(u0);
  s.p = ops::scaled(0.5 * h, s.q);
  s.p[n - 1] -= mass.c;
  return s;
}

ReducedStep pq_step(const ReducedState& s, MassConstant mass,
                    const ReducedOperators& o, OperatorVariant variant,
                    const IterationControl& ctl) {
  ctl.validate();
  ops::require_same_size(s.p, s.q, "pq_step");
  check(o, s.size());
  const Field cv = mass_vector(s.size(), mass.c);
  const Field base = p_base(s, cv, o, variant);

  ReducedStep out{s, {}};
  for (int l = 1; l <= ctl.max_iter; ++l) {
    Field p_new = base;
    add_in_place(p_new,
                 apply_dense(o.M3, squares(lincomb(1.0, s.q, 1.0, out.state.q), 0.25)));
    Field q_new = q_from_p(s, p_new, cv, o.h);
    const double diff = max_abs_diff(q_new, out.state.q);
    out.state = {std::move(p_new), std::move(q_new)};
    out.stats = {l, diff};
    const double size = max_abs(out.state.q);
    if (!std::isfinite(diff) || !(size <= ctl.divergence_threshold))
      throw DivergenceError("p-q iteration diverged: max|q| = " +
                                std::to_string(size),
                            diff, l);
    if (diff <= ctl.tol) return out;
  }
  throw DivergenceError("p-q iteration did not converge in " +
                            std::to_string(ctl.max_iter) + " sweeps",
                        out.stats.residual, ctl.max_iter);
}

ReducedState pq_step_explicit(const ReducedState& s, MassConstant mass,
                              const ReducedOperators& o,
                              OperatorVariant variant, long step) {
  ops::require_same_size(s.p, s.q, "pq_step_explicit");
  check(o, s.size());
  const Field cv = mass_vector(s.size(), mass.c);
  Field p_new = p_base(s, cv, o, variant);
  add_in_place(p_new, apply_dense(o.M3, squares(s.q, 0.5)));
  ReducedState out{p_new, q_from_p(s, p_new, cv, o.h)};
  check_blowup(out.q, step, "explicit p-q scheme");
  return out;
}

ZStep z_bootstrap(const ReducedState& s0, MassConstant mass,
                  const ReducedOperators& o, OperatorVariant variant,
                  const IterationControl& ctl) {
  ReducedStep first = pq_step(s0, mass, o, variant, ctl);
  ZState z{lincomb(1.0, first.state.q, 1.0, s0.q), first.state.q};
  return {std::move(z), first.stats};
}

ZState z_bootstrap_explicit(const ReducedState& s0, MassConstant mass,
                            const ReducedOperators& o,
                            OperatorVariant variant) {
  ReducedState first = pq_step_explicit(s0, mass, o, variant, 1);
  return {lincomb(1.0, first.q, 1.0, s0.q), first.q};
}

ZStep z_step(const ZState& s, MassConstant mass, const ReducedOperators& o,
             OperatorVariant variant, const IterationControl& ctl) {
  ctl.validate();
  check_z(s, o);
  const Field cv = mass_vector(s.size(), mass.c);
  Field base = z_linear(s, cv, o, variant);
  const Field old_sq = squares(s.z, 0.25);

  Field z_it = s.z;
  IterationStats stats;
  for (int l = 1; l <= ctl.max_iter; ++l) {
    Field sq = squares(z_it, 0.25);
    add_in_place(sq, old_sq);
    Field z_new = base;
    add_in_place(z_new, apply_dense(o.M3, sq), 2.0 / o.h);
    const double diff = max_abs_diff(z_new, z_it);
    z_it = std::move(z_new);
    stats = {l, diff};
    const double size = max_abs(z_it);
    if (!std::isfinite(diff) || !(size <= ctl.divergence_threshold))
      throw DivergenceError("z iteration diverged: max|z| = " +
                                std::to_string(size),
                            diff, l);
    if (diff <= ctl.tol) {
      Field q_new = lincomb(1.0, z_it, -1.0, s.q);
      return {{std::move(z_it), std::move(q_new)}, stats};
    }
  }
  throw DivergenceError("z iteration did not converge in " +
                            std::to_string(ctl.max_iter) + " sweeps",
                        stats.residual, ctl.max_iter);
}

ZState z_step_explicit(const ZState& s, MassConstant mass,
                       const ReducedOperators& o, OperatorVariant variant,
                       long step) {
  check_z(s, o);
  Field sq = squares(s.q, 0.5);
  add_in_place(sq, squares(lincomb(1.0, s.z, -1.0, s.q), 0.5));
  return z_explicit(s, sq, mass, o, variant, step, "explicit z-scheme");
}

ZState z_step_explicit_unstable(const ZState& s, MassConstant mass,
                                const ReducedOperators& o,
                                OperatorVariant variant, long step) {
  check_z(s, o);
  Field sq = squares(s.q, 0.5);
  add_in_place(sq, squares(s.z, 0.25));
  return z_explicit(s, sq, mass, o, variant, step,
                    "unstable explicit z-scheme");
}

Field recover_u(FieldView q) { return solve_A(q); }

Field recover_phi(FieldView p, BoundaryAnchor anchor) {
  return solve_B_anchored(p, anchor.index, anchor.value);
}

}  // namespace kdv
