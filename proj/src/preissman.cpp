#include "kdv/preissman.hpp"

#include <cmath>
#include <string>

#include "kdv/errors.hpp"
#include "kdv/field_ops.hpp"
#include "kdv/potential.hpp"

namespace kdv {

using ops::add_in_place;
using ops::lincomb;
using ops::mass_vector;
using ops::max_abs;
using ops::max_abs_diff;
using ops::scaled;

namespace {

// (B A^-1) x, matrix-free.
Field BAinv(FieldView x) { return apply_B(solve_A(x)); }

// V'(u_bar_i) with u_bar_i = (q_i + q_new_i)/4, the cell average over (i, i+1)
// and both time levels.
Field cell_Vprime(FieldView q, FieldView q_new, const KdVParams& params) {
  Field out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    out[i] = potential_Vprime(0.25 * (q[i] + q_new[i]), params);
  return out;
}

KdVParams params_of(const ReducedOperators& o) {
  return KdVParams{o.eta, o.delta, 0.0, 1.0};
}

// The w row: A w_new = (1/tau) A (phi_new - phi) + (8 d^2/h^3)(B A^-1)^2 s
// + 4 V - A w, where s = p + p_new + cvec.
Field w_update(FieldView phi, FieldView phi_new, FieldView w, FieldView s,
               FieldView V, double h, double tau, double delta) {
  Field rhs = BAinv(BAinv(s));
  for (auto& x : rhs) x *= 8.0 * delta * delta / (h * h * h);
  add_in_place(rhs, V, 4.0);
  Field w_new = solve_A(rhs);
  for (std::size_t i = 0; i < w_new.size(); ++i)
    w_new[i] += (phi_new[i] - phi[i]) / tau - w[i];
  return w_new;
}

// The v row: A v_new = (4 d/h^2) B A^-1 s - A v.
Field v_update(FieldView v, FieldView s, double h, double delta) {
  Field v_new = solve_A(scaled(4.0 * delta / (h * h), BAinv(s)));
  add_in_place(v_new, v, -1.0);
  return v_new;
}

void check_odd(int n) {
  if (n % 2 == 0)
    throw SingularityError("A singular for even n (n = " + std::to_string(n) +
                           "); the staged Preissman solver needs odd n");
}

}  // namespace

MultisymplecticPair MultisymplecticPair::kdv(double delta) {
  MultisymplecticPair p;
  p.M << 0, 0.5, 0, 0,  //
      -0.5, 0, 0, 0,    //
      0, 0, 0, 0,       //
      0, 0, 0, 0;
  p.K << 0, 0, 0, 1,    //
      0, 0, -delta, 0,  //
      0, delta, 0, 0,   //
      -1, 0, 0, 0;
  return p;
}

TangentField TangentField::zeros(int n) {
  return {Field(n, 0.0), Field(n, 0.0), Field(n, 0.0), Field(n, 0.0)};
}

Matrix assemble_D(const KdVParams& params, const Discretization& grid,
                  std::optional<BoundaryAnchor> anchor) {
  const int n = grid.n();
  if (n < 3) throw InvalidArgument("assemble_D needs n >= 3");
  const double h = grid.h(), tau = grid.tau(), r = grid.r(), d = params.delta;
  const Matrix A = dense_A(n), B = dense_B(n);
  Matrix D = Matrix::Zero(4 * n + (anchor ? 1 : 0), 4 * n);
  // Column blocks: u, v, w, phi.
  D.block(0, 0, n, n) = 0.5 * h * A;
  D.block(0, 3 * n, n, n) = -B;
  D.block(n, 0, n, n) = -d * B;
  D.block(n, n, n, n) = 0.5 * h * A;
  D.block(2 * n, n, n, n) = -d * r * B;
  D.block(2 * n, 2 * n, n, n) = 0.5 * tau * A;
  D.block(2 * n, 3 * n, n, n) = -0.5 * A;
  D.block(3 * n, 0, n, n) = 0.5 * A;
  D.block(3 * n, 2 * n, n, n) = r * B;
  if (anchor) {
    if (anchor->index < 1 || anchor->index > n)
      throw InvalidArgument("anchor index outside [1, n]");
    D(4 * n, 3 * n + anchor->index - 1) = 1.0;
  }
  return D;
}

StateField initialize_auxiliary(FieldView u0, MassConstant mass,
                                const KdVParams& params,
                                const Discretization& grid,
                                BoundaryAnchor anchor) {
  const int n = grid.n();
  if (static_cast<int>(u0.size()) != n)
    throw InvalidArgument("initial field length differs from grid size");
  if (!ops::all_finite(u0)) throw InvalidArgument("initial field not finite");
  check_odd(n);
  const double h = grid.h(), d = params.delta;

  StateField z;
  z.u.assign(u0.begin(), u0.end());
  Field p = scaled(0.5 * h, apply_A(u0));
  p[n - 1] -= mass.c;
  z.phi = solve_B_anchored(p, anchor.index, anchor.value);
  z.v = solve_A(scaled(2.0 * d / h, apply_B(u0)));

  z.w.resize(n);
  for (int i = 0; i < n; ++i) {
    const int ip = (i + 1) % n, im = (i + n - 1) % n;
    const double uxx = (u0[ip] - 2.0 * u0[i] + u0[im]) / (h * h);
    const double phi_t = -0.5 * params.eta * u0[i] * u0[i] - d * d * uxx;
    const double vx = (z.v[ip] - z.v[im]) / (2.0 * h);
    z.w[i] = 0.5 * phi_t + d * vx + potential_Vprime(u0[i], params);
  }
  return z;
}

PreissmanStep preissman_step(const StateField& state, MassConstant mass,
                             const ReducedOperators& ops, BoundaryAnchor anchor,
                             const IterationControl& ctl) {
  state.validate();
  ctl.validate();
  const int n = state.size();
  check_odd(n);
  if (n != ops.n) throw InvalidArgument("operators built for another grid");
  const double h = ops.h, tau = ops.tau, r = ops.r();
  const auto params = params_of(ops);

  const Field cv = mass_vector(n, mass.c);
  const Field p = apply_B(state.phi);
  const Field q = apply_A(state.u);
  // M1 (q - cvec/h) + M2 (p + cvec): the part of the potential row that does
  // not change between sweeps.
  Field base = apply_dense(ops.M1, lincomb(1.0, q, -1.0 / h, cv));
  add_in_place(base, apply_dense(ops.M2_exact, lincomb(1.0, p, 1.0, cv)));

  PreissmanStep out{state, {}};
  Field p_it = p, q_it = q;
  for (int l = 1; l <= ctl.max_iter; ++l) {
    const Field V = cell_Vprime(q, q_it, params);
    Field p_new = base;
    add_in_place(p_new, apply_dense(ops.M1, BAinv(V)), -4.0 * r);

    Field s = lincomb(1.0, p, 1.0, p_new);
    add_in_place(s, cv);
    Field q_new = lincomb(-1.0, q, 2.0 / h, s);
    Field u_new = solve_A(q_new);
    Field v_new = v_update(state.v, s, h, ops.delta);
    Field phi_new = solve_B_anchored(p_new, anchor.index, anchor.value);
    Field w_new = w_update(state.phi, phi_new, state.w, s, V, h, tau, ops.delta);

    const double diff =
        std::max({max_abs_diff(u_new, out.state.u),
                  max_abs_diff(v_new, out.state.v), max_abs_diff(p_new, p_it)});
    out.state = {std::move(phi_new), std::move(u_new), std::move(v_new),
                 std::move(w_new)};
    out.stats = {l, diff};
    p_it = std::move(p_new);
    q_it = std::move(q_new);

    const double size = max_abs(out.state.u);
    if (!std::isfinite(diff) || !(size <= ctl.divergence_threshold))
      throw DivergenceError("Preissman iteration diverged: max|u| = " +
                                std::to_string(size),
                            diff, l);
    if (diff <= ctl.tol) return out;
  }
  throw DivergenceError("Preissman iteration did not converge in " +
                            std::to_string(ctl.max_iter) +
                            " sweeps (last difference " +
                            std::to_string(out.stats.residual) + ")",
                        out.stats.residual, ctl.max_iter);
}

MonolithicPreissman::MonolithicPreissman(const KdVParams& params,
                                         const Discretization& grid,
                                         std::optional<BoundaryAnchor> anchor)
    : params_(params), grid_(grid), anchor_(anchor.value_or(BoundaryAnchor{})) {
  const Matrix D = assemble_D(params, grid, anchor);
  rank_ = rank_of(D);
  if (rank_ < 4 * grid.n())
    throw DegenerateSystemError(
        "the coefficient matrix is degenerated: rank " + std::to_string(rank_) +
            " < " + std::to_string(4 * grid.n()) +
            (anchor ? "" : " (no anchor on the potential)"),
        rank_, 4 * grid.n());
  qr_.compute(D);
}

PreissmanStep MonolithicPreissman::step(const StateField& state,
                                        MassConstant mass,
                                        const IterationControl& ctl) const {
  state.validate();
  ctl.validate();
  const int n = grid_.n();
  if (state.size() != n) throw InvalidArgument("state size differs from grid");
  const double h = grid_.h(), tau = grid_.tau(), r = grid_.r(),
               d = params_.delta;

  const Field Au = apply_A(state.u), Bu = apply_B(state.u);
  const Field Av = apply_A(state.v), Bv = apply_B(state.v);
  const Field Aw = apply_A(state.w), Bw = apply_B(state.w);
  const Field Aphi = apply_A(state.phi), Bphi = apply_B(state.phi);
  const Field cv = mass_vector(n, mass.c);

  // Right-hand side without the nonlinear term; see assemble_D for the rows.
  Eigen::VectorXd b0(4 * n + 1);
  for (int i = 0; i < n; ++i) {
    b0(i) = -0.5 * h * Au[i] + Bphi[i] + cv[i];
    b0(n + i) = d * Bu[i] - 0.5 * h * Av[i];
    b0(2 * n + i) = d * r * Bv[i] - 0.5 * tau * Aw[i] - 0.5 * Aphi[i];
    b0(3 * n + i) = 0.5 * Au[i] - r * Bw[i];
  }
  b0(4 * n) = anchor_.value;

  PreissmanStep out{state, {}};
  Field p_it = Bphi;
  for (int l = 1; l <= ctl.max_iter; ++l) {
    const Field V = cell_Vprime(Au, apply_A(out.state.u), params_);
    Eigen::VectorXd b = b0;
    for (int i = 0; i < n; ++i) b(2 * n + i) += 2.0 * tau * V[i];
    const Eigen::VectorXd X = qr_.solve(b);

    StateField next = StateField::zeros(n);
    for (int i = 0; i < n; ++i) {
      next.u[i] = X(i);
      next.v[i] = X(n + i);
      next.w[i] = X(2 * n + i);
      next.phi[i] = X(3 * n + i);
    }
    Field p_new = apply_B(next.phi);
    const double diff =
        std::max({max_abs_diff(next.u, out.state.u),
                  max_abs_diff(next.v, out.state.v), max_abs_diff(p_new, p_it)});
    out.state = std::move(next);
    out.stats = {l, diff};
    p_it = std::move(p_new);

    const double size = max_abs(out.state.u);
    if (!std::isfinite(diff) || !(size <= ctl.divergence_threshold))
      throw DivergenceError("monolithic Preissman iteration diverged", diff, l);
    if (diff <= ctl.tol) return out;
  }
  throw DivergenceError("monolithic Preissman iteration did not converge in " +
                            std::to_string(ctl.max_iter) + " sweeps",
                        out.stats.residual, ctl.max_iter);
}

PreissmanStep preissman_step_monolithic(const StateField& state,
                                        MassConstant mass,
                                        const KdVParams& params,
                                        const Discretization& grid,
                                        std::optional<BoundaryAnchor> anchor,
                                        const IterationControl& ctl) {
  return MonolithicPreissman(params, grid, anchor).step(state, mass, ctl);
}

TangentField tangent_step(const StateField& base_j, const StateField& base_j1,
                          const TangentField& dz, const ReducedOperators& ops,
                          BoundaryAnchor anchor) {
  const int n = dz.size();
  check_odd(n);
  if (n != ops.n || base_j.size() != n || base_j1.size() != n ||
      static_cast<int>(dz.dphi.size()) != n ||
      static_cast<int>(dz.dv.size()) != n ||
      static_cast<int>(dz.dw.size()) != n)
    throw InvalidArgument("tangent_step: inconsistent sizes");
  const double h = ops.h, tau = ops.tau, r = ops.r();
  const auto params = params_of(ops);

  // Linearized cell term: dV = V''(u_bar) (dq + dq_new)/4 and
  // dq + dq_new = (2/h)(dp + dp_new + dcvec).
  const Field qbar = lincomb(0.25, apply_A(base_j.u), 0.25, apply_A(base_j1.u));
  Field curv(n);
  for (int i = 0; i < n; ++i) curv[i] = potential_Vsecond(qbar[i], params);

  const double dc = discrete_mass(dz.du, h);
  const Field dcv = mass_vector(n, dc);
  const Field dp = apply_B(dz.dphi);
  const Field dq = apply_A(dz.du);

  // N = (2r/h) M1 (B A^-1) diag(V'') and (I + N) dp_new = f - N (dp + dcvec).
  Matrix BAinv_diag = power_BAinv(n, 1);
  for (int k = 0; k < n; ++k) BAinv_diag.col(k) *= curv[k];
  const Matrix N = (2.0 * r / h) * ops.M1 * BAinv_diag;

  Field f = apply_dense(ops.M1, lincomb(1.0, dq, -1.0 / h, dcv));
  add_in_place(f, apply_dense(ops.M2_exact, lincomb(1.0, dp, 1.0, dcv)));
  add_in_place(f, apply_dense(N, lincomb(1.0, dp, 1.0, dcv)), -1.0);

  Field dp_new(n);
  Eigen::Map<Eigen::VectorXd>(dp_new.data(), n) =
      (Matrix::Identity(n, n) + N)
          .partialPivLu()
          .solve(Eigen::Map<const Eigen::VectorXd>(f.data(), n));

  Field s = lincomb(1.0, dp, 1.0, dp_new);
  add_in_place(s, dcv);
  Field dV(n);
  for (int i = 0; i < n; ++i) dV[i] = curv[i] * s[i] / (2.0 * h);

  TangentField out;
  out.du = solve_A(lincomb(-1.0, dq, 2.0 / h, s));
  out.dv = v_update(dz.dv, s, h, ops.delta);
  out.dphi = solve_B_anchored(dp_new, anchor.index, 0.0);
  out.dw = w_update(dz.dphi, out.dphi, dz.dw, s, dV, h, tau, ops.delta);
  return out;
}

namespace {

struct NodeTangent {
  double phi, u, v, w;
};

// Node k in [0, n]; node n is the periodic image of node 0 with the potential
// shifted by the tangent mass.
NodeTangent node(const TangentField& t, int k, double dc) {
  const int n = t.size();
  const int i = k % n;
  return {t.dphi[i] + (k == n ? dc : 0.0), t.du[i], t.dv[i], t.dw[i]};
}

NodeTangent mid(const NodeTangent& x, const NodeTangent& y) {
  return {0.5 * (x.phi + y.phi), 0.5 * (x.u + y.u), 0.5 * (x.v + y.v),
          0.5 * (x.w + y.w)};
}

double wedge(double pa, double qa, double pb, double qb) {
  return pa * qb - pb * qa;
}

}  // namespace

ConservationResidual ms_conservation_residual(const TangentField& a_j,
                                              const TangentField& a_j1,
                                              const TangentField& b_j,
                                              const TangentField& b_j1,
                                              const KdVParams& params,
                                              const Discretization& grid) {
  const int n = a_j.size();
  if (a_j1.size() != n || b_j.size() != n || b_j1.size() != n ||
      n != grid.n())
    throw InvalidArgument("ms_conservation_residual: inconsistent sizes");
  const double h = grid.h(), tau = grid.tau(), d = params.delta;
  const double dca = discrete_mass(a_j.du, h);
  const double dcb = discrete_mass(b_j.du, h);

  auto time_wedge = [&](const NodeTangent& a, const NodeTangent& b) {
    return wedge(a.phi, a.u, b.phi, b.u);
  };
  auto space_wedge = [&](const NodeTangent& a, const NodeTangent& b) {
    return wedge(a.phi, a.w, b.phi, b.w) + d * wedge(a.v, a.u, b.v, b.u);
  };

  auto mag = [](double p1, double q1, double p2, double q2) {
    return std::abs(p1 * q2) + std::abs(q1 * p2);
  };
  auto time_mag = [&](const NodeTangent& a, const NodeTangent& b) {
    return mag(a.phi, a.u, b.phi, b.u);
  };
  auto space_mag = [&](const NodeTangent& a, const NodeTangent& b) {
    return mag(a.phi, a.w, b.phi, b.w) + std::abs(d) * mag(a.v, a.u, b.v, b.u);
  };

  ConservationResidual res;
  for (int i = 0; i < n; ++i) {
    // Space midpoints of the cell at both levels.
    const auto a0 = mid(node(a_j, i, dca), node(a_j, i + 1, dca));
    const auto a1 = mid(node(a_j1, i, dca), node(a_j1, i + 1, dca));
    const auto b0 = mid(node(b_j, i, dcb), node(b_j, i + 1, dcb));
    const auto b1 = mid(node(b_j1, i, dcb), node(b_j1, i + 1, dcb));
    // Time midpoints on the two cell edges.
    const auto aL = mid(node(a_j, i, dca), node(a_j1, i, dca));
    const auto aR = mid(node(a_j, i + 1, dca), node(a_j1, i + 1, dca));
    const auto bL = mid(node(b_j, i, dcb), node(b_j1, i, dcb));
    const auto bR = mid(node(b_j, i + 1, dcb), node(b_j1, i + 1, dcb));

    const double t1 = time_wedge(a1, b1) / tau, t0 = time_wedge(a0, b0) / tau;
    const double xR = 2.0 * space_wedge(aR, bR) / h,
                 xL = 2.0 * space_wedge(aL, bL) / h;
    res.max_abs = std::max(res.max_abs, std::abs(t1 - t0 + xR - xL));
    // roundoff yardstick: products before they cancel
    const double m = (time_mag(a1, b1) + time_mag(a0, b0)) / tau +
                     2.0 * (space_mag(aR, bR) + space_mag(aL, bL)) / h;
    res.scale = std::max(res.scale, m);
  }
  return res;
}

}  // namespace kdv
