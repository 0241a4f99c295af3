#pragma once

#include <Eigen/Dense>
#include <optional>

#include "kdv/circulant.hpp"
#include "kdv/iteration.hpp"
#include "kdv/reduced_operators.hpp"
#include "kdv/types.hpp"

namespace kdv {

/// Skew matrices of M z_t + K z_x = grad S(z) for z = (phi, u, v, w).
struct MultisymplecticPair {
  Eigen::Matrix4d M;
  Eigen::Matrix4d K;

  static MultisymplecticPair kdv(double delta);
};

/// The extra condition phi_index = value (1-based index) that removes the
/// constant-mode rank deficiency of the potential. Default: phi_1 = 0.
struct BoundaryAnchor {
  int index = 1;
  double value = 0.0;
};

/// Differentials (dphi, du, dv, dw) of a solution of the linearized scheme.
struct TangentField {
  Field dphi;
  Field du;
  Field dv;
  Field dw;

  static TangentField zeros(int n);
  int size() const noexcept { return static_cast<int>(du.size()); }
};

struct PreissmanStep {
  StateField state;
  IterationStats stats;
};

/// Coefficient matrix of the fixed-point iteration on X = (u, v, w, phi):
///
///   [ (h/2)A     0        0      -B   ]
///   [  -dB     (h/2)A     0       0   ]
///   [   0      -d r B   (tau/2)A -A/2 ]
///   [  A/2       0       r B      0   ]
///
/// (d = delta). With an anchor, the row e_anchor^T on the phi block is
/// appended, giving a (4n+1) x 4n matrix. Requires n >= 3.
Matrix assemble_D(const KdVParams& params, const Discretization& grid,
                  std::optional<BoundaryAnchor> anchor);

/// Discrete auxiliary fields at t = 0, consistent with the scheme rows:
/// B phi = (h/2) A u - cvec/2 (phi anchored), A v = (2 delta/h) B u, and
/// w = phi_t/2 + delta v_x + V'(u) with phi_t = -(eta/2) u^2 - delta^2 u_xx by
/// centered differences. Needs odd n.
StateField initialize_auxiliary(FieldView u0, MassConstant mass,
                                const KdVParams& params,
                                const Discretization& grid,
                                BoundaryAnchor anchor);

/// One Preissman step by staged fixed-point sweeps: the eliminated potential
/// row gives p = B phi from the latest u iterate, then u, v (A solves), the
/// anchored potential and w. The first iterate is the previous level.
/// Convergence is measured on (u, v, B phi), the anchor-independent part.
/// Throws DivergenceError, SingularityError (even n).
PreissmanStep preissman_step(const StateField& state, MassConstant mass,
                             const ReducedOperators& ops, BoundaryAnchor anchor,
                             const IterationControl& ctl);

/// Preissman step that solves the assembled 4n (+1 anchor row) system for every
/// sweep by least squares. Construction computes rank_of(D); without an anchor
/// the rank is 4n-1 and DegenerateSystemError is thrown instead of iterating.
class MonolithicPreissman {
 public:
  MonolithicPreissman(const KdVParams& params, const Discretization& grid,
                      std::optional<BoundaryAnchor> anchor);

  int rank() const noexcept { return rank_; }
  PreissmanStep step(const StateField& state, MassConstant mass,
                     const IterationControl& ctl) const;

 private:
  KdVParams params_;
  Discretization grid_;
  BoundaryAnchor anchor_;
  int rank_ = 0;
  Eigen::ColPivHouseholderQR<Matrix> qr_;
};

PreissmanStep preissman_step_monolithic(const StateField& state,
                                        MassConstant mass,
                                        const KdVParams& params,
                                        const Discretization& grid,
                                        std::optional<BoundaryAnchor> anchor,
                                        const IterationControl& ctl);

/// Linearization of preissman_step about the converged pair (base_j, base_j1):
/// the nonlinear term becomes V''(u_bar) times the averaged du, and the linear
/// system for dp = B dphi is solved exactly. The tangent mass h*sum(du) plays
/// the role of c; the new dphi is anchored to 0 at anchor.index.
TangentField tangent_step(const StateField& base_j, const StateField& base_j1,
                          const TangentField& dz, const ReducedOperators& ops,
                          BoundaryAnchor anchor);

struct ConservationResidual {
  double max_abs = 0.0;  // largest |cell residual|
  double scale = 0.0;    // largest single time or space wedge term
  double relative() const noexcept {
    return scale > 0.0 ? max_abs / scale : max_abs;
  }
};

/// Discrete multisymplectic conservation law on every cell (i, i+1) x (j, j+1):
///   [W(a,b)^{j+1}_{i+1/2} - W(a,b)^j_{i+1/2}] / tau
///     + 2 [F(a,b)^{j+1/2}_{i+1} - F(a,b)^{j+1/2}_i] / h
/// with W = dphi^du, F = dphi^dw + delta dv^du and p^q(a,b) = p_a q_b - p_b q_a
/// on midpoint-averaged tangents. The potential wraps with its mass offset.
ConservationResidual ms_conservation_residual(const TangentField& a_j,
                                              const TangentField& a_j1,
                                              const TangentField& b_j,
                                              const TangentField& b_j1,
                                              const KdVParams& params,
                                              const Discretization& grid);

}  // namespace kdv
