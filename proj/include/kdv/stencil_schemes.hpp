#pragma once

#include "kdv/circulant.hpp"
#include "kdv/iteration.hpp"
#include "kdv/types.hpp"

namespace kdv {

struct TwoLevelState {
  Field u_prev;
  Field u_curr;
};

struct ThreeLevelState {
  Field u_prev2;
  Field u_prev;
  Field u_curr;
};

struct StencilStep {
  Field u;
  IterationStats stats;
};

/// Blowup threshold on max|u| for the explicit stencil schemes.
inline constexpr double kStencilBlowup = 1e8;

/// The u-only eight-point relation between levels j and j+1, with
/// (S_k u)_i = u_{i+k}, indices mod n:
///   T (u' - u) + D (u' + u) + (1/h)[V'(m_i) - V'(m_{i-2})] = 0,
///   T = (S_1 + 3 + 3 S_-1 + S_-2)/(4 tau),
///   D = (delta^2/h^3)(S_1 - 3 + 3 S_-1 - S_-2),
/// where m_i averages u and u' over the cell (i, i+1). The new-level operator
/// T + D is a circulant; its symbol is checked once at construction.
class EightPointOperator {
 public:
  /// Throws SingularLinearSystemError if T + D is singular; n >= 4.
  EightPointOperator(const KdVParams& params, const Discretization& grid);

  const KdVParams& params() const noexcept { return params_; }
  const Discretization& grid() const noexcept { return grid_; }
  const CirculantMatrix& time_part() const noexcept { return T_; }
  const CirculantMatrix& dispersion_part() const noexcept { return D_; }

  /// Implicit step, fixed point on the V' terms.
  StencilStep step(FieldView u, const IterationControl& ctl) const;
  /// V' frozen at the old level: V'((u_{i+1} + u_i)/2).
  Field explicit_step(FieldView u, long step = 0) const;
  /// Twelve-point step: one quarter of the sum of two consecutive
  /// eight-point relations, solved for the newest level.
  StencilStep twelve_step(FieldView u_prev, FieldView u_curr,
                          const IterationControl& ctl) const;

  /// (1/h)[V'(m_i) - V'(m_{i-2})] with m the four-point cell average.
  Field flux_difference(FieldView u_old, FieldView u_new) const;

 private:
  KdVParams params_;
  Discretization grid_;
  CirculantMatrix T_;
  CirculantMatrix D_;
  CirculantSolver L_;
};

StencilStep eight_point_step(FieldView u_prev, const KdVParams& params,
                             const Discretization& grid,
                             const IterationControl& ctl);
Field eight_point_explicit_step(FieldView u_prev, const KdVParams& params,
                                const Discretization& grid);
/// u^{j+1} from (u^{j-1}, u^j).
StencilStep twelve_point_step(const TwoLevelState& state,
                              const KdVParams& params,
                              const Discretization& grid,
                              const IterationControl& ctl);

struct StencilResidual {
  double max_abs = 0.0;  // max_i |left side|
  double scale = 0.0;    // largest constituent term (time, dispersion, flux)
  double relative() const noexcept {
    return scale > 0.0 ? max_abs / scale : max_abs;
  }
};

/// Left side of the twelve-point relation at every i:
///   (1/(16 tau)) (S_1+3+3S_-1+S_-2)(u^{j+1} - u^{j-1})
///   + (delta^2/(4h^3)) (S_1-3+3S_-1-S_-2)(u^{j+1} + 2u^j + u^{j-1})
///   + (1/(4h)) [four V' differences over both half levels].
StencilResidual twelve_point_residual(const ThreeLevelState& levels,
                                      const KdVParams& params,
                                      const Discretization& grid);

}  // namespace kdv
