#pragma once

#include "kdv/stencil_schemes.hpp"
#include "kdv/types.hpp"

namespace kdv {

/// Blowup threshold on max|u| for the leapfrog baseline.
inline constexpr double kZkBlowup = 1e8;

/// Zabusky-Kruskal leapfrog (classical literature form):
///   u_i^{j+1} = u_i^{j-1} - (eta tau/(3h)) (u_{i+1}+u_i+u_{i-1})(u_{i+1}-u_{i-1})
///               - (delta^2 tau/h^3)(u_{i+2} - 2u_{i+1} + 2u_{i-1} - u_{i-2}),
/// all right-hand values at level j. Throws BlowupError labelled with `step`.
Field zk_step(const TwoLevelState& state, const KdVParams& params,
              const Discretization& grid, long step = 0);

/// First level by forward Euler on the same semi-discretization (half the
/// leapfrog increment).
Field zk_bootstrap(FieldView u0, const KdVParams& params,
                   const Discretization& grid);

}  // namespace kdv
