#pragma once

#include "kdv/iteration.hpp"
#include "kdv/preissman.hpp"
#include "kdv/reduced_operators.hpp"
#include "kdv/types.hpp"

namespace kdv {

/// p = B phi and q = A u of the p-q scheme.
struct ReducedState {
  Field p;
  Field q;

  int size() const noexcept { return static_cast<int>(q.size()); }
};

/// State of the z-scheme at level j: z = q^j + q^{j-1} and the latest q^j
/// (needed to split the next z back into q^{j+1} = z^{j+1} - q^j).
struct ZState {
  Field z;
  Field q;

  int size() const noexcept { return static_cast<int>(z.size()); }
};

struct ReducedStep {
  ReducedState state;
  IterationStats stats;
};

struct ZStep {
  ZState state;
  IterationStats stats;
};

/// Blowup threshold on max|q| for the explicit reduced schemes.
inline constexpr double kReducedBlowup = 1e8;

/// p^0 = (h/2) A u0 - cvec/2 (so that sum p = 0) and q^0 = A u0.
ReducedState make_reduced_state(FieldView u0, MassConstant mass, double h);

/// Implicit p-q step; each sweep is two matrix-vector products.
ReducedStep pq_step(const ReducedState& s, MassConstant mass,
                    const ReducedOperators& ops, OperatorVariant variant,
                    const IterationControl& ctl);

/// Single evaluation with the nonlinear term frozen at (q^j/2)^2.
/// `step` only labels a BlowupError.
ReducedState pq_step_explicit(const ReducedState& s, MassConstant mass,
                              const ReducedOperators& ops,
                              OperatorVariant variant, long step = 0);

/// z-state after one step from a single level: q^1 by pq_step, z = q^1 + q^0.
ZStep z_bootstrap(const ReducedState& s0, MassConstant mass,
                  const ReducedOperators& ops, OperatorVariant variant,
                  const IterationControl& ctl);
/// Same with the explicit p-q evaluation, used by the explicit z-schemes.
ZState z_bootstrap_explicit(const ReducedState& s0, MassConstant mass,
                            const ReducedOperators& ops,
                            OperatorVariant variant);

/// Implicit z step:
///   (h/2) z' = (M1 + (h/2) M2) z + M3 [(z'/4)^2 + (z/4)^2] + C cvec,
/// C = I + M2 - (2/h) M1 (exact) or I + M2 - (1/h) M1 (printed).
ZStep z_step(const ZState& s, MassConstant mass, const ReducedOperators& ops,
             OperatorVariant variant, const IterationControl& ctl);

/// Explicit z step with M3 [(q^j/2)^2 + (q^{j-1}/2)^2].
ZState z_step_explicit(const ZState& s, MassConstant mass,
                       const ReducedOperators& ops, OperatorVariant variant,
                       long step = 0);

/// Explicit z step with M3 [(q^j/2)^2 + (z/4)^2]; known to be unstable.
ZState z_step_explicit_unstable(const ZState& s, MassConstant mass,
                                const ReducedOperators& ops,
                                OperatorVariant variant, long step = 0);

Field recover_u(FieldView q);
Field recover_phi(FieldView p, BoundaryAnchor anchor);

}  // namespace kdv
