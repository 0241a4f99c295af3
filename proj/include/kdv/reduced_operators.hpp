#pragma once

#include "kdv/circulant.hpp"
#include "kdv/types.hpp"

namespace kdv {

/// Which M2 (and which constant-vector coefficient) the reduced schemes use.
///  - Exact: M2 = (2/h) M1 - I, the operator obtained by left-multiplying the
///    eliminated potential row by M1; equivalent to the four-field scheme.
///  - Printed: M2 = -(4 delta^2 tau / h^3)(B A^-1)^3 - I as literally stated
///    for the p-q scheme, kept for reproduction.
enum class OperatorVariant { Exact, Printed };

/// Constant n x n operators of the p-q scheme
///   M1 = [(2/h) I + G]^-1,  G = (8 delta^2 r / h^3)(B A^-1)^3,
///   M3 = -2 eta r M1 B A^-1,
/// for odd n. All of them are circulant.
struct ReducedOperators {
  int n = 0;
  double h = 0.0;
  double tau = 0.0;
  double eta = 0.0;
  double delta = 0.0;

  Matrix M1;
  Matrix M2_exact;
  Matrix M2_printed;
  Matrix M3;
  Matrix G;

  const Matrix& M2(OperatorVariant v) const noexcept {
    return v == OperatorVariant::Exact ? M2_exact : M2_printed;
  }
  double r() const noexcept { return tau / h; }
};

/// Column k of (B A^-1)^m, built by m rounds of solve_A then apply_B.
Matrix power_BAinv(int n, int m);

/// G from (B A^-1)^3 column by column; M1, M2, M3 from the closed-form
/// circulant eigenvalues (1 + w^k for A, w^k - 1 for B). Throws
/// SingularityError for even n.
ReducedOperators build_reduced_operators(const KdVParams& params,
                                         const Discretization& grid);

/// y = M x for a dense operator and a grid field.
Field apply_dense(const Matrix& m, FieldView x);

}  // namespace kdv
