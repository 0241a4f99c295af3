#include "kdv/reduced_operators.hpp"

#include <string>

#include "kdv/errors.hpp"

namespace kdv {

Matrix power_BAinv(int n, int m) {
  Matrix out(n, n);
  Field col(n);
  for (int k = 0; k < n; ++k) {
    std::fill(col.begin(), col.end(), 0.0);
    col[k] = 1.0;
    for (int rep = 0; rep < m; ++rep) col = apply_B(solve_A(col));
    for (int i = 0; i < n; ++i) out(i, k) = col[i];
  }
  return out;
}

ReducedOperators build_reduced_operators(const KdVParams& params,
                                         const Discretization& grid) {
  const int n = grid.n();
  if (!grid.odd())
    throw SingularityError("A singular for even n (n = " + std::to_string(n) +
                           "); reduced operators need odd n");
  const double h = grid.h(), tau = grid.tau(), r = grid.r();
  const double d2 = params.delta * params.delta;
  const double g = 8.0 * d2 * r / (h * h * h);

  ReducedOperators ops;
  ops.n = n;
  ops.h = h;
  ops.tau = tau;
  ops.eta = params.eta;
  ops.delta = params.delta;
  ops.G = g * power_BAinv(n, 3);

  // Symbols evaluated in closed form keep the constant mode exact: the zero
  // eigenvalue of B gives M1 column sums of exactly h/2.
  const Dft dft(n);
  std::vector<Complex> m1(n), m2e(n), m2p(n), m3(n);
  for (int k = 0; k < n; ++k) {
    const Complex w = dft.root(k);
    const Complex t = (w - 1.0) / (w + 1.0);
    const Complex t3 = t * t * t;
    m1[k] = 1.0 / (2.0 / h + g * t3);
    m2e[k] = (2.0 / h) * m1[k] - 1.0;
    m2p[k] = -(4.0 * d2 * tau / (h * h * h)) * t3 - 1.0;
    m3[k] = -2.0 * params.eta * r * m1[k] * t;
  }
  ops.M1 = CirculantMatrix::from_symbol(m1, dft).dense();
  ops.M2_exact = CirculantMatrix::from_symbol(m2e, dft).dense();
  ops.M2_printed = CirculantMatrix::from_symbol(m2p, dft).dense();
  ops.M3 = CirculantMatrix::from_symbol(m3, dft).dense();
  return ops;
}

Field apply_dense(const Matrix& m, FieldView x) {
  if (m.cols() != static_cast<Eigen::Index>(x.size()))
    throw InvalidArgument("dense apply: length mismatch");
  Field y(m.rows());
  Eigen::Map<Eigen::VectorXd>(y.data(), m.rows()) =
      m * Eigen::Map<const Eigen::VectorXd>(x.data(), m.cols());
  return y;
}

}  // namespace kdv
