#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "kdv/types.hpp"

namespace kdv {

using Matrix = Eigen::MatrixXd;
using Complex = std::complex<double>;

// Periodic averaging and differencing circulants
//   (A u)_i = u_i + u_{i+1},   (B phi)_i = phi_{i+1} - phi_i,
// with index n+1 wrapping to 1. Both are applied matrix-free.

Field apply_A(FieldView u);
Field apply_B(FieldView phi);

/// Solves A x = rhs. A is invertible exactly when n is odd (det A = 1 + (-1)^(n+1)),
/// so an even length raises SingularityError.
Field solve_A(FieldView rhs);

/// Solves B phi = rhs with phi[anchor_index] = anchor_value, anchor_index in
/// [1, n]. B has rank n-1 with the constants as kernel, so rhs must sum to
/// zero; otherwise IncompatibleRhsError carries the offending sum.
Field solve_B_anchored(FieldView rhs, int anchor_index, double anchor_value);

/// Cached roots of unity for length-n discrete Fourier transforms.
class Dft {
 public:
  explicit Dft(int n);
  int size() const noexcept { return n_; }
  /// omega^m with omega = exp(2*pi*i/n); m taken modulo n.
  Complex root(long m) const noexcept;
  /// X_k = sum_j x_j omega^(-j k)
  std::vector<Complex> forward(FieldView x) const;
  /// x_j = (1/n) sum_k X_k omega^(j k), real part.
  Field inverse_real(const std::vector<Complex>& X) const;

 private:
  int n_;
  std::vector<Complex> roots_;
};

/// Matrix whose row i is first_row cyclically shifted right by i, so that
/// (M x)_i = sum_m first_row[m] x_{i+m}.
class CirculantMatrix {
 public:
  explicit CirculantMatrix(Field first_row);
  /// Circulant with first_row[offset mod n] += coefficient for each pair.
  static CirculantMatrix from_stencil(
      int n, const std::vector<std::pair<int, double>>& taps);
  /// Inverse DFT of a conjugate-symmetric symbol.
  static CirculantMatrix from_symbol(const std::vector<Complex>& symbol,
                                     const Dft& dft);

  int n() const noexcept { return static_cast<int>(row_.size()); }
  const Field& first_row() const noexcept { return row_; }
  Field apply(FieldView x) const;
  /// Eigenvalues lambda_k = sum_m first_row[m] omega^(m k).
  std::vector<Complex> symbol(const Dft& dft) const;
  Matrix dense() const;

 private:
  Field row_;
};

/// Solves M x = b for a circulant M by dividing Fourier coefficients by the
/// symbol. Invertibility is checked once at construction.
class CirculantSolver {
 public:
  /// Throws SingularLinearSystemError if min|lambda_k| <= rel_tol*max|lambda_k|.
  explicit CirculantSolver(const CirculantMatrix& m, double rel_tol = 1e-13);
  int n() const noexcept { return dft_.size(); }
  Field solve(FieldView b) const;
  double min_abs_symbol() const noexcept { return min_abs_; }

 private:
  Dft dft_;
  std::vector<Complex> inv_symbol_;
  double min_abs_ = 0.0;
};

Matrix dense_A(int n);
Matrix dense_B(int n);

/// Numerical rank by row-echelon reduction with partial pivoting. A candidate
/// pivot below tol times the largest magnitude seen so far (entries or
/// accepted pivots) counts as zero.
int rank_of(const Matrix& m, double tol = 1e-10);

}  // namespace kdv
