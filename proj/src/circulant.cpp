#include "kdv/circulant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "kdv/errors.hpp"

namespace kdv {

Field apply_A(FieldView u) {
  const auto n = u.size();
  Field out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = u[i] + u[(i + 1) % n];
  return out;
}

Field apply_B(FieldView phi) {
  const auto n = phi.size();
  Field out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = phi[(i + 1) % n] - phi[i];
  return out;
}

Field solve_A(FieldView rhs) {
  const auto n = rhs.size();
  if (n == 0) throw InvalidArgument("solve_A: empty right-hand side");
  if (n % 2 == 0)
    throw SingularityError("A singular for even n (n = " + std::to_string(n) +
                           ")");
  // Alternating sum of the rows telescopes to 2*x_1; then x_{i+1} = rhs_i - x_i.
  double alt = 0.0;
  for (std::size_t i = 0; i < n; ++i) alt += (i % 2 == 0) ? rhs[i] : -rhs[i];
  Field x(n);
  x[0] = 0.5 * alt;
  for (std::size_t i = 0; i + 1 < n; ++i) x[i + 1] = rhs[i] - x[i];
  return x;
}

Field solve_B_anchored(FieldView rhs, int anchor_index, double anchor_value) {
  const int n = static_cast<int>(rhs.size());
  if (anchor_index < 1 || anchor_index > n)
    throw InvalidArgument("anchor index " + std::to_string(anchor_index) +
                          " outside [1, " + std::to_string(n) + "]");
  double sum = 0.0, scale = 0.0;
  for (double r : rhs) {
    sum += r;
    scale += std::abs(r);
  }
  if (std::abs(sum) > 1e-10 * std::max(1.0, scale))
    throw IncompatibleRhsError(
        "right-hand side not in the range of B: entries sum to " +
            std::to_string(sum),
        sum);
  // phi_{i+1} = phi_i + rhs_i, walking the cycle from the anchor.
  Field phi(n);
  int i = anchor_index - 1;
  phi[i] = anchor_value;
  for (int k = 1; k < n; ++k) {
    const int next = (i + 1) % n;
    phi[next] = phi[i] + rhs[i];
    i = next;
  }
  return phi;
}

Dft::Dft(int n) : n_(n), roots_(n) {
  if (n < 1) throw InvalidArgument("DFT length must be positive");
  for (int m = 0; m < n; ++m) {
    const double angle = 2.0 * std::numbers::pi * m / n;
    roots_[m] = {std::cos(angle), std::sin(angle)};
  }
}

Complex Dft::root(long m) const noexcept {
  long k = m % n_;
  if (k < 0) k += n_;
  return roots_[k];
}

std::vector<Complex> Dft::forward(FieldView x) const {
  std::vector<Complex> out(n_);
  for (int k = 0; k < n_; ++k) {
    Complex acc{};
    for (int j = 0; j < n_; ++j) acc += x[j] * root(-static_cast<long>(j) * k);
    out[k] = acc;
  }
  return out;
}

Field Dft::inverse_real(const std::vector<Complex>& X) const {
  Field out(n_);
  for (int j = 0; j < n_; ++j) {
    Complex acc{};
    for (int k = 0; k < n_; ++k) acc += X[k] * root(static_cast<long>(j) * k);
    out[j] = acc.real() / n_;
  }
  return out;
}

CirculantMatrix::CirculantMatrix(Field first_row) : row_(std::move(first_row)) {
  if (row_.empty()) throw InvalidArgument("circulant of size zero");
}

CirculantMatrix CirculantMatrix::from_stencil(
    int n, const std::vector<std::pair<int, double>>& taps) {
  Field row(n, 0.0);
  for (auto [offset, coeff] : taps) row[((offset % n) + n) % n] += coeff;
  return CirculantMatrix(std::move(row));
}

CirculantMatrix CirculantMatrix::from_symbol(const std::vector<Complex>& symbol,
                                             const Dft& dft) {
  // first_row[m] = (1/n) sum_k lambda_k omega^(-m k)
  const int n = dft.size();
  Field row(n);
  for (int m = 0; m < n; ++m) {
    Complex acc{};
    for (int k = 0; k < n; ++k)
      acc += symbol[k] * dft.root(-static_cast<long>(m) * k);
    row[m] = acc.real() / n;
  }
  return CirculantMatrix(std::move(row));
}

Field CirculantMatrix::apply(FieldView x) const {
  const int n = this->n();
  if (static_cast<int>(x.size()) != n)
    throw InvalidArgument("circulant apply: length mismatch");
  Field out(n, 0.0);
  for (int m = 0; m < n; ++m) {
    const double c = row_[m];
    if (c == 0.0) continue;
    for (int i = 0; i < n; ++i) out[i] += c * x[(i + m) % n];
  }
  return out;
}

std::vector<Complex> CirculantMatrix::symbol(const Dft& dft) const {
  const int n = this->n();
  std::vector<Complex> lambda(n);
  for (int k = 0; k < n; ++k) {
    Complex acc{};
    for (int m = 0; m < n; ++m)
      if (row_[m] != 0.0) acc += row_[m] * dft.root(static_cast<long>(m) * k);
    lambda[k] = acc;
  }
  return lambda;
}

Matrix CirculantMatrix::dense() const {
  const int n = this->n();
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = row_[((j - i) % n + n) % n];
  return m;
}

CirculantSolver::CirculantSolver(const CirculantMatrix& m, double rel_tol)
    : dft_(m.n()) {
  const auto lambda = m.symbol(dft_);
  double max_abs = 0.0;
  min_abs_ = std::abs(lambda[0]);
  for (const auto& l : lambda) {
    max_abs = std::max(max_abs, std::abs(l));
    min_abs_ = std::min(min_abs_, std::abs(l));
  }
  if (!(min_abs_ > rel_tol * max_abs))
    throw SingularLinearSystemError(
        "circulant symbol vanishes: min |lambda| = " + std::to_string(min_abs_) +
        ", max |lambda| = " + std::to_string(max_abs));
  inv_symbol_.resize(lambda.size());
  for (std::size_t k = 0; k < lambda.size(); ++k)
    inv_symbol_[k] = 1.0 / lambda[k];
}

Field CirculantSolver::solve(FieldView b) const {
  if (static_cast<int>(b.size()) != n())
    throw InvalidArgument("circulant solve: length mismatch");
  auto X = dft_.forward(b);
  for (std::size_t k = 0; k < X.size(); ++k) X[k] *= inv_symbol_[k];
  return dft_.inverse_real(X);
}

Matrix dense_A(int n) {
  return CirculantMatrix::from_stencil(n, {{0, 1.0}, {1, 1.0}}).dense();
}

Matrix dense_B(int n) {
  return CirculantMatrix::from_stencil(n, {{0, -1.0}, {1, 1.0}}).dense();
}

int rank_of(const Matrix& input, double tol) {
  Matrix m = input;
  const auto rows = m.rows(), cols = m.cols();
  double scale = m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
  if (scale == 0.0) return 0;
  int rank = 0;
  Eigen::Index pivot_row = 0;
  for (Eigen::Index c = 0; c < cols && pivot_row < rows; ++c) {
    Eigen::Index best = pivot_row;
    for (Eigen::Index r = pivot_row + 1; r < rows; ++r)
      if (std::abs(m(r, c)) > std::abs(m(best, c))) best = r;
    const double pivot = std::abs(m(best, c));
    if (!(pivot > tol * scale)) continue;
    scale = std::max(scale, pivot);
    m.row(best).swap(m.row(pivot_row));
    for (Eigen::Index r = pivot_row + 1; r < rows; ++r) {
      const double f = m(r, c) / m(pivot_row, c);
      if (f != 0.0) m.row(r).tail(cols - c) -= f * m.row(pivot_row).tail(cols - c);
    }
    ++pivot_row;
    ++rank;
  }
  return rank;
}

}  // namespace kdv
