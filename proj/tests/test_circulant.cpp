#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kdv/circulant.hpp"
#include "kdv/errors.hpp"
#include "kdv/reduced_operators.hpp"
#include "oracles.hpp"

using namespace kdv;

TEST_CASE("A and B match their dense definitions") {
  std::mt19937_64 rng(7);
  for (int n : {3, 4, 7, 10}) {
    const auto x = oracle::random_field(rng, n);
    CHECK(oracle::max_diff(apply_A(x), oracle::std_vec(oracle::A(n) * oracle::vec(x))) < 1e-15);
    CHECK(oracle::max_diff(apply_B(x), oracle::std_vec(oracle::B(n) * oracle::vec(x))) < 1e-15);
    CHECK(oracle::max_abs(dense_A(n) - oracle::A(n)) == 0.0);
    CHECK(oracle::max_abs(dense_B(n) - oracle::B(n)) == 0.0);
  }
}

TEST_CASE("solve_A") {
  std::mt19937_64 rng(11);
  for (int n : {3, 5, 99}) {
    const auto u = oracle::random_field(rng, n);
    CHECK(oracle::max_diff(solve_A(apply_A(u)), u) < 1e-12);
    CHECK(oracle::max_diff(solve_A(Field(n, 2.0)), Field(n, 1.0)) < 1e-15);
  }
  CHECK_THROWS_AS(solve_A(Field(4, 1.0)), SingularityError);
  CHECK(oracle::A(4).fullPivLu().rank() == 3);
}

TEST_CASE("solve_B_anchored") {
  std::mt19937_64 rng(13);
  const int n = 9;
  const auto phi = oracle::random_field(rng, n);
  const auto rhs = apply_B(phi);
  const auto got = solve_B_anchored(rhs, 4, phi[3]);
  CHECK(oracle::max_diff(got, phi) < 1e-13);
  const auto shifted = solve_B_anchored(rhs, 4, phi[3] + 7.0);
  for (int i = 0; i < n; ++i) CHECK(shifted[i] - got[i] == doctest::Approx(7.0));
  CHECK(oracle::max_diff(solve_B_anchored(Field(n, 0.0), 1, 0.0), Field(n, 0.0)) == 0.0);

  Field bad(n, 0.0);
  bad[2] = 1e-3;
  try {
    solve_B_anchored(bad, 1, 0.0);
    FAIL("expected IncompatibleRhsError");
  } catch (const IncompatibleRhsError& e) {
    CHECK(e.sum() == doctest::Approx(1e-3));
  }
  CHECK_THROWS_AS(solve_B_anchored(rhs, 0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(solve_B_anchored(rhs, n + 1, 0.0), InvalidArgument);
}

TEST_CASE("circulant matrix, symbol and solver") {
  const int n = 8;
  const auto M = CirculantMatrix::from_stencil(n, {{1, 1.0}, {0, 3.0}, {-1, 3.0}, {-2, 1.0}});
  const Matrix dense = M.dense();
  const Matrix ref = oracle::shift(n, 1) + 3 * Matrix::Identity(n, n) +
                     3 * oracle::shift(n, -1) + oracle::shift(n, -2);
  CHECK(oracle::max_abs(dense - ref) == 0.0);
  for (int k = 0; k < n; ++k) {
    Field e(n, 0.0);
    e[k] = 1.0;
    CHECK(oracle::max_diff(M.apply(e), oracle::std_vec(ref.col(k))) == 0.0);
  }
  // Eigenvalues of a circulant are its symbol.
  const Dft dft(n);
  const auto sym = M.symbol(dft);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXcd v(n);
    for (int j = 0; j < n; ++j) v(j) = dft.root(static_cast<long>(j) * k);
    const Eigen::VectorXcd Mv = ref.cast<Complex>() * v;
    CHECK(std::abs(Mv(0) - sym[k] * v(0)) < 1e-12);
    CHECK(std::abs(Mv(3) - sym[k] * v(3)) < 1e-12);
  }
  CHECK(oracle::max_abs(CirculantMatrix::from_symbol(sym, dft).dense() - ref) < 1e-13);

  // (1+S)^3 S^-2 vanishes at omega = -1 for even n.
  CHECK_THROWS_AS(CirculantSolver{M}, SingularLinearSystemError);
  const auto M7 = CirculantMatrix::from_stencil(7, {{1, 1.0}, {0, 3.0}, {-1, 3.0}, {-2, 1.0}});
  const CirculantSolver solver(M7);
  std::mt19937_64 rng(3);
  const auto b = oracle::random_field(rng, 7);
  CHECK(oracle::max_diff(M7.apply(solver.solve(b)), b) < 1e-13);
  CHECK(solver.min_abs_symbol() > 0.0);
}

TEST_CASE("rank_of agrees with a full-pivot LU") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    Matrix m = Matrix::Random(6, 6);
    m.col(5) = m.col(0) + 2 * m.col(3);
    CHECK(rank_of(m) == 5);
    CHECK(m.fullPivLu().rank() == 5);
  }
  CHECK(rank_of(Matrix::Zero(3, 3)) == 0);
  CHECK(rank_of(Matrix::Identity(4, 4)) == 4);
  CHECK(rank_of(oracle::B(7)) == 6);
  CHECK(rank_of(oracle::A(6)) == 5);
  CHECK(rank_of(oracle::A(7)) == 7);
}

TEST_CASE("reduced operators") {
  KdVParams p;
  for (int n : {5, 21, 99}) {
    const Discretization g(p, n, 0.04);
    const auto o = build_reduced_operators(p, g);
    const auto ref = oracle::dense_reduced(n, g.h(), g.tau(), p.eta, p.delta);
    const Matrix I = Matrix::Identity(n, n);
    CHECK(oracle::max_abs(o.M1 * ((2.0 / g.h()) * I + o.G) - I) <= 1e-10);
    CHECK(oracle::max_abs(o.G - ref.G) <= 1e-12 * oracle::max_abs(ref.G));
    CHECK(oracle::max_abs(o.M3 - (-2.0 * p.eta * g.r()) * o.M1 * ref.BAinv) <= 1e-12);
    CHECK(oracle::max_abs(o.M2_exact - ((2.0 / g.h()) * o.M1 - I)) <= 1e-12);
    CHECK(oracle::max_abs(o.M2_printed - ref.M2p) <= 1e-12 * oracle::max_abs(ref.M2p));
    CHECK(oracle::max_abs(o.M1 - ref.M1) <= 1e-9 * oracle::max_abs(ref.M1));
    CHECK(oracle::max_abs(power_BAinv(n, 1) - ref.BAinv) <= 1e-12);
    // Circulant: column sums of M1 equal h/2 (BA^-1 has zero row sums).
    for (int j = 0; j < n; ++j) CHECK(o.M1.col(j).sum() == doctest::Approx(g.h() / 2));
  }
  CHECK_THROWS_AS(build_reduced_operators(p, Discretization(p, 100, 0.04)), SingularityError);
}
