#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kdv/errors.hpp"
#include "kdv/initial.hpp"
#include "kdv/preissman.hpp"
#include "kdv/stencil_schemes.hpp"
#include "oracles.hpp"

using namespace kdv;

namespace {
KdVParams P;

Field soliton(const Discretization& g) { return make_initial(InitialCondition{}, P, g).u; }
}  // namespace

TEST_CASE("zero and constant fields are fixed points") {
  for (int n : {8, 9}) {
    const Discretization g(P, n, 0.1);
    const EightPointOperator op(P, g);
    CHECK(oracle::max_diff(op.step(Field(n, 0.0), {}).u, Field(n, 0.0)) == 0.0);
    CHECK(oracle::max_diff(op.step(Field(n, 0.7), {}).u, Field(n, 0.7)) < 1e-13);
    CHECK(oracle::max_diff(op.explicit_step(Field(n, 0.0)), Field(n, 0.0)) == 0.0);
    CHECK(oracle::max_diff(op.explicit_step(Field(n, -0.3)), Field(n, -0.3)) < 1e-13);
    CHECK(oracle::max_diff(op.twelve_step(Field(n, 0.0), Field(n, 0.0), {}).u, Field(n, 0.0)) == 0.0);
    CHECK(oracle::max_diff(op.twelve_step(Field(n, 0.4), Field(n, 0.4), {}).u, Field(n, 0.4)) < 1e-13);
  }
}

TEST_CASE("implicit step matches a dense solve") {
  for (int n : {20, 21}) {
    const Discretization g(P, n, 0.2);
    const auto u0 = soliton(g);
    const auto got = eight_point_step(u0, P, g, {}).u;
    const auto ref = oracle::eight_point_dense(u0, P.eta, P.delta, g.h(), g.tau());
    CHECK(oracle::max_diff(got, ref) < 1e-11);
  }
}

TEST_CASE("mass telescopes") {
  for (int n : {98, 99}) {
    const Discretization g(P, n, 0.04);
    const EightPointOperator op(P, g);
    Field u = soliton(g), prev;
    const double m0 = discrete_mass(u, g.h());
    double worst = 0.0;
    for (int j = 0; j < 200; ++j) {
      auto next = j == 0 ? op.step(u, {}).u : op.twelve_step(prev, u, {}).u;
      prev = std::move(u);
      u = std::move(next);
      worst = std::max(worst, std::abs(discrete_mass(u, g.h()) - m0) / m0);
    }
    CHECK(worst <= 1e-12);
    Field e = soliton(g);
    for (int j = 0; j < 200; ++j) e = op.explicit_step(e);
    CHECK(std::abs(discrete_mass(e, g.h()) - m0) / m0 <= 1e-12);
  }
}

TEST_CASE("twelve-point relation holds on eight-point trajectories") {
  const Discretization g(P, 99, 0.04);
  const EightPointOperator op(P, g);
  std::vector<Field> lv{soliton(g)};
  for (int j = 0; j < 30; ++j) lv.push_back(op.step(lv.back(), {}).u);
  double worst = 0.0;
  for (std::size_t j = 2; j < lv.size(); ++j)
    worst = std::max(worst, twelve_point_residual({lv[j - 2], lv[j - 1], lv[j]}, P, g).relative());
  CHECK(worst <= 1e-10);
  CHECK(twelve_point_residual({Field(99, 0.0), Field(99, 0.0), Field(99, 0.0)}, P, g).max_abs == 0.0);
  // Twelve-point output satisfies its own relation.
  const auto u2 = op.twelve_step(lv[0], lv[1], {}).u;
  CHECK(twelve_point_residual({lv[0], lv[1], u2}, P, g).relative() <= 1e-10);
  // A perturbed level does not.
  auto bad = lv[2];
  bad[40] += 1e-3;
  CHECK(twelve_point_residual({lv[0], lv[1], bad}, P, g).relative() > 1e-6);
}

TEST_CASE("matches the Preissman u for odd n") {
  const Discretization g(P, 99, 0.04);
  const auto ops = build_reduced_operators(P, g);
  const auto init = make_initial(InitialCondition{}, P, g);
  auto z = initialize_auxiliary(init.u, init.mass, P, g, {});
  const EightPointOperator op(P, g);
  Field u = init.u;
  double worst = 0.0;
  for (int j = 0; j < 100; ++j) {
    z = preissman_step(z, init.mass, ops, {}, {}).state;
    u = op.step(u, {}).u;
    worst = std::max(worst, oracle::max_diff(u, z.u));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("cyclic shift equivariance") {
  const int n = 64, s = 5;
  const Discretization g(P, n, 0.1);
  const EightPointOperator op(P, g);
  Field u = soliton(g), v(n);
  for (int i = 0; i < n; ++i) v[(i + s) % n] = u[i];
  for (int j = 0; j < 10; ++j) {
    u = op.step(u, {}).u;
    v = op.step(v, {}).u;
  }
  double worst = 0.0;
  for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(v[(i + s) % n] - u[i]));
  CHECK(worst < 1e-12);
}

TEST_CASE("explicit eight-point stays close over a short run") {
  const Discretization g(P, 99, 0.01);
  const EightPointOperator op(P, g);
  Field a = soliton(g), b = a;
  for (int j = 0; j < 100; ++j) {
    a = op.step(a, {}).u;
    b = op.explicit_step(b);
  }
  CHECK(oracle::max_diff(a, b) < 1e-2);
}

TEST_CASE("singular stencil and small grids") {
  KdVParams flat;
  flat.delta = 1e-300;  // dispersion below round-off: (1+S)^3 part only
  CHECK_THROWS_AS(EightPointOperator(flat, Discretization(flat, 8, 0.1)),
                  SingularLinearSystemError);
  CHECK_NOTHROW(EightPointOperator(flat, Discretization(flat, 9, 0.1)));
  CHECK_THROWS_AS(EightPointOperator(P, Discretization(P, 3, 0.1)), InvalidArgument);
}
