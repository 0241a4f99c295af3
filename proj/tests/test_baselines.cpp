#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "kdv/baselines.hpp"
#include "kdv/errors.hpp"
#include "kdv/initial.hpp"
#include "oracles.hpp"

using namespace kdv;

TEST_CASE("zero and constant histories") {
  KdVParams p;
  const Discretization g(p, 16, 0.01);
  CHECK(oracle::max_diff(zk_step({Field(16, 0.0), Field(16, 0.0)}, p, g), Field(16, 0.0)) == 0.0);
  CHECK(oracle::max_diff(zk_step({Field(16, 1.5), Field(16, 1.5)}, p, g), Field(16, 1.5)) < 1e-14);
  CHECK(oracle::max_diff(zk_bootstrap(Field(16, 1.5), p, g), Field(16, 1.5)) < 1e-14);
}

TEST_CASE("leapfrog formula against a direct evaluation") {
  KdVParams p;
  p.eta = 2.0;
  p.delta = 0.5;
  const int n = 12;
  const Discretization g(p, n, 0.003);
  std::mt19937_64 rng(4);
  const auto a = oracle::random_field(rng, n), b = oracle::random_field(rng, n);
  const auto got = zk_step({a, b}, p, g);
  const double h = g.h(), tau = g.tau();
  for (int i = 0; i < n; ++i) {
    auto U = [&](int k) { return b[((i + k) % n + n) % n]; };
    const double ref = a[i] - p.eta * tau / (3 * h) * (U(1) + U(0) + U(-1)) * (U(1) - U(-1)) -
                       p.delta * p.delta * tau / (h * h * h) * (U(2) - 2 * U(1) + 2 * U(-1) - U(-2));
    CHECK(got[i] == doctest::Approx(ref).epsilon(1e-14));
  }
}

TEST_CASE("leapfrog mass") {
  KdVParams p;
  const Discretization g(p, 99, 0.01);
  const auto init = make_initial(InitialCondition{}, p, g);
  Field prev = init.u, cur = zk_bootstrap(init.u, p, g);
  double worst = std::abs(discrete_mass(cur, g.h()) - init.mass.c);
  for (int j = 0; j < 500; ++j) {
    Field next = zk_step({prev, cur}, p, g, j + 2);
    prev = std::move(cur);
    cur = std::move(next);
    worst = std::max(worst, std::abs(discrete_mass(cur, g.h()) - init.mass.c));
  }
  CHECK(worst / init.mass.c <= 1e-12);
}

TEST_CASE("classical recurrence setup stays bounded to t = 1") {
  KdVParams p;
  p.eta = 1.0;
  p.delta = 0.022;
  p.xmin = 0.0;
  p.xmax = 2.0;
  const Discretization g(p, 128, 5e-4);
  InitialCondition ic;
  ic.kind = InitialKind::Cosine;
  const auto init = make_initial(ic, p, g);
  Field prev = init.u, cur = zk_bootstrap(init.u, p, g);
  for (long j = 2; j <= 2000; ++j) {
    Field next = zk_step({prev, cur}, p, g, j);
    prev = std::move(cur);
    cur = std::move(next);
  }
  const double peak = *std::max_element(cur.begin(), cur.end());
  CHECK(peak < 4.0);
  // Steepening has produced a peak above the initial maximum.
  CHECK(peak > 1.2);
}

TEST_CASE("large steps blow up with the step index") {
  KdVParams p;
  const Discretization g(p, 99, 0.04);
  const auto init = make_initial(InitialCondition{}, p, g);
  Field prev = init.u, cur = zk_bootstrap(init.u, p, g);
  try {
    for (long j = 2; j < 1000; ++j) {
      Field next = zk_step({prev, cur}, p, g, j);
      prev = std::move(cur);
      cur = std::move(next);
    }
    FAIL("expected BlowupError");
  } catch (const BlowupError& e) {
    CHECK(e.step() > 2);
    CHECK(e.step() < 1000);
  }
}
