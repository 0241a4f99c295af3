#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kdv/errors.hpp"
#include "kdv/initial.hpp"
#include "kdv/preissman.hpp"
#include "kdv/reduced_schemes.hpp"
#include "oracles.hpp"

using namespace kdv;

namespace {

struct Setup {
  KdVParams p;
  Discretization g;
  ReducedOperators ops;
  InitialData init;
  ReducedState s0;

  explicit Setup(int n = 99, double tau = 0.04)
      : g(p, n, tau),
        ops(build_reduced_operators(p, g)),
        init(make_initial(InitialCondition{}, p, g)),
        s0(make_reduced_state(init.u, init.mass, g.h())) {}
};

double max_abs(const Field& f) { return oracle::max_diff(f, Field(f.size(), 0.0)); }

}  // namespace

TEST_CASE("zero state maps to zero") {
  KdVParams p;
  const Discretization g(p, 11, 0.1);
  const auto ops = build_reduced_operators(p, g);
  const ReducedState zero{Field(11, 0.0), Field(11, 0.0)};
  for (auto v : {OperatorVariant::Exact, OperatorVariant::Printed}) {
    CHECK(max_abs(pq_step(zero, {}, ops, v, {}).state.q) == 0.0);
    CHECK(max_abs(pq_step_explicit(zero, {}, ops, v).q) == 0.0);
    const ZState zz{Field(11, 0.0), Field(11, 0.0)};
    CHECK(max_abs(z_step(zz, {}, ops, v, {}).state.z) == 0.0);
    CHECK(max_abs(z_step_explicit(zz, {}, ops, v).z) == 0.0);
    CHECK(max_abs(z_step_explicit_unstable(zz, {}, ops, v).z) == 0.0);
  }
}

TEST_CASE("initial reduced state") {
  Setup s;
  CHECK(std::abs(oracle::sum(s.s0.p)) < 1e-12);
  CHECK(oracle::max_diff(recover_u(s.s0.q), s.init.u) < 1e-12);
}

TEST_CASE("recover helpers") {
  CHECK(oracle::max_diff(recover_u(Field(7, 2.0)), Field(7, 1.0)) < 1e-15);
  CHECK(oracle::max_diff(recover_phi(Field(7, 0.0), {}), Field(7, 0.0)) == 0.0);
  CHECK_THROWS_AS(recover_u(Field(8, 2.0)), SingularityError);
}

TEST_CASE("one step of p-q solves the eliminated four-field equation") {
  Setup s(21, 0.05);
  const auto ref = oracle::dense_reduced(21, s.g.h(), s.g.tau(), s.p.eta, s.p.delta);
  const auto out = pq_step(s.s0, s.init.mass, s.ops, OperatorVariant::Exact, {}).state;
  Eigen::VectorXd cv = Eigen::VectorXd::Zero(21);
  cv(20) = 2 * s.init.mass.c;
  const double h = s.g.h();
  Eigen::VectorXd sq(21);
  for (int i = 0; i < 21; ++i) {
    const double m = 0.25 * (s.s0.q[i] + out.q[i]);
    sq(i) = m * m;
  }
  using oracle::vec;
  const Eigen::VectorXd p_ref = ref.M1 * (vec(s.s0.q) - cv / h) +
                                ref.M2e * (vec(s.s0.p) + cv) + ref.M3 * sq;
  CHECK((p_ref - vec(out.p)).cwiseAbs().maxCoeff() < 1e-9);
  const Eigen::VectorXd q_ref = -vec(s.s0.q) + (2 / h) * (vec(s.s0.p) + vec(out.p) + cv);
  CHECK((q_ref - vec(out.q)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("equivalence with the Preissman step and mass") {
  Setup s;
  auto z = initialize_auxiliary(s.init.u, s.init.mass, s.p, s.g, {});
  auto r = s.s0;
  ZState zs = z_bootstrap(s.s0, s.init.mass, s.ops, OperatorVariant::Exact, {}).state;
  z = preissman_step(z, s.init.mass, s.ops, {}, {}).state;
  r = pq_step(r, s.init.mass, s.ops, OperatorVariant::Exact, {}).state;
  double worst_pq = oracle::max_diff(z.u, recover_u(r.q));
  double worst_z = oracle::max_diff(recover_u(zs.q), recover_u(r.q));
  for (int j = 1; j < 100; ++j) {
    z = preissman_step(z, s.init.mass, s.ops, {}, {}).state;
    r = pq_step(r, s.init.mass, s.ops, OperatorVariant::Exact, {}).state;
    zs = z_step(zs, s.init.mass, s.ops, OperatorVariant::Exact, {}).state;
    worst_pq = std::max(worst_pq, oracle::max_diff(z.u, recover_u(r.q)));
    worst_z = std::max(worst_z, oracle::max_diff(recover_u(zs.q), recover_u(r.q)));
    // p stays in the range of B.
    CHECK(std::abs(oracle::sum(r.p)) < 1e-10);
  }
  CHECK(worst_pq <= 1e-10);
  CHECK(worst_z <= 1e-9);
  const double h = s.g.h();
  CHECK(std::abs(discrete_mass(recover_u(r.q), h) - s.init.mass.c) < 1e-11);
  CHECK(std::abs(discrete_mass(recover_u(zs.q), h) - s.init.mass.c) < 1e-11);
}

TEST_CASE("explicit p-q is first order in tau per step") {
  KdVParams p;
  std::vector<double> d;
  for (double tau : {0.02, 0.01, 0.005}) {
    const Discretization g(p, 99, tau);
    const auto ops = build_reduced_operators(p, g);
    const auto init = make_initial(InitialCondition{}, p, g);
    const auto s0 = make_reduced_state(init.u, init.mass, g.h());
    const auto imp = pq_step(s0, init.mass, ops, OperatorVariant::Exact, {}).state;
    const auto exp = pq_step_explicit(s0, init.mass, ops, OperatorVariant::Exact);
    d.push_back(oracle::max_diff(recover_u(imp.q), recover_u(exp.q)));
    CHECK(std::abs(g.h() * oracle::sum(recover_u(exp.q)) - init.mass.c) < 1e-12);
  }
  // The one-step gap is O(tau^2) per step, i.e. O(tau) relative to tau.
  CHECK(d[0] / d[1] > 1.8);
  CHECK(d[1] / d[2] > 1.8);
}

TEST_CASE("explicit z-schemes: first step and short-run agreement") {
  Setup s(99, 0.01);
  const auto imp = z_bootstrap(s.s0, s.init.mass, s.ops, OperatorVariant::Exact, {}).state;
  const auto exp = z_bootstrap_explicit(s.s0, s.init.mass, s.ops, OperatorVariant::Exact);
  const double d1 = oracle::max_diff(recover_u(imp.q), recover_u(exp.q));
  CHECK(d1 < 1e-3);
  auto a = imp, b = exp, c = exp;
  for (int j = 0; j < 10; ++j) {
    a = z_step(a, s.init.mass, s.ops, OperatorVariant::Exact, {}).state;
    b = z_step_explicit(b, s.init.mass, s.ops, OperatorVariant::Exact);
    c = z_step_explicit_unstable(c, s.init.mass, s.ops, OperatorVariant::Exact);
  }
  CHECK(oracle::max_diff(recover_u(a.q), recover_u(b.q)) < 1e-2);
  CHECK(oracle::max_diff(recover_u(a.q), recover_u(c.q)) < 1e-2);
}

TEST_CASE("explicit z equals explicit p-q") {
  Setup s(49, 0.05);
  auto r = s.s0;
  auto z = z_bootstrap_explicit(s.s0, s.init.mass, s.ops, OperatorVariant::Exact);
  r = pq_step_explicit(r, s.init.mass, s.ops, OperatorVariant::Exact);
  for (int j = 0; j < 50; ++j) {
    r = pq_step_explicit(r, s.init.mass, s.ops, OperatorVariant::Exact);
    z = z_step_explicit(z, s.init.mass, s.ops, OperatorVariant::Exact);
  }
  CHECK(oracle::max_diff(r.q, z.q) < 1e-9);
}

TEST_CASE("the unstable explicit z-scheme blows up") {
  Setup s(49, 0.8 / 49);
  auto z = z_bootstrap_explicit(s.s0, s.init.mass, s.ops, OperatorVariant::Exact);
  bool blew = false;
  try {
    for (long j = 2; j < 20000; ++j)
      z = z_step_explicit_unstable(z, s.init.mass, s.ops, OperatorVariant::Exact, j);
  } catch (const BlowupError& e) {
    blew = true;
    CHECK(e.step() > 1000);
    CHECK(e.max_abs() > kReducedBlowup);
  }
  CHECK(blew);
}

TEST_CASE("printed variant differs from exact") {
  Setup s;
  const auto a = pq_step_explicit(s.s0, s.init.mass, s.ops, OperatorVariant::Exact);
  const auto b = pq_step_explicit(s.s0, s.init.mass, s.ops, OperatorVariant::Printed);
  CHECK(oracle::max_diff(recover_u(a.q), recover_u(b.q)) > 1.0);
  // The printed fixed point does not converge at these settings.
  CHECK_THROWS_AS(pq_step(s.s0, s.init.mass, s.ops, OperatorVariant::Printed, {}),
                  DivergenceError);
}

TEST_CASE("even n is rejected") {
  KdVParams p;
  const Discretization odd(p, 11, 0.1);
  const auto ops = build_reduced_operators(p, odd);
  const ReducedState even{Field(12, 0.0), Field(12, 0.0)};
  CHECK_THROWS_AS(pq_step(even, {}, ops, OperatorVariant::Exact, {}), SingularityError);
  CHECK_THROWS_AS(pq_step_explicit(even, {}, ops, OperatorVariant::Exact), SingularityError);
  const ZState ze{Field(12, 0.0), Field(12, 0.0)};
  CHECK_THROWS_AS(z_step(ze, {}, ops, OperatorVariant::Exact, {}), SingularityError);
  CHECK_THROWS_AS(z_step_explicit(ze, {}, ops, OperatorVariant::Exact), SingularityError);
  CHECK_THROWS_AS(z_step_explicit_unstable(ze, {}, ops, OperatorVariant::Exact),
                  SingularityError);
}
