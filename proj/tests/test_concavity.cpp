#include "helpers.hpp"

#include "minl2/concavity.hpp"

using namespace minl2;
using namespace minl2::test;

namespace {

GCurve linear_curve() { return sample_g_curve(disc_problem(2.0), default_t_grid(GainFunction::constant())); }

}  // namespace

TEST_CASE("default grid is equispaced in r") {
  const auto c = GainFunction::rational(2.0);
  const auto grid = default_t_grid(c, 33);
  REQUIRE(grid.size() == 33);
  CHECK(grid[0] == 0.0);
  const Real total = hhat_reparam(c, 0);
  for (int i = 1; i < 33; ++i) CHECK(hhat_reparam(c, grid[i]) == doctest::Approx(total * (33 - i) / 33).epsilon(1e-10));
}

TEST_CASE("linear curve") {
  const GCurve curve = linear_curve();
  for (std::size_t i = 0; i < curve.size(); ++i) {
    CHECK(curve.r[i] == doctest::Approx(std::exp(-curve.t[i])).epsilon(1e-14));
    CHECK(curve.g[i] == doctest::Approx(2 * kPi * curve.r[i]).epsilon(1e-8));
  }
  const auto p = disc_problem(2.0);
  CHECK(g_value(p, std::log(2.0)).value == doctest::Approx(kPi).epsilon(1e-12));

  const auto v = check_concavity(curve, 1e-6);
  CHECK(v.concave);
  CHECK(v.linear);
  CHECK(v.monotone);
  CHECK(std::abs(v.worst) <= 1e-7);

  const auto dv = check_derivative_lemma(curve);
  CHECK(dv.passed);
  CHECK(dv.spread <= 1e-8);
}

TEST_CASE("strictly concave curves") {
  for (const auto& c : {GainFunction::constant(), GainFunction::rational(2.0)}) {
    const auto p = disc_problem(2.0, quadratic(1.0), 0, c);
    const GCurve curve = sample_g_curve(p, default_t_grid(c));
    CHECK(curve.g[0] < 2 * kPi * hhat_reparam(c, 0));
    const auto v = check_concavity(curve, 1e-6);
    CHECK(v.concave);
    CHECK_FALSE(v.linear);
    CHECK(v.strictly_concave_somewhere);
    const auto dv = check_derivative_lemma(curve);
    CHECK(dv.passed);
    CHECK(dv.strict_points == int(curve.size()) - 2);
  }
}

TEST_CASE("a corrupted curve is rejected at the corrupted index") {
  GCurve curve = linear_curve();
  curve.g[10] *= 0.95;  // a dent, so the second difference centered at 10 turns positive
  const auto v = check_concavity(curve, 1e-6);
  CHECK_FALSE(v.concave);
  REQUIRE(v.violation.has_value());
  CHECK(*v.violation == 10);
  CHECK_FALSE(check_derivative_lemma(curve).passed);
}

TEST_CASE("consequences of a linear curve") {
  const auto p = disc_problem(2.0);
  const GCurve curve = linear_curve();
  const LinearReport r = verify_linear_consequences(p, curve);
  CHECK(r.passed);
  for (const auto& c : r.checks) CHECK(c.rel_error <= 1e-6);
  // the indicator of [ln 2, ln 4] carries mass 2 pi (1/2 - 1/4)
  const auto mass = std::find_if(r.checks.begin(), r.checks.end(), [](const auto& c) { return c.name.find("mass") == 0; });
  REQUIRE(mass != r.checks.end());
  CHECK(mass->lhs == doctest::Approx(kPi / 2).epsilon(1e-6));
  // alternate gain 1/(1+t)^2 at t0 = 0
  CHECK(r.checks.back().lhs == doctest::Approx(2 * kPi * 0.403652637676805925658921500629).epsilon(1e-6));

  // a = 1 on (0, inf) recovers G(0)
  GalerkinSpace space;
  const auto sol = g_value(p, 0, {}, &space);
  const Real full = sublevel_norm(p.domain, p.weights, GainFunction::constant(), space, sol.coefficients, 0);
  CHECK(full == doctest::Approx(sol.value).epsilon(1e-10));

  const auto q = disc_problem(2.0, quadratic(1.0));
  CHECK_THROWS_AS(verify_linear_consequences(q, sample_g_curve(q, default_t_grid(q.gain))), Error);
}

TEST_CASE("tail and monotonicity") {
  const auto p = disc_problem(2.0, quadratic(1.0));
  const Real g0 = g_value(p, 0).value;
  const auto tc = check_tail(p, g0);
  CHECK(tc.passed);
  CHECK(tc.value < 1e-6 * g0);
}

TEST_CASE("CSV layout") {
  GCurve c;
  c.t = {0.0, 1.0};
  c.r = {1.0, 0.5};
  c.g = {2.0, 1.0};
  c.converged = {true, false};
  c.degree = {8, 16};
  c.errors = {"", ""};
  CHECK(curve_csv(c) == "t,r,G,converged,basis_degree\n0,1,2,1,8\n1,0.5,1,0,16\n");
}

TEST_CASE("thread count does not change the curve") {
  const auto p = disc_problem(2.0, quadratic(1.0));
  const auto grid = default_t_grid(p.gain, 9);
  const GCurve a = sample_g_curve(p, grid, {}, 1);
  const GCurve b = sample_g_curve(p, grid, {}, 3);
  CHECK(curve_csv(a) == curve_csv(b));
}
