#include "helpers.hpp"

#include "minl2/jets.hpp"

#include <random>

using namespace minl2;
using namespace minl2::test;

TEST_CASE("G on the disc with Green weights") {
  for (int k = 0; k < 4; ++k) {
    const auto p = disc_problem(2.0 * (k + 1), {}, k);
    const auto s = g_value(p, 0);
    CHECK(s.converged);
    CHECK(s.value == doctest::Approx(2 * kPi / (k + 1)).epsilon(1e-12));
  }
  const auto p = disc_problem(2.0);
  GalerkinSpace space;
  const auto s = g_value(p, 0, {}, &space);
  CHECK(std::abs(s.coefficients[0] - 1.0) <= 1e-12);
  CHECK(s.coefficients.tail(s.coefficients.size() - 1).norm() <= 1e-12);
  CHECK(g_value(p, std::log(4.0)).value == doctest::Approx(kPi / 2).epsilon(1e-12));
}

TEST_CASE("zero jet target gives G = 0") {
  auto p = disc_problem(2.0);
  p.jet = JetConstraint::zero(0);
  const auto s = g_value(p, 0);
  CHECK(s.value == 0.0);
  CHECK(s.coefficients.norm() == 0.0);
}

TEST_CASE("non-Green weights") {
  const auto q = disc_problem(2.0, quadratic(1.0));
  CHECK(g_value(q, 0).value == doctest::Approx(2 * kPi * (1 - std::exp(-1.0))).epsilon(1e-10));

  // phi = 2 Re z: the extremal e^{z} dw has norm int |e^z|^2 e^{-2 Re z} = 2 pi
  const auto l = disc_problem(2.0, linear(2.0));
  const auto ex = extremal_form(l, 8);
  CHECK(g_value(l, 0).value == doctest::Approx(2 * kPi * std::norm(ex.c0)).epsilon(1e-8));
}

TEST_CASE("jet order must match the weights") {
  auto p = disc_problem(4.0, {}, 1);
  p.jet = JetConstraint::monomial(0);
  CHECK_THROWS_AS(g_value(p, 0), Error);
}

TEST_CASE("Pythagoras identity") {
  const auto p = disc_problem(2.0);
  GalerkinSpace space;
  const auto sol = g_value(p, 0, {}, &space);

  SUBCASE("F^ = F_t") {
    const auto r = pythagoras_check(space, p.jet, sol, sol.coefficients);
    CHECK(r.residual <= 1e-14);
  }
  SUBCASE("F^ = (1 + w) dw") {
    CVector f = CVector::Zero(2);
    f << 1.0, 1.0;
    const CVector trial = basis_from_chart(p.domain, space, f);
    const auto r = pythagoras_check(space, p.jet, sol, trial);
    CHECK(r.trial_norm == doctest::Approx(3 * kPi).epsilon(1e-10));
    CHECK(r.minimal_norm == doctest::Approx(2 * kPi).epsilon(1e-10));
    CHECK(r.difference_norm == doctest::Approx(kPi).epsilon(1e-10));
    CHECK(r.residual <= 1e-10 * r.trial_norm);
  }
  SUBCASE("random constrained trials") {
    std::mt19937_64 rng(20240611);
    std::normal_distribution<Real> gauss;
    const auto q = disc_problem(2.0, quadratic(1.0));
    GalerkinSpace sq;
    const auto sq_sol = g_value(q, 0.3, {}, &sq);
    for (int i = 0; i < 100; ++i) {
      CVector free(sq.gram.cols() - (sq.orthonormal ? 0 : sq.k + 1));
      for (auto& v : free) v = {gauss(rng), gauss(rng)};
      const CVector trial = constrained_trial(sq, q.jet, free);
      const auto r = pythagoras_check(sq, q.jet, sq_sol, trial);
      CHECK(r.residual <= 1e-10 * r.trial_norm);
    }
  }
}

TEST_CASE("chart coefficients of the minimizer") {
  auto p = disc_problem(2.0);
  p.domain = PlanarDomain::disc(0.3);
  GalerkinSpace space;
  const auto sol = g_value(p, 0, {}, &space);
  const CVector f = chart_coefficients(p.domain, space, sol.coefficients, 4);
  CHECK(std::abs(f[0] - 1.0) <= 1e-10);
  CHECK(sol.constraint_residual <= 1e-12);
}

TEST_CASE("weighted Bergman kernel") {
  const auto d = PlanarDomain::disc(0);
  for (int k = 0; k < 4; ++k)
    CHECK(bergman_kernel_k(d, Potential(), k).value == doctest::Approx((k + 1) / kPi).epsilon(1e-10));
  // rho = |e^z|^2: extremal e^{-z} dw with norm 2 pi
  CHECK(bergman_kernel_k(d, linear(-1.0), 0).value == doctest::Approx(1 / kPi).epsilon(1e-6));
}

TEST_CASE("annulus solve is stable") {
  WeightPair wp;
  wp.psi.add_green(2.0);
  const ExtensionProblem p{PlanarDomain::annulus(0.3, 0.6), wp, GainFunction::constant(), JetConstraint::monomial(0)};
  SolverOptions o;
  o.max_degree = 24;
  o.degree_tol = 1e-6;
  o.plan.tolerance = 1e-8;
  const auto a = g_value(p, 0.5, o);
  const auto b = g_value(p, 2.0, o);
  CHECK(a.value > b.value);
  CHECK(b.value > 0);
  // the jet bound holds on every domain, with equality only for simply connected ones
  const Real cb = log_capacity(p.domain).value;
  CHECK(a.value < jet_bound(GainFunction::constant(), 0, 1, 0, cb) * std::exp(-0.5));
  CHECK(b.value < jet_bound(GainFunction::constant(), 0, 1, 0, cb) * std::exp(-2.0));
}
