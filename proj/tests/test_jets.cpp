#include "helpers.hpp"

#include "minl2/jets.hpp"

using namespace minl2;
using namespace minl2::test;

TEST_CASE("jet bound formula") {
  const auto one = GainFunction::constant();
  CHECK(jet_bound(one, 0, 1, 0, 1) == doctest::Approx(2 * kPi).epsilon(1e-15));
  CHECK(jet_bound(one, 0, 3, 2, 1) == doctest::Approx(2 * kPi / 3).epsilon(1e-15));
  CHECK(jet_bound(one, 0, 1, 0, 1 / 0.91) == doctest::Approx(2 * kPi * 0.91 * 0.91).epsilon(1e-14));
  CHECK_THROWS_AS(jet_bound(GainFunction::exponential(-2), 0, 1, 0, 1), Error);
}

TEST_CASE("equality verdicts") {
  for (int k = 0; k < 4; ++k) {
    const auto r = verify_jet_equality(disc_problem(2.0 * (k + 1), {}, k));
    CHECK(r.verdict == Verdict::equality);
    CHECK(r.consistent);
    CHECK(std::abs(r.gap) <= 1e-10);
  }
  auto displaced = disc_problem(2.0);
  displaced.domain = PlanarDomain::disc(0.3);
  const auto d = verify_jet_equality(displaced);
  CHECK(d.verdict == Verdict::equality);
  CHECK(d.cbeta == doctest::Approx(1 / 0.91).epsilon(1e-10));
  CHECK(d.bound == doctest::Approx(2 * kPi * 0.91 * 0.91).epsilon(1e-10));
}

TEST_CASE("strict verdicts") {
  const auto q = verify_jet_equality(disc_problem(2.0, quadratic(1.0)));
  CHECK(q.verdict == Verdict::strict);
  CHECK_FALSE(q.flag_harmonic);
  CHECK(q.consistent);
  CHECK(q.g0 == doctest::Approx(2 * kPi * (1 - std::exp(-1.0))).epsilon(1e-10));
  CHECK(q.bound - q.g0 == doctest::Approx(2 * kPi * std::exp(-1.0)).epsilon(1e-9));

  auto bump = disc_problem(2.0);
  bump.weights.psi.add_green_bump(0.5);
  const auto b = verify_jet_equality(bump);
  CHECK_FALSE(b.flag_green);
  CHECK(b.verdict == Verdict::strict);
  CHECK(b.consistent);
}

TEST_CASE("Lelong coefficients above k+1 are reduced first") {
  // psi = 4G with phi = -2G keeps the combined coefficient at k+1 = 1
  Potential phi;
  phi.add_green(-2.0);
  const auto r = verify_jet_equality(disc_problem(4.0, phi));
  CHECK(r.reduction_s == doctest::Approx(0.5));
  CHECK(r.verdict == Verdict::equality);
  CHECK(r.g0 == doctest::Approx(kPi).epsilon(1e-10));
}

TEST_CASE("extremal forms") {
  for (int k = 0; k < 3; ++k) {
    const auto ex = extremal_form(disc_problem(2.0 * (k + 1), {}, k), 6);
    for (int j = 0; j < 6; ++j) CHECK(std::abs(ex.in_chart[j] - (j == k ? 1.0 : 0.0)) <= 1e-14);
  }

  SUBCASE("phi = 2 Re z") {
    const auto p = disc_problem(2.0, linear(2.0));
    const auto ex = extremal_form(p, 8);
    GalerkinSpace space;
    const auto sol = g_value(p, 0, {}, &space);
    const CVector f = chart_coefficients(p.domain, space, sol.coefficients, 8);
    Real fact = 1;
    for (int j = 0; j < 8; ++j) {
      if (j > 0) fact *= j;
      CHECK(std::abs(ex.in_chart[j] - 1.0 / fact) <= 1e-14);  // e^{w}
      CHECK(std::abs(f[j] - ex.in_chart[j]) <= 1e-6);
    }
  }
  SUBCASE("displaced marked point") {
    auto p = disc_problem(2.0);
    p.domain = PlanarDomain::disc(0.3);
    const auto ex = extremal_form(p, 8);
    GalerkinSpace space;
    const auto sol = g_value(p, 0, {}, &space);
    const CVector f = chart_coefficients(p.domain, space, sol.coefficients, 8);
    for (int j = 0; j < 8; ++j) CHECK(std::abs(f[j] - ex.in_chart[j]) <= 1e-5);
    const CVector v = extremal_in_basis(ex, space);
    CHECK((v - sol.coefficients).norm() <= 1e-8);
  }
  CHECK_THROWS_AS(extremal_form(disc_problem(2.0, quadratic(1.0)), 4), Error);
}

TEST_CASE("k-jet Suita") {
  const auto d = PlanarDomain::disc(0);
  for (int k = 0; k < 4; ++k) {
    const auto r = suita_k_check(d, Potential(), 0, k);
    CHECK(r.kernel == doctest::Approx((k + 1) / kPi).epsilon(1e-10));
    CHECK(r.lhs == doctest::Approx(1.0));
    CHECK(r.rhs == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.verdict == Verdict::equality);
  }
  const auto h = suita_k_check(d, linear(-1.0), 0, 0);
  CHECK(h.verdict == Verdict::equality);
  CHECK(std::abs(h.gap) <= 1e-5);

  const auto s = suita_k_check(d, quadratic(1.0), 0, 0);
  CHECK(s.verdict == Verdict::strict);
  CHECK(s.gap > 1e-3);
  CHECK(s.consistent);
}

TEST_CASE("power identity") {
  const auto d = PlanarDomain::disc(0);
  const auto p0 = power_corollary_check(d, Potential(), 0, 0, 2);
  CHECK(p0.order == 1);
  CHECK(p0.kernel == doctest::Approx(2 / kPi).epsilon(1e-10));
  CHECK(p0.passed);
  const auto p1 = power_corollary_check(d, Potential(), 0, 1, 2);
  CHECK(p1.order == 3);
  CHECK(p1.kernel == doctest::Approx(4 / kPi).epsilon(1e-10));
  CHECK(p1.passed);
  const auto base = suita_k_check(d, linear(-1.0), 0, 0);
  const auto n1 = power_corollary_check(d, linear(-1.0), 0, 0, 1);
  CHECK(n1.kernel == doctest::Approx(base.kernel).epsilon(1e-14));
}
