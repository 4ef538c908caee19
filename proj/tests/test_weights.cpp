#include "helpers.hpp"

using namespace minl2;
using namespace minl2::test;

TEST_CASE("alpha residue") {
  const auto d = PlanarDomain::disc(0);
  for (int k = 0; k < 4; ++k) {
    WeightPair wp;
    wp.k = k;
    wp.psi.add_green(2.0 * (k + 1));
    CHECK(std::abs(alpha_residue(wp, d).value) <= 1e-12);
  }
  WeightPair lin;
  lin.psi.add_green(2.0);
  lin.phi.add_linear(2.0);
  CHECK(std::abs(alpha_residue(lin, d).value) <= 1e-10);

  WeightPair lp;
  lp.psi.add_green(2.0);
  CSeries g(2);
  g << 1.0, 1.0;  // 1 + z
  lp.phi.add_log_poly(2.0, g);
  const auto est = alpha_residue(lp, d);
  CHECK(std::abs(est.value) <= 1e-8);
  CHECK(est.converged);
}

TEST_CASE("alpha1 residue") {
  const auto d = PlanarDomain::disc(0);
  CHECK(std::abs(alpha1_residue(Potential(), 0, d).value) <= 1e-14);
  CHECK(std::abs(alpha1_residue(linear(-1.0), 0, d).value) <= 1e-10);
  CSeries g(2);
  g << 2.0, 1.0;  // 2 + z
  Potential h;
  h.add_log_poly(1.0, g);
  CHECK(alpha1_residue(h, 0, d).value == doctest::Approx(std::log(2.0)).epsilon(1e-8));
}

TEST_CASE("weight validation") {
  const auto d = PlanarDomain::disc(0);
  WeightPair ok;
  ok.psi.add_green(2.0);
  CHECK(validate_weights(ok, d).passed);

  WeightPair positive = ok;
  positive.psi.add_constant(0.5);
  CHECK_FALSE(validate_weights(positive, d).passed);

  WeightPair vanishing = ok;
  CSeries g(2);
  g << -0.5, 1.0;  // zero at z = 1/2
  vanishing.phi.add_log_poly(2.0, g);
  CHECK_FALSE(validate_weights(vanishing, d).passed);

  WeightPair no_pole;
  no_pole.psi.add_quadratic_bump(1.0, 0, 1.0);
  CHECK_FALSE(validate_weights(no_pole, d).passed);
}

TEST_CASE("structural flags") {
  WeightPair wp;
  wp.psi.add_green(2.0);
  CHECK(wp.flag_harmonic_decomposition());
  CHECK(wp.flag_psi_is_green());
  wp.phi.add_quadratic(1.0);
  CHECK_FALSE(wp.flag_harmonic_decomposition());
  WeightPair bump;
  bump.psi.add_green(2.0).add_green_bump(0.5);
  CHECK_FALSE(bump.flag_psi_is_green());
  CHECK(bump.lelong() == doctest::Approx(1.0));
}

TEST_CASE("reduction keeps e^{-phi} c(-psi) fixed") {
  const auto d = PlanarDomain::disc(0);
  WeightPair wp;
  wp.psi.add_green(4.0);
  wp.phi.add_quadratic(1.0);
  const auto c = GainFunction::rational(2.0);
  const ReducedProblem r = reduce_to_lelong(wp, c);
  CHECK(r.original_lelong == doctest::Approx(2.0));
  CHECK(r.s == doctest::Approx(0.5));
  CHECK(r.weights.lelong() == doctest::Approx(1.0));
  for (Complex z : {Complex(0.1, 0.2), Complex(-0.5, 0.3), Complex(0.7, -0.1)}) {
    const Real g = d.green(z);
    const Real before = std::exp(-wp.phi.evaluate(z, g)) * c(-wp.psi.evaluate(z, g));
    const Real after = std::exp(-r.weights.phi.evaluate(z, g)) * r.gain(-r.weights.psi.evaluate(z, g));
    CHECK(after == doctest::Approx(before).epsilon(1e-13));
  }
}

TEST_CASE("radial detection") {
  const auto d = PlanarDomain::disc(0);
  CHECK(quadratic(1.0).radial(d));
  CHECK_FALSE(linear(1.0).radial(d));
  Potential shifted;
  shifted.add_quadratic(1.0, 0.2);
  CHECK_FALSE(shifted.radial(d));
}
