#include "helpers.hpp"

using namespace minl2;
using namespace minl2::test;

// mpmath, 30 digits
constexpr Real kRationalTotal = 0.403652637676805925658921500629;  // int_0^inf e^{-t} (1+t)^{-2}
constexpr Real kRationalToOne = 0.352638286751174265741343058145;  // int_0^1 e^{-t} (1+t)^{-2}

TEST_CASE("gain validation") {
  const auto one = validate_gain(GainFunction::constant());
  CHECK(one.passed);
  CHECK(one.total_mass == doctest::Approx(1.0).epsilon(1e-14));

  CHECK(validate_gain(GainFunction::exponential(-0.5)).passed);  // c e^{-t} = e^{-t/2}
  CHECK_FALSE(validate_gain(GainFunction::exponential(-2.0)).passed);

  const auto rat = validate_gain(GainFunction::rational(2.0));
  CHECK(rat.passed);
  CHECK(rat.total_mass == doctest::Approx(kRationalTotal).epsilon(1e-12));

  // c e^{-t} jumps up at t = 1
  CHECK_FALSE(validate_gain(GainFunction::steps({1.0}, {1.0, 5.0})).passed);
  CHECK(validate_gain(GainFunction::steps({1.0}, {2.0, 1.0})).passed);
}

TEST_CASE("h and hhat") {
  const auto one = GainFunction::constant();
  CHECK(h_reparam(one, 0, std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(h_reparam(one, 0, 60.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(hhat_reparam(one, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(hhat_reparam(one, std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(hhat_reparam(one, 5) == doctest::Approx(std::exp(-5.0)).epsilon(1e-14));

  const auto rat = GainFunction::rational(2.0);
  CHECK(h_reparam(rat, 0, 1) == doctest::Approx(kRationalToOne).epsilon(1e-12));
  CHECK(hhat_reparam(rat, 0) == doctest::Approx(kRationalTotal).epsilon(1e-12));
  CHECK(hhat_reparam(rat, 1) == doctest::Approx(kRationalTotal - kRationalToOne).epsilon(1e-11));
}

TEST_CASE("hhat_inverse inverts hhat") {
  for (const auto& c : {GainFunction::constant(), GainFunction::rational(2.0), GainFunction::exponential(0.5),
                        GainFunction::steps({0.5, 2.0}, {3.0, 2.0, 1.0})}) {
    const Real total = hhat_reparam(c, c.lower_endpoint());
    for (Real frac : {0.9, 0.5, 0.1, 1e-4}) {
      const Real t = hhat_inverse(c, frac * total, 1e-14);
      CHECK(hhat_reparam(c, t) == doctest::Approx(frac * total).epsilon(1e-10));
    }
  }
}

TEST_CASE("reparameterized gain") {
  // c(2t) e^{-t} for c = 1 has mass 1/2 on (0, inf)
  const auto c = GainFunction::constant().reparameterized(2.0, 1.0);
  CHECK(c(0.7) == doctest::Approx(std::exp(-0.7)).epsilon(1e-14));
  CHECK(c.total_mass() == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("breakpoints of step gains") {
  const auto c = GainFunction::steps({0.5, 2.0}, {3.0, 2.0, 1.0});
  CHECK(c.breakpoints() == std::vector<Real>{0.5, 2.0});
  CHECK(c(0.25) == 3.0);
  CHECK(c(1.0) == 2.0);
  CHECK(c(9.0) == 1.0);
  // 3 (1 - e^{-1/2}) + 2 (e^{-1/2} - e^{-2}) + e^{-2}
  const Real exact = 3 * (1 - std::exp(-0.5)) + 2 * (std::exp(-0.5) - std::exp(-2.0)) + std::exp(-2.0);
  CHECK(c.total_mass() == doctest::Approx(exact).epsilon(1e-14));
}
