#pragma once

#include "minl2/solver.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

namespace minl2::test {

constexpr Real kPi = std::numbers::pi;

inline Real rel(Real a, Real b) { return std::abs(a - b) / std::abs(b); }

// Disc around 0 with psi = 2a log|w| and phi as given.
inline ExtensionProblem disc_problem(Real green_coef, Potential phi = {}, int k = 0,
                                     GainFunction c = GainFunction::constant()) {
  WeightPair wp;
  wp.k = k;
  wp.psi.add_green(green_coef);
  wp.phi = std::move(phi);
  return ExtensionProblem{PlanarDomain::disc(0), wp, std::move(c), JetConstraint::monomial(k)};
}

inline Potential quadratic(Real coef) {
  Potential p;
  p.add_quadratic(coef);
  return p;
}

inline Potential linear(Complex lambda) {
  Potential p;
  p.add_linear(lambda);
  return p;
}

}  // namespace minl2::test
