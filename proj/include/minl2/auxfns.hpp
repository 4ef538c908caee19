#pragma once

// Scalar cutoffs and regularizations: the ramp b, its primitive v, the smoothed
// family v_eps, the mollifier family g_n, the regularized gain c_n and the
// explicit solutions (u, s) of the ODE pair.

#include "minl2/gain.hpp"

#include <functional>
#include <string>
#include <vector>

namespace minl2 {

struct AuxProfile {
  Real t0 = 0;
  Real B = 1;
  Real eps = 0.1;
  int n = 1;
  Real S = 0;

  /// Throws argument errors for B <= 0, eps outside (0, B/8), n < 1 or t0 < S.
  void validate() const;
};

/// Polynomial bump (35/32)(1-u^2)^3 / delta on (-delta, delta) and its primitives.
class Bump {
 public:
  explicit Bump(Real delta);
  Real delta() const { return delta_; }
  Real density(Real x) const;
  Real cdf(Real x) const;     // int_{-inf}^x rho
  Real ramp(Real x) const;    // int_{-inf}^x cdf
  Real ramp2(Real x) const;   // int_{-inf}^x ramp

 private:
  Real delta_;
};

/// b(t) = int_{-inf}^t (1/B) 1{-t0-B < s < -t0} ds.
Real b_func(Real t, Real t0, Real B);
/// v(t) = int_{-t0}^t b(s) ds - t0.
Real v_func(Real t, Real t0, Real B);

struct VEps {
  Real value = 0, d1 = 0, d2 = 0;
};
/// v_eps and its first two derivatives, from the mollified indicator of
/// (-t0-B+2eps, -t0-2eps) with the bump of half-width eps/4.
VEps v_eps(Real t, Real t0, Real B, Real eps);

/// g_n(x) = n f(n x) for x <= 0, n f(n^2 x) for x > 0, f = 2 * 1_{(-1/2,1/2)} * rho.
Real g_n(Real x, int n);
/// Integral of g_n over [a, b] (closed form).
Real g_n_mass(Real a, Real b, int n);

using ScalarFn = std::function<Real(Real)>;

/// c_n(t) = e^t int h(e^y (t - S) + S) g_n(y) dy with h = c e^{-t}; 64-point rules per smooth piece.
Real c_n(Real t, int n, Real S, const ScalarFn& c);
Real c_n(Real t, int n, Real S, const GainFunction& c);

/// u(t) = -log int_S^t c e^{-x} dx.
Real ode_u(Real t, const ScalarFn& c, Real S);
/// s(t) = int_S^t (t - x) c(x) e^{-x} dx / int_S^t c e^{-x} dx.
Real ode_s(Real t, const ScalarFn& c, Real S);

struct OdeResiduals {
  Real linear = 0;      // max |s' - s u' - 1|
  Real nonlinear = 0;   // max |(s + s'^2/(u''s - s'')) e^{u-t} c - 1|
  Real min_convexity = 0;  // min (u'' s - s'')
  bool convexity_ok = false;
  std::size_t points = 0;
};

/// Fourth-order central differences with step h.
OdeResiduals ode_residuals(const std::vector<Real>& grid, const ScalarFn& c, Real S, Real h = 1e-4);

struct AuxCheck {
  std::string name;
  Real value = 0;  // measured quantity
  Real limit = 0;  // threshold it is compared against
  bool passed = false;
};

struct NamedGain {
  std::string name;
  ScalarFn c;
};

struct AuxSuiteReport {
  std::vector<AuxCheck> checks;
  bool passed = false;
};

/// Property suite for the cutoffs, the mollified gains and the ODE pair on
/// [S + 0.1, S + 10]; `ode_tol` bounds both residuals.
AuxSuiteReport aux_suite(const AuxProfile& profile, const std::vector<NamedGain>& gains, Real ode_tol = 1e-5);

/// Wraps a gain as a scalar function.
ScalarFn as_function(const GainFunction& c);

}  // namespace minl2
