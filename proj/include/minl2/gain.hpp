#pragma once

// Gain functions c on (T, +inf) with c(t) e^{-t} nonincreasing, together with
// the mass integrals h(t) = int_{T1}^t c e^{-s} ds and hhat(t) = int_t^inf c e^{-s} ds.

#include "minl2/error.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace minl2 {

using Real = double;

enum class GainFamily { constant, exponential, rational, steps };

class GainFunction {
 public:
  /// c = 1 on (0, inf).
  GainFunction() = default;

  static GainFunction constant(Real value = 1.0, Real lower = 0.0);
  /// c(t) = e^{-beta t}
  static GainFunction exponential(Real beta, Real lower = 0.0);
  /// c(t) = (1 + t)^{-p}
  static GainFunction rational(Real p, Real lower = 0.0);
  /// c(t) = values[i] on [breaks[i-1], breaks[i]), with breaks[-1] = lower.
  static GainFunction steps(std::vector<Real> breaks, std::vector<Real> values, Real lower = 0.0);

  /// t -> c(scale * t) e^{-rate * t}, lower endpoint lower/scale.
  GainFunction reparameterized(Real scale, Real rate) const;

  Real operator()(Real t) const;
  Real lower_endpoint() const { return lower_ / scale_; }
  GainFamily family() const { return family_; }
  /// Discontinuities of c in (T, inf).
  std::vector<Real> breakpoints() const;
  bool is_constant() const { return family_ == GainFamily::constant && rate_ == 0.0; }

  bool integrable() const;
  /// int_a^b c(s) e^{-s} ds, b may be +inf.
  Real mass(Real a, Real b) const;
  Real total_mass() const;
  /// Smallest t (approximately) with hhat(t) <= rel * hhat(T).
  Real tail_cutoff(Real rel) const;

  std::string describe() const;

 private:
  Real base(Real t) const;
  /// c(t) e^{-t} = amplitude e^{-decay t} on each constant-type piece.
  Real decay() const;

  GainFamily family_ = GainFamily::constant;
  Real value_ = 1.0;  // constant value
  Real beta_ = 0.0;   // exponential rate
  Real power_ = 0.0;  // rational exponent
  std::vector<Real> breaks_, values_;
  Real lower_ = 0.0;  // endpoint of the base family
  Real scale_ = 1.0;
  Real rate_ = 0.0;
};

struct GainValidation {
  bool passed = false;
  bool integrable = false;
  Real total_mass = 0;  // NaN when not integrable
  int grid_points = 0;
  std::optional<std::pair<Real, Real>> violation;  // first violating pair (t_i, t_{i+1})
  std::string message;
};

GainValidation validate_gain(const GainFunction& c);

/// int_{T1}^t c(s) e^{-s} ds.
Real h_reparam(const GainFunction& c, Real T1, Real t);
/// int_t^inf c(s) e^{-s} ds.
Real hhat_reparam(const GainFunction& c, Real t);
/// Inverse of hhat by bisection.
Real hhat_inverse(const GainFunction& c, Real r, Real tol = 1e-12);

}  // namespace minl2
