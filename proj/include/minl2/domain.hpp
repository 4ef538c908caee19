#pragma once

// Planar domains with a marked point, their Green functions, local charts and
// the logarithmic capacity of the marked point.

#include "minl2/error.hpp"
#include "minl2/series.hpp"

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace minl2 {

using Real = double;
using Complex = std::complex<double>;
using CSeries = series::Series<Complex>;

enum class DomainKind { disc, conformal, annulus };

const char* to_string(DomainKind kind);

enum class ChartKind { translation, scaled, green, series };

/// Holomorphic chart near the marked point, w(z) = sum_{n>=1} b_n (z - z0)^n.
struct Chart {
  ChartKind kind = ChartKind::translation;
  CSeries coeffs;  // b_0 = 0 always

  static Chart translation();
  static Chart scaled(Complex lambda);
  static Chart custom(const CSeries& coeffs);
  /// Placeholder; resolved against a simply connected domain on construction.
  static Chart green();

  std::string describe() const;
};

/// Limit of f(r) as r -> 0+ along r_j = 2^{-j} r0 by Richardson extrapolation.
struct LimitEstimate {
  Real value = 0;
  Real spread = 0;  // difference between the last two accepted extrapolants
  bool converged = false;
};

LimitEstimate richardson_limit(const std::function<Real(Real)>& f, Real r0, int jmin = 4, int jmax = 12,
                               Real tol = 1e-9);

class PlanarDomain {
 public:
  static PlanarDomain disc(Complex z0, Chart chart = Chart::translation());
  /// Image of the unit disc under the polynomial map sum a_n zeta^n. The marked
  /// point is given in the image plane.
  static PlanarDomain conformal(const CSeries& map_coeffs, Complex z0, Chart chart = Chart::translation());
  static PlanarDomain annulus(Real q, Complex z0, int terms = 64, Chart chart = Chart::translation());

  DomainKind kind() const { return kind_; }
  Complex marked_point() const { return z0_; }
  const Chart& chart() const { return chart_; }
  int truncation() const { return terms_; }
  Real inner_radius() const { return q_; }
  const CSeries& map_coeffs() const { return map_; }
  bool simply_connected() const { return kind_ != DomainKind::annulus; }

  bool contains(Complex z) const;

  /// G(z, z0) for the marked point; -infinity at z0 itself.
  Real green(Complex z) const;
  /// G(z, pole) for an arbitrary interior pole.
  Real green(Complex z, Complex pole) const;
  /// G(z0 + delta, z0) - log|delta|, evaluated without cancellation.
  Real green_regular(Complex delta) const;

  /// Same domain with a different marked point (chart kind kept).
  PlanarDomain with_marked_point(Complex z0) const;
  PlanarDomain with_chart(Chart chart) const;

  /// Chart value w(z).
  Complex chart_value(Complex z) const;

  // Green coordinate m: a conformal map of the domain onto the unit disc with
  // m(z0) = 0, so that G(z, z0) = log|m(z)|. Simply connected domains only.
  Complex green_coordinate(Complex z) const;
  Complex from_green_coordinate(Complex m) const;
  /// dz/dm at the point with Green coordinate m.
  Complex green_coordinate_derivative(Complex m) const;
  /// Taylor coefficients of m in powers of (z - z0).
  CSeries green_coordinate_series(Eigen::Index len) const;
  /// Taylor coefficients of z - z0 in powers of m.
  CSeries inverse_green_coordinate_series(Eigen::Index len) const;

  /// Preimage under the defining map (identity for the disc).
  Complex inverse_map(Complex z) const;
  Complex forward_map(Complex zeta) const;

  /// Points at (approximately) distance `inset` inside the boundary.
  std::vector<Complex> boundary_samples(int n, Real inset) const;
  /// Distance from the marked point to the boundary (lower bound for conformal images).
  Real boundary_distance() const;

 private:
  PlanarDomain() = default;
  void resolve_chart();
  Real annulus_green(Complex z, Complex pole) const;
  Real annulus_log_abs_p(Complex x) const;

  DomainKind kind_ = DomainKind::disc;
  Complex z0_{0, 0};
  Complex zeta0_{0, 0};  // preimage of z0 (conformal), equal to z0 for the disc
  Chart chart_;
  CSeries map_;          // conformal map coefficients
  CSeries map_shifted_;  // Phi(zeta0 + eta) - Phi(zeta0) in powers of eta
  Real q_ = 0;
  int terms_ = 64;
};

/// c_beta(z0) = exp lim_{z->z0} (G(z, z0) - log|w(z)|) in the domain's chart.
struct CapacityResult {
  Real value = 0;
  LimitEstimate limit;
  std::string chart;
};

CapacityResult log_capacity(const PlanarDomain& domain);

}  // namespace minl2
