#pragma once

// Compositional potentials (sums of closed-form terms) used for the weight
// pair (psi, phi) and for the Bergman weight exponent h. Each term carries the
// exact metadata the jet bound checks need: Green coefficient, harmonicity and
// radial symmetry about the marked point.

#include "minl2/domain.hpp"
#include "minl2/gain.hpp"

#include <string>
#include <vector>

namespace minl2 {

enum class TermKind {
  green,           // coef * G(z, z0)
  linear,          // Re(lambda z)
  log_poly,        // coef * log|g(z)| for a polynomial g
  quadratic,       // coef * |z - center|^2
  constant,        // coef
  green_bump,      // coef * (e^{2G} - 1)
  quadratic_bump,  // coef * (|z - center|^2 - radius^2)
};

const char* to_string(TermKind kind);

struct PotentialTerm {
  TermKind kind = TermKind::constant;
  Real coef = 0;
  Complex param{0, 0};  // lambda or center
  Real radius = 0;
  CSeries poly;  // coefficients of g, low to high

  Real evaluate(Complex z, Real green) const;
  bool harmonic() const;
};

class Potential {
 public:
  Potential() = default;

  Potential& add_green(Real coef);
  Potential& add_linear(Complex lambda);
  Potential& add_log_poly(Real coef, CSeries poly);
  Potential& add_quadratic(Real coef, Complex center = 0);
  Potential& add_constant(Real value);
  Potential& add_green_bump(Real coef);
  Potential& add_quadratic_bump(Real coef, Complex center, Real radius);

  const std::vector<PotentialTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Value at z given G(z, z0); the Green part is skipped when its coefficient is zero.
  Real evaluate(Complex z, Real green) const;
  /// Value minus the Green part; finite at z0.
  Real regular(Complex z, Real green) const;
  Real green_coefficient() const;
  /// Every non-Green term is harmonic on the domain.
  bool harmonic_off_pole() const;
  /// Depends only on |m| for the Green coordinate m of the domain.
  bool radial(const PlanarDomain& domain) const;

  /// Holomorphic H in powers of the Green coordinate with Re H equal to the
  /// harmonic non-Green terms. Requires harmonic_off_pole().
  CSeries holomorphic_part(const PlanarDomain& domain, Eigen::Index len) const;

  Potential scaled(Real factor) const;
  Potential operator+(const Potential& other) const;

  std::string describe() const;

 private:
  std::vector<PotentialTerm> terms_;
};

/// Weight pair (psi, phi) for jet order k.
struct WeightPair {
  Potential psi;
  Potential phi;
  int k = 0;

  /// Lelong coefficient a = (1/2) v(dd^c psi, z0).
  Real lelong() const { return 0.5 * psi.green_coefficient(); }
  Real combined_lelong() const { return 0.5 * (psi.green_coefficient() + phi.green_coefficient()); }
  bool radial(const PlanarDomain& domain) const { return psi.radial(domain) && phi.radial(domain); }

  /// Structural flags of the equality characterization.
  bool flag_harmonic_decomposition() const;  // phi + psi = 2 log|g| + 2(k+1) G + 2u
  bool flag_psi_is_green() const;            // psi = 2a G
};

struct WeightValidation {
  bool passed = true;
  std::vector<std::string> failures;
  Real max_psi = 0;         // sup of psi on the grid (must be < 0)
  Real max_excess = 0;      // sup of psi - 2a G on the grid (must be <= 1e-10)
};

/// Checks psi < 0, psi <= 2a G and admissibility of the log|g| terms on a polar grid.
WeightValidation validate_weights(const WeightPair& wp, const PlanarDomain& domain);

/// alpha = lim_{z->z0} (phi + psi - 2(k+1) G)(z).
LimitEstimate alpha_residue(const WeightPair& wp, const PlanarDomain& domain);
/// alpha_1 = lim_{z->z0} (h + a1 G)(z).
LimitEstimate alpha1_residue(const Potential& h, Real a1, const PlanarDomain& domain);

/// Witness for psi < 2(k+1)G - delta on a set of positive measure.
struct StrictWitness {
  Real delta = 0;
  Real fraction = 0;  // fraction of sampled interior points where the strict bound holds
};
StrictWitness strict_inequality_witness(const WeightPair& wp, const PlanarDomain& domain, Real delta);

/// Rescaling (psi, phi, c) -> ((1-s) psi, phi + s psi, c(t/(1-s)) e^{-s t/(1-s)}) with s
/// chosen so that the new psi has Lelong coefficient k+1. Leaves e^{-phi} c(-psi) unchanged.
struct ReducedProblem {
  WeightPair weights;
  GainFunction gain;
  Real s = 0;
  Real original_lelong = 0;
};
ReducedProblem reduce_to_lelong(const WeightPair& wp, const GainFunction& c);

}  // namespace minl2
