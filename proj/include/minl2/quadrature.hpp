#pragma once

// Quadrature over sublevel sets {psi < -t}. Integrals follow the form-norm
// convention |h dw|^2 = 2 |h|^2 dA.
//
// Simply connected domains are integrated in the Green coordinate m: each ray
// from m = 0 is cut at the sublevel boundary R(theta) and sampled with
// Gauss-Legendre panels in sigma = log(R/|m|). The annulus uses rays from the
// marked point, sublevel intervals found by sampling plus bisection, and
// adaptive angular panels.

#include "minl2/domain.hpp"
#include "minl2/gain.hpp"
#include "minl2/weights.hpp"

#include <functional>
#include <vector>

namespace minl2 {

struct IntegrationPlan {
  enum class Mode { automatic, radial, polar };
  Mode mode = Mode::automatic;
  int radial_nodes = 256;   // per ray, spread over the sigma panels
  int angular_nodes = 256;  // uniform rays (simply connected)
  Real tolerance = 1e-10;   // relative, annulus angular adaptivity
  int max_depth = 14;       // annulus angular bisection depth
};

struct QuadratureNode {
  Complex z;       // point of the domain
  Complex m;       // Green coordinate, or z - z0 on the annulus
  Real green = 0;  // G(z, z0)
  Real weight = 0; // e^{-phi} c(-psi)
  Real area = 0;   // quadrature weight for dA in the m plane
};

struct SublevelGrid {
  Real t = 0;
  std::vector<QuadratureNode> nodes;
  Real extent = 0;          // max |m| over the sublevel set
  bool radial = false;      // one ray carrying the full angular measure
  bool star_shaped = true;  // false if some ray re-enters the sublevel set
  int rays = 0;
  Real sigma_max = 0;
};

/// Nodes for the weighted integral over {psi < -t}. With Mode::automatic the
/// radial layout is used whenever the weight pair is radial in m.
SublevelGrid sublevel_grid(const PlanarDomain& domain, const WeightPair& wp, const GainFunction& c, Real t,
                           const IntegrationPlan& plan = {});

struct IntegralEstimate {
  Real value = 0;
  Real error = 0;  // difference to the same rule with half the nodes
};

/// 2 * integral of density(z) dA(w) over {psi < -t}, with w the domain chart.
IntegralEstimate integrate_sublevel(const std::function<Real(Complex)>& density, const WeightPair& wp,
                                    const PlanarDomain& domain, Real t, const IntegrationPlan& plan = {});

/// Same as integrate_sublevel with the weight e^{-phi} c(-psi) included.
IntegralEstimate integrate_weighted(const std::function<Real(Complex)>& density, const WeightPair& wp,
                                    const GainFunction& c, const PlanarDomain& domain, Real t,
                                    const IntegrationPlan& plan = {});

/// 4 pi int_0^{r_t} r^{2k+1} e^{-phi(r)} c(-psi(r)) dr by tanh-sinh quadrature,
/// r = |m|. Independent of the Gauss-Legendre machinery above.
Real moment_radial(int k, const WeightPair& wp, const GainFunction& c, Real t, const PlanarDomain& domain);

/// Radius of {psi < -t} in the Green coordinate along the ray of angle theta.
Real sublevel_radius(const PlanarDomain& domain, const Potential& psi, Real t, Real theta);

}  // namespace minl2
