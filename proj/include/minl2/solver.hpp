#pragma once

// Minimal weighted L^2 extension of a jet by constrained quadratic
// minimization in a truncated holomorphic basis.
//
// Simply connected domains use the basis (m/rho)^j dm, m the Green coordinate
// and rho the sublevel extent. The annulus uses ((z-c)/rho)^j dz, c the center
// of the sublevel set's bounding box, together with (s/z)^j dz,
// orthonormalized by a rank-revealing QR of the sampled basis.

#include "minl2/domain.hpp"
#include "minl2/gain.hpp"
#include "minl2/quadrature.hpp"
#include "minl2/weights.hpp"

#include <Eigen/Core>

#include <vector>

namespace minl2 {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Taylor coefficients 0..k of f at z0 in the domain chart, F = f dw.
struct JetConstraint {
  Complex center{0, 0};
  int k = 0;
  CVector target;

  /// f = w^k dw.
  static JetConstraint monomial(int k, Complex center = 0);
  static JetConstraint zero(int k, Complex center = 0);
};

struct GalerkinSpace {
  int degree = 0;     // N
  int k = 0;
  Real t = 0;
  Real scale = 1;     // rho
  Real inner = 0;     // s for the negative powers (annulus)
  Complex center{0, 0};  // expansion point of the positive powers (annulus)
  bool radial = false;
  bool orthonormal = false;  // annulus: gram is the identity in transformed coordinates
  bool star_shaped = true;
  CMatrix gram;        // Gamma
  CMatrix constraint;  // (k+1) x columns
  CMatrix transform;   // annulus: basis coefficients = transform * y
  Real min_eig = 0, max_eig = 0;
  int rank = 0;
  std::size_t nodes = 0;
};

struct SolverOptions {
  IntegrationPlan plan;
  int initial_degree = 8;
  int max_degree = 64;
  Real degree_tol = 1e-8;
};

/// Assemble Gamma and the constraint rows at threshold t.
GalerkinSpace assemble(const PlanarDomain& domain, const WeightPair& wp, const GainFunction& c, Real t, int degree,
                       const IntegrationPlan& plan = {});

struct MinimalSolution {
  CVector coefficients;  // in the (scaled) basis of the space
  Real value = 0;        // G(t)
  Real condition = 0;
  int degree = 0;
  bool converged = true;
  Real constraint_residual = 0;
  std::vector<std::pair<int, Real>> history;  // (N, G) per degree tried
};

MinimalSolution minimal_extension(const GalerkinSpace& space, const JetConstraint& jet);

/// v^H Gamma v.
Real form_norm(const GalerkinSpace& space, const CVector& v);

struct ExtensionProblem {
  PlanarDomain domain;
  WeightPair weights;
  GainFunction gain;
  JetConstraint jet;
};

/// G(t) with basis-degree doubling until the relative change drops below degree_tol.
MinimalSolution g_value(const ExtensionProblem& problem, Real t, const SolverOptions& options = {});
/// Same, also returning the final space.
MinimalSolution g_value(const ExtensionProblem& problem, Real t, const SolverOptions& options, GalerkinSpace* space);

struct PythagorasResidual {
  Real residual = 0;
  Real trial_norm = 0;  // |F^|^2
  Real minimal_norm = 0;
  Real difference_norm = 0;
};

/// | |F^|^2 - |F_t|^2 - |F^ - F_t|^2 | in the Gamma inner product.
PythagorasResidual pythagoras_check(const GalerkinSpace& space, const JetConstraint& jet,
                                    const MinimalSolution& solution, const CVector& trial);

/// A coefficient vector satisfying the jet constraints with the free part drawn from `seed`.
CVector constrained_trial(const GalerkinSpace& space, const JetConstraint& jet, const CVector& free_part);

/// Taylor coefficients (powers of w) of f where F = f dw is the basis combination v.
CVector chart_coefficients(const PlanarDomain& domain, const GalerkinSpace& space, const CVector& v, int len);

/// Basis coefficients of the form whose chart Taylor coefficients are given (simply connected).
CVector basis_from_chart(const PlanarDomain& domain, const GalerkinSpace& space, const CVector& f);

/// int_{psi < -t} |F|^2 e^{-phi} c(-psi) for the fixed form F = v in the basis of `space`.
Real sublevel_norm(const PlanarDomain& domain, const WeightPair& wp, const GainFunction& c, const GalerkinSpace& space,
                   const CVector& v, Real t, const IntegrationPlan& plan = {});

struct KernelValue {
  Real value = 0;  // K^{(k)}
  MinimalSolution solution;
};

/// K^{(k)}_{Omega,rho}(z0) = 2 / inf{ int |F|^2 rho } with rho = e^{-2h}.
KernelValue bergman_kernel_k(const PlanarDomain& domain, const Potential& h, int k, const SolverOptions& options = {});

}  // namespace minl2
