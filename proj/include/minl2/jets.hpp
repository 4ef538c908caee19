#pragma once

// Optimal jet extension bound, the k-jet Suita inequality, their equality
// verdicts and the closed-form extremal in the equality case.

#include "minl2/solver.hpp"

#include <string>

namespace minl2 {

/// hhat(T) * 2 pi e^{-alpha} / (a cbeta^{2(k+1)}).
Real jet_bound(const GainFunction& c, Real alpha, Real a, int k, Real cbeta);

enum class Verdict { equality, strict, undetermined };
const char* to_string(Verdict v);

struct JetEqualityReport {
  Verdict verdict = Verdict::undetermined;
  Real g0 = 0, bound = 0, gap = 0, tol = 0;  // gap = (bound - g0) / bound
  Real alpha = 0, cbeta = 0;
  Real original_lelong = 0, reduction_s = 0;
  bool flag_harmonic = false;  // phi + psi = 2 log|g| + 2(k+1) G + 2u
  bool flag_green = false;     // psi = 2a G
  bool consistent = false;     // numeric verdict agrees with the flags
  int degree = 0;
  bool converged = false;
  std::string chart;
  std::string diagnostics;
};

/// Default tolerance: 1e-5 on the disc, 1e-4 on conformal images.
Real default_jet_tolerance(const PlanarDomain& domain);

JetEqualityReport verify_jet_equality(const ExtensionProblem& problem, Real tol = -1,
                                      const SolverOptions& options = {});

struct ExtremalForm {
  CSeries in_m;      // F = in_m(m) dm
  CSeries in_chart;  // F = in_chart(w) dw, k-th coefficient 1
  Complex c0{1, 0};
};

/// c0 e^{H(m)/2} m^k dm with Re H the harmonic part of phi + psi off the pole.
ExtremalForm extremal_form(const ExtensionProblem& problem, int len);

/// Coefficients of the extremal in the basis of `space` (simply connected).
CVector extremal_in_basis(const ExtremalForm& form, const GalerkinSpace& space);

struct SuitaReport {
  Real lhs = 0;  // cbeta^{2(k+1)}
  Real rhs = 0;  // pi / (a1 + k + 1) e^{-2 alpha1} K^{(k)}
  Real kernel = 0, alpha1 = 0, cbeta = 0;
  Real gap = 0;  // (rhs - lhs) / lhs
  Real tol = 0;
  Verdict verdict = Verdict::undetermined;
  bool flag_harmonic = false;  // h = log|g| - a1 G + u
  bool consistent = false;
  int degree = 0;
  std::string chart;
};

SuitaReport suita_k_check(const PlanarDomain& domain, const Potential& h, Real a1, int k, Real tol = -1,
                          const SolverOptions& options = {});

struct PowerReport {
  int n = 1;
  int order = 0;  // n k + n - 1
  Real lhs = 0, rhs = 0, kernel = 0, rel_error = 0, tol = 1e-5;
  bool passed = false;
};

PowerReport power_corollary_check(const PlanarDomain& domain, const Potential& h, Real a1, int k, int n,
                                  Real tol = 1e-5, const SolverOptions& options = {});

}  // namespace minl2
