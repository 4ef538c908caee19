#pragma once

// Sampled curves t -> G(t), reparameterized by r = hhat(t), and the discrete
// concavity, linearity and derivative-quotient checks on them.

#include "minl2/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace minl2 {

struct GCurve {
  std::vector<Real> t, r, g;
  std::vector<bool> converged;
  std::vector<int> degree;
  std::vector<std::string> errors;  // empty string when the point solved

  std::size_t size() const { return t.size(); }
};

/// t_i = hhat^{-1}(r_i) with r_i = hhat(T) (points - i) / points, i = 0..points-1.
std::vector<Real> default_t_grid(const GainFunction& c, int points = 33);

/// G at each t of the grid; the grid is solved in parallel over `threads` workers.
GCurve sample_g_curve(const ExtensionProblem& problem, const std::vector<Real>& t_grid,
                      const SolverOptions& options = {}, int threads = 1);

struct ConcavityVerdict {
  bool concave = false;
  bool linear = false;
  bool strictly_concave_somewhere = false;
  bool monotone = false;      // G nonincreasing in t
  Real worst = 0;             // largest normalized second difference
  Real most_negative = 0;     // smallest normalized second difference
  std::optional<std::size_t> violation;  // interior index of the first violation
  std::vector<Real> second_differences;  // normalized, one per interior point
  Real tol = 0;
};

/// Normalized second differences d_i = G''(r_i) (mean dr)^2 / max|G|; concave iff all d_i <= tol.
/// Linear when every |d_i| <= linear_tol, strictly concave somewhere when some d_i < -strict_tol.
ConcavityVerdict check_concavity(const GCurve& curve, Real tol, Real linear_tol = 1e-7, Real strict_tol = 1e-4);

struct TailCheck {
  Real t = 20;
  Real value = 0;
  Real reference = 0;  // G(T)
  bool passed = false;
};
TailCheck check_tail(const ExtensionProblem& problem, Real reference, Real t = 20, Real rel = 1e-6,
                     const SolverOptions& options = {});

struct DerivativeVerdict {
  bool passed = false;
  Real worst_margin = 0;  // min over interior points of (forward - backward) / scale
  int strict_points = 0;  // interior points where forward > backward + strict_tol
  Real spread = 0;        // max - min quotient / scale (0 for linear curves)
  std::optional<std::size_t> violation;
};

/// Backward quotient (G(t_{i-1}) - G(t_i)) / (h(t_i) - h(t_{i-1})) is at most the forward
/// quotient at t_i, up to tol relative to the largest quotient.
DerivativeVerdict check_derivative_lemma(const GCurve& curve, Real tol = 1e-8, Real strict_tol = 1e-6);

struct IdentityCheck {
  std::string name;
  Real lhs = 0, rhs = 0;
  Real rel_error = 0;
  bool passed = false;
};

struct LinearReport {
  bool passed = false;
  std::vector<IdentityCheck> checks;
};

struct LinearOptions {
  Real tol = 1e-6;
  Real a_lo = std::log(2.0), a_hi = std::log(4.0);  // a = indicator of [a_lo, a_hi]
  GainFunction alternate = GainFunction::rational(2.0);
  Real alternate_t0 = 0.0;
  int sampled_points = 5;
};

/// The three consequences of a linear curve: one minimizer for all t, the mass distribution
/// identity for an indicator, and the alternate-gain identity.
LinearReport verify_linear_consequences(const ExtensionProblem& problem, const GCurve& curve,
                                        const LinearOptions& lo = {}, const SolverOptions& options = {});

/// CSV with columns t,r,G,converged,basis_degree.
std::string curve_csv(const GCurve& curve);

}  // namespace minl2
