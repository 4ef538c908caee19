#include "minl2/jets.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace minl2 {

namespace {

constexpr Real kPi = std::numbers::pi;

Verdict classify(Real gap, Real tol) {
  if (std::abs(gap) <= tol) return Verdict::equality;
  if (gap > tol) return Verdict::strict;
  return Verdict::undetermined;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::equality: return "equality";
    case Verdict::strict: return "strict";
    case Verdict::undetermined: return "undetermined";
  }
  return "unknown";
}

Real jet_bound(const GainFunction& c, Real alpha, Real a, int k, Real cbeta) {
  if (!(a > 0)) fail(ErrorKind::argument, "jet_bound: a must be positive");
  if (!(cbeta > 0)) fail(ErrorKind::argument, "jet_bound: capacity must be positive");
  if (!c.integrable()) fail(ErrorKind::unsupported, "jet_bound needs an integrable gain");
  return c.total_mass() * 2.0 * kPi * std::exp(-alpha) / (a * std::pow(cbeta, 2 * (k + 1)));
}

Real default_jet_tolerance(const PlanarDomain& domain) {
  return domain.kind() == DomainKind::disc ? 1e-5 : 1e-4;
}

JetEqualityReport verify_jet_equality(const ExtensionProblem& problem, Real tol, const SolverOptions& options) {
  if (!problem.domain.simply_connected())
    fail(ErrorKind::unsupported, "equality characterization needs a simply connected domain");
  const WeightPair& wp = problem.weights;
  JetEqualityReport r;
  r.tol = tol > 0 ? tol : default_jet_tolerance(problem.domain);
  r.flag_harmonic = wp.flag_harmonic_decomposition();
  r.flag_green = wp.flag_psi_is_green();

  const ReducedProblem reduced = reduce_to_lelong(wp, problem.gain);
  r.original_lelong = reduced.original_lelong;
  r.reduction_s = reduced.s;
  r.alpha = alpha_residue(reduced.weights, problem.domain).value;
  const CapacityResult cap = log_capacity(problem.domain);
  r.cbeta = cap.value;
  r.chart = cap.chart;
  r.bound = jet_bound(reduced.gain, r.alpha, wp.k + 1, wp.k, r.cbeta);

  const MinimalSolution sol = g_value(problem, problem.gain.lower_endpoint(), options);
  r.g0 = sol.value;
  r.degree = sol.degree;
  r.converged = sol.converged;
  r.gap = (r.bound - r.g0) / r.bound;

  const bool predict_equality = r.flag_harmonic && r.flag_green;
  const Verdict numeric = classify(r.gap, r.tol);
  std::ostringstream diag;
  if (numeric == Verdict::undetermined) {
    r.verdict = Verdict::undetermined;
    diag << "Galerkin value exceeds the bound by " << -r.gap << " relative";
    r.consistent = false;
  } else if (numeric == Verdict::equality && !predict_equality) {
    r.verdict = Verdict::undetermined;
    diag << "gap inside tolerance but structural flags predict a strict inequality";
    r.consistent = false;
  } else {
    r.verdict = numeric;
    r.consistent = (numeric == Verdict::equality) == predict_equality;
    if (!r.consistent) diag << "strict gap although structural flags predict equality";
  }
  r.diagnostics = diag.str();
  return r;
}

ExtremalForm extremal_form(const ExtensionProblem& problem, int len) {
  const WeightPair& wp = problem.weights;
  if (!problem.domain.simply_connected()) fail(ErrorKind::unsupported, "extremal form needs a simply connected domain");
  if (!(wp.flag_harmonic_decomposition() && wp.flag_psi_is_green()))
    fail(ErrorKind::precondition, "extremal form exists only when the equality flags hold");
  const int k = wp.k;
  const Eigen::Index L = std::max(len, k + 2) + 1;  // one spare term for the derivative
  const CSeries h = (wp.phi + wp.psi).holomorphic_part(problem.domain, L);
  CSeries e = series::exp(CSeries(0.5 * h), L);
  // multiply by m^k
  CSeries in_m = CSeries::Zero(L);
  for (Eigen::Index j = 0; j + k < L; ++j) in_m[j + k] = e[j];

  // chart expansion: f(w) = in_m(m(w)) m'(w)
  const CSeries b = series::truncate(problem.domain.chart().coeffs, L);
  const CSeries delta = series::reversion(b.size() < 2 ? CSeries(series::truncate(b, 2)) : b, L);
  const CSeries m = series::compose(problem.domain.green_coordinate_series(L), delta, L);
  const CSeries dm = series::truncate(series::derivative(m), L);
  CSeries f = series::multiply(series::compose(in_m, m, L), dm, L);

  ExtremalForm out;
  out.c0 = 1.0 / f[k];
  out.in_m = series::truncate(CSeries(in_m * out.c0), len);
  out.in_chart = series::truncate(CSeries(f * out.c0), len);
  return out;
}

CVector extremal_in_basis(const ExtremalForm& form, const GalerkinSpace& space) {
  if (space.orthonormal) fail(ErrorKind::unsupported, "extremal_in_basis needs a simply connected space");
  const Eigen::Index n = space.degree + 1;
  CVector v = CVector::Zero(n);
  Real p = 1.0;
  for (Eigen::Index j = 0; j < n && j < form.in_m.size(); ++j) {
    v[j] = form.in_m[j] * p;
    p *= space.scale;
  }
  return v;
}

SuitaReport suita_k_check(const PlanarDomain& domain, const Potential& h, Real a1, int k, Real tol,
                          const SolverOptions& options) {
  if (!(a1 > -(k + 1))) fail(ErrorKind::argument, "suita check needs a1 > -k-1");
  SuitaReport r;
  r.tol = tol > 0 ? tol : default_jet_tolerance(domain);
  const CapacityResult cap = log_capacity(domain);
  r.cbeta = cap.value;
  r.chart = cap.chart;
  r.alpha1 = alpha1_residue(h, a1, domain).value;
  const KernelValue kv = bergman_kernel_k(domain, h, k, options);
  r.kernel = kv.value;
  r.degree = kv.solution.degree;
  r.lhs = std::pow(r.cbeta, 2 * (k + 1));
  r.rhs = kPi / (a1 + k + 1) * std::exp(-2.0 * r.alpha1) * r.kernel;
  r.gap = (r.rhs - r.lhs) / r.lhs;
  r.flag_harmonic = h.harmonic_off_pole() && std::abs(h.green_coefficient() + a1) < 1e-12;
  const bool predict_equality = r.flag_harmonic && domain.simply_connected();
  const Verdict numeric = classify(r.gap, r.tol);
  r.verdict = numeric;
  if (numeric == Verdict::equality && !predict_equality) r.verdict = Verdict::undetermined;
  r.consistent = numeric != Verdict::undetermined && (numeric == Verdict::equality) == predict_equality;
  return r;
}

PowerReport power_corollary_check(const PlanarDomain& domain, const Potential& h, Real a1, int k, int n, Real tol,
                                  const SolverOptions& options) {
  if (n < 1) fail(ErrorKind::argument, "power identity needs n >= 1");
  PowerReport r;
  r.n = n;
  r.order = n * k + n - 1;
  r.tol = tol;
  const Real cbeta = log_capacity(domain).value;
  const Real alpha1 = alpha1_residue(h, a1, domain).value;
  r.kernel = bergman_kernel_k(domain, h.scaled(n), r.order, options).value;
  r.lhs = std::pow(cbeta, 2 * n * (k + 1));
  r.rhs = kPi / (n * a1 + n * k + n) * std::exp(-2.0 * n * alpha1) * r.kernel;
  r.rel_error = std::abs(r.rhs - r.lhs) / r.lhs;
  r.passed = r.rel_error <= tol;
  return r;
}

}  // namespace minl2
