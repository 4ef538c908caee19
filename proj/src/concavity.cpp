#include "minl2/concavity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

namespace minl2 {

std::vector<Real> default_t_grid(const GainFunction& c, int points) {
  if (points < 3) fail(ErrorKind::argument, "curve grid needs at least three points");
  const Real total = hhat_reparam(c, c.lower_endpoint());
  std::vector<Real> grid(points);
  grid[0] = c.lower_endpoint();
  for (int i = 1; i < points; ++i) grid[i] = hhat_inverse(c, total * (points - i) / points, 1e-14);
  return grid;
}

GCurve sample_g_curve(const ExtensionProblem& problem, const std::vector<Real>& t_grid, const SolverOptions& options,
                      int threads) {
  const std::size_t n = t_grid.size();
  for (std::size_t i = 1; i < n; ++i)
    if (!(t_grid[i] > t_grid[i - 1])) fail(ErrorKind::argument, "t grid must be strictly increasing");
  GCurve curve;
  curve.t = t_grid;
  curve.r.resize(n);
  curve.g.assign(n, std::numeric_limits<Real>::quiet_NaN());
  curve.converged.assign(n, false);
  curve.degree.assign(n, 0);
  curve.errors.assign(n, "");
  for (std::size_t i = 0; i < n; ++i) curve.r[i] = hhat_reparam(problem.gain, t_grid[i]);

  std::vector<char> ok(n, 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        const MinimalSolution sol = g_value(problem, t_grid[i], options);
        curve.g[i] = sol.value;
        ok[i] = sol.converged;
        curve.degree[i] = sol.degree;
      } catch (const Error& e) {
        curve.errors[i] = std::string(to_string(e.kind())) + ": " + e.what();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(threads, int(n)));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (std::size_t i = 0; i < n; ++i) curve.converged[i] = ok[i];
  return curve;
}

ConcavityVerdict check_concavity(const GCurve& curve, Real tol, Real linear_tol, Real strict_tol) {
  const std::size_t n = curve.size();
  if (n < 3) fail(ErrorKind::argument, "concavity check needs at least three points");
  for (std::size_t i = 1; i < n; ++i)
    if (!(curve.r[i] < curve.r[i - 1])) fail(ErrorKind::argument, "r grid is not strictly decreasing");
  ConcavityVerdict v;
  v.tol = tol;
  Real gmax = 0;
  for (Real g : curve.g) gmax = std::max(gmax, std::abs(g));
  if (!(gmax > 0)) gmax = 1.0;
  const Real mean_dr = (curve.r.front() - curve.r.back()) / Real(n - 1);
  v.monotone = true;
  for (std::size_t i = 1; i < n; ++i)
    if (!(curve.g[i] <= curve.g[i - 1] * (1 + 1e-12) + 1e-15 * gmax)) v.monotone = false;
  v.worst = -std::numeric_limits<Real>::infinity();
  v.most_negative = std::numeric_limits<Real>::infinity();
  Real largest_abs = 0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    // second divided difference in r, scaled to the mean spacing
    const Real s_hi = (curve.g[i - 1] - curve.g[i]) / (curve.r[i - 1] - curve.r[i]);
    const Real s_lo = (curve.g[i] - curve.g[i + 1]) / (curve.r[i] - curve.r[i + 1]);
    const Real d2 = 2.0 * (s_hi - s_lo) / (curve.r[i - 1] - curve.r[i + 1]);
    const Real d = d2 * mean_dr * mean_dr / gmax;
    v.second_differences.push_back(d);
    if (std::isnan(d) || d > tol) {
      if (!v.violation) v.violation = i;
    }
    v.worst = std::max(v.worst, d);
    v.most_negative = std::min(v.most_negative, d);
    largest_abs = std::max(largest_abs, std::abs(d));
  }
  v.concave = !v.violation.has_value();
  v.linear = v.concave && largest_abs <= linear_tol;
  v.strictly_concave_somewhere = v.most_negative < -strict_tol;
  return v;
}

TailCheck check_tail(const ExtensionProblem& problem, Real reference, Real t, Real rel, const SolverOptions& options) {
  TailCheck tc;
  tc.t = t;
  tc.reference = reference;
  tc.value = g_value(problem, t, options).value;
  tc.passed = tc.value < rel * reference;
  return tc;
}

DerivativeVerdict check_derivative_lemma(const GCurve& curve, Real tol, Real strict_tol) {
  const std::size_t n = curve.size();
  if (n < 3) fail(ErrorKind::argument, "derivative check needs at least three points");
  std::vector<Real> q(n - 1);
  Real scale = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    // h(t_{i+1}) - h(t_i) = hhat(t_i) - hhat(t_{i+1})
    q[i] = (curve.g[i] - curve.g[i + 1]) / (curve.r[i] - curve.r[i + 1]);
    scale = std::max(scale, std::abs(q[i]));
  }
  if (!(scale > 0)) scale = 1.0;
  DerivativeVerdict v;
  v.worst_margin = std::numeric_limits<Real>::infinity();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Real margin = (q[i] - q[i - 1]) / scale;
    v.worst_margin = std::min(v.worst_margin, margin);
    if (!(margin >= -tol) && !v.violation) v.violation = i;
    if (margin > strict_tol) ++v.strict_points;
  }
  const auto [lo, hi] = std::minmax_element(q.begin(), q.end());
  v.spread = (*hi - *lo) / scale;
  v.passed = !v.violation.has_value();
  return v;
}

namespace {

IdentityCheck identity(std::string name, Real lhs, Real rhs, Real tol) {
  IdentityCheck c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.rel_error = std::abs(lhs - rhs) / std::max(std::abs(rhs), std::numeric_limits<Real>::min());
  c.passed = c.rel_error <= tol;
  return c;
}

}  // namespace

LinearReport verify_linear_consequences(const ExtensionProblem& problem, const GCurve& curve, const LinearOptions& lo,
                                        const SolverOptions& options) {
  const ConcavityVerdict cv = check_concavity(curve, 1e-7, 1e-7);
  if (!cv.linear) fail(ErrorKind::precondition, "linear consequences need a curve that is linear within 1e-7");
  LinearReport report;
  const GainFunction& c = problem.gain;
  const Real T1 = curve.t.front();
  GalerkinSpace space;
  const MinimalSolution base = g_value(problem, T1, options, &space);
  const Real ratio = base.value / hhat_reparam(c, T1);

  // (i) one minimizer serves every sublevel set
  const int m = std::max(1, lo.sampled_points);
  for (int s = 0; s < m; ++s) {
    const std::size_t idx = std::min(curve.size() - 1, std::size_t((s + 1) * (curve.size() - 1) / (m + 1)));
    const Real t = curve.t[idx];
    const Real restricted = sublevel_norm(problem.domain, problem.weights, c, space, base.coefficients, t, options.plan);
    std::ostringstream name;
    name << "single minimizer at t=" << t;
    report.checks.push_back(identity(name.str(), g_value(problem, t, options).value, restricted, lo.tol));
  }

  // (ii) mass of |F|^2 e^{-phi} a(-psi) for a = indicator of [a_lo, a_hi]
  {
    const GainFunction one;
    const Real upper = sublevel_norm(problem.domain, problem.weights, one, space, base.coefficients, lo.a_lo, options.plan);
    const Real lower = sublevel_norm(problem.domain, problem.weights, one, space, base.coefficients, lo.a_hi, options.plan);
    const Real expected = ratio * (std::exp(-lo.a_lo) - std::exp(-lo.a_hi));
    report.checks.push_back(identity("mass distribution for an indicator", upper - lower, expected, lo.tol));
  }

  // (iii) alternate gain
  {
    ExtensionProblem alt = problem;
    alt.gain = lo.alternate;
    const Real lhs = g_value(alt, lo.alternate_t0, options).value;
    const Real rhs = ratio * hhat_reparam(lo.alternate, lo.alternate_t0);
    report.checks.push_back(identity("alternate gain", lhs, rhs, lo.tol));
  }
  report.passed = std::all_of(report.checks.begin(), report.checks.end(), [](const auto& c) { return c.passed; });
  return report;
}

std::string curve_csv(const GCurve& curve) {
  std::ostringstream os;
  os << "t,r,G,converged,basis_degree\n";
  char buf[160];
  for (std::size_t i = 0; i < curve.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d,%d\n", curve.t[i], curve.r[i], curve.g[i],
                  int(curve.converged[i]), curve.degree[i]);
    os << buf;
  }
  return os.str();
}

}  // namespace minl2
