// One line per acceptance criterion; nonzero exit when any criterion fails.

#include "minl2/auxfns.hpp"
#include "minl2/concavity.hpp"
#include "minl2/jets.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

using namespace minl2;

namespace {

constexpr Real kPi = std::numbers::pi;
constexpr Real kRationalTotal = 0.403652637676805925658921500629;  // mpmath

Real rel(Real a, Real b) { return std::abs(a - b) / std::abs(b); }

struct Outcome {
  bool passed = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const Error& e) {
    o.passed = false;
    o.detail << " [" << to_string(e.kind()) << " error: " << e.what() << "]";
  }
  const Real secs = std::chrono::duration<Real>(std::chrono::steady_clock::now() - start).count();
  if (!o.passed) ++failures;
  std::printf("criterion %2d %s  %s (%.2fs) %s\n", id, o.passed ? "PASS" : "FAIL", title, secs, o.detail.str().c_str());
  std::fflush(stdout);
}

Real seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<Real>(std::chrono::steady_clock::now() - t).count();
}

ExtensionProblem disc(Complex z0, Real green_coef, int k, Potential phi = {}, GainFunction c = GainFunction::constant()) {
  WeightPair wp;
  wp.k = k;
  wp.psi.add_green(green_coef);
  wp.phi = std::move(phi);
  return ExtensionProblem{PlanarDomain::disc(z0), wp, std::move(c), JetConstraint::monomial(k)};
}

Potential quadratic() {
  Potential p;
  p.add_quadratic(1.0);
  return p;
}

ExtensionProblem annulus_problem() {
  WeightPair wp;
  wp.psi.add_green(2.0);
  return ExtensionProblem{PlanarDomain::annulus(0.3, 0.6), wp, GainFunction::constant(), JetConstraint::monomial(0)};
}

SolverOptions annulus_options() {
  SolverOptions o;
  o.max_degree = 24;
  o.degree_tol = 1e-6;
  o.plan.tolerance = 1e-8;
  return o;
}

bool nonincreasing(const GCurve& c) {
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c.g[i] > c.g[i - 1]) return false;
  return true;
}

}  // namespace

int main() {
  // curves shared between criteria
  const auto linear_p = disc(0, 2.0, 0);
  const auto quad_p = disc(0, 2.0, 0, quadratic());
  const auto quad_rat_p = disc(0, 2.0, 0, quadratic(), GainFunction::rational(2.0));
  const GCurve linear_curve = sample_g_curve(linear_p, default_t_grid(linear_p.gain));
  const GCurve quad_curve = sample_g_curve(quad_p, default_t_grid(quad_p.gain));
  const GCurve quad_rat_curve = sample_g_curve(quad_rat_p, default_t_grid(quad_rat_p.gain));
  std::optional<GCurve> annulus_curve;

  criterion(1, "jet-extension equality on the disc, k = 0..3", [](Outcome& o) {
    Real worst_g = 0, worst_b = 0, slowest = 0;
    for (int k = 0; k < 4; ++k) {
      const auto start = std::chrono::steady_clock::now();
      const auto p = disc(0, 2.0 * (k + 1), k);
      const Real expected = 2 * kPi / (k + 1);
      const Real g0 = g_value(p, 0).value;
      const Real alpha = alpha_residue(p.weights, p.domain).value;
      const Real bound = jet_bound(p.gain, alpha, k + 1, k, log_capacity(p.domain).value);
      const Real oracle = moment_radial(k, p.weights, p.gain, 0, p.domain);
      worst_g = std::max({worst_g, rel(g0, expected), rel(oracle, expected)});
      worst_b = std::max(worst_b, rel(bound, expected));
      slowest = std::max(slowest, seconds_since(start));
    }
    o.detail << "max rel err G(0) " << worst_g << ", bound " << worst_b << ", slowest k " << slowest << "s";
    o.require(worst_g <= 1e-6, "G(0) = 2pi/(k+1)");
    o.require(worst_b <= 1e-6, "bound = 2pi/(k+1)");
    o.require(slowest < 1.0, "runtime < 1 s per k");
  });

  criterion(2, "k-jet Suita equality on the disc, k = 0..3", [](Outcome& o) {
    Real worst_k = 0, worst_id = 0;
    const auto d = PlanarDomain::disc(0);
    for (int k = 0; k < 4; ++k) {
      const auto r = suita_k_check(d, Potential(), 0, k);
      worst_k = std::max(worst_k, std::abs(r.kernel - (k + 1) / kPi));
      worst_id = std::max({worst_id, std::abs(kPi / (k + 1) * r.kernel - 1), std::abs(r.lhs - 1)});
      o.require(r.verdict == Verdict::equality, "equality verdict");
    }
    o.detail << "max |K - (k+1)/pi| " << worst_k << ", max identity err " << worst_id;
    o.require(worst_k <= 1e-8, "K = (k+1)/pi");
    o.require(worst_id <= 1e-6, "pi/(k+1) K = 1 = cbeta^(2k+2)");
  });

  criterion(3, "displaced marked point z0 = 0.3, k = 0, 1", [](Outcome& o) {
    const auto start = std::chrono::steady_clock::now();
    SolverOptions opts;
    opts.max_degree = 40;
    Real worst = 0, cb_err = 0;
    int degree = 0;
    for (int k = 0; k < 2; ++k) {
      const auto p = disc(0.3, 2.0 * (k + 1), k);
      const Real cb = log_capacity(p.domain).value;
      cb_err = std::max(cb_err, std::abs(cb - 1 / 0.91));
      const auto sol = g_value(p, 0, opts);
      const Real bound = jet_bound(p.gain, alpha_residue(p.weights, p.domain).value, k + 1, k, cb);
      worst = std::max(worst, rel(sol.value, bound));
      degree = std::max(degree, sol.degree);
    }
    const Real secs = seconds_since(start);
    o.detail << "|cbeta - 1/0.91| " << cb_err << ", max |G(0)-bound|/bound " << worst << ", degree " << degree;
    o.require(cb_err <= 1e-6, "cbeta = 1/0.91");
    o.require(worst <= 1e-4, "G(0) = bound");
    o.require(degree <= 40, "degree <= 40");
    o.require(secs < 10, "runtime < 10 s");
  });

  criterion(4, "strict inequality for phi = |z|^2", [&](Outcome& o) {
    const auto r = verify_jet_equality(quad_p);
    const Real expected = 2 * kPi * (1 - std::exp(-1.0));
    const Real gap = r.bound - r.g0;
    o.detail << "G(0) " << r.g0 << " (err " << std::abs(r.g0 - expected) << "), bound " << r.bound << ", gap " << gap;
    o.require(std::abs(r.g0 - expected) <= 1e-6, "G(0) = 2pi(1-1/e)");
    o.require(std::abs(r.bound - 2 * kPi) <= 1e-6 * 2 * kPi, "bound = 2pi");
    o.require(gap > 1e-3 && std::abs(gap - 2 * kPi * std::exp(-1.0)) <= 1e-6, "gap = 2pi/e");
    o.require(r.verdict == Verdict::strict && r.consistent, "strict verdict");
  });

  criterion(5, "linear curve and its consequences", [&](Outcome& o) {
    Real worst = 0;
    for (std::size_t i = 0; i < linear_curve.size(); ++i)
      worst = std::max(worst, std::abs(linear_curve.g[i] - 2 * kPi * std::exp(-linear_curve.t[i])));
    const auto cv = check_concavity(linear_curve, 1e-6);
    const auto lr = verify_linear_consequences(linear_p, linear_curve);
    Real mass = 0, alt = 0;
    for (const auto& c : lr.checks) {
      if (c.name.rfind("mass", 0) == 0) mass = c.lhs;
      if (c.name.rfind("alternate", 0) == 0) alt = c.lhs;
    }
    o.detail << linear_curve.size() << " points, max |G - 2pi e^-t| " << worst << ", mass " << mass << ", alternate "
             << alt;
    o.require(linear_curve.size() == 33 && worst <= 1e-8, "G = 2pi e^-t");
    o.require(cv.linear, "linear verdict");
    o.require(std::abs(mass - kPi / 2) <= 1e-6, "mass identity = pi/2");
    o.require(std::abs(alt - 2 * kPi * kRationalTotal) <= 1e-6 * alt, "alternate gain identity");
    o.require(lr.passed, "all consequences");
  });

  criterion(6, "strict concavity for c = 1 and c = 1/(1+t)^2", [&](Outcome& o) {
    for (const GCurve* c : {&quad_curve, &quad_rat_curve}) {
      const auto cv = check_concavity(*c, 1e-6);
      const auto dv = check_derivative_lemma(*c);
      o.detail << " worst " << cv.worst << " most negative " << cv.most_negative << " quotient margin "
               << dv.worst_margin << ";";
      o.require(cv.concave, "second differences <= 1e-6");
      o.require(cv.strictly_concave_somewhere, "some second difference < -1e-4");
      o.require(dv.passed, "derivative quotients at every interior point");
    }
  });

  {
    const auto start = std::chrono::steady_clock::now();
    annulus_curve = sample_g_curve(annulus_problem(), default_t_grid(GainFunction::constant()), annulus_options());
    std::printf("annulus curve shared by criteria 7 and 11 sampled in %.2fs\n", seconds_since(start));
  }

  criterion(7, "monotone curves and vanishing tails", [&](Outcome& o) {
    for (const GCurve* c : {&linear_curve, &quad_curve, &quad_rat_curve, static_cast<const GCurve*>(&*annulus_curve)})
      o.require(nonincreasing(*c), "G nonincreasing");
    for (const auto* p : {&linear_p, &quad_p}) {
      const Real g0 = g_value(*p, 0).value;
      const auto tc = check_tail(*p, g0);
      o.detail << " G(20)/G(0) " << tc.value / g0 << ";";
      o.require(tc.passed, "G(20) < 1e-6 G(0)");
    }
  });

  criterion(8, "Pythagoras identity", [](Outcome& o) {
    std::mt19937_64 rng(7);
    std::normal_distribution<Real> gauss;
    Potential lin;
    lin.add_linear(2.0);
    Real worst = 0;
    for (const auto& p : {disc(0, 2.0, 0), disc(0, 2.0, 0, quadratic()), disc(0.3, 4.0, 1), disc(0, 2.0, 0, lin)}) {
      GalerkinSpace space;
      const auto sol = g_value(p, 0.25, {}, &space);
      for (int i = 0; i < 100; ++i) {
        CVector free(space.gram.cols() - (space.orthonormal ? 0 : space.k + 1));
        for (auto& v : free) v = {gauss(rng), gauss(rng)};
        const auto r = pythagoras_check(space, p.jet, sol, constrained_trial(space, p.jet, free));
        worst = std::max(worst, r.residual / r.trial_norm);
      }
    }
    const auto p = disc(0, 2.0, 0);
    GalerkinSpace space;
    const auto sol = g_value(p, 0, {}, &space);
    CVector f(2);
    f << 1.0, 1.0;
    const auto r = pythagoras_check(space, p.jet, sol, basis_from_chart(p.domain, space, f));
    o.detail << "max residual/|F^|^2 " << worst << "; (1+w)dw: " << r.trial_norm << " = " << r.minimal_norm << " + "
             << r.difference_norm;
    o.require(worst <= 1e-10, "random trials");
    o.require(rel(r.trial_norm, 3 * kPi) <= 1e-10 && rel(r.minimal_norm, 2 * kPi) <= 1e-10 &&
                  rel(r.difference_norm, kPi) <= 1e-10,
              "3pi = 2pi + pi");
  });

  criterion(9, "power identity, k = 0, 1 and n = 2", [](Outcome& o) {
    for (int k = 0; k < 2; ++k) {
      const auto r = power_corollary_check(PlanarDomain::disc(0), Potential(), 0, k, 2);
      o.detail << " k=" << k << " order " << r.order << " rel err " << r.rel_error << ";";
      o.require(r.passed, "identity within 1e-5");
    }
  });

  criterion(10, "cutoffs, mollified gains and the ODE pair", [](Outcome& o) {
    const auto start = std::chrono::steady_clock::now();
    const auto r = aux_suite(AuxProfile{}, {{"c=1", [](Real) { return 1.0; }},
                                            {"c=1/(1+t)^2", [](Real t) { return 1 / ((1 + t) * (1 + t)); }}});
    int failed = 0;
    for (const auto& c : r.checks)
      if (!c.passed) {
        ++failed;
        o.detail << " " << c.name << "=" << c.value << ";";
      }
    const Real secs = seconds_since(start);
    o.detail << " " << r.checks.size() << " checks, " << failed << " failed";
    o.require(r.passed, "all properties");
    o.require(secs < 30, "suite < 30 s");
  });

  criterion(11, "annulus q = 0.3, z0 = 0.6", [&](Outcome& o) {
    const auto d = PlanarDomain::annulus(0.3, 0.6);
    Real sym = 0;
    const Complex pts[] = {{0.6, 0}, {0.45, 0.2}, {-0.5, 0.4}, {0.1, -0.8}, {-0.35, -0.2}};
    for (Complex a : pts)
      for (Complex b : pts)
        if (a != b) sym = std::max(sym, std::abs(d.green(a, b) - d.green(b, a)));
    const auto cv = check_concavity(*annulus_curve, 1e-4);
    int unconverged = 0;
    for (bool c : annulus_curve->converged) unconverged += !c;
    o.detail << "symmetry err " << sym << ", worst second difference " << cv.worst << ", " << unconverged
             << " points at the degree cap";
    o.require(sym <= 1e-8, "Green symmetry");
    o.require(cv.concave, "concave at tolerance 1e-4");
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
