#include "minl2/auxfns.hpp"

#include "minl2/gauss.hpp"
#include "minl2/series.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <tuple>

namespace minl2 {

namespace {

using Poly = series::Series<Real>;

// Primitive vanishing at u = -1.
Poly primitive(const Poly& p) {
  Poly out = series::integral(p, p.size() + 1);
  out[0] -= series::evaluate(out, Real(-1));
  return out;
}

struct BumpPolys {
  Poly p1, p2, p3;  // cdf, ramp, ramp2 in u = x / delta (unit half-width)
  BumpPolys() {
    Poly p(7);
    p << 1, 0, -3, 0, 3, 0, -1;
    p *= 35.0 / 32.0;
    p1 = primitive(p);
    p2 = primitive(p1);
    p3 = primitive(p2);
  }
};

const BumpPolys& bump_polys() {
  static const BumpPolys polys;
  return polys;
}

const GaussLegendre<>& gl64() {
  static const GaussLegendre<> rule(64);
  return rule;
}

constexpr Real kFBump = 0.25;  // half-width of the bump inside f

}  // namespace

void AuxProfile::validate() const {
  if (!(B > 0)) fail(ErrorKind::argument, "B must be positive");
  if (!(eps > 0 && eps < B / 8)) fail(ErrorKind::argument, "eps must lie in (0, B/8)");
  if (n < 1) fail(ErrorKind::argument, "n must be at least 1");
  if (t0 < S) fail(ErrorKind::argument, "t0 must be at least S");
}

Bump::Bump(Real delta) : delta_(delta) {
  if (!(delta > 0)) fail(ErrorKind::argument, "bump half-width must be positive");
}

Real Bump::density(Real x) const {
  const Real u = x / delta_;
  if (std::abs(u) >= 1) return 0;
  const Real w = 1 - u * u;
  return 35.0 / 32.0 * w * w * w / delta_;
}

Real Bump::cdf(Real x) const {
  const Real u = x / delta_;
  if (u <= -1) return 0;
  if (u >= 1) return 1;
  return series::evaluate(bump_polys().p1, u);
}

Real Bump::ramp(Real x) const {
  const Real u = x / delta_;
  if (u <= -1) return 0;
  if (u >= 1) return x;
  return delta_ * series::evaluate(bump_polys().p2, u);
}

Real Bump::ramp2(Real x) const {
  const Real u = x / delta_;
  if (u <= -1) return 0;
  const Real at_edge = delta_ * delta_ * series::evaluate(bump_polys().p3, Real(1));
  if (u >= 1) return at_edge + 0.5 * (x * x - delta_ * delta_);
  return delta_ * delta_ * series::evaluate(bump_polys().p3, u);
}

Real b_func(Real t, Real t0, Real B) {
  if (!(B > 0)) fail(ErrorKind::argument, "B must be positive");
  return std::clamp((t + t0 + B) / B, 0.0, 1.0);
}

Real v_func(Real t, Real t0, Real B) {
  if (!(B > 0)) fail(ErrorKind::argument, "B must be positive");
  if (t >= -t0) return t;
  if (t <= -t0 - B) return -t0 - 0.5 * B;
  const Real x = t + t0 + B;
  return -t0 - (B * B - x * x) / (2 * B);
}

VEps v_eps(Real t, Real t0, Real B, Real eps) {
  AuxProfile{t0, B, eps, 1, -std::numeric_limits<Real>::infinity()}.validate();
  const Bump rho(0.25 * eps);
  const Real a = -t0 - B + 2 * eps, b = -t0 - 2 * eps;
  const Real norm = 1.0 / (B - 4 * eps);
  auto primitive2 = [&](Real x) { return norm * (rho.ramp2(x - a) - rho.ramp2(x - b)); };
  VEps out;
  out.d2 = norm * (rho.cdf(t - a) - rho.cdf(t - b));
  out.d1 = norm * (rho.ramp(t - a) - rho.ramp(t - b));
  out.value = primitive2(t) - primitive2(-t0) - t0;
  return out;
}

namespace {

Real f_profile(Real u) {
  static const Bump rho(kFBump);
  return 2.0 * (rho.cdf(u + 0.5) - rho.cdf(u - 0.5));
}

Real f_primitive(Real u) {
  static const Bump rho(kFBump);
  return 2.0 * (rho.ramp(u + 0.5) - rho.ramp(u - 0.5));
}

}  // namespace

Real g_n(Real x, int n) {
  if (n < 1) fail(ErrorKind::argument, "n must be at least 1");
  return x <= 0 ? n * f_profile(n * x) : n * f_profile(Real(n) * n * x);
}

Real g_n_mass(Real a, Real b, int n) {
  if (n < 1) fail(ErrorKind::argument, "n must be at least 1");
  if (b < a) return -g_n_mass(b, a, n);
  Real acc = 0;
  if (a < 0) acc += f_primitive(n * std::min(b, 0.0)) - f_primitive(n * a);
  if (b > 0) {
    const Real nn = Real(n) * n;
    acc += (f_primitive(nn * b) - f_primitive(nn * std::max(a, 0.0))) / n;
  }
  return acc;
}

Real c_n(Real t, int n, Real S, const ScalarFn& c) {
  if (n < 1) fail(ErrorKind::argument, "n must be at least 1");
  if (!(t > S)) fail(ErrorKind::argument, "c_n needs t > S");
  const Real nn = Real(n) * n;
  // smooth pieces of g_n
  const std::array<Real, 3> cuts_neg{-0.75 / n, -0.25 / n, 0.0};
  const std::array<Real, 3> cuts_pos{0.0, 0.25 / nn, 0.75 / nn};
  auto integrand = [&](Real y) {
    const Real x = std::exp(y) * (t - S) + S;
    return c(x) * std::exp(-x) * g_n(y, n);
  };
  Real acc = 0;
  for (int i = 0; i < 2; ++i) acc += gl64().integrate(integrand, cuts_neg[i], cuts_neg[i + 1]);
  for (int i = 0; i < 2; ++i) acc += gl64().integrate(integrand, cuts_pos[i], cuts_pos[i + 1]);
  return std::exp(t) * acc;
}

Real c_n(Real t, int n, Real S, const GainFunction& c) { return c_n(t, n, S, as_function(c)); }

namespace {

// I(t) = int_S^t c e^{-x} dx and J(t) = int_S^t (t - x) c e^{-x} dx on one fixed affine rule.
std::pair<Real, Real> ode_integrals(Real t, const ScalarFn& c, Real S) {
  if (!(t > S)) fail(ErrorKind::argument, "ODE solutions need t > S");
  const auto& gl = gl64();
  const Real mid = 0.5 * (S + t), half = 0.5 * (t - S);
  Real I = 0, J = 0;
  for (int i = 0; i < gl.size(); ++i) {
    const Real x = mid + half * gl.nodes[i];
    const Real v = gl.weights[i] * c(x) * std::exp(-x);
    I += v;
    J += v * (t - x);
  }
  return {I * half, J * half};
}

}  // namespace

Real ode_u(Real t, const ScalarFn& c, Real S) { return -std::log(ode_integrals(t, c, S).first); }

Real ode_s(Real t, const ScalarFn& c, Real S) {
  const auto [I, J] = ode_integrals(t, c, S);
  return J / I;
}

namespace {

const GaussLegendre<>& gl16() {
  static const GaussLegendre<> rule(16);
  return rule;
}

// Increments of u and s from t to t + d, integrated over [t, t + d] directly so
// the stencils below see no cancellation.
std::pair<Real, Real> ode_increments(Real t, Real d, Real I, Real J, const ScalarFn& c) {
  const auto& gl = gl16();
  const Real mid = t + 0.5 * d, half = 0.5 * d;
  Real dI = 0, dK = 0;
  for (int i = 0; i < gl.size(); ++i) {
    const Real x = mid + half * gl.nodes[i];
    const Real v = gl.weights[i] * c(x) * std::exp(-x);
    dI += v;
    dK += v * (t + d - x);
  }
  dI *= half;
  dK *= half;
  const Real dJ = d * I + dK;
  const Real du = -std::log1p(dI / I);
  const Real ds = (dJ * I - J * dI) / (I * (I + dI));
  return {du, ds};
}

}  // namespace

OdeResiduals ode_residuals(const std::vector<Real>& grid, const ScalarFn& c, Real S, Real h) {
  OdeResiduals r;
  r.min_convexity = std::numeric_limits<Real>::infinity();
  for (Real t : grid) {
    if (!(t - 2 * h > S)) fail(ErrorKind::argument, "residual grid too close to S");
    const auto [I, J] = ode_integrals(t, c, S);
    const Real s0 = J / I, u0 = -std::log(I);
    std::array<Real, 5> du{}, ds{};
    for (int j : {-2, -1, 1, 2}) std::tie(du[j + 2], ds[j + 2]) = ode_increments(t, j * h, I, J, c);
    auto d1 = [h](const std::array<Real, 5>& f) { return (f[0] - 8 * f[1] + 8 * f[3] - f[4]) / (12 * h); };
    auto d2 = [h](const std::array<Real, 5>& f) { return (-f[0] + 16 * f[1] + 16 * f[3] - f[4]) / (12 * h * h); };
    const Real u1 = d1(du), u2 = d2(du), s1 = d1(ds), s2 = d2(ds);
    const Real conv = u2 * s0 - s2;
    r.min_convexity = std::min(r.min_convexity, conv);
    r.linear = std::max(r.linear, std::abs(s1 - s0 * u1 - 1));
    r.nonlinear = std::max(r.nonlinear, std::abs((s0 + s1 * s1 / conv) * std::exp(u0 - t) * c(t) - 1));
    ++r.points;
  }
  r.convexity_ok = r.min_convexity > 0;
  return r;
}

namespace {

AuxCheck check(std::string name, Real value, Real limit, bool passed) {
  return AuxCheck{std::move(name), value, limit, passed};
}

std::vector<Real> linspace(Real a, Real b, int n) {
  std::vector<Real> out(n);
  for (int i = 0; i < n; ++i) out[i] = a + (b - a) * i / (n - 1);
  return out;
}

void cutoff_checks(const AuxProfile& p, std::vector<AuxCheck>& out) {
  const Real t0 = p.t0, B = p.B;
  const auto grid = linspace(-t0 - 2 * B, -t0 + B, 601);

  Real b_range = 0, v_drop = 0, v_floor = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Real t = grid[i];
    const Real b = b_func(t, t0, B), v = v_func(t, t0, B);
    b_range = std::max({b_range, -b, b - 1});
    v_floor = std::max(v_floor, std::max(t, -t0 - B) - v);
    if (i > 0) v_drop = std::max(v_drop, v_func(grid[i - 1], t0, B) - v);
  }
  out.push_back(check("b in [0,1]", b_range, 0, b_range <= 0));
  out.push_back(check("v nondecreasing", v_drop, 0, v_drop <= 0));
  out.push_back(check("v >= max(t, -t0-B)", v_floor, 1e-15, v_floor <= 1e-15));

  const Real eps = p.eps;
  // (1) identity above -t0-eps, constant below -t0-B+eps
  Real ident = 0, flat = 0;
  const Real below = v_eps(-t0 - B + eps, t0, B, eps).value;
  for (Real t : grid) {
    const VEps v = v_eps(t, t0, B, eps);
    if (t >= -t0 - eps) ident = std::max(ident, std::abs(v.value - t));
    if (t < -t0 - B + eps) flat = std::max(flat, std::abs(v.value - below));
  }
  out.push_back(check("v_eps(t) = t for t >= -t0-eps", ident, 1e-12, ident <= 1e-12));
  out.push_back(check("v_eps constant for t < -t0-B+eps", flat, 1e-12, flat <= 1e-12));

  // (2) 0 <= v'' <= (2/B) 1_{(-t0-B+eps, -t0-eps)}, pointwise limit 1/B inside
  Real d2_bound = 0;
  for (Real t : grid) {
    const Real d2 = v_eps(t, t0, B, eps).d2;
    const bool inside = t > -t0 - B + eps && t < -t0 - eps;
    d2_bound = std::max({d2_bound, -d2, d2 - (inside ? 2.0 / B : 0.0)});
  }
  out.push_back(check("0 <= v_eps'' <= (2/B) indicator", d2_bound, 0, d2_bound <= 0));

  // (3) 0 <= v' <= 1, and both derivatives converge as eps -> 0
  Real d1_range = 0;
  for (Real t : grid) {
    const Real d1 = v_eps(t, t0, B, eps).d1;
    d1_range = std::max({d1_range, -d1, d1 - 1});
  }
  out.push_back(check("0 <= v_eps' <= 1", d1_range, 1e-15, d1_range <= 1e-15));

  const std::array<Real, 3> eps_seq{B / 16, B / 32, B / 64};
  std::array<Real, 3> err_v{}, err_d1{}, err_d2{};
  const std::array<Real, 3> probes{-t0 - 0.75 * B, -t0 - 0.5 * B, -t0 - 0.25 * B};
  for (int j = 0; j < 3; ++j) {
    for (Real t : grid) {
      const VEps v = v_eps(t, t0, B, eps_seq[j]);
      err_v[j] = std::max(err_v[j], std::abs(v.value - v_func(t, t0, B)));
      err_d1[j] = std::max(err_d1[j], std::abs(v.d1 - b_func(t, t0, B)));
    }
    for (Real t : probes) err_d2[j] = std::max(err_d2[j], std::abs(v_eps(t, t0, B, eps_seq[j]).d2 - 1.0 / B));
  }
  Real ratio = 0;
  for (int j = 0; j < 3; ++j) ratio = std::max(ratio, err_v[j] / eps_seq[j]);
  out.push_back(check("max|v_eps - v| / eps bounded", ratio, B, ratio <= B));
  out.push_back(check("v_eps' -> b", err_d1[2], err_d1[0], err_d1[2] < err_d1[0] && err_d1[1] <= err_d1[0]));
  out.push_back(check("v_eps'' -> 1/B inside", err_d2[2], err_d2[0], err_d2[2] < err_d2[1] && err_d2[1] < err_d2[0]));
}

void mollifier_checks(const AuxProfile& p, const std::vector<NamedGain>& gains, std::vector<AuxCheck>& out) {
  for (int n : {1, 4, 16}) {
    const Real left = std::abs(g_n_mass(-1.0 / n, 0.0, n) - 1.0);
    const Real right = g_n_mass(0.0, 1.0 / n, n);
    out.push_back(check("int_{-1/n}^0 g_n = 1 (n=" + std::to_string(n) + ")", left, 1e-9, left <= 1e-9));
    out.push_back(check("int_0^{1/n} g_n <= 1/n (n=" + std::to_string(n) + ")", right, 1.0 / n, right <= 1.0 / n));
  }
  const Real S = p.S;
  const auto grid = linspace(S + 0.1, S + 10, 60);
  const std::array<int, 4> ns{4, 16, 64, 256};
  for (const auto& g : gains) {
    Real below = 0, rise = 0;
    std::array<Real, 4> err{};
    for (std::size_t j = 0; j < ns.size(); ++j) {
      Real prev = std::numeric_limits<Real>::infinity();
      for (Real t : grid) {
        const Real cn = c_n(t, ns[j], S, g.c), c = g.c(t);
        below = std::max(below, c - cn);
        const Real decayed = cn * std::exp(-(t - S));
        rise = std::max(rise, decayed - prev);
        prev = decayed;
        err[j] = std::max(err[j], std::abs(cn - c));
      }
    }
    const bool monotone = err[1] < err[0] && err[2] < err[1] && err[3] < err[2];
    out.push_back(check("c_n >= c [" + g.name + "]", below, 1e-14, below <= 1e-14));
    out.push_back(check("c_n e^{-t} nonincreasing [" + g.name + "]", rise, 1e-14, rise <= 1e-14));
    out.push_back(check("c_n -> c, error decreasing in n [" + g.name + "]", err[3], err[0], monotone));
  }
}

void ode_checks(const AuxProfile& p, const std::vector<NamedGain>& gains, Real tol, std::vector<AuxCheck>& out) {
  const Real S = p.S;
  const auto grid = linspace(S + 0.1, S + 10, 100);
  for (const auto& g : gains) {
    const OdeResiduals r = ode_residuals(grid, g.c, S);
    out.push_back(check("|s' - s u' - 1| [" + g.name + "]", r.linear, tol, r.linear <= tol));
    out.push_back(check("nonlinear ODE residual [" + g.name + "]", r.nonlinear, tol, r.nonlinear <= tol));
    out.push_back(check("u''s - s'' > 0 [" + g.name + "]", r.min_convexity, 0, r.convexity_ok));
    Real neg = 0;
    for (Real t : grid) neg = std::min(neg, ode_s(t, g.c, S));
    out.push_back(check("s >= 0 [" + g.name + "]", -neg, 0, neg >= 0));
    const Real near = ode_s(S + 1e-6, g.c, S);
    out.push_back(check("s -> 0+ at S [" + g.name + "]", near, 1e-5, near >= 0 && near <= 1e-5));
  }
}

}  // namespace

AuxSuiteReport aux_suite(const AuxProfile& profile, const std::vector<NamedGain>& gains, Real ode_tol) {
  profile.validate();
  AuxSuiteReport r;
  cutoff_checks(profile, r.checks);
  mollifier_checks(profile, gains, r.checks);
  ode_checks(profile, gains, ode_tol, r.checks);
  r.passed = std::all_of(r.checks.begin(), r.checks.end(), [](const AuxCheck& c) { return c.passed; });
  return r;
}

ScalarFn as_function(const GainFunction& c) {
  return [c](Real t) { return c(t); };
}

}  // namespace minl2
