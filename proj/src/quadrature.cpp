#include "minl2/quadrature.hpp"

#include "minl2/gauss.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace minl2 {

namespace {

constexpr Real kPi = std::numbers::pi;
constexpr int kRaySamples = 64;
constexpr int kBisections = 64;

// psi + t along the ray of angle theta in the Green coordinate.
struct GreenRay {
  const PlanarDomain& domain;
  const Potential& psi;
  Real t;
  Complex dir;

  Real operator()(Real r) const {
    if (r <= 0) return -std::numeric_limits<Real>::infinity();
    return psi.evaluate(domain.from_green_coordinate(r * dir), std::log(r)) + t;
  }
};

template <typename F>
Real bisect(const F& f, Real lo, Real hi) {
  // f(lo) < 0 <= f(hi)
  for (int i = 0; i < kBisections; ++i) {
    const Real mid = 0.5 * (lo + hi);
    if (f(mid) < 0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// First exit radius of {f < 0} along (0, 1]; sets reentry if the ray comes back.
template <typename F>
Real first_exit(const F& f, bool* reentry) {
  Real prev = 0;
  for (int i = 1; i <= kRaySamples; ++i) {
    const Real r = Real(i) / kRaySamples;
    if (f(r) >= 0) {
      const Real exit = bisect(f, prev, r);
      if (reentry) {
        for (int j = i + 1; j < kRaySamples; ++j)
          if (f(Real(j) / kRaySamples) < 0) *reentry = true;
      }
      return exit;
    }
    prev = r;
  }
  return 1.0;
}

// Radius where the radial profile f crosses zero below `hi`, for a level below the boundary one.
template <typename F>
Real crossing_below(const F& f, Real hi) {
  Real lo = hi;
  while (lo > 1e-300 && f(lo) >= 0) lo *= 0.5;
  return bisect(f, lo, hi);
}

struct SigmaRule {
  std::vector<Real> nodes, weights;
};

// Gauss-Legendre panels on [0, sigma_max], geometric towards sigma = 0, with extra edges.
SigmaRule sigma_rule(Real sigma_max, int total_nodes, std::vector<Real> extra_edges, int panels = 16) {
  const int per_panel = std::max(4, total_nodes / panels);
  std::vector<Real> edges{0.0};
  for (int i = 1; i <= panels; ++i) edges.push_back(std::ldexp(sigma_max, i - panels));
  for (Real e : extra_edges)
    if (e > 0 && e < sigma_max) edges.push_back(e);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(), [](Real a, Real b) { return std::abs(a - b) < 1e-14; }),
              edges.end());
  const GaussLegendre<> gl(per_panel);
  SigmaRule rule;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const Real mid = 0.5 * (edges[p] + edges[p + 1]), half = 0.5 * (edges[p + 1] - edges[p]);
    for (int i = 0; i < gl.size(); ++i) {
      rule.nodes.push_back(mid + half * gl.nodes[i]);
      rule.weights.push_back(half * gl.weights[i]);
    }
  }
  return rule;
}

Real node_weight(const WeightPair& wp, const GainFunction& c, Complex z, Real green) {
  const Real psi = wp.psi.evaluate(z, green);
  return std::exp(-wp.phi.evaluate(z, green)) * c(-psi);
}

// Depth in sigma beyond which e^{-2 sigma} times the weight is negligible along the ray.
Real choose_sigma_max(const PlanarDomain& domain, const WeightPair& wp, const GainFunction& c, Real R) {
  auto profile = [&](Real sigma) {
    const Real r = R * std::exp(-sigma);
    const Complex z = domain.from_green_coordinate(r);
    return std::exp(-2.0 * sigma) * node_weight(wp, c, z, std::log(r));
  };
  Real ref = 0;
  for (int i = 1; i <= 16; ++i) ref = std::max(ref, profile(i / 16.0));
  for (Real s = 8; s <= 512; s *= 2) {
    const Real v = profile(s);
    if (std::isfinite(v) && v < 1e-18 * ref) return s;
  }
  return 512;
}

SublevelGrid simply_connected_grid(const PlanarDomain& domain, const WeightPair& wp, const GainFunction& c, Real t,
                                   const IntegrationPlan& plan, bool with_weight) {
  SublevelGrid grid;
  grid.t = t;
  const bool radial = plan.mode == IntegrationPlan::Mode::radial ||
                      (plan.mode == IntegrationPlan::Mode::automatic && wp.radial(domain));
  if (plan.mode == IntegrationPlan::Mode::radial && !wp.radial(domain))
    fail(ErrorKind::unsupported, "radial quadrature needs a radial weight pair");
  grid.radial = radial;
  const int rays = radial ? 1 : plan.angular_nodes;
  grid.rays = rays;

  std::vector<Real> R(rays);
  for (int j = 0; j < rays; ++j) {
    bool reentry = false;
    R[j] = first_exit(GreenRay{domain, wp.psi, t, std::polar(1.0, 2.0 * kPi * j / rays)}, &reentry);
    if (reentry) grid.star_shaped = false;
  }
  grid.extent = *std::max_element(R.begin(), R.end());
  grid.sigma_max = with_weight ? choose_sigma_max(domain, wp, c, R[0]) : 24.0;

  grid.nodes.reserve(std::size_t(rays) * plan.radial_nodes);
  const std::vector<Real> breaks = with_weight ? c.breakpoints() : std::vector<Real>{};
  SigmaRule shared;
  for (int j = 0; j < rays; ++j) {
    const Complex dir = std::polar(1.0, 2.0 * kPi * j / rays);
    if (j == 0 || !breaks.empty()) {
      std::vector<Real> extra;
      for (Real b : breaks) {
        if (b <= t) continue;
        GreenRay f{domain, wp.psi, b, dir};
        extra.push_back(std::log(R[j] / crossing_below(f, R[j])));
      }
      shared = sigma_rule(grid.sigma_max, plan.radial_nodes, extra);
    }
    const Real dtheta = radial ? 2.0 * kPi : 2.0 * kPi / rays;
    for (std::size_t i = 0; i < shared.nodes.size(); ++i) {
      const Real r = R[j] * std::exp(-shared.nodes[i]);
      QuadratureNode node;
      node.m = r * dir;
      node.z = domain.from_green_coordinate(node.m);
      node.green = std::log(r);
      node.area = dtheta * r * r * shared.weights[i];
      node.weight = with_weight ? node_weight(wp, c, node.z, node.green) : 1.0;
      grid.nodes.push_back(node);
    }
  }
  return grid;
}

// ---- annulus -------------------------------------------------------------

struct AnnulusRays {
  const PlanarDomain& domain;
  const WeightPair& wp;
  const GainFunction& c;
  Real t;
  int radial_nodes;
  bool with_weight;

  // Parameter intervals of the ray z0 + r e^{i theta} inside the domain.
  std::vector<std::pair<Real, Real>> segments(Complex e) const {
    const Complex z0 = domain.marked_point();
    const Real b = (std::conj(z0) * e).real();
    const Real nz = std::norm(z0);
    const Real r_out = -b + std::sqrt(b * b - (nz - 1.0));
    const Real q = domain.inner_radius();
    const Real disc = b * b - (nz - q * q);
    if (b < 0 && disc > 0) {
      const Real s = std::sqrt(disc);
      return {{0.0, -b - s}, {-b + s, r_out}};
    }
    return {{0.0, r_out}};
  }

  Real f(Complex e, Real r) const {
    if (r <= 0) return -std::numeric_limits<Real>::infinity();
    const Complex z = domain.marked_point() + r * e;
    if (!domain.contains(z)) return std::numeric_limits<Real>::infinity();
    return wp.psi.evaluate(z, domain.green(z)) + t;
  }

  // Sublevel intervals along the ray.
  std::vector<std::pair<Real, Real>> intervals(Complex e) const {
    std::vector<std::pair<Real, Real>> out;
    for (auto [lo, hi] : segments(e)) {
      if (t <= 0) {
        out.push_back({lo, hi});
        continue;
      }
      const int n = 32;
      auto g = [&](Real r) { return f(e, r); };
      bool inside = lo == 0.0;
      Real start = lo, prev = lo;
      for (int i = 1; i <= n; ++i) {
        const Real r = lo + (hi - lo) * (i == n ? 1.0 - 1e-12 : Real(i) / n);
        const bool now = g(r) < 0;
        if (now != inside) {
          Real cross;
          if (inside) {
            cross = bisect(g, prev, r);
            out.push_back({start, cross});
          } else {
            auto neg = [&](Real x) { return -g(x); };
            cross = bisect(neg, prev, r);
            start = cross;
          }
          inside = now;
        }
        prev = r;
      }
      if (inside) out.push_back({start, hi});
    }
    return out;
  }

  void ray_nodes(Real theta, Real dtheta_weight, std::vector<QuadratureNode>& nodes) const {
    const Complex e = std::polar(1.0, theta);
    for (auto [lo, hi] : intervals(e)) {
      if (lo == 0.0) {
        const SigmaRule rule = sigma_rule(24.0, radial_nodes, {}, 8);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          const Real r = hi * std::exp(-rule.nodes[i]);
          push(nodes, e, r, dtheta_weight * r * r * rule.weights[i]);
        }
      } else {
        const GaussLegendre<> gl(std::max(8, radial_nodes / 6));
        for (int p = 0; p < 2; ++p) {
          const Real a = lo + 0.5 * p * (hi - lo), b = lo + 0.5 * (p + 1) * (hi - lo);
          const Real mid = 0.5 * (a + b), half = 0.5 * (b - a);
          for (int i = 0; i < gl.size(); ++i) {
            const Real r = mid + half * gl.nodes[i];
            push(nodes, e, r, dtheta_weight * r * half * gl.weights[i]);
          }
        }
      }
    }
  }

  void push(std::vector<QuadratureNode>& nodes, Complex e, Real r, Real area) const {
    QuadratureNode node;
    node.m = r * e;
    node.z = domain.marked_point() + node.m;
    node.green = domain.green(node.z);
    node.area = area;
    node.weight = with_weight ? node_weight(wp, c, node.z, node.green) : 1.0;
    nodes.push_back(node);
  }
};

// Probe moments used to drive the angular refinement.
std::array<Real, 2> probe(const std::vector<QuadratureNode>& nodes) {
  std::array<Real, 2> acc{0, 0};
  for (const auto& n : nodes) {
    acc[0] += n.area * n.weight;
    acc[1] += n.area * n.weight * std::norm(n.m);
  }
  return acc;
}

void angular_panel(const AnnulusRays& rays, Real a, Real b, const std::vector<QuadratureNode>& coarse, Real abs_tol,
                   int depth, std::vector<QuadratureNode>& out) {
  const GaussLegendre<> gl(8);
  auto panel_nodes = [&](Real lo, Real hi) {
    std::vector<QuadratureNode> nodes;
    const Real mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int i = 0; i < gl.size(); ++i) rays.ray_nodes(mid + half * gl.nodes[i], half * gl.weights[i], nodes);
    return nodes;
  };
  const Real mid = 0.5 * (a + b);
  std::vector<QuadratureNode> left = panel_nodes(a, mid), right = panel_nodes(mid, b);
  const auto pc = probe(coarse), pl = probe(left), pr = probe(right);
  const Real err = std::max(std::abs(pc[0] - pl[0] - pr[0]), std::abs(pc[1] - pl[1] - pr[1]));
  if (err <= abs_tol || depth <= 0) {
    out.insert(out.end(), left.begin(), left.end());
    out.insert(out.end(), right.begin(), right.end());
    return;
  }
  angular_panel(rays, a, mid, left, 0.5 * abs_tol, depth - 1, out);
  angular_panel(rays, mid, b, right, 0.5 * abs_tol, depth - 1, out);
}

SublevelGrid annulus_grid(const PlanarDomain& domain, const WeightPair& wp, const GainFunction& c, Real t,
                          const IntegrationPlan& plan, bool with_weight) {
  SublevelGrid grid;
  grid.t = t;
  AnnulusRays rays{domain, wp, c, t, std::max(48, plan.radial_nodes * 3 / 8), with_weight};
  const int panels = 32;
  const GaussLegendre<> gl(8);
  std::vector<std::vector<QuadratureNode>> initial(panels);
  Real scale = 0;
  for (int p = 0; p < panels; ++p) {
    const Real a = 2.0 * kPi * p / panels, b = 2.0 * kPi * (p + 1) / panels;
    const Real mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < gl.size(); ++i) rays.ray_nodes(mid + half * gl.nodes[i], half * gl.weights[i], initial[p]);
    const auto pr = probe(initial[p]);
    scale += std::abs(pr[0]) + std::abs(pr[1]);
  }
  const Real abs_tol = plan.tolerance * scale / panels;
  for (int p = 0; p < panels; ++p) {
    const Real a = 2.0 * kPi * p / panels, b = 2.0 * kPi * (p + 1) / panels;
    angular_panel(rays, a, b, initial[p], abs_tol, plan.max_depth, grid.nodes);
  }
  for (const auto& n : grid.nodes) grid.extent = std::max(grid.extent, std::abs(n.m));
  grid.rays = int(grid.nodes.size());
  return grid;
}

SublevelGrid build_grid(const PlanarDomain& domain, const WeightPair& wp, const GainFunction& c, Real t,
                        const IntegrationPlan& plan, bool with_weight) {
  if (t < c.lower_endpoint()) fail(ErrorKind::argument, "sublevel threshold below the gain's lower endpoint");
  if (domain.simply_connected()) return simply_connected_grid(domain, wp, c, t, plan, with_weight);
  if (plan.mode == IntegrationPlan::Mode::radial)
    fail(ErrorKind::unsupported, "radial quadrature needs a simply connected domain");
  return annulus_grid(domain, wp, c, t, plan, with_weight);
}

IntegralEstimate estimate(const std::function<Real(const SublevelGrid&)>& rule, const std::function<SublevelGrid(const IntegrationPlan&)>& make,
                          const IntegrationPlan& plan) {
  IntegrationPlan half = plan;
  half.radial_nodes = std::max(32, plan.radial_nodes / 2);
  half.angular_nodes = std::max(8, plan.angular_nodes / 2);
  half.tolerance = plan.tolerance * 1e3;
  IntegralEstimate out;
  out.value = rule(make(plan));
  const Real coarse = rule(make(half));
  out.error = std::max(std::abs(out.value - coarse), 64 * std::numeric_limits<Real>::epsilon() * std::abs(out.value));
  return out;
}

// |dw/dm|^2 at a node.
Real chart_jacobian2(const PlanarDomain& domain, const QuadratureNode& n) {
  const CSeries dw = series::derivative(domain.chart().coeffs);
  const Complex wz = series::evaluate(dw, n.z - domain.marked_point());
  const Complex zm = domain.simply_connected() ? domain.green_coordinate_derivative(n.m) : Complex(1.0);
  return std::norm(wz * zm);
}

}  // namespace

SublevelGrid sublevel_grid(const PlanarDomain& domain, const WeightPair& wp, const GainFunction& c, Real t,
                           const IntegrationPlan& plan) {
  return build_grid(domain, wp, c, t, plan, true);
}

Real sublevel_radius(const PlanarDomain& domain, const Potential& psi, Real t, Real theta) {
  return first_exit(GreenRay{domain, psi, t, std::polar(1.0, theta)}, nullptr);
}

IntegralEstimate integrate_sublevel(const std::function<Real(Complex)>& density, const WeightPair& wp,
                                    const PlanarDomain& domain, Real t, const IntegrationPlan& plan) {
  IntegrationPlan p = plan;
  if (p.mode == IntegrationPlan::Mode::automatic) p.mode = IntegrationPlan::Mode::polar;
  const GainFunction one;
  auto make = [&](const IntegrationPlan& q) { return build_grid(domain, wp, one, t, q, false); };
  auto rule = [&](const SublevelGrid& g) {
    Real acc = 0;
    for (const auto& n : g.nodes) acc += 2.0 * n.area * chart_jacobian2(domain, n) * density(n.z);
    return acc;
  };
  return estimate(rule, make, p);
}

IntegralEstimate integrate_weighted(const std::function<Real(Complex)>& density, const WeightPair& wp,
                                    const GainFunction& c, const PlanarDomain& domain, Real t,
                                    const IntegrationPlan& plan) {
  IntegrationPlan p = plan;
  if (p.mode == IntegrationPlan::Mode::automatic) p.mode = IntegrationPlan::Mode::polar;
  auto make = [&](const IntegrationPlan& q) { return build_grid(domain, wp, c, t, q, true); };
  auto rule = [&](const SublevelGrid& g) {
    Real acc = 0;
    for (const auto& n : g.nodes) acc += 2.0 * n.area * n.weight * chart_jacobian2(domain, n) * density(n.z);
    return acc;
  };
  return estimate(rule, make, p);
}

Real moment_radial(int k, const WeightPair& wp, const GainFunction& c, Real t, const PlanarDomain& domain) {
  if (!wp.radial(domain)) fail(ErrorKind::unsupported, "moment_radial needs a radial weight pair");
  if (k < 0) fail(ErrorKind::argument, "moment_radial: negative order");
  GreenRay ray{domain, wp.psi, t, Complex(1.0)};
  const Real rt = first_exit(ray, nullptr);
  std::vector<Real> cuts{0.0, rt};
  for (Real b : c.breakpoints()) {
    if (b <= t) continue;
    cuts.push_back(crossing_below(GreenRay{domain, wp.psi, b, Complex(1.0)}, rt));
  }
  std::sort(cuts.begin(), cuts.end());
  auto integrand = [&](Real r) {
    if (r <= 0) return 0.0;
    const Complex z = domain.from_green_coordinate(Complex(r, 0));
    const Real g = std::log(r);
    return std::pow(r, 2 * k + 1) * std::exp(-wp.phi.evaluate(z, g)) * c(-wp.psi.evaluate(z, g));
  };
  boost::math::quadrature::tanh_sinh<Real> ts;
  Real acc = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i + 1] > cuts[i]) acc += ts.integrate(integrand, cuts[i], cuts[i + 1]);
  return 4.0 * kPi * acc;
}

}  // namespace minl2
