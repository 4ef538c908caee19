#include "minl2/weights.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <sstream>

namespace minl2 {

namespace {

constexpr Real kPi = std::numbers::pi;

// Roots of a polynomial given low-to-high, via the companion matrix.
std::vector<Complex> polynomial_roots(const CSeries& poly) {
  Eigen::Index deg = poly.size() - 1;
  while (deg > 0 && std::abs(poly[deg]) == 0.0) --deg;
  if (deg < 1) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (Eigen::Index i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < deg; ++i) companion(i, deg - 1) = -poly[i] / poly[deg];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<Complex> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + deg);
  return roots;
}

bool in_closure(const PlanarDomain& domain, Complex z) {
  switch (domain.kind()) {
    case DomainKind::disc: return std::abs(z) <= 1.0 + 1e-12;
    case DomainKind::annulus: {
      const Real r = std::abs(z);
      return r >= domain.inner_radius() - 1e-12 && r <= 1.0 + 1e-12;
    }
    case DomainKind::conformal: {
      const Complex zeta = domain.inverse_map(z);
      return std::abs(domain.forward_map(zeta) - z) < 1e-10 * std::max(1.0, std::abs(z)) &&
             std::abs(zeta) <= 1.0 + 1e-12;
    }
  }
  return false;
}

// Interior sample points with their Green values.
template <typename F>
void for_each_interior_point(const PlanarDomain& domain, int nr, int nt, F&& f) {
  for (int i = 1; i <= nr; ++i) {
    for (int j = 0; j < nt; ++j) {
      const Real theta = 2.0 * kPi * (j + 0.5 * (i % 2)) / nt;
      if (domain.simply_connected()) {
        const Real r = (i - 0.5) / nr;
        const Complex m = std::polar(r, theta);
        f(domain.from_green_coordinate(m), std::log(r));
      } else {
        const Real q = domain.inner_radius();
        const Complex z = std::polar(q + (1.0 - q) * (i - 0.5) / nr, theta);
        if (z == domain.marked_point()) continue;
        f(z, domain.green(z));
      }
    }
  }
}

}  // namespace

const char* to_string(TermKind kind) {
  switch (kind) {
    case TermKind::green: return "green";
    case TermKind::linear: return "linear";
    case TermKind::log_poly: return "log_poly";
    case TermKind::quadratic: return "quadratic";
    case TermKind::constant: return "constant";
    case TermKind::green_bump: return "green_bump";
    case TermKind::quadratic_bump: return "quadratic_bump";
  }
  return "unknown";
}

Real PotentialTerm::evaluate(Complex z, Real green) const {
  switch (kind) {
    case TermKind::green: return coef == 0.0 ? 0.0 : coef * green;
    case TermKind::linear: return (param * z).real();
    case TermKind::log_poly: return coef * std::log(std::abs(series::evaluate(poly, z)));
    case TermKind::quadratic: return coef * std::norm(z - param);
    case TermKind::constant: return coef;
    case TermKind::green_bump: return coef * std::expm1(2.0 * green);
    case TermKind::quadratic_bump: return coef * (std::norm(z - param) - radius * radius);
  }
  return 0;
}

bool PotentialTerm::harmonic() const {
  switch (kind) {
    case TermKind::green:
    case TermKind::linear:
    case TermKind::log_poly:
    case TermKind::constant: return true;
    case TermKind::quadratic:
    case TermKind::green_bump:
    case TermKind::quadratic_bump: return coef == 0.0;
  }
  return false;
}

Potential& Potential::add_green(Real coef) {
  terms_.push_back({TermKind::green, coef, 0, 0, {}});
  return *this;
}
Potential& Potential::add_linear(Complex lambda) {
  terms_.push_back({TermKind::linear, 1.0, lambda, 0, {}});
  return *this;
}
Potential& Potential::add_log_poly(Real coef, CSeries poly) {
  if (poly.size() == 0) fail(ErrorKind::argument, "log_poly term needs polynomial coefficients");
  terms_.push_back({TermKind::log_poly, coef, 0, 0, std::move(poly)});
  return *this;
}
Potential& Potential::add_quadratic(Real coef, Complex center) {
  terms_.push_back({TermKind::quadratic, coef, center, 0, {}});
  return *this;
}
Potential& Potential::add_constant(Real value) {
  terms_.push_back({TermKind::constant, value, 0, 0, {}});
  return *this;
}
Potential& Potential::add_green_bump(Real coef) {
  if (coef < 0) fail(ErrorKind::argument, "green_bump coefficient must be nonnegative");
  terms_.push_back({TermKind::green_bump, coef, 0, 0, {}});
  return *this;
}
Potential& Potential::add_quadratic_bump(Real coef, Complex center, Real radius) {
  if (coef < 0) fail(ErrorKind::argument, "quadratic_bump coefficient must be nonnegative");
  terms_.push_back({TermKind::quadratic_bump, coef, center, radius, {}});
  return *this;
}

Real Potential::evaluate(Complex z, Real green) const {
  Real acc = 0;
  for (const auto& t : terms_) acc += t.evaluate(z, green);
  return acc;
}

Real Potential::regular(Complex z, Real green) const {
  Real acc = 0;
  for (const auto& t : terms_)
    if (t.kind != TermKind::green) acc += t.evaluate(z, green);
  return acc;
}

Real Potential::green_coefficient() const {
  Real acc = 0;
  for (const auto& t : terms_)
    if (t.kind == TermKind::green) acc += t.coef;
  return acc;
}

bool Potential::harmonic_off_pole() const {
  for (const auto& t : terms_)
    if (!t.harmonic()) return false;
  return true;
}

bool Potential::radial(const PlanarDomain& domain) const {
  if (!domain.simply_connected()) return false;
  const bool centered_disc = domain.kind() == DomainKind::disc && domain.marked_point() == Complex(0);
  for (const auto& t : terms_) {
    switch (t.kind) {
      case TermKind::green:
      case TermKind::constant:
      case TermKind::green_bump: break;
      case TermKind::linear:
        if (t.param != Complex(0)) return false;
        break;
      case TermKind::log_poly:
        for (Eigen::Index i = 1; i < t.poly.size(); ++i)
          if (t.poly[i] != Complex(0)) return false;
        break;
      case TermKind::quadratic:
      case TermKind::quadratic_bump:
        if (t.coef != 0.0 && !(centered_disc && t.param == Complex(0))) return false;
        break;
    }
  }
  return true;
}

CSeries Potential::holomorphic_part(const PlanarDomain& domain, Eigen::Index len) const {
  if (!harmonic_off_pole()) fail(ErrorKind::precondition, "holomorphic_part: potential has non-harmonic terms");
  const CSeries dz = domain.inverse_green_coordinate_series(len);  // z - z0 in powers of m
  const Complex z0 = domain.marked_point();
  CSeries out = CSeries::Zero(len);
  for (const auto& t : terms_) {
    switch (t.kind) {
      case TermKind::green: break;
      case TermKind::linear:
        out[0] += t.param * z0;
        out += t.param * dz;
        break;
      case TermKind::constant: out[0] += t.coef; break;
      case TermKind::log_poly: {
        CSeries shifted = series::shift(t.poly, z0);
        const CSeries g = series::compose(shifted, dz, len);
        out += t.coef * series::log(g, len);
        break;
      }
      default: break;
    }
  }
  return out;
}

Potential Potential::scaled(Real factor) const {
  Potential out = *this;
  for (auto& t : out.terms_) {
    if (t.kind == TermKind::linear)
      t.param *= factor;
    else
      t.coef *= factor;
  }
  return out;
}

Potential Potential::operator+(const Potential& other) const {
  Potential out = *this;
  out.terms_.insert(out.terms_.end(), other.terms_.begin(), other.terms_.end());
  return out;
}

std::string Potential::describe() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    if (i) os << " + ";
    switch (t.kind) {
      case TermKind::green: os << t.coef << "*G"; break;
      case TermKind::linear: os << "Re((" << t.param.real() << "+" << t.param.imag() << "i)z)"; break;
      case TermKind::log_poly: os << t.coef << "*log|g| (deg " << t.poly.size() - 1 << ")"; break;
      case TermKind::quadratic: os << t.coef << "*|z-c|^2"; break;
      case TermKind::constant: os << t.coef; break;
      case TermKind::green_bump: os << t.coef << "*(e^{2G}-1)"; break;
      case TermKind::quadratic_bump: os << t.coef << "*(|z-c|^2-" << t.radius << "^2)"; break;
    }
  }
  return os.str();
}

bool WeightPair::flag_harmonic_decomposition() const {
  return psi.harmonic_off_pole() && phi.harmonic_off_pole() &&
         std::abs(combined_lelong() - (k + 1)) < 1e-12;
}

bool WeightPair::flag_psi_is_green() const {
  for (const auto& t : psi.terms())
    if (t.kind != TermKind::green && t.coef != 0.0 && !(t.kind == TermKind::linear && t.param == Complex(0)))
      return false;
  return true;
}

WeightValidation validate_weights(const WeightPair& wp, const PlanarDomain& domain) {
  WeightValidation v;
  if (wp.k < 0) v.failures.push_back("jet order must be nonnegative");
  if (!(wp.lelong() > 0)) v.failures.push_back("psi needs a positive Lelong coefficient a");
  for (const Potential* p : {&wp.psi, &wp.phi}) {
    for (const auto& t : p->terms()) {
      if (t.kind != TermKind::log_poly) continue;
      for (Complex root : polynomial_roots(t.poly))
        if (in_closure(domain, root)) v.failures.push_back("log|g| term vanishes on the closed domain");
    }
  }
  const Real a = wp.lelong();
  v.max_psi = -std::numeric_limits<Real>::infinity();
  v.max_excess = -std::numeric_limits<Real>::infinity();
  for_each_interior_point(domain, 48, 96, [&](Complex z, Real g) {
    const Real psi = wp.psi.evaluate(z, g);
    v.max_psi = std::max(v.max_psi, psi);
    v.max_excess = std::max(v.max_excess, psi - 2.0 * a * g);
  });
  if (!(v.max_psi < 0)) v.failures.push_back("psi is not negative on the sample grid");
  if (v.max_excess > 1e-10) v.failures.push_back("psi exceeds 2a G on the sample grid");
  v.passed = v.failures.empty();
  return v;
}

LimitEstimate alpha_residue(const WeightPair& wp, const PlanarDomain& domain) {
  if (std::abs(wp.combined_lelong() - (wp.k + 1)) > 1e-12)
    fail(ErrorKind::precondition, "alpha_residue: combined Lelong coefficient must equal k+1");
  const Complex z0 = domain.marked_point();
  auto f = [&](Real r) {
    const Complex z = z0 + r;
    const Real g = domain.green(z);
    return wp.phi.evaluate(z, g) + wp.psi.evaluate(z, g) - 2.0 * (wp.k + 1) * g;
  };
  LimitEstimate est = richardson_limit(f, 0.5 * domain.boundary_distance());
  if (!est.converged) fail(ErrorKind::unsupported, "alpha_residue: limit diverges (alpha = -inf)");
  return est;
}

LimitEstimate alpha1_residue(const Potential& h, Real a1, const PlanarDomain& domain) {
  const Complex z0 = domain.marked_point();
  auto f = [&](Real r) {
    const Complex z = z0 + r;
    const Real g = domain.green(z);
    return h.evaluate(z, g) + a1 * g;
  };
  LimitEstimate est = richardson_limit(f, 0.5 * domain.boundary_distance());
  if (!est.converged) fail(ErrorKind::unsupported, "alpha1_residue: limit diverges (alpha_1 = -inf)");
  return est;
}

StrictWitness strict_inequality_witness(const WeightPair& wp, const PlanarDomain& domain, Real delta) {
  StrictWitness w;
  w.delta = delta;
  int total = 0, hits = 0;
  for_each_interior_point(domain, 32, 64, [&](Complex z, Real g) {
    ++total;
    if (wp.psi.evaluate(z, g) < 2.0 * (wp.k + 1) * g - delta) ++hits;
  });
  w.fraction = total ? Real(hits) / total : 0.0;
  return w;
}

ReducedProblem reduce_to_lelong(const WeightPair& wp, const GainFunction& c) {
  const Real a = wp.lelong();
  if (!(a > 0)) fail(ErrorKind::precondition, "reduction needs a positive Lelong coefficient");
  ReducedProblem out;
  out.original_lelong = a;
  out.s = 1.0 - (wp.k + 1) / a;
  const Real keep = 1.0 - out.s;
  out.weights.k = wp.k;
  out.weights.psi = wp.psi.scaled(keep);
  out.weights.phi = wp.phi + wp.psi.scaled(out.s);
  out.gain = c.reparameterized(1.0 / keep, out.s / keep);
  return out;
}

}  // namespace minl2
