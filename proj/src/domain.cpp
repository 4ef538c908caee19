#include "minl2/domain.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace minl2 {

namespace {

constexpr Real kPi = std::numbers::pi;
constexpr Eigen::Index kChartLength = 24;

Complex mobius(Complex zeta, Complex center) { return (zeta - center) / (1.0 - std::conj(center) * zeta); }
Complex mobius_inverse(Complex m, Complex center) { return (m + center) / (1.0 + std::conj(center) * m); }

}  // namespace

const char* to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::disc: return "disc";
    case DomainKind::conformal: return "conformal";
    case DomainKind::annulus: return "annulus";
  }
  return "unknown";
}

Chart Chart::translation() {
  Chart c;
  c.kind = ChartKind::translation;
  c.coeffs = CSeries::Zero(2);
  c.coeffs[1] = 1.0;
  return c;
}

Chart Chart::scaled(Complex lambda) {
  if (lambda == Complex(0)) fail(ErrorKind::argument, "scaled chart needs a nonzero factor");
  Chart c;
  c.kind = ChartKind::scaled;
  c.coeffs = CSeries::Zero(2);
  c.coeffs[1] = lambda;
  return c;
}

Chart Chart::custom(const CSeries& coeffs) {
  if (coeffs.size() < 2 || std::abs(coeffs[0]) != 0.0 || std::abs(coeffs[1]) == 0.0)
    fail(ErrorKind::argument, "chart series must satisfy w(z0)=0 and w'(z0)!=0");
  Chart c;
  c.kind = ChartKind::series;
  c.coeffs = coeffs;
  return c;
}

Chart Chart::green() {
  Chart c;
  c.kind = ChartKind::green;
  return c;
}

std::string Chart::describe() const {
  std::ostringstream os;
  switch (kind) {
    case ChartKind::translation: os << "translation w=z-z0"; break;
    case ChartKind::scaled: os << "scaled w=(" << coeffs[1].real() << "+" << coeffs[1].imag() << "i)(z-z0)"; break;
    case ChartKind::green: os << "green coordinate w=m(z)"; break;
    case ChartKind::series: os << "series chart (" << coeffs.size() << " terms)"; break;
  }
  return os.str();
}

LimitEstimate richardson_limit(const std::function<Real(Real)>& f, Real r0, int jmin, int jmax, Real tol) {
  const int levels = jmax - jmin + 1;
  std::vector<std::vector<Real>> table(levels);
  for (int i = 0; i < levels; ++i) {
    table[i].resize(i + 1);
    table[i][0] = f(std::ldexp(r0, -(jmin + i)));
    for (int m = 1; m <= i; ++m) {
      const Real factor = std::ldexp(1.0, m) - 1.0;
      table[i][m] = table[i][m - 1] + (table[i][m - 1] - table[i - 1][m - 1]) / factor;
    }
  }
  LimitEstimate est;
  est.value = table[0][0];
  est.spread = std::numeric_limits<Real>::infinity();
  for (int m = 1; m < levels; ++m) {
    const Real diff = std::abs(table[m][m] - table[m - 1][m - 1]);
    if (!std::isfinite(diff)) continue;
    if (diff < est.spread) {
      est.spread = diff;
      est.value = table[m][m];
    }
  }
  est.converged = std::isfinite(est.value) && est.spread < tol;
  return est;
}

PlanarDomain PlanarDomain::disc(Complex z0, Chart chart) {
  if (std::abs(z0) >= 1.0) fail(ErrorKind::domain, "marked point must lie inside the unit disc");
  PlanarDomain d;
  d.kind_ = DomainKind::disc;
  d.z0_ = z0;
  d.zeta0_ = z0;
  d.chart_ = std::move(chart);
  d.resolve_chart();
  return d;
}

PlanarDomain PlanarDomain::conformal(const CSeries& map_coeffs, Complex z0, Chart chart) {
  if (map_coeffs.size() < 2 || std::abs(map_coeffs[1]) == 0.0)
    fail(ErrorKind::domain, "conformal map needs a nonzero linear coefficient");
  PlanarDomain d;
  d.kind_ = DomainKind::conformal;
  d.map_ = map_coeffs;
  // Sufficient univalence test: Re(Phi'/a_1) > 0 on the closed disc.
  const CSeries dphi = series::derivative(map_coeffs);
  for (int i = 0; i <= 32; ++i) {
    for (int j = 0; j < 128; ++j) {
      const Complex zeta = std::polar(Real(i) / 32.0, 2.0 * kPi * j / 128.0);
      if ((series::evaluate(dphi, zeta) / map_coeffs[1]).real() <= 0.0)
        fail(ErrorKind::domain, "conformal map fails the univalence test Re(Phi'/Phi'(0)) > 0");
    }
  }
  d.z0_ = z0;
  d.zeta0_ = d.inverse_map(z0);
  if (std::abs(d.zeta0_) >= 1.0) fail(ErrorKind::domain, "marked point lies outside the conformal image");
  d.map_shifted_ = series::shift(map_coeffs, d.zeta0_);
  d.map_shifted_[0] = 0.0;
  d.chart_ = std::move(chart);
  d.resolve_chart();
  return d;
}

PlanarDomain PlanarDomain::annulus(Real q, Complex z0, int terms, Chart chart) {
  if (!(q > 0.0 && q < 1.0)) fail(ErrorKind::domain, "annulus inner radius must lie in (0,1)");
  if (terms < 1) fail(ErrorKind::argument, "annulus series needs at least one term");
  if (!(std::abs(z0) > q && std::abs(z0) < 1.0)) fail(ErrorKind::domain, "marked point must lie inside the annulus");
  if (chart.kind == ChartKind::green) fail(ErrorKind::unsupported, "green coordinate chart needs a simply connected domain");
  PlanarDomain d;
  d.kind_ = DomainKind::annulus;
  d.q_ = q;
  d.terms_ = terms;
  d.z0_ = z0;
  d.zeta0_ = z0;
  d.chart_ = std::move(chart);
  return d;
}

void PlanarDomain::resolve_chart() {
  if (chart_.kind == ChartKind::green) chart_.coeffs = green_coordinate_series(kChartLength);
}

PlanarDomain PlanarDomain::with_marked_point(Complex z0) const {
  Chart c = chart_;
  switch (kind_) {
    case DomainKind::disc: return disc(z0, c);
    case DomainKind::conformal: return conformal(map_, z0, c);
    case DomainKind::annulus: return annulus(q_, z0, terms_, c);
  }
  return *this;
}

PlanarDomain PlanarDomain::with_chart(Chart chart) const {
  PlanarDomain d = *this;
  if (chart.kind == ChartKind::green && !simply_connected())
    fail(ErrorKind::unsupported, "green coordinate chart needs a simply connected domain");
  d.chart_ = std::move(chart);
  d.resolve_chart();
  return d;
}

Complex PlanarDomain::forward_map(Complex zeta) const {
  return kind_ == DomainKind::conformal ? series::evaluate(map_, zeta) : zeta;
}

Complex PlanarDomain::inverse_map(Complex z) const {
  if (kind_ != DomainKind::conformal) return z;
  // Coarse search for a starting point, then Newton.
  Complex best = 0;
  Real best_err = std::numeric_limits<Real>::infinity();
  for (int i = 0; i <= 24; ++i) {
    for (int j = 0; j < 64; ++j) {
      const Complex zeta = std::polar(1.05 * i / 24.0, 2.0 * kPi * j / 64.0);
      const Real err = std::abs(series::evaluate(map_, zeta) - z);
      if (err < best_err) {
        best_err = err;
        best = zeta;
      }
    }
  }
  const CSeries dphi = series::derivative(map_);
  Complex zeta = best;
  const Real scale = std::max(1.0, std::abs(z));
  for (int iter = 0; iter < 60; ++iter) {
    const Complex res = series::evaluate(map_, zeta) - z;
    const Complex step = res / series::evaluate(dphi, zeta);
    zeta -= step;
    if (std::abs(step) < 1e-16 * scale) break;
  }
  return zeta;
}

bool PlanarDomain::contains(Complex z) const {
  switch (kind_) {
    case DomainKind::disc: return std::abs(z) < 1.0;
    case DomainKind::conformal: return std::abs(inverse_map(z)) < 1.0;
    case DomainKind::annulus: {
      const Real r = std::abs(z);
      return r > q_ && r < 1.0;
    }
  }
  return false;
}

Real PlanarDomain::annulus_log_abs_p(Complex x) const {
  // P(x) = (1-x) prod_{n>=1} (1 - q^{2n} x)(1 - q^{2n}/x)
  Real acc = std::log(std::abs(1.0 - x));
  Real qn = 1.0;
  for (int n = 1; n <= terms_; ++n) {
    qn *= q_ * q_;
    if (qn < 1e-20) break;  // remaining factors round to 1
    acc += std::log(std::abs(1.0 - qn * x)) + std::log(std::abs(1.0 - qn / x));
  }
  return acc;
}

Real PlanarDomain::annulus_green(Complex z, Complex pole) const {
  const Real lp = std::log(std::abs(pole));
  return annulus_log_abs_p(z / pole) - annulus_log_abs_p(z * std::conj(pole)) - lp / std::log(q_) * std::log(std::abs(z)) + lp;
}

Real PlanarDomain::green(Complex z, Complex pole) const {
  if (!contains(z)) fail(ErrorKind::domain, "green: point outside the domain");
  if (!contains(pole)) fail(ErrorKind::domain, "green: pole outside the domain");
  if (z == pole) return -std::numeric_limits<Real>::infinity();
  switch (kind_) {
    case DomainKind::disc: return std::log(std::abs(mobius(z, pole)));
    case DomainKind::conformal: return std::log(std::abs(mobius(inverse_map(z), inverse_map(pole))));
    case DomainKind::annulus: return annulus_green(z, pole);
  }
  return 0;
}

Real PlanarDomain::green(Complex z) const {
  if (!contains(z)) fail(ErrorKind::domain, "green: point outside the domain");
  if (z == z0_) return -std::numeric_limits<Real>::infinity();
  switch (kind_) {
    case DomainKind::disc: return std::log(std::abs(mobius(z, z0_)));
    case DomainKind::conformal: return std::log(std::abs(green_coordinate(z)));
    case DomainKind::annulus: return annulus_green(z, z0_);
  }
  return 0;
}

Real PlanarDomain::green_regular(Complex delta) const {
  switch (kind_) {
    case DomainKind::disc:
      return -std::log(std::abs((1.0 - std::norm(z0_)) - std::conj(z0_) * delta));
    case DomainKind::conformal: {
      // Solve Phi(zeta0 + eta) - Phi(zeta0) = delta for eta.
      const CSeries dshift = series::derivative(map_shifted_);
      Complex eta = delta / map_shifted_[1];
      for (int iter = 0; iter < 60; ++iter) {
        const Complex step = (series::evaluate(map_shifted_, eta) - delta) / series::evaluate(dshift, eta);
        eta -= step;
        if (std::abs(step) <= 1e-17 * std::abs(eta)) break;
      }
      return std::log(std::abs(eta / delta)) - std::log(std::abs((1.0 - std::norm(zeta0_)) - std::conj(zeta0_) * eta));
    }
    case DomainKind::annulus: {
      const Complex z = z0_ + delta;
      const Complex x = z / z0_;
      Real acc = 0;
      Real qn = 1.0;
      for (int n = 1; n <= terms_; ++n) {
        qn *= q_ * q_;
        if (qn < 1e-20) break;
        acc += std::log(std::abs(1.0 - qn * x)) + std::log(std::abs(1.0 - qn / x));
      }
      return acc - annulus_log_abs_p(z * std::conj(z0_)) - std::log(std::abs(z0_)) / std::log(q_) * std::log(std::abs(z));
    }
  }
  return 0;
}

Complex PlanarDomain::chart_value(Complex z) const { return series::evaluate(chart_.coeffs, z - z0_); }

Complex PlanarDomain::green_coordinate(Complex z) const {
  if (!simply_connected()) fail(ErrorKind::unsupported, "green coordinate needs a simply connected domain");
  return mobius(inverse_map(z), zeta0_);
}

Complex PlanarDomain::from_green_coordinate(Complex m) const {
  if (!simply_connected()) fail(ErrorKind::unsupported, "green coordinate needs a simply connected domain");
  return forward_map(mobius_inverse(m, zeta0_));
}

Complex PlanarDomain::green_coordinate_derivative(Complex m) const {
  if (!simply_connected()) fail(ErrorKind::unsupported, "green coordinate needs a simply connected domain");
  const Complex denom = 1.0 + std::conj(zeta0_) * m;
  const Complex dzeta = (1.0 - std::norm(zeta0_)) / (denom * denom);
  if (kind_ == DomainKind::disc) return dzeta;
  return series::evaluate(series::derivative(map_), mobius_inverse(m, zeta0_)) * dzeta;
}

CSeries PlanarDomain::green_coordinate_series(Eigen::Index len) const {
  if (!simply_connected()) fail(ErrorKind::unsupported, "green coordinate needs a simply connected domain");
  // eta(delta): displacement of the preimage; m = eta / ((1-|zeta0|^2) - conj(zeta0) eta).
  CSeries eta = CSeries::Zero(len);
  if (kind_ == DomainKind::disc) {
    if (len > 1) eta[1] = 1.0;
  } else {
    eta = series::reversion(series::truncate(map_shifted_, len), len);
  }
  CSeries denom = -std::conj(zeta0_) * eta;
  denom[0] += 1.0 - std::norm(zeta0_);
  return series::multiply(eta, series::reciprocal(denom, len), len);
}

CSeries PlanarDomain::inverse_green_coordinate_series(Eigen::Index len) const {
  if (!simply_connected()) fail(ErrorKind::unsupported, "green coordinate needs a simply connected domain");
  // eta(m) = zeta(m) - zeta0 = m (1 - |zeta0|^2) / (1 + conj(zeta0) m)
  CSeries denom = CSeries::Zero(len);
  denom[0] = 1.0;
  if (len > 1) denom[1] = std::conj(zeta0_);
  CSeries numer = CSeries::Zero(len);
  if (len > 1) numer[1] = 1.0 - std::norm(zeta0_);
  const CSeries eta = series::multiply(numer, series::reciprocal(denom, len), len);
  if (kind_ == DomainKind::disc) return eta;
  return series::compose(series::truncate(map_shifted_, len), eta, len);
}

std::vector<Complex> PlanarDomain::boundary_samples(int n, Real inset) const {
  std::vector<Complex> out;
  out.reserve(kind_ == DomainKind::annulus ? 2 * n : n);
  for (int j = 0; j < n; ++j) {
    const Complex e = std::polar(1.0, 2.0 * kPi * j / n);
    switch (kind_) {
      case DomainKind::disc: out.push_back((1.0 - inset) * e); break;
      case DomainKind::conformal: {
        const Real speed = std::abs(series::evaluate(series::derivative(map_), e));
        out.push_back(forward_map((1.0 - inset / speed) * e));
        break;
      }
      case DomainKind::annulus:
        out.push_back((1.0 - inset) * e);
        out.push_back((q_ + inset) * e);
        break;
    }
  }
  return out;
}

Real PlanarDomain::boundary_distance() const {
  switch (kind_) {
    case DomainKind::disc: return 1.0 - std::abs(z0_);
    case DomainKind::conformal:
      return 0.25 * std::abs(map_shifted_[1]) * (1.0 - std::norm(zeta0_));
    case DomainKind::annulus: return std::min(1.0 - std::abs(z0_), std::abs(z0_) - q_);
  }
  return 0;
}

CapacityResult log_capacity(const PlanarDomain& domain) {
  const CSeries& b = domain.chart().coeffs;
  CSeries quotient = b.tail(b.size() - 1);  // w(z)/(z - z0)
  auto limitand = [&](Real r) {
    return domain.green_regular(Complex(r, 0)) - std::log(std::abs(series::evaluate(quotient, Complex(r, 0))));
  };
  CapacityResult out;
  out.limit = richardson_limit(limitand, 0.5 * domain.boundary_distance());
  if (!out.limit.converged)
    fail(ErrorKind::numerical, "log_capacity: Richardson extrapolation did not converge (spread " +
                                   std::to_string(out.limit.spread) + ")");
  out.value = std::exp(out.limit.value);
  out.chart = domain.chart().describe();
  return out;
}

}  // namespace minl2
