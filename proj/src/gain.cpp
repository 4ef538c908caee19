#include "minl2/gain.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace minl2 {

namespace {

constexpr Real kInf = std::numeric_limits<Real>::infinity();

// int_a^b A e^{-k s} ds, b may be +inf.
Real exp_piece(Real amplitude, Real k, Real a, Real b) {
  if (b <= a) return 0.0;
  if (std::isinf(b)) return k > 0 ? amplitude * std::exp(-k * a) / k : kInf;
  if (k == 0.0) return amplitude * (b - a);
  return amplitude * std::exp(-k * a) * (-std::expm1(-k * (b - a))) / k;
}

}  // namespace

GainFunction GainFunction::constant(Real value, Real lower) {
  if (!(value > 0)) fail(ErrorKind::argument, "constant gain must be positive");
  GainFunction g;
  g.family_ = GainFamily::constant;
  g.value_ = value;
  g.lower_ = lower;
  return g;
}

GainFunction GainFunction::exponential(Real beta, Real lower) {
  GainFunction g;
  g.family_ = GainFamily::exponential;
  g.beta_ = beta;
  g.lower_ = lower;
  return g;
}

GainFunction GainFunction::rational(Real p, Real lower) {
  if (lower <= -1.0) fail(ErrorKind::argument, "rational gain needs T > -1");
  GainFunction g;
  g.family_ = GainFamily::rational;
  g.power_ = p;
  g.lower_ = lower;
  return g;
}

GainFunction GainFunction::steps(std::vector<Real> breaks, std::vector<Real> values, Real lower) {
  if (values.size() != breaks.size() + 1) fail(ErrorKind::argument, "step gain needs one more value than breaks");
  if (!std::is_sorted(breaks.begin(), breaks.end()) ||
      (!breaks.empty() && breaks.front() <= lower))
    fail(ErrorKind::argument, "step gain breaks must be increasing and above T");
  for (Real v : values)
    if (!(v > 0)) fail(ErrorKind::argument, "step gain values must be positive");
  GainFunction g;
  g.family_ = GainFamily::steps;
  g.breaks_ = std::move(breaks);
  g.values_ = std::move(values);
  g.lower_ = lower;
  return g;
}

GainFunction GainFunction::reparameterized(Real scale, Real rate) const {
  if (!(scale > 0)) fail(ErrorKind::argument, "reparameterization scale must be positive");
  GainFunction g = *this;
  // c(scale' * (scale * t)) e^{-rate' scale t} e^{-rate t}
  g.rate_ = rate_ * scale + rate;
  g.scale_ = scale_ * scale;
  return g;
}

Real GainFunction::base(Real t) const {
  switch (family_) {
    case GainFamily::constant: return value_;
    case GainFamily::exponential: return std::exp(-beta_ * t);
    case GainFamily::rational: return std::pow(1.0 + t, -power_);
    case GainFamily::steps: {
      const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
      return values_[std::size_t(it - breaks_.begin())];
    }
  }
  return 0;
}

Real GainFunction::operator()(Real t) const { return base(scale_ * t) * std::exp(-rate_ * t); }

std::vector<Real> GainFunction::breakpoints() const {
  std::vector<Real> out;
  for (Real b : breaks_) out.push_back(b / scale_);
  return out;
}

Real GainFunction::decay() const {
  switch (family_) {
    case GainFamily::exponential: return beta_ * scale_ + rate_ + 1.0;
    default: return rate_ + 1.0;
  }
}

bool GainFunction::integrable() const { return decay() > 0.0; }

Real GainFunction::mass(Real a, Real b) const {
  if (b <= a) return 0.0;
  switch (family_) {
    case GainFamily::constant: return exp_piece(value_, decay(), a, b);
    case GainFamily::exponential: return exp_piece(1.0, decay(), a, b);
    case GainFamily::steps: {
      Real acc = 0;
      Real lo = a;
      const std::vector<Real> bp = breakpoints();
      for (std::size_t i = 0; i <= bp.size(); ++i) {
        const Real hi = i < bp.size() ? bp[i] : kInf;
        const Real x0 = std::max(lo, a), x1 = std::min(hi, b);
        if (x1 > x0) acc += exp_piece(values_[i], decay(), x0, x1);
        lo = hi;
        if (lo >= b) break;
      }
      return acc;
    }
    case GainFamily::rational: {
      if (std::isinf(b) && !integrable()) return kInf;
      auto f = [this](Real s) { return (*this)(s) * std::exp(-s); };
      // past a + 45 / decay the factor e^{-decay s} leaves less than e^{-45} of the mass
      const Real stop = std::min(b, a + 45.0 / decay());
      Real err = 0;
      return boost::math::quadrature::gauss_kronrod<Real, 61>::integrate(f, a, stop, 12, 1e-14, &err);
    }
  }
  return 0;
}

Real GainFunction::total_mass() const { return mass(lower_endpoint(), kInf); }

Real GainFunction::tail_cutoff(Real rel) const {
  if (!integrable()) fail(ErrorKind::unsupported, "tail cutoff of a non-integrable gain");
  const Real total = total_mass();
  Real t = lower_endpoint() + 1.0;
  while (mass(t, kInf) > rel * total) t = lower_endpoint() + 2.0 * (t - lower_endpoint());
  return t;
}

std::string GainFunction::describe() const {
  std::ostringstream os;
  switch (family_) {
    case GainFamily::constant: os << "constant(" << value_ << ")"; break;
    case GainFamily::exponential: os << "exponential(beta=" << beta_ << ")"; break;
    case GainFamily::rational: os << "rational(p=" << power_ << ")"; break;
    case GainFamily::steps: os << "steps(" << values_.size() << " pieces)"; break;
  }
  if (scale_ != 1.0 || rate_ != 0.0) os << " reparameterized(scale=" << scale_ << ", rate=" << rate_ << ")";
  os << " on (" << lower_endpoint() << ", inf)";
  return os.str();
}

GainValidation validate_gain(const GainFunction& c) {
  GainValidation report;
  const Real T = c.lower_endpoint();
  const int n = 1024;
  report.grid_points = n;
  report.integrable = c.integrable();
  report.total_mass = report.integrable ? c.total_mass() : std::numeric_limits<Real>::quiet_NaN();
  Real prev_t = 0, prev = 0;
  for (int i = 0; i < n; ++i) {
    const Real t = T + 1e-6 * std::pow(4e7, Real(i) / (n - 1));
    const Real ct = c(t);
    if (!(ct > 0)) {
      report.violation = std::make_pair(t, t);
      report.message = "gain is not positive at t=" + std::to_string(t);
      return report;
    }
    const Real v = ct * std::exp(-t);
    if (i > 0 && v - prev > 1e-12 * prev) {
      report.violation = std::make_pair(prev_t, t);
      std::ostringstream os;
      os << "c(t)e^{-t} increases between t=" << prev_t << " and t=" << t;
      report.message = os.str();
      return report;
    }
    prev_t = t;
    prev = v;
  }
  report.passed = true;
  report.message = report.integrable ? "ok" : "ok (non-integrable tail)";
  return report;
}

Real h_reparam(const GainFunction& c, Real T1, Real t) {
  if (T1 < c.lower_endpoint()) fail(ErrorKind::argument, "h: anchor below the gain's lower endpoint");
  if (t < T1) fail(ErrorKind::argument, "h: t must not be below the anchor T1");
  return c.mass(T1, t);
}

Real hhat_reparam(const GainFunction& c, Real t) {
  if (!c.integrable()) fail(ErrorKind::unsupported, "hhat needs an integrable gain");
  if (t < c.lower_endpoint()) fail(ErrorKind::argument, "hhat: t below the gain's lower endpoint");
  return c.mass(t, kInf);
}

Real hhat_inverse(const GainFunction& c, Real r, Real tol) {
  const Real total = c.total_mass();
  if (!(r > 0 && r <= total)) fail(ErrorKind::argument, "hhat_inverse: r outside (0, hhat(T)]");
  Real lo = c.lower_endpoint(), hi = lo + 1.0;
  while (hhat_reparam(c, hi) > r) hi = lo + 2.0 * (hi - lo);
  while (hi - lo > tol * std::max(1.0, std::abs(hi))) {
    const Real mid = 0.5 * (lo + hi);
    if (hhat_reparam(c, mid) > r)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace minl2
