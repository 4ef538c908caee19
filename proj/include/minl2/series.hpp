#pragma once

// Truncated power series arithmetic. A series is a dense coefficient vector
// c_0 + c_1 x + ... + c_{n-1} x^{n-1}; all operations truncate to a requested
// length and never read past the end of their operands.

#include <Eigen/Core>

#include <algorithm>
#include <complex>
#include <stdexcept>

namespace minl2::series {

template <typename Scalar>
using Series = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
Series<Scalar> truncate(const Series<Scalar>& a, Eigen::Index len) {
  Series<Scalar> out = Series<Scalar>::Zero(len);
  const Eigen::Index n = std::min(len, a.size());
  out.head(n) = a.head(n);
  return out;
}

template <typename Scalar>
Series<Scalar> multiply(const Series<Scalar>& a, const Series<Scalar>& b, Eigen::Index len) {
  Series<Scalar> out = Series<Scalar>::Zero(len);
  for (Eigen::Index i = 0; i < std::min(len, a.size()); ++i) {
    if (a[i] == Scalar(0)) continue;
    const Eigen::Index m = std::min(len - i, b.size());
    out.segment(i, m) += a[i] * b.head(m);
  }
  return out;
}

template <typename Scalar>
Series<Scalar> derivative(const Series<Scalar>& a) {
  if (a.size() <= 1) return Series<Scalar>::Zero(1);
  Series<Scalar> out(a.size() - 1);
  for (Eigen::Index i = 1; i < a.size(); ++i) out[i - 1] = Scalar(double(i)) * a[i];
  return out;
}

/// Antiderivative with zero constant term.
template <typename Scalar>
Series<Scalar> integral(const Series<Scalar>& a, Eigen::Index len) {
  Series<Scalar> out = Series<Scalar>::Zero(len);
  for (Eigen::Index i = 0; i + 1 < len && i < a.size(); ++i) out[i + 1] = a[i] / Scalar(double(i + 1));
  return out;
}

template <typename Scalar, typename Arg>
auto evaluate(const Series<Scalar>& a, const Arg& x) {
  using R = decltype(Scalar() * x);
  R acc = R(0);
  for (Eigen::Index i = a.size(); i-- > 0;) acc = acc * x + a[i];
  return acc;
}

/// a(b(x)) for b(0) = 0.
template <typename Scalar>
Series<Scalar> compose(const Series<Scalar>& a, const Series<Scalar>& b, Eigen::Index len) {
  if (b.size() > 0 && std::abs(b[0]) != 0.0)
    throw std::invalid_argument("series::compose: inner series must vanish at 0");
  Series<Scalar> out = Series<Scalar>::Zero(len);
  Series<Scalar> power = Series<Scalar>::Zero(len);
  power[0] = Scalar(1);
  for (Eigen::Index i = 0; i < std::min(len, a.size()); ++i) {
    out += a[i] * power;
    power = multiply(power, b, len);
  }
  return out;
}

/// 1 / a for a(0) != 0.
template <typename Scalar>
Series<Scalar> reciprocal(const Series<Scalar>& a, Eigen::Index len) {
  if (a.size() == 0 || std::abs(a[0]) == 0.0)
    throw std::invalid_argument("series::reciprocal: zero constant term");
  Series<Scalar> out = Series<Scalar>::Zero(len);
  out[0] = Scalar(1) / a[0];
  for (Eigen::Index n = 1; n < len; ++n) {
    Scalar acc(0);
    for (Eigen::Index i = 1; i <= n && i < a.size(); ++i) acc += a[i] * out[n - i];
    out[n] = -acc / a[0];
  }
  return out;
}

/// exp(a) via the recurrence n e_n = sum_k k a_k e_{n-k}.
template <typename Scalar>
Series<Scalar> exp(const Series<Scalar>& a, Eigen::Index len) {
  using std::exp;
  Series<Scalar> out = Series<Scalar>::Zero(len);
  out[0] = exp(a.size() > 0 ? a[0] : Scalar(0));
  for (Eigen::Index n = 1; n < len; ++n) {
    Scalar acc(0);
    for (Eigen::Index k = 1; k <= n && k < a.size(); ++k) acc += Scalar(double(k)) * a[k] * out[n - k];
    out[n] = acc / Scalar(double(n));
  }
  return out;
}

/// Principal log(a) for a(0) != 0.
template <typename Scalar>
Series<Scalar> log(const Series<Scalar>& a, Eigen::Index len) {
  using std::log;
  Series<Scalar> out = integral(multiply(derivative(a), reciprocal(a, len), len), len);
  out[0] = log(a[0]);
  return out;
}

template <typename Scalar>
Series<Scalar> power(const Series<Scalar>& a, int n, Eigen::Index len) {
  Series<Scalar> out = Series<Scalar>::Zero(len);
  out[0] = Scalar(1);
  for (int i = 0; i < n; ++i) out = multiply(out, a, len);
  return out;
}

/// Compositional inverse of b with b(0) = 0, b'(0) != 0 (Lagrange by Newton iteration).
template <typename Scalar>
Series<Scalar> reversion(const Series<Scalar>& b, Eigen::Index len) {
  if (b.size() < 2 || std::abs(b[0]) != 0.0 || std::abs(b[1]) == 0.0)
    throw std::invalid_argument("series::reversion: need b(0)=0 and b'(0)!=0");
  // Solve b(g(x)) = x order by order.
  Series<Scalar> g = Series<Scalar>::Zero(len);
  if (len > 1) g[1] = Scalar(1) / b[1];
  for (Eigen::Index n = 2; n < len; ++n) {
    const Series<Scalar> bg = compose(b, g, n + 1);
    g[n] = -bg[n] / b[1];
  }
  return g;
}

/// Re-expand the polynomial a(x) about x = x0: returns coefficients of a(x0 + y) in y.
template <typename Scalar>
Series<Scalar> shift(const Series<Scalar>& a, Scalar x0) {
  Series<Scalar> out = a;
  const Eigen::Index n = a.size();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = n - 2; j >= i; --j) out[j] += x0 * out[j + 1];
  return out;
}

}  // namespace minl2::series
