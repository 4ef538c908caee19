#pragma once

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace minl2 {

/// Gauss-Legendre rule on [-1, 1].
template <typename Scalar = double>
struct GaussLegendre {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> nodes;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;

  explicit GaussLegendre(int n) : nodes(n), weights(n) {
    if (n < 1) throw std::invalid_argument("GaussLegendre: need at least one node");
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
      // Tricomi initial guess, then Newton on P_n.
      Scalar x = std::cos(std::numbers::pi_v<Scalar> * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
      Scalar dp = 0;
      for (int iter = 0; iter < 100; ++iter) {
        Scalar p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const Scalar p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        if (n == 1) p0 = 1;
        dp = n * (x * p1 - p0) / (x * x - 1);
        const Scalar dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 4 * std::numeric_limits<Scalar>::epsilon()) break;
      }
      {
        Scalar p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const Scalar p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        if (n == 1) p0 = 1;
        dp = n * (x * p1 - p0) / (x * x - 1);
      }
      nodes[i] = -x;
      nodes[n - 1 - i] = x;
      const Scalar w = 2 / ((1 - x * x) * dp * dp);
      weights[i] = w;
      weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) nodes[n / 2] = 0;
  }

  int size() const { return int(nodes.size()); }

  /// Integrate f over [a, b].
  template <typename F>
  auto integrate(F&& f, Scalar a, Scalar b) const {
    const Scalar mid = (a + b) / 2, half = (b - a) / 2;
    using R = decltype(f(mid));
    R acc = R(0);
    for (int i = 0; i < size(); ++i) acc += weights[i] * f(mid + half * nodes[i]);
    return acc * half;
  }
};

}  // namespace minl2
