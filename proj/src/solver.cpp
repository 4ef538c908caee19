#include "minl2/solver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>
#include <limits>

namespace minl2 {

namespace {

// z - z0 as a series in the chart variable w.
CSeries displacement_in_chart(const PlanarDomain& domain, Eigen::Index len) {
  return series::reversion(series::truncate(domain.chart().coeffs, len), len);
}

// Column j: Taylor coefficients in w of the j-th basis form divided by dw.
CMatrix basis_series(const PlanarDomain& domain, const GalerkinSpace& space, Eigen::Index rows) {
  const Eigen::Index len = rows + 1;
  const CSeries delta = displacement_in_chart(domain, len);
  const CSeries ddelta = series::truncate(series::derivative(delta), len);
  if (domain.simply_connected()) {
    const int cols = space.degree + 1;
    CMatrix out = CMatrix::Zero(len, cols);
    const CSeries m = series::compose(domain.green_coordinate_series(len), delta, len);
    const CSeries dm = series::truncate(series::derivative(m), len);
    CSeries mj = CSeries::Zero(len);
    mj[0] = 1.0;
    CSeries ms = m / space.scale;
    for (int j = 0; j < cols; ++j) {
      out.col(j) = series::multiply(mj, dm, len);
      mj = series::multiply(mj, ms, len);
    }
    return out.topRows(rows);
  }
  const int n = space.degree;
  CMatrix out = CMatrix::Zero(len, 2 * n + 1);
  const Complex z0 = domain.marked_point();
  CSeries pj = CSeries::Zero(len);
  pj[0] = 1.0;
  CSeries p = delta / space.scale;
  p[0] += (z0 - space.center) / space.scale;
  for (int j = 0; j <= n; ++j) {
    out.col(j) = series::multiply(pj, ddelta, len);
    pj = series::multiply(pj, p, len);
  }
  // s / z = (s / z0) / (1 + delta / z0)
  CSeries one_plus = delta / z0;
  one_plus[0] += 1.0;
  const CSeries inv = series::reciprocal(one_plus, len) * (space.inner / z0);
  CSeries qj = inv;
  for (int j = 1; j <= n; ++j) {
    out.col(n + j) = series::multiply(qj, ddelta, len);
    qj = series::multiply(qj, inv, len);
  }
  return out.topRows(rows);
}

void check_definite(GalerkinSpace& space) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(space.gram, Eigen::EigenvaluesOnly);
  space.min_eig = eig.eigenvalues().minCoeff();
  space.max_eig = eig.eigenvalues().maxCoeff();
}

}  // namespace

JetConstraint JetConstraint::monomial(int k, Complex center) {
  if (k < 0) fail(ErrorKind::argument, "jet order must be nonnegative");
  JetConstraint j;
  j.center = center;
  j.k = k;
  j.target = CVector::Zero(k + 1);
  j.target[k] = 1.0;
  return j;
}

JetConstraint JetConstraint::zero(int k, Complex center) {
  JetConstraint j = monomial(k, center);
  j.target.setZero();
  return j;
}

GalerkinSpace assemble(const PlanarDomain& domain, const WeightPair& wp, const GainFunction& c, Real t, int degree,
                       const IntegrationPlan& plan) {
  if (degree < wp.k) fail(ErrorKind::argument, "basis degree must be at least the jet order");
  const SublevelGrid grid = sublevel_grid(domain, wp, c, t, plan);
  GalerkinSpace space;
  space.degree = degree;
  space.k = wp.k;
  space.t = t;
  space.radial = grid.radial;
  space.star_shaped = grid.star_shaped;
  space.nodes = grid.nodes.size();
  space.scale = grid.extent > 0 ? grid.extent : 1.0;
  const Eigen::Index rows = Eigen::Index(grid.nodes.size());

  if (domain.simply_connected()) {
    const int cols = degree + 1;
    if (grid.radial) {
      space.gram = CMatrix::Zero(cols, cols);
      for (const auto& n : grid.nodes) {
        const Real d = 2.0 * n.area * n.weight;
        const Real r2 = std::norm(n.m) / (space.scale * space.scale);
        Real p = 1.0;
        for (int j = 0; j < cols; ++j) {
          space.gram(j, j) += d * p;
          p *= r2;
        }
      }
    } else {
      CMatrix a(rows, cols);
      for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& n = grid.nodes[i];
        const Complex x = n.m / space.scale;
        Complex p = std::sqrt(2.0 * n.area * n.weight);
        for (int j = 0; j < cols; ++j) {
          a(i, j) = p;
          p *= x;
        }
      }
      space.gram = CMatrix::Zero(cols, cols);
      space.gram.selfadjointView<Eigen::Lower>().rankUpdate(a.adjoint());
      space.gram = space.gram.selfadjointView<Eigen::Lower>();
    }
    space.constraint = basis_series(domain, space, wp.k + 1);
    check_definite(space);
    space.rank = cols;
    return space;
  }

  // Annulus: sample the basis, orthonormalize by column-pivoted QR.
  space.inner = std::numeric_limits<Real>::infinity();
  Real xlo = 1, xhi = -1, ylo = 1, yhi = -1;
  for (const auto& n : grid.nodes) {
    space.inner = std::min(space.inner, std::abs(n.z));
    xlo = std::min(xlo, n.z.real());
    xhi = std::max(xhi, n.z.real());
    ylo = std::min(ylo, n.z.imag());
    yhi = std::max(yhi, n.z.imag());
  }
  space.center = Complex(0.5 * (xlo + xhi), 0.5 * (ylo + yhi));
  space.scale = 0;
  for (const auto& n : grid.nodes) space.scale = std::max(space.scale, std::abs(n.z - space.center));
  const int cols = 2 * degree + 1;
  CMatrix a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& n = grid.nodes[i];
    const Real d = std::sqrt(2.0 * n.area * n.weight);
    const Complex x = (n.z - space.center) / space.scale, y = space.inner / n.z;
    Complex p = d;
    for (int j = 0; j <= degree; ++j) {
      a(i, j) = p;
      p *= x;
    }
    p = d * y;
    for (int j = 1; j <= degree; ++j) {
      a(i, degree + j) = p;
      p *= y;
    }
  }
  Eigen::ColPivHouseholderQR<CMatrix> qr(a);
  qr.setThreshold(1e-12);
  const int rank = int(qr.rank());
  const CMatrix r = qr.matrixR().topLeftCorner(rank, rank).template triangularView<Eigen::Upper>();
  const CMatrix rinv = r.template triangularView<Eigen::Upper>().solve(CMatrix::Identity(rank, rank));
  CMatrix perm = CMatrix::Zero(cols, rank);
  const auto& indices = qr.colsPermutation().indices();
  for (int j = 0; j < rank; ++j) perm(indices[j], j) = 1.0;
  space.transform = perm * rinv;
  space.orthonormal = true;
  space.rank = rank;
  space.gram = CMatrix::Identity(rank, rank);
  space.min_eig = space.max_eig = 1.0;
  space.constraint = basis_series(domain, space, wp.k + 1) * space.transform;
  return space;
}

Real form_norm(const GalerkinSpace& space, const CVector& v) { return (v.adjoint() * space.gram * v)(0, 0).real(); }

MinimalSolution minimal_extension(const GalerkinSpace& space, const JetConstraint& jet) {
  if (jet.target.size() != space.k + 1) fail(ErrorKind::argument, "jet length does not match the jet order");
  if (!(space.min_eig > 1e-13 * space.max_eig))
    fail(ErrorKind::numerical, "Gram matrix is not numerically positive definite");
  MinimalSolution sol;
  sol.degree = space.degree;
  sol.condition = space.max_eig / space.min_eig;
  const int k1 = space.k + 1;
  const int n = int(space.gram.cols());
  if (!space.orthonormal) {
    // Coordinate-aligned constraints: eliminate the first k+1 coefficients.
    CVector v = CVector::Zero(n);
    const CMatrix cx = space.constraint.leftCols(k1);
    v.head(k1) = cx.triangularView<Eigen::Lower>().solve(jet.target);
    if (n > k1) {
      const Eigen::LLT<CMatrix> llt(space.gram.bottomRightCorner(n - k1, n - k1));
      if (llt.info() != Eigen::Success) fail(ErrorKind::numerical, "Cholesky factorization of the reduced Gram block failed");
      v.tail(n - k1) = -llt.solve(space.gram.bottomLeftCorner(n - k1, k1) * v.head(k1));
    }
    sol.coefficients = v;
  } else {
    // Least-norm solution of C y = a, Gamma = I.
    const Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(space.constraint);
    sol.coefficients = cod.solve(jet.target);
  }
  sol.value = std::max(0.0, form_norm(space, sol.coefficients));
  sol.constraint_residual = (space.constraint * sol.coefficients - jet.target).norm();
  sol.history.push_back({space.degree, sol.value});
  return sol;
}

MinimalSolution g_value(const ExtensionProblem& problem, Real t, const SolverOptions& options) {
  return g_value(problem, t, options, nullptr);
}

MinimalSolution g_value(const ExtensionProblem& problem, Real t, const SolverOptions& options, GalerkinSpace* out) {
  if (problem.jet.k != problem.weights.k) fail(ErrorKind::config, "jet order does not match the weight pair");
  int degree = std::max(options.initial_degree, problem.weights.k + 2);
  const int cap = std::max(options.max_degree, degree);
  MinimalSolution best;
  GalerkinSpace best_space;
  std::vector<std::pair<int, Real>> history;
  bool have = false;
  for (;;) {
    GalerkinSpace space = assemble(problem.domain, problem.weights, problem.gain, t, degree, options.plan);
    MinimalSolution sol;
    try {
      sol = minimal_extension(space, problem.jet);
    } catch (const Error& e) {
      if (!have || e.kind() != ErrorKind::numerical) throw;
      best.converged = false;  // conditioning limit reached before the tolerance
      break;
    }
    history.push_back({degree, sol.value});
    if (have) {
      const Real change = std::abs(sol.value - best.value);
      const bool done = change <= options.degree_tol * std::max(sol.value, std::numeric_limits<Real>::min());
      best = sol;
      best_space = std::move(space);
      if (done || sol.value == 0.0) {
        best.converged = true;
        break;
      }
    } else {
      best = sol;
      best_space = std::move(space);
      have = true;
      if (best.value == 0.0) break;
    }
    if (degree >= cap) {
      best.converged = false;
      break;
    }
    degree = std::min(2 * degree, cap);
  }
  best.history = history;
  if (out) *out = std::move(best_space);
  return best;
}

CVector constrained_trial(const GalerkinSpace& space, const JetConstraint& jet, const CVector& free_part) {
  const int n = int(space.gram.cols());
  const int k1 = space.k + 1;
  if (!space.orthonormal) {
    if (free_part.size() != n - k1) fail(ErrorKind::argument, "free part has the wrong length");
    CVector v(n);
    v.head(k1) = space.constraint.leftCols(k1).triangularView<Eigen::Lower>().solve(jet.target);
    v.tail(n - k1) = free_part;
    return v;
  }
  if (free_part.size() != n) fail(ErrorKind::argument, "free part has the wrong length");
  const Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(space.constraint);
  const CVector base = cod.solve(jet.target);
  const CVector proj = free_part - cod.solve(space.constraint * free_part);
  return base + proj;
}

PythagorasResidual pythagoras_check(const GalerkinSpace& space, const JetConstraint& jet,
                                    const MinimalSolution& solution, const CVector& trial) {
  const Real scale = std::max(1.0, jet.target.norm());
  if ((space.constraint * trial - jet.target).norm() > 1e-10 * scale)
    fail(ErrorKind::argument, "trial form violates the jet constraints");
  PythagorasResidual r;
  r.trial_norm = form_norm(space, trial);
  r.minimal_norm = form_norm(space, solution.coefficients);
  r.difference_norm = form_norm(space, trial - solution.coefficients);
  r.residual = std::abs(r.trial_norm - r.minimal_norm - r.difference_norm);
  return r;
}

CVector chart_coefficients(const PlanarDomain& domain, const GalerkinSpace& space, const CVector& v, int len) {
  const CMatrix basis = basis_series(domain, space, len);
  if (space.orthonormal) return basis * (space.transform * v);
  return basis * v;
}

CVector basis_from_chart(const PlanarDomain& domain, const GalerkinSpace& space, const CVector& f) {
  if (!domain.simply_connected()) fail(ErrorKind::unsupported, "basis_from_chart needs a simply connected domain");
  const Eigen::Index len = space.degree + 1;
  // w as a series in m, then g(m) = f(w(m)) w'(m).
  const CSeries w = series::compose(series::truncate(domain.chart().coeffs, len),
                                    domain.inverse_green_coordinate_series(len), len);
  const CSeries fw = series::compose(series::truncate(CSeries(f), len), w, len);
  const CSeries g = series::multiply(fw, series::truncate(series::derivative(w), len), len);
  CVector v(len);
  Real p = 1.0;
  for (Eigen::Index j = 0; j < len; ++j) {
    v[j] = g[j] * p;
    p *= space.scale;
  }
  return v;
}

Real sublevel_norm(const PlanarDomain& domain, const WeightPair& wp, const GainFunction& c, const GalerkinSpace& space,
                   const CVector& v, Real t, const IntegrationPlan& plan) {
  IntegrationPlan p = plan;
  p.mode = IntegrationPlan::Mode::polar;
  const SublevelGrid grid = sublevel_grid(domain, wp, c, t, p);
  const CVector coeffs = space.orthonormal ? CVector(space.transform * v) : v;
  Real acc = 0;
  for (const auto& n : grid.nodes) {
    Complex f = 0;
    if (domain.simply_connected()) {
      const Complex x = n.m / space.scale;
      for (Eigen::Index j = coeffs.size() - 1; j >= 0; --j) f = f * x + coeffs[j];
    } else {
      const int d = space.degree;
      const Complex x = (n.z - space.center) / space.scale, y = space.inner / n.z;
      for (int j = d; j >= 0; --j) f = f * x + coeffs[j];
      Complex g = 0;
      for (int j = d; j >= 1; --j) g = (g + coeffs[d + j]) * y;
      f += g;
    }
    acc += 2.0 * n.area * n.weight * std::norm(f);
  }
  return acc;
}

KernelValue bergman_kernel_k(const PlanarDomain& domain, const Potential& h, int k, const SolverOptions& options) {
  ExtensionProblem problem{domain, WeightPair{}, GainFunction{}, JetConstraint::monomial(k, domain.marked_point())};
  problem.weights.k = k;
  problem.weights.psi.add_green(2.0);
  problem.weights.phi = h.scaled(2.0);
  KernelValue out;
  out.solution = g_value(problem, 0.0, options);
  if (!(out.solution.value > 0)) fail(ErrorKind::numerical, "kernel: vanishing minimal norm");
  out.value = 2.0 / out.solution.value;
  return out;
}

}  // namespace minl2
