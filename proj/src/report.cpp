#include "minl2/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

namespace minl2 {

namespace {

Json num(Real v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json complex_json(Complex z) { return Json::array({num(z.real()), num(z.imag())}); }

Json index_or_null(const std::optional<std::size_t>& i) { return i ? Json(*i) : Json(nullptr); }

Json reals(const std::vector<Real>& v) {
  Json a = Json::array();
  for (Real x : v) a.push_back(num(x));
  return a;
}

}  // namespace

Json describe_config(const ExperimentConfig& cfg) {
  const PlanarDomain& d = cfg.problem.domain;
  Json domain{{"kind", cfg.domain_label}, {"z0", complex_json(d.marked_point())}, {"chart", d.chart().describe()}};
  if (d.kind() == DomainKind::annulus) domain["q"] = d.inner_radius();
  if (d.kind() == DomainKind::conformal) {
    Json coeffs = Json::array();
    for (Eigen::Index i = 0; i < d.map_coeffs().size(); ++i) coeffs.push_back(complex_json(d.map_coeffs()[i]));
    domain["map"] = coeffs;
  }
  const SolverOptions& so = cfg.solver;
  const ToleranceSet& t = cfg.tol;
  return Json{
      {"name", cfg.name},
      {"domain", domain},
      {"weights",
       {{"k", cfg.problem.weights.k},
        {"psi", cfg.problem.weights.psi.describe()},
        {"phi", cfg.problem.weights.phi.describe()}}},
      {"gain", cfg.problem.gain.describe()},
      {"jet", {{"k", cfg.problem.jet.k}, {"center", complex_json(cfg.problem.jet.center)}}},
      {"solver",
       {{"initial_degree", so.initial_degree},
        {"max_degree", so.max_degree},
        {"degree_tol", so.degree_tol},
        {"quadrature_tol", so.plan.tolerance},
        {"radial_nodes", so.plan.radial_nodes},
        {"angular_nodes", so.plan.angular_nodes}}},
      {"tolerances",
       {{"concavity", t.concavity},
        {"linear", t.linear},
        {"jets", num(t.jets)},
        {"suita", num(t.suita)},
        {"power", t.power},
        {"derivative", t.derivative},
        {"tail", t.tail},
        {"aux", t.aux}}},
  };
}

Json to_json(const GCurve& curve) {
  Json points = Json::array();
  for (std::size_t i = 0; i < curve.size(); ++i) {
    Json p{{"t", num(curve.t[i])},
           {"r", num(curve.r[i])},
           {"G", num(curve.g[i])},
           {"converged", bool(curve.converged[i])},
           {"basis_degree", curve.degree[i]}};
    if (!curve.errors[i].empty()) p["error"] = curve.errors[i];
    points.push_back(p);
  }
  return points;
}

Json to_json(const ConcavityVerdict& v) {
  return Json{{"concave", v.concave},
              {"linear", v.linear},
              {"strictly_concave_somewhere", v.strictly_concave_somewhere},
              {"monotone", v.monotone},
              {"tol", v.tol},
              {"worst", num(v.worst)},
              {"most_negative", num(v.most_negative)},
              {"first_violation", index_or_null(v.violation)},
              {"second_differences", reals(v.second_differences)}};
}

Json to_json(const DerivativeVerdict& v) {
  return Json{{"passed", v.passed},
              {"worst_margin", num(v.worst_margin)},
              {"strict_points", v.strict_points},
              {"spread", num(v.spread)},
              {"first_violation", index_or_null(v.violation)}};
}

Json to_json(const TailCheck& v) {
  return Json{{"t", v.t}, {"G", num(v.value)}, {"reference", num(v.reference)}, {"passed", v.passed}};
}

Json to_json(const LinearReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back(Json{{"name", c.name},
                          {"lhs", num(c.lhs)},
                          {"rhs", num(c.rhs)},
                          {"rel_error", num(c.rel_error)},
                          {"passed", c.passed}});
  return Json{{"passed", r.passed}, {"checks", checks}};
}

Json to_json(const JetEqualityReport& r) {
  return Json{{"verdict", to_string(r.verdict)},
              {"consistent", r.consistent},
              {"G0", num(r.g0)},
              {"bound", num(r.bound)},
              {"gap", num(r.gap)},
              {"tol", r.tol},
              {"alpha", num(r.alpha)},
              {"c_beta", num(r.cbeta)},
              {"chart", r.chart},
              {"original_lelong", num(r.original_lelong)},
              {"reduction_s", num(r.reduction_s)},
              {"flag_harmonic", r.flag_harmonic},
              {"flag_green", r.flag_green},
              {"basis_degree", r.degree},
              {"converged", r.converged},
              {"diagnostics", r.diagnostics}};
}

Json to_json(const SuitaReport& r) {
  return Json{{"verdict", to_string(r.verdict)},
              {"consistent", r.consistent},
              {"lhs", num(r.lhs)},
              {"rhs", num(r.rhs)},
              {"kernel", num(r.kernel)},
              {"alpha1", num(r.alpha1)},
              {"c_beta", num(r.cbeta)},
              {"chart", r.chart},
              {"gap", num(r.gap)},
              {"tol", r.tol},
              {"flag_harmonic", r.flag_harmonic},
              {"basis_degree", r.degree}};
}

Json to_json(const PowerReport& r) {
  return Json{{"n", r.n},
              {"order", r.order},
              {"lhs", num(r.lhs)},
              {"rhs", num(r.rhs)},
              {"kernel", num(r.kernel)},
              {"rel_error", num(r.rel_error)},
              {"tol", r.tol},
              {"passed", r.passed}};
}

Json to_json(const AuxSuiteReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back(Json{{"name", c.name}, {"value", num(c.value)}, {"limit", num(c.limit)}, {"passed", c.passed}});
  return Json{{"passed", r.passed}, {"checks", checks}};
}

Json to_json(const MinimalSolution& s) {
  Json history = Json::array();
  for (const auto& [n, g] : s.history) history.push_back(Json{{"degree", n}, {"G", num(g)}});
  return Json{{"G", num(s.value)},
              {"basis_degree", s.degree},
              {"converged", s.converged},
              {"condition", num(s.condition)},
              {"constraint_residual", num(s.constraint_residual)},
              {"history", history}};
}

Json to_json(const CapacityResult& c) {
  return Json{{"c_beta", num(c.value)},
              {"chart", c.chart},
              {"limit_spread", num(c.limit.spread)},
              {"limit_converged", c.limit.converged}};
}

Json error_record(const Error& e) { return Json{{"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}}; }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string write_artifact(const std::string& dir, const std::string& name, const std::string& text) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::config, "cannot create output directory '" + dir + "': " + ec.message());
  const fs::path path = fs::path(dir) / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::config, "cannot write '" + path.string() + "'");
  out << text;
  return path.string();
}

}  // namespace minl2
