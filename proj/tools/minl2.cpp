// minl2: sampled minimal L2 extension curves, jet and kernel verdicts.

#include "minl2/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

using namespace minl2;

namespace {

enum Exit { kPass = 0, kVerdict = 2, kNumerical = 3, kConfig = 4 };

struct Flags {
  std::string config;
  std::string out;
  std::optional<Real> tol;
  std::optional<int> grid;
  std::optional<int> max_degree;
  std::optional<int> threads;
};

ExperimentConfig load(const Flags& f) {
  ExperimentConfig cfg = load_config(f.config);
  if (!f.out.empty()) cfg.out_dir = f.out;
  if (f.grid) cfg.grid_points = *f.grid;
  if (f.max_degree) cfg.solver.max_degree = *f.max_degree;
  if (f.threads) cfg.threads = *f.threads;
  cfg.validate();
  return cfg;
}

// G(t) in closed form by one radial moment; exact when the monomial jet is
// centered at a radial marked point of the disc.
std::optional<Real> radial_oracle(const ExperimentConfig& cfg, Real t) {
  const ExtensionProblem& p = cfg.problem;
  if (p.domain.kind() != DomainKind::disc || p.domain.marked_point() != Complex(0) ||
      p.domain.chart().kind != ChartKind::translation || !p.weights.radial(p.domain) ||
      p.jet.target.size() == 0 || p.jet.target.tail(p.jet.target.size() - 1).norm() != 0)
    return std::nullopt;
  return moment_radial(p.weights.k, p.weights, p.gain, t, p.domain);
}

Json curve_oracle(const ExperimentConfig& cfg, const GCurve& curve) {
  Json worst = nullptr;
  if (!radial_oracle(cfg, curve.t.front())) return worst;
  Real err = 0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const Real ref = *radial_oracle(cfg, curve.t[i]);
    err = std::max(err, std::abs(curve.g[i] - ref) / ref);
  }
  return Json{{"kind", "radial moment"}, {"max_rel_error", err}};
}

void numerical_guard(const GCurve& curve) {
  for (std::size_t i = 0; i < curve.size(); ++i)
    if (!curve.errors[i].empty())
      fail(ErrorKind::numerical, "G(" + std::to_string(curve.t[i]) + ") failed: " + curve.errors[i]);
}

int emit(const ExperimentConfig& cfg, const std::string& command, Json result, bool passed) {
  Json doc{{"command", command}, {"passed", passed}, {"config", describe_config(cfg)}, {"result", std::move(result)}};
  const std::string stem = cfg.name + "_" + command;
  const std::string path = write_artifact(cfg.out_dir, stem + ".json", dump(doc));
  std::printf("%s %s\n", passed ? "PASS" : "FAIL", path.c_str());
  return passed ? kPass : kVerdict;
}

GCurve curve_for(const ExperimentConfig& cfg) {
  GCurve curve = sample_g_curve(cfg.problem, cfg.resolved_grid(), cfg.solver, cfg.threads);
  numerical_guard(curve);
  write_artifact(cfg.out_dir, cfg.name + "_gcurve.csv", curve_csv(curve));
  return curve;
}

int run_gcurve(const Flags& f) {
  ExperimentConfig cfg = load(f);
  if (f.tol) cfg.solver.degree_tol = *f.tol;
  const GCurve curve = curve_for(cfg);
  bool converged = true;
  for (bool c : curve.converged) converged = converged && c;
  Json result{{"points", to_json(curve)}, {"oracle", curve_oracle(cfg, curve)}, {"all_converged", converged}};
  return emit(cfg, "gcurve", result, true);
}

int run_concavity(const Flags& f) {
  const ExperimentConfig cfg = load(f);
  const Real tol = f.tol.value_or(cfg.tol.concavity);
  const GCurve curve = curve_for(cfg);
  const ConcavityVerdict cv = check_concavity(curve, tol);
  const DerivativeVerdict dv = check_derivative_lemma(curve, cfg.tol.derivative);
  Json result{{"concavity", to_json(cv)}, {"derivative_quotients", to_json(dv)}};
  bool passed = cv.concave && cv.monotone && dv.passed;
  if (cfg.problem.gain.is_constant() && cfg.problem.domain.simply_connected()) {
    const TailCheck tc = check_tail(cfg.problem, curve.g.front(), 20.0, cfg.tol.tail, cfg.solver);
    result["tail"] = to_json(tc);
    passed = passed && tc.passed;
  }
  result["oracle"] = curve_oracle(cfg, curve);
  result["points"] = to_json(curve);
  return emit(cfg, "verify_concavity", result, passed);
}

int run_linear(const Flags& f) {
  ExperimentConfig cfg = load(f);
  LinearOptions lo;
  lo.tol = f.tol.value_or(cfg.tol.linear);
  const GCurve curve = curve_for(cfg);
  const ConcavityVerdict cv = check_concavity(curve, cfg.tol.concavity, 1e-7);
  Json result{{"concavity", to_json(cv)}, {"oracle", curve_oracle(cfg, curve)}};
  bool passed = cv.linear;
  if (cv.linear) {
    const LinearReport lr = verify_linear_consequences(cfg.problem, curve, lo, cfg.solver);
    result["consequences"] = to_json(lr);
    passed = lr.passed;
  } else {
    result["consequences"] = nullptr;
  }
  return emit(cfg, "verify_linear", result, passed);
}

int run_jets(const Flags& f) {
  ExperimentConfig cfg = load(f);
  const Real tol = f.tol.value_or(cfg.tol.jets);
  const JetEqualityReport r = verify_jet_equality(cfg.problem, tol, cfg.solver);
  Json result = to_json(r);
  const Real t0 = cfg.problem.gain.lower_endpoint();
  if (const auto ref = radial_oracle(cfg, t0)) result["oracle"] = Json{{"kind", "radial moment"}, {"G0", *ref}};
  const bool passed = r.consistent && r.verdict != Verdict::undetermined;
  return emit(cfg, "verify_jets", result, passed);
}

int run_suita(const Flags& f) {
  ExperimentConfig cfg = load(f);
  const Real tol = f.tol.value_or(cfg.tol.suita);
  const KernelSpec& ks = cfg.kernel;
  const SuitaReport sr = suita_k_check(cfg.problem.domain, ks.h, ks.a1, ks.k, tol, cfg.solver);
  const PowerReport pr = power_corollary_check(cfg.problem.domain, ks.h, ks.a1, ks.k, ks.n,
                                               f.tol.value_or(cfg.tol.power), cfg.solver);
  Json result{{"suita", to_json(sr)}, {"power", to_json(pr)}};
  const bool passed = sr.consistent && sr.verdict != Verdict::undetermined && pr.passed;
  return emit(cfg, "verify_suita", result, passed);
}

int run_aux(const Flags& f) {
  ExperimentConfig cfg = load(f);
  const Real tol = f.tol.value_or(cfg.tol.aux);
  if (cfg.aux.S < cfg.problem.gain.lower_endpoint())
    fail(ErrorKind::config, "aux.S lies below the gain's lower endpoint");
  const AuxSuiteReport r = aux_suite(cfg.aux, {{cfg.problem.gain.describe(), as_function(cfg.problem.gain)}}, tol);
  return emit(cfg, "verify_aux", to_json(r), r.passed);
}

int run_kernel(const Flags& f) {
  ExperimentConfig cfg = load(f);
  const KernelSpec& ks = cfg.kernel;
  const KernelValue kv = bergman_kernel_k(cfg.problem.domain, ks.h, ks.k, cfg.solver);
  Json result{{"k", ks.k}, {"h", ks.h.describe()}, {"kernel", kv.value}, {"solution", to_json(kv.solution)}};
  return emit(cfg, "kernel", result, kv.solution.converged);
}

int run_capacity(const Flags& f) {
  ExperimentConfig cfg = load(f);
  const CapacityResult c = log_capacity(cfg.problem.domain);
  return emit(cfg, "capacity", to_json(c), c.limit.converged);
}

int report_error(const Error& e, const Flags& f) {
  const int code = e.kind() == ErrorKind::numerical ? kNumerical : kConfig;
  const std::string text = dump(error_record(e));
  std::cerr << text;
  if (!f.out.empty()) {
    try {
      write_artifact(f.out, "error.json", text);
    } catch (const Error&) {
    }
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal L2 extension curves and jet verdicts"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags flags;
  app.add_option("--config", flags.config, "Experiment file")->required()->check(CLI::ExistingFile);
  app.add_option("--out", flags.out, "Output directory (overrides [output] dir)");
  app.add_option("--tol", flags.tol, "Tolerance of the requested verdict");
  app.add_option("--grid", flags.grid, "Number of t-grid points")->check(CLI::PositiveNumber);
  app.add_option("--max-degree", flags.max_degree, "Largest Galerkin degree")->check(CLI::PositiveNumber);
  app.add_option("--threads", flags.threads, "Worker threads for the t-grid")->check(CLI::PositiveNumber);

  int status = kPass;
  auto guarded = [&](int (*fn)(const Flags&)) {
    return [&, fn] {
      try {
        status = fn(flags);
      } catch (const Error& e) {
        status = report_error(e, flags);
      }
    };
  };

  app.add_subcommand("gcurve", "Sample G on the t-grid and write the CSV curve")->callback(guarded(run_gcurve));
  auto* verify = app.add_subcommand("verify", "Run a verdict");
  verify->require_subcommand(1);
  verify->fallthrough();
  verify->add_subcommand("concavity", "Concavity of G in r and derivative quotients")->callback(guarded(run_concavity));
  verify->add_subcommand("linear", "Linearity and its three consequences")->callback(guarded(run_linear));
  verify->add_subcommand("jets", "Jet bound equality characterization")->callback(guarded(run_jets));
  verify->add_subcommand("suita", "k-jet Suita inequality and the power identity")->callback(guarded(run_suita));
  verify->add_subcommand("aux", "Cutoff, mollifier and ODE property suite")->callback(guarded(run_aux));
  app.add_subcommand("kernel", "Weighted k-jet Bergman kernel at the marked point")->callback(guarded(run_kernel));
  app.add_subcommand("capacity", "Logarithmic capacity at the marked point")->callback(guarded(run_capacity));

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    if (rc == 0) return kPass;
    std::cerr << dump(Json{{"error", {{"kind", "usage"}, {"message", e.what()}}}});
    return kConfig;
  }
  return status;
}
