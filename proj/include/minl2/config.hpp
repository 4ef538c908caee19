#pragma once

// Experiment configuration: a small INI reader ("[section]" headers and
// "key = value" lines, '#' comments) and the typed experiment description
// built from it.

#include "minl2/auxfns.hpp"
#include "minl2/concavity.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace minl2 {

class IniFile {
 public:
  static IniFile parse(const std::string& text, const std::string& origin = "<string>");
  static IniFile load(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  bool has_section(const std::string& section) const;
  std::optional<std::string> get(const std::string& section, const std::string& key) const;

  std::string string_or(const std::string& section, const std::string& key, const std::string& fallback) const;
  Real real_or(const std::string& section, const std::string& key, Real fallback) const;
  int int_or(const std::string& section, const std::string& key, int fallback) const;
  bool bool_or(const std::string& section, const std::string& key, bool fallback) const;
  Complex complex_or(const std::string& section, const std::string& key, Complex fallback) const;
  std::vector<Real> reals(const std::string& section, const std::string& key) const;

  /// Keys present in a section but never read; used to reject typos.
  std::vector<std::string> unused() const;

 private:
  std::map<std::string, std::map<std::string, std::string>> data_;
  mutable std::map<std::string, std::map<std::string, bool>> read_;
  std::string origin_;
};

/// Parsing helpers shared with the CLI overrides.
Real parse_real(const std::string& text, const std::string& what);
int parse_int(const std::string& text, const std::string& what);
Complex parse_complex(const std::string& text, const std::string& what);

/// "green 2; quadratic 1 0 0; linear 2 0" -> Potential.
Potential parse_potential(const std::string& text);

struct ToleranceSet {
  Real concavity = 1e-6;
  Real linear = 1e-6;
  Real jets = -1;  // domain default when negative
  Real suita = -1;
  Real power = 1e-5;
  Real derivative = 1e-8;
  Real tail = 1e-6;
  Real aux = 1e-5;
};

struct KernelSpec {
  Potential h;
  Real a1 = 0;
  int k = 0;
  int n = 2;  // exponent of the power identity
};

struct ExperimentConfig {
  std::string name = "experiment";
  std::string domain_label = "disc";
  ExtensionProblem problem{PlanarDomain::disc(0), {}, {}, JetConstraint::monomial(0)};
  SolverOptions solver;
  std::vector<Real> t_grid;  // empty: default grid from the gain
  int grid_points = 33;
  ToleranceSet tol;
  KernelSpec kernel;
  AuxProfile aux;
  int threads = 1;
  std::string out_dir = ".";

  /// Cross-field checks; throws config errors.
  void validate() const;
  std::vector<Real> resolved_grid() const;
};

ExperimentConfig config_from_ini(const IniFile& ini);
ExperimentConfig load_config(const std::string& path);

}  // namespace minl2
