#include "minl2/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace minl2 {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string lower(std::string s) {
  for (auto& ch : s) ch = char(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

}  // namespace

Real parse_real(const std::string& text, const std::string& what) {
  const std::string s = trim(text);
  Real v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    fail(ErrorKind::config, what + ": expected a number, got '" + text + "'");
  return v;
}

int parse_int(const std::string& text, const std::string& what) {
  const std::string s = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    fail(ErrorKind::config, what + ": expected an integer, got '" + text + "'");
  return v;
}

// "0.3" or "0.3, -0.1"
Complex parse_complex(const std::string& text, const std::string& what) {
  const auto parts = split(text, ',');
  if (parts.size() == 1) return {parse_real(parts[0], what), 0.0};
  if (parts.size() == 2) return {parse_real(parts[0], what), parse_real(parts[1], what)};
  fail(ErrorKind::config, what + ": expected 're' or 're, im', got '" + text + "'");
}

IniFile IniFile::parse(const std::string& text, const std::string& origin) {
  IniFile ini;
  ini.origin_ = origin;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') fail(ErrorKind::config, where + ": unterminated section header");
      section = lower(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) fail(ErrorKind::config, where + ": empty section name");
      ini.data_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(ErrorKind::config, where + ": expected 'key = value'");
    if (section.empty()) fail(ErrorKind::config, where + ": key outside of any section");
    const std::string key = lower(trim(line.substr(0, eq)));
    if (key.empty()) fail(ErrorKind::config, where + ": empty key");
    auto& sec = ini.data_[section];
    if (sec.count(key)) fail(ErrorKind::config, where + ": duplicate key '" + key + "'");
    sec[key] = trim(line.substr(eq + 1));
  }
  return ini;
}

IniFile IniFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::config, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

bool IniFile::has_section(const std::string& section) const { return data_.count(section) > 0; }

bool IniFile::has(const std::string& section, const std::string& key) const {
  const auto it = data_.find(section);
  return it != data_.end() && it->second.count(key) > 0;
}

std::optional<std::string> IniFile::get(const std::string& section, const std::string& key) const {
  const auto it = data_.find(section);
  if (it == data_.end()) return std::nullopt;
  const auto kt = it->second.find(key);
  if (kt == it->second.end()) return std::nullopt;
  read_[section][key] = true;
  return kt->second;
}

std::string IniFile::string_or(const std::string& section, const std::string& key, const std::string& fallback) const {
  return get(section, key).value_or(fallback);
}

Real IniFile::real_or(const std::string& section, const std::string& key, Real fallback) const {
  const auto v = get(section, key);
  return v ? parse_real(*v, section + "." + key) : fallback;
}

int IniFile::int_or(const std::string& section, const std::string& key, int fallback) const {
  const auto v = get(section, key);
  return v ? parse_int(*v, section + "." + key) : fallback;
}

bool IniFile::bool_or(const std::string& section, const std::string& key, bool fallback) const {
  const auto v = get(section, key);
  if (!v) return fallback;
  const std::string s = lower(*v);
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  fail(ErrorKind::config, section + "." + key + ": expected a boolean, got '" + *v + "'");
}

Complex IniFile::complex_or(const std::string& section, const std::string& key, Complex fallback) const {
  const auto v = get(section, key);
  return v ? parse_complex(*v, section + "." + key) : fallback;
}

std::vector<Real> IniFile::reals(const std::string& section, const std::string& key) const {
  std::vector<Real> out;
  if (const auto v = get(section, key))
    for (const auto& p : split(*v, ',')) out.push_back(parse_real(p, section + "." + key));
  return out;
}

std::vector<std::string> IniFile::unused() const {
  std::vector<std::string> out;
  for (const auto& [sec, keys] : data_)
    for (const auto& [key, value] : keys) {
      const auto it = read_.find(sec);
      if (it == read_.end() || !it->second.count(key)) out.push_back(sec + "." + key);
    }
  return out;
}

Potential parse_potential(const std::string& text) {
  Potential p;
  for (const auto& term : split(text, ';')) {
    const auto w = words(term);
    const std::string kind = lower(w[0]);
    auto arg = [&](std::size_t i) {
      if (i >= w.size()) fail(ErrorKind::config, "potential term '" + term + "': missing argument");
      return parse_real(w[i], "potential term '" + term + "'");
    };
    auto opt = [&](std::size_t i, Real fallback) { return i < w.size() ? arg(i) : fallback; };
    auto expect_at_most = [&](std::size_t n) {
      if (w.size() > n) fail(ErrorKind::config, "potential term '" + term + "': too many arguments");
    };
    if (kind == "green") {
      expect_at_most(2);
      p.add_green(arg(1));
    } else if (kind == "linear") {
      expect_at_most(3);
      p.add_linear({arg(1), opt(2, 0.0)});
    } else if (kind == "quadratic") {
      expect_at_most(4);
      p.add_quadratic(arg(1), {opt(2, 0.0), opt(3, 0.0)});
    } else if (kind == "constant") {
      expect_at_most(2);
      p.add_constant(arg(1));
    } else if (kind == "green_bump") {
      expect_at_most(2);
      p.add_green_bump(arg(1));
    } else if (kind == "quadratic_bump") {
      expect_at_most(5);
      p.add_quadratic_bump(arg(1), {arg(2), arg(3)}, arg(4));
    } else if (kind == "log_poly") {
      // coef followed by real coefficients of g, low to high
      if (w.size() < 3) fail(ErrorKind::config, "potential term '" + term + "': log_poly needs coefficients");
      CSeries poly(Eigen::Index(w.size() - 2));
      for (std::size_t i = 2; i < w.size(); ++i) poly[Eigen::Index(i - 2)] = arg(i);
      p.add_log_poly(arg(1), poly);
    } else {
      fail(ErrorKind::config, "unknown potential term '" + w[0] + "'");
    }
  }
  return p;
}

namespace {

Chart read_chart(const IniFile& ini) {
  const std::string kind = lower(ini.string_or("domain", "chart", "translation"));
  if (kind == "translation") return Chart::translation();
  if (kind == "green") return Chart::green();
  if (kind == "scaled") return Chart::scaled(ini.complex_or("domain", "chart_scale", 1.0));
  fail(ErrorKind::config, "domain.chart: unknown chart '" + kind + "'");
}

GainFunction read_gain(const IniFile& ini) {
  const std::string family = lower(ini.string_or("gain", "family", "constant"));
  const Real lower_end = ini.real_or("gain", "lower", 0.0);
  if (family == "constant") return GainFunction::constant(ini.real_or("gain", "value", 1.0), lower_end);
  if (family == "exponential") return GainFunction::exponential(ini.real_or("gain", "beta", 0.0), lower_end);
  if (family == "rational") return GainFunction::rational(ini.real_or("gain", "p", 2.0), lower_end);
  if (family == "steps") return GainFunction::steps(ini.reals("gain", "breaks"), ini.reals("gain", "values"), lower_end);
  fail(ErrorKind::config, "gain.family: unknown family '" + family + "'");
}

IntegrationPlan::Mode read_mode(const std::string& s) {
  const std::string m = lower(s);
  if (m == "automatic") return IntegrationPlan::Mode::automatic;
  if (m == "radial") return IntegrationPlan::Mode::radial;
  if (m == "polar") return IntegrationPlan::Mode::polar;
  fail(ErrorKind::config, "solver.mode: unknown mode '" + s + "'");
}

ExperimentConfig build(const IniFile& ini) {
  ExperimentConfig cfg;
  cfg.name = ini.string_or("experiment", "name", cfg.name);

  const std::string kind = lower(ini.string_or("domain", "kind", "disc"));
  const Complex z0 = ini.complex_or("domain", "z0", 0.0);
  const Chart chart = read_chart(ini);
  std::optional<PlanarDomain> domain;
  if (kind == "disc") {
    domain = PlanarDomain::disc(z0, chart);
  } else if (kind == "annulus") {
    domain = PlanarDomain::annulus(ini.real_or("domain", "q", 0.3), z0, ini.int_or("domain", "terms", 64), chart);
  } else if (kind == "conformal") {
    const auto coeffs = ini.reals("domain", "map");
    if (coeffs.size() < 2) fail(ErrorKind::config, "domain.map: needs at least two coefficients");
    CSeries map(Eigen::Index(coeffs.size()));
    for (std::size_t i = 0; i < coeffs.size(); ++i) map[Eigen::Index(i)] = coeffs[i];
    domain = PlanarDomain::conformal(map, z0, chart);
  } else {
    fail(ErrorKind::config, "domain.kind: unknown kind '" + kind + "'");
  }
  cfg.domain_label = kind;

  WeightPair wp;
  wp.k = ini.int_or("weights", "k", 0);
  wp.psi = parse_potential(ini.string_or("weights", "psi", "green " + std::to_string(2 * (wp.k + 1))));
  wp.phi = parse_potential(ini.string_or("weights", "phi", ""));

  const int jet_k = ini.int_or("jet", "k", wp.k);
  const std::string target = lower(ini.string_or("jet", "target", "monomial"));
  const Complex center = ini.complex_or("jet", "center", 0.0);
  JetConstraint jet;
  if (target == "monomial") jet = JetConstraint::monomial(jet_k, center);
  else if (target == "zero") jet = JetConstraint::zero(jet_k, center);
  else fail(ErrorKind::config, "jet.target: expected 'monomial' or 'zero'");

  cfg.problem = ExtensionProblem{*domain, wp, read_gain(ini), jet};

  cfg.grid_points = ini.int_or("grid", "points", cfg.grid_points);
  cfg.t_grid = ini.reals("grid", "t");

  SolverOptions& so = cfg.solver;
  so.initial_degree = ini.int_or("solver", "initial_degree", so.initial_degree);
  so.max_degree = ini.int_or("solver", "max_degree", so.max_degree);
  so.degree_tol = ini.real_or("solver", "degree_tol", so.degree_tol);
  so.plan.tolerance = ini.real_or("solver", "quadrature_tol", so.plan.tolerance);
  so.plan.radial_nodes = ini.int_or("solver", "radial_nodes", so.plan.radial_nodes);
  so.plan.angular_nodes = ini.int_or("solver", "angular_nodes", so.plan.angular_nodes);
  if (const auto m = ini.get("solver", "mode")) so.plan.mode = read_mode(*m);
  cfg.threads = ini.int_or("solver", "threads", cfg.threads);

  ToleranceSet& t = cfg.tol;
  t.concavity = ini.real_or("tolerances", "concavity", t.concavity);
  t.linear = ini.real_or("tolerances", "linear", t.linear);
  t.jets = ini.real_or("tolerances", "jets", t.jets);
  t.suita = ini.real_or("tolerances", "suita", t.suita);
  t.power = ini.real_or("tolerances", "power", t.power);
  t.derivative = ini.real_or("tolerances", "derivative", t.derivative);
  t.tail = ini.real_or("tolerances", "tail", t.tail);
  t.aux = ini.real_or("tolerances", "aux", t.aux);

  cfg.kernel.h = parse_potential(ini.string_or("kernel", "h", ""));
  cfg.kernel.a1 = ini.real_or("kernel", "a1", 0.0);
  cfg.kernel.k = ini.int_or("kernel", "k", 0);
  cfg.kernel.n = ini.int_or("kernel", "n", 2);

  cfg.aux.t0 = ini.real_or("aux", "t0", 1.0);
  cfg.aux.B = ini.real_or("aux", "b", 1.0);
  cfg.aux.eps = ini.real_or("aux", "eps", 0.1);
  cfg.aux.n = ini.int_or("aux", "n", 4);
  cfg.aux.S = ini.real_or("aux", "s", 0.0);

  cfg.out_dir = ini.string_or("output", "dir", cfg.out_dir);

  if (const auto extra = ini.unused(); !extra.empty()) {
    std::string msg = "unknown configuration keys:";
    for (const auto& k : extra) msg += " " + k;
    fail(ErrorKind::config, msg);
  }
  return cfg;
}

}  // namespace

void ExperimentConfig::validate() const {
  const WeightPair& wp = problem.weights;
  if (wp.k < 0) fail(ErrorKind::config, "weights.k must be nonnegative");
  if (problem.jet.k != wp.k)
    fail(ErrorKind::config, "jet.k (" + std::to_string(problem.jet.k) + ") does not match weights.k (" +
                                std::to_string(wp.k) + ")");
  if (!problem.gain.integrable()) fail(ErrorKind::config, "gain is not integrable against e^{-t}");
  if (const auto gv = validate_gain(problem.gain); !gv.passed) fail(ErrorKind::config, "gain: " + gv.message);
  if (const auto wv = validate_weights(wp, problem.domain); !wv.passed) {
    std::string msg = "weights:";
    for (const auto& f : wv.failures) msg += " " + f + ";";
    fail(ErrorKind::config, msg);
  }
  if (grid_points < 3) fail(ErrorKind::config, "grid.points must be at least 3");
  if (!t_grid.empty()) {
    if (t_grid.size() < 3) fail(ErrorKind::config, "grid.t needs at least three values");
    if (t_grid.front() < problem.gain.lower_endpoint())
      fail(ErrorKind::config, "grid.t starts below the gain's lower endpoint");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
      if (!(t_grid[i] > t_grid[i - 1])) fail(ErrorKind::config, "grid.t must be strictly increasing");
  }
  if (solver.initial_degree < 1 || solver.max_degree < solver.initial_degree)
    fail(ErrorKind::config, "solver degrees must satisfy 1 <= initial_degree <= max_degree");
  if (!(solver.degree_tol > 0) || !(solver.plan.tolerance > 0))
    fail(ErrorKind::config, "solver tolerances must be positive");
  if (solver.plan.radial_nodes < 8 || solver.plan.angular_nodes < 8)
    fail(ErrorKind::config, "quadrature node counts must be at least 8");
  if (threads < 1) fail(ErrorKind::config, "threads must be at least 1");
  for (Real v : {tol.concavity, tol.linear, tol.power, tol.derivative, tol.tail, tol.aux})
    if (!(v > 0)) fail(ErrorKind::config, "tolerances must be positive");
  if (kernel.k < 0 || kernel.n < 1) fail(ErrorKind::config, "kernel.k must be >= 0 and kernel.n >= 1");
  try {
    aux.validate();
  } catch (const Error& e) {
    fail(ErrorKind::config, std::string("aux: ") + e.what());
  }
}

std::vector<Real> ExperimentConfig::resolved_grid() const {
  return t_grid.empty() ? default_t_grid(problem.gain, grid_points) : t_grid;
}

ExperimentConfig config_from_ini(const IniFile& ini) {
  try {
    return build(ini);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::config) throw;
    fail(ErrorKind::config, e.what());
  }
}

ExperimentConfig load_config(const std::string& path) { return config_from_ini(IniFile::load(path)); }

}  // namespace minl2
