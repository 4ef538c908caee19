#include "helpers.hpp"

#include "minl2/report.hpp"

using namespace minl2;
using namespace minl2::test;

namespace {

ExperimentConfig from_text(const std::string& text) { return config_from_ini(IniFile::parse(text)); }

int error_kind(const std::string& text) {
  try {
    from_text(text).validate();
  } catch (const Error& e) {
    return int(e.kind());
  }
  return -1;
}

}  // namespace

TEST_CASE("INI parsing") {
  const auto ini = IniFile::parse("# comment\n[A]\nKey = 1.5  # trailing\nlist = 1, 2,3\n\n[b]\nz = 0.3, -0.1\n");
  CHECK(ini.real_or("a", "key", 0) == 1.5);
  CHECK(ini.reals("a", "list") == std::vector<Real>{1, 2, 3});
  CHECK(ini.complex_or("b", "z", 0) == Complex(0.3, -0.1));
  CHECK(ini.int_or("b", "missing", 7) == 7);
  CHECK(ini.unused().empty());

  CHECK_THROWS_AS(IniFile::parse("key = 1\n"), Error);
  CHECK_THROWS_AS(IniFile::parse("[a]\nkey\n"), Error);
  CHECK_THROWS_AS(IniFile::parse("[a\nkey = 1\n"), Error);
  CHECK_THROWS_AS(IniFile::parse("[a]\nk = 1\nk = 2\n"), Error);
  CHECK_THROWS_AS(IniFile::parse("[a]\nk = x\n").real_or("a", "k", 0), Error);
}

TEST_CASE("potential strings") {
  const Potential p = parse_potential("green 2; quadratic 1 0.1 0; linear 2");
  REQUIRE(p.terms().size() == 3);
  CHECK(p.green_coefficient() == 2.0);
  CHECK(p.terms()[1].param == Complex(0.1, 0));
  CHECK(parse_potential("").empty());
  CHECK_THROWS_AS(parse_potential("green"), Error);
  CHECK_THROWS_AS(parse_potential("spline 1"), Error);
  CHECK_THROWS_AS(parse_potential("green 1 2"), Error);
}

TEST_CASE("experiment configs") {
  const auto cfg = from_text(
      "[experiment]\nname = x\n[domain]\nkind = disc\nz0 = 0.3\n[weights]\nk = 1\npsi = green 4\n"
      "[gain]\nfamily = rational\np = 2\n[grid]\npoints = 9\n[solver]\nmax_degree = 32\n");
  cfg.validate();
  CHECK(cfg.name == "x");
  CHECK(cfg.problem.domain.marked_point() == Complex(0.3));
  CHECK(cfg.problem.weights.k == 1);
  CHECK(cfg.problem.jet.k == 1);
  CHECK(cfg.problem.gain.family() == GainFamily::rational);
  CHECK(cfg.resolved_grid().size() == 9);
  CHECK(cfg.solver.max_degree == 32);

  const int config = int(ErrorKind::config);
  CHECK(error_kind("[domain]\nkind = torus\n") == config);
  CHECK(error_kind("[domain]\nqq = 1\n") == config);
  CHECK(error_kind("[weights]\nk = 1\n[jet]\nk = 0\n") == config);
  CHECK(error_kind("[gain]\nfamily = exponential\nbeta = -2\n") == config);
  CHECK(error_kind("[domain]\nz0 = 1.5\n") == config);
  CHECK(error_kind("[weights]\npsi = green 2; constant 1\n") == config);
  CHECK(error_kind("[grid]\nt = 0, 1, 0.5\n") == config);
  CHECK(error_kind("[solver]\ninitial_degree = 16\nmax_degree = 8\n") == config);
  CHECK(error_kind("[aux]\neps = 0.5\n") == config);
  CHECK(error_kind("[weights]\nk = 0\n") == -1);
}

TEST_CASE("reports") {
  Json j{{"a", std::numeric_limits<Real>::quiet_NaN()}};
  CHECK(dump(to_json(TailCheck{20, std::numeric_limits<Real>::quiet_NaN(), 1, false})).find("null") != std::string::npos);
  const std::string e = dump(error_record(Error(ErrorKind::numerical, "boom")));
  CHECK(e == "{\n  \"error\": {\n    \"kind\": \"numerical\",\n    \"message\": \"boom\"\n  }\n}\n");

  const auto cfg = from_text("[weights]\npsi = green 2\n");
  const std::string a = dump(describe_config(cfg));
  const std::string b = dump(describe_config(from_text("[weights]\npsi = green 2\n")));
  CHECK(a == b);
  CHECK(a.find("\"tolerances\"") != std::string::npos);
}
