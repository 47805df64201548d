#include "folia/report.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace folia;

namespace {

const char* const diagonal_c4 = R"(# diagonal field
vars: u v x y
params: t1 t2
field D : u*x d/dx + v*y d/dy
point P1 : (1, 2, 1, 1)
point P0 : (3, 5, 0, 0)
point G  : (t1, t2, 1, 1)
candidate C : x^2 - y
candidate One : 1
)";

struct Run {
  int status;
  std::string output;
};

Run run_cli(const std::string& args) {
  std::string cmd = std::string(FOLIA_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0)
    out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string sample(const std::string& name) { return std::string(FOLIA_SAMPLES) + "/" + name; }

std::filesystem::path scratch(const std::string& name, const std::string& content) {
  auto dir = std::filesystem::temp_directory_path() / "folia_cli_tests";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream(path) << content;
  return path;
}

std::string analyse_json(const std::string& text, const std::string& command, const AnalysisOptions& options = {}) {
  Report r;
  r.analyses.push_back(run_analysis(parse_foliation_file(text), command, options));
  return r.to_json().dump();
}

} // namespace

TEST_CASE("parsing the diagonal sample") {
  auto f = parse_foliation_file(diagonal_c4);
  CHECK(f.context->num_variables() == 4);
  CHECK(f.context->num_parameters() == 2);
  CHECK(f.fields.size() == 1);
  CHECK(f.points.size() == 3);
  CHECK(f.candidates.size() == 2);
  CHECK(f.find_point("G")->coords[0] == Scalar::parameter(0));
  CHECK(f.find_field("D")->field.to_string() == "u*x d/dx + v*y d/dy");
  CHECK(f.find_point("nope") == nullptr);
}

TEST_CASE("field syntax variants") {
  auto f = parse_foliation_file("vars: x y\nfield A : d/dx - y d/dy\nfield B : x d/dx + x d/dx\n"
                                "field C : (x + 1)/2 d/dy\n");
  CHECK(f.fields[0].field.to_string() == "d/dx - y d/dy");
  CHECK(f.fields[1].field.to_string() == "2*x d/dx");
  CHECK(f.fields[2].field.to_string() == "(1/2*x + 1/2) d/dy");
}

TEST_CASE("parse errors carry positions") {
  auto error_of = [](const std::string& text) -> ParseError {
    try {
      parse_foliation_file(text);
    } catch (const ParseError& e) {
      return e;
    }
    FAIL("no error for: " << text);
    return ParseError(0, 0, "");
  };
  auto e = error_of("vars: x y\nfield D: x d/dz\n");
  CHECK(e.line() == 2);
  CHECK(e.column() == 12);
  CHECK(std::string(e.what()).find("undeclared identifier 'z'") != std::string::npos);

  CHECK(std::string(error_of("").what()).find("no vars declaration") != std::string::npos);
  CHECK(std::string(error_of("field D : d/dx\n").what()).find("no vars declaration") != std::string::npos);
  CHECK(std::string(error_of("vars: x x\n").what()).find("duplicate") != std::string::npos);
  CHECK(std::string(error_of("vars: x\npoint P : (1, 2)\n").what()).find("2 coordinates, expected 1") !=
        std::string::npos);
  CHECK(std::string(error_of("vars: x\npoint P : (x)\n").what()).find("variable") != std::string::npos);
  CHECK(std::string(error_of("vars: x\ncandidate C : x / x\n").what()).find("variable") != std::string::npos);
  CHECK(std::string(error_of("vars: x\ncandidate C : 1/0\n").what()).find("zero") != std::string::npos);
  CHECK_FALSE(error_of("vars: x\ncandidate C : x +\n").expected().empty());
  CHECK(error_of("vars: x\ncandidate C : x^(2)\n").line() == 2);
}

TEST_CASE("format then parse round-trips") {
  auto f = parse_foliation_file(diagonal_c4);
  CHECK(parse_foliation_file(format_foliation_file(f)) == f);

  // Random files over parameters.
  std::mt19937 rng(89);
  for (int i = 0; i < 40; ++i) {
    auto base = parse_foliation_file("vars: x y z\nparams: s t\n");
    FoliationFile file{base.context, {}, {}, {}};
    std::vector<Polynomial> comps;
    for (int k = 0; k < 3; ++k)
      comps.push_back(oracle::random_poly(file.context, rng, 3, 3) *
                      Polynomial(file.context, Scalar(mpq_class(1 + k, 1 + i % 4))) +
                      Polynomial(file.context, Scalar::parameter(i % 2)));
    file.fields.push_back({"F" + std::to_string(i), Derivation(file.context, comps)});
    file.points.push_back({"P", {Scalar(mpq_class(i, 7)), Scalar::parameter(1) / (Scalar::parameter(0) + Scalar(1)),
                                 Scalar(-3)}});
    file.candidates.push_back({"C", oracle::random_poly(file.context, rng, 4, 5)});
    REQUIRE(parse_foliation_file(format_foliation_file(file)) == file);
  }
}

TEST_CASE("empty report json") {
  Report r;
  std::ostringstream out;
  emit_report(r, ReportFormat::json, "-", out);
  CHECK(out.str() == "{\"version\":\"1\",\"analyses\":[],\"warnings\":[]}\n");
  r.warnings.push_back("something");
  CHECK(r.to_json()["warnings"].size() == 1);
  std::ostringstream a, b;
  emit_report(r, ReportFormat::json, "", a);
  emit_report(r, ReportFormat::json, "", b);
  CHECK(a.str() == b.str());
  CHECK_THROWS_AS(emit_report(r, ReportFormat::json, "/nonexistent/dir/out.json", a), Error);
}

TEST_CASE("run_analysis results") {
  auto file = parse_foliation_file(diagonal_c4);
  AnalysisOptions o;
  o.candidate = "One";
  auto co = run_analysis(file, "contact-order", o);
  REQUIRE_FALSE(co.error);
  for (const auto& row : co.result["rows"]) {
    CHECK(row["kind"] == "finite");
    CHECK(row["order"] == 0);
  }

  AnalysisOptions p;
  p.max_degree = 4;
  auto prof = run_analysis(file, "profile", p);
  REQUIRE_FALSE(prof.error);
  std::vector<int> dims;
  for (const auto& row : prof.result["rows"])
    dims.push_back(row["dimension"].get<int>());
  CHECK(dims == std::vector<int>{1, 0, 2});

  auto fi = run_analysis(parse_foliation_file("vars: x y\nfield D: 2*x d/dx + 3*y d/dy\n"), "first-integral", {});
  REQUIRE_FALSE(fi.error);
  CHECK(fi.result["integral"]["text"] == "x^3 / y^2");
  CHECK(fi.result["integral"]["verified"] == true);

  AnalysisOptions bad;
  bad.points = {"Nope"};
  CHECK_THROWS_AS(run_analysis(file, "profile", bad), UsageError);
  CHECK_THROWS_AS(run_analysis(file, "bogus", {}), UsageError);
  AnalysisOptions missing;
  missing.candidate = "Missing";
  CHECK_THROWS_AS(run_analysis(file, "contact-order", missing), UsageError);
}

TEST_CASE("reports are deterministic and exact") {
  AnalysisOptions o;
  o.max_degree = 3;
  std::string a = analyse_json(diagonal_c4, "profile", o), b = analyse_json(diagonal_c4, "profile", o);
  CHECK(a == b);
  CHECK(a.find('.') == std::string::npos);
  AnalysisOptions c;
  c.candidate = "C";
  CHECK(analyse_json(diagonal_c4, "contact-order", c) == analyse_json(diagonal_c4, "contact-order", c));
}

TEST_CASE("cli on the samples") {
  auto prof = run_cli("profile " + sample("diagonal_c4.fol") + " --json -");
  CHECK(prof.status == 0);
  auto json = Json::parse(prof.output);
  REQUIRE(json["analyses"].size() == 1);
  std::vector<int> dims;
  for (const auto& row : json["analyses"][0]["result"]["rows"])
    dims.push_back(row["dimension"].get<int>());
  CHECK(dims == std::vector<int>{1, 0, 1, 2});
  CHECK(run_cli("profile " + sample("diagonal_c4.fol") + " --json -").output == prof.output);

  auto text = run_cli("first-integral " + sample("darboux_23.fol"));
  CHECK(text.status == 0);
  CHECK(text.output.find("x^3 / y^2") != std::string::npos);

  auto co = run_cli("contact-order " + sample("darboux_23.fol") + " --candidate F --json -");
  CHECK(co.status == 0);
  auto cj = Json::parse(co.output);
  for (const auto& row : cj["analyses"][0]["result"]["rows"])
    CHECK(row["kind"] == "infinite");

  auto ext = run_cli("extactic " + sample("darboux_23.fol") + " --degree 1 --json -");
  CHECK(ext.status == 0);

  auto out = scratch("report.json", "");
  auto inv = run_cli("invariant " + sample("diagonal_c4.fol") + " --point P1 --max-degree 2 --json " + out.string());
  CHECK(inv.status == 0);
  std::ifstream in(out);
  auto ij = Json::parse(in);
  CHECK(ij["analyses"][0]["command"] == "invariant");
  CHECK(ij["analyses"][0]["micros"] == 0);
}

TEST_CASE("cli exit codes") {
  CHECK(run_cli("").status == 2);
  CHECK(run_cli("frobnicate " + sample("darboux_23.fol")).status == 2);
  CHECK(run_cli("profile /nonexistent/file.fol").status == 2);
  CHECK(run_cli("profile " + sample("diagonal_c4.fol") + " --point Nope").status == 2);
  CHECK(run_cli("profile " + sample("diagonal_c4.fol") + " --max-degree banana").status == 2);
  auto bad = scratch("bad.fol", "vars: x y\nfield D: x d/dz\n");
  auto r = run_cli("profile " + bad.string());
  CHECK(r.status == 1);
  CHECK(r.output.find("line 2") != std::string::npos);
  auto big = scratch("big.fol", "vars: x y\nfield D: x d/dx\n");
  CHECK(run_cli("extactic " + big.string() + " --degree 4").status == 1);
  CHECK(run_cli("--version").status == 0);
}
