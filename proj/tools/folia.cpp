// Command-line front end: parse a foliation file, run one analysis, print a
// text report and optionally a JSON one.

#include "folia/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int exit_analysis_error = 1;
constexpr int exit_usage_error = 2;

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contact orders, invariant varieties and first integrals of polynomial foliations"};
  app.set_version_flag("--version", "folia 1.0");

  std::string command, path, json_path;
  folia::AnalysisOptions options;
  std::string candidate;
  app.add_option("command", command, "contact-order | invariant | profile | extactic | first-integral")
      ->required()
      ->check(CLI::IsMember(folia::commands));
  app.add_option("file", path, "foliation file")->required();
  app.add_option("--field", options.fields, "field forming the foliation (repeatable; default: all)");
  app.add_option("--point", options.points, "point to analyse (repeatable; default: all)");
  app.add_option("--candidate", candidate, "candidate polynomial for contact-order");
  app.add_option("--degree", options.degree, "degree for extactic and first-integral")->capture_default_str();
  app.add_option("--max-degree", options.max_degree, "truncation degree n_max for invariant and profile")
      ->capture_default_str();
  app.add_option("--word-cap", options.word_cap, "longest derivative word explored")->capture_default_str();
  app.add_option("--span-cap", options.span_cap, "largest stable span accepted as a certificate")
      ->capture_default_str();
  app.add_option("--json", json_path, "write the JSON report to PATH ('-' for stdout instead of text)");
  app.add_flag("--timing", options.timing, "record wall-clock time in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : exit_usage_error;
  }
  if (!candidate.empty())
    options.candidate = candidate;

  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "folia: cannot read '" << path << "'\n";
    return exit_usage_error;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  folia::Report report;
  try {
    folia::FoliationFile file = folia::parse_foliation_file(buffer.str());
    report.analyses.push_back(folia::run_analysis(file, command, options));
  } catch (const folia::ParseError& e) {
    std::cerr << "folia: " << path << ": " << e.what() << "\n";
    if (!e.expected().empty()) {
      std::cerr << "  expected one of:";
      for (const auto& x : e.expected())
        std::cerr << " " << x;
      std::cerr << "\n";
    }
    return exit_analysis_error;
  } catch (const folia::UsageError& e) {
    std::cerr << "folia: " << e.what() << "\n";
    return exit_usage_error;
  } catch (const folia::Error& e) {
    std::cerr << "folia: " << e.what() << "\n";
    return exit_analysis_error;
  }

  try {
    if (json_path != "-")
      folia::emit_report(report, folia::ReportFormat::text, "", std::cout);
    if (!json_path.empty())
      folia::emit_report(report, folia::ReportFormat::json, json_path, std::cout);
  } catch (const folia::Error& e) {
    std::cerr << "folia: " << e.what() << "\n";
    return exit_analysis_error;
  }
  return report.failed() ? exit_analysis_error : 0;
}
