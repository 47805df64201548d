#pragma once

#include "folia/errors.hpp"
#include "folia/foliation_file.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace folia {

/// Bad command, option value or unknown name on the command line.
class UsageError : public Error {
public:
  using Error::Error;
};

using Json = nlohmann::ordered_json;

struct AnalysisOptions {
  /// Fields forming the foliation; empty means every field of the file.
  std::vector<std::string> fields;
  /// Points to analyse; empty means every point of the file.
  std::vector<std::string> points;
  std::optional<std::string> candidate;
  /// Degree for extactic and first-integral.
  int degree = 1;
  /// Truncation n_max for invariant and profile.
  int max_degree = 4;
  int word_cap = 12;
  std::size_t span_cap = 64;
  int closure_degree_cap = 2;
  std::size_t closure_size_cap = 16;
  /// Record wall-clock time; otherwise micros is 0 so that reports are
  /// byte-identical across runs.
  bool timing = false;
};

struct AnalysisRecord {
  std::string command;
  Json inputs = Json::object();
  Json result;
  std::vector<std::string> warnings;
  std::int64_t micros = 0;
  /// Set when the analysis (or one of its rows) failed.
  std::optional<std::string> error;
};

struct Report {
  std::vector<AnalysisRecord> analyses;
  std::vector<std::string> warnings;

  bool failed() const;
  Json to_json() const;
  /// Aligned tables, one section per analysis.
  std::string to_text() const;
};

inline const std::vector<std::string> commands = {"contact-order", "invariant", "profile", "extactic",
                                                  "first-integral"};

/// Runs one command. Unknown commands and names raise UsageError; failures
/// of the analysis itself are recorded in the returned record.
AnalysisRecord run_analysis(const FoliationFile& file, const std::string& command, const AnalysisOptions& options);

enum class ReportFormat { text, json };

/// Writes the report; an empty destination or "-" means stdout. Throws Error
/// when the destination cannot be written.
void emit_report(const Report& report, ReportFormat format, const std::string& destination, std::ostream& stdout_stream);

} // namespace folia
