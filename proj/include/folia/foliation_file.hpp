#pragma once

#include "folia/errors.hpp"
#include "folia/foliation.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace folia {

/// Syntax or name-resolution error with a 1-based source position.
class ParseError : public Error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& message, std::vector<std::string> expected = {});

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

private:
  std::size_t line_, column_;
  std::vector<std::string> expected_;
};

struct NamedField {
  std::string name;
  Derivation field;
};

struct NamedPoint {
  std::string name;
  std::vector<Scalar> coords;
};

struct NamedCandidate {
  std::string name;
  Polynomial poly;
};

struct FoliationFile {
  ContextPtr context;
  std::vector<NamedField> fields;
  std::vector<NamedPoint> points;
  std::vector<NamedCandidate> candidates;

  const NamedField* find_field(const std::string& name) const;
  const NamedPoint* find_point(const std::string& name) const;
  const NamedCandidate* find_candidate(const std::string& name) const;
};

/// Parses the line-oriented foliation format:
///
///     vars: x y
///     params: t1
///     field D : x d/dx + 2*y d/dy
///     point P : (1, t1)
///     candidate C : x^2 - y
///
/// `#` starts a comment. Declarations of vars and params come before
/// everything else. In a field, a coefficient may be omitted (`d/dx`).
/// Division is allowed only by expressions free of variables.
FoliationFile parse_foliation_file(std::string_view text);

/// Text that parses back to a structurally equal file.
std::string format_foliation_file(const FoliationFile& file);

bool operator==(const FoliationFile& a, const FoliationFile& b);

} // namespace folia
