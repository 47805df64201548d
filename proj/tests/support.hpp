#pragma once

#include "folia/foliation_file.hpp"

#include <string>
#include <vector>

namespace testing {

/// Parses polynomials and fields over a fixed declaration, through the file
/// parser so that tests read like the input format.
class Ring {
public:
  explicit Ring(std::string vars, std::string params = "") : header_("vars: " + vars + "\n") {
    if (!params.empty())
      header_ += "params: " + params + "\n";
    ctx_ = folia::parse_foliation_file(header_).context;
  }

  const folia::ContextPtr& ctx() const { return ctx_; }

  folia::Polynomial operator()(const std::string& expr) const {
    return folia::parse_foliation_file(header_ + "candidate C : " + expr + "\n").candidates.at(0).poly;
  }

  folia::Derivation field(const std::string& expr) const {
    return folia::parse_foliation_file(header_ + "field D : " + expr + "\n").fields.at(0).field;
  }

  std::vector<folia::Scalar> point(const std::string& coords) const {
    return folia::parse_foliation_file(header_ + "point P : (" + coords + ")\n").points.at(0).coords;
  }

  folia::FoliationSpec foliation(const std::vector<std::string>& fields) const {
    folia::FoliationSpec f;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      f.names.push_back("D" + std::to_string(i + 1));
      f.derivations.push_back(field(fields[i]));
    }
    return f;
  }

private:
  std::string header_;
  folia::ContextPtr ctx_;
};

} // namespace testing
