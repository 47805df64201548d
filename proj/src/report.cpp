#include "folia/report.hpp"

#include "folia/firstintegral.hpp"
#include "folia/invariant.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

namespace folia {

namespace {

std::string scalar_text(const Scalar& s, const ContextPtr& ctx) { return s.to_string(ctx->parameters()); }

Json point_json(const NamedPoint& p, const ContextPtr& ctx) {
  Json coords = Json::array();
  for (const auto& c : p.coords)
    coords.push_back(scalar_text(c, ctx));
  EvalPoint ep(p.coords);
  return Json{{"name", p.name}, {"coords", coords}, {"kind", ep.is_generic() ? "generic" : "closed"}};
}

Json polys_json(const std::vector<Polynomial>& polys) {
  Json out = Json::array();
  for (const auto& p : polys)
    out.push_back(p.to_string());
  return out;
}

struct Setup {
  FoliationSpec foliation;
  std::vector<const NamedPoint*> points;
};

Setup prepare(const FoliationFile& file, const AnalysisOptions& options, AnalysisRecord& record, bool need_points) {
  Setup s;
  std::vector<Derivation> gens;
  std::vector<std::string> names;
  if (options.fields.empty()) {
    for (const auto& f : file.fields) {
      gens.push_back(f.field);
      names.push_back(f.name);
    }
  } else {
    for (const auto& n : options.fields) {
      const NamedField* f = file.find_field(n);
      if (!f)
        throw UsageError("unknown field '" + n + "'");
      gens.push_back(f->field);
      names.push_back(f->name);
    }
  }
  if (gens.empty())
    throw UsageError("the file declares no field");
  s.foliation = close_under_brackets(gens, options.closure_degree_cap, options.closure_size_cap, names);

  Json generators = Json::array();
  for (std::size_t i = 0; i < s.foliation.size(); ++i)
    generators.push_back({{"name", s.foliation.names[i]}, {"field", s.foliation.derivations[i].to_string()}});
  record.inputs["foliation"] = {{"generators", generators},
                                {"bracket_closed", s.foliation.bracket_closed},
                                {"closure_degree_cap", s.foliation.closure_degree_cap}};
  if (!s.foliation.bracket_closed)
    record.warnings.push_back("bracket closure not certified: some bracket is outside the module with coefficients of "
                              "degree <= " +
                              std::to_string(options.closure_degree_cap) + " after " +
                              std::to_string(s.foliation.size()) + " generators");
  if (s.foliation.size() > gens.size())
    record.warnings.push_back("generators extended by " + std::to_string(s.foliation.size() - gens.size()) +
                              " bracket(s) to close the module");

  if (need_points) {
    if (options.points.empty()) {
      for (const auto& p : file.points)
        s.points.push_back(&p);
    } else {
      for (const auto& n : options.points) {
        const NamedPoint* p = file.find_point(n);
        if (!p)
          throw UsageError("unknown point '" + n + "'");
        s.points.push_back(p);
      }
    }
    if (s.points.empty())
      throw UsageError("the file declares no point");
    Json pts = Json::array();
    for (const auto* p : s.points)
      pts.push_back(point_json(*p, file.context));
    record.inputs["points"] = pts;
  }
  return s;
}

ClosureOptions closure_options(const AnalysisOptions& o) { return {o.word_cap, 4096}; }

Json estimate_json(const InvariantEstimate& e, const ContextPtr& ctx) {
  Json witness = Json::array();
  for (auto i : e.dimension.witness)
    witness.push_back(ctx->variables()[i]);
  Json history = Json::array();
  for (const auto& h : e.history)
    history.push_back({{"degree", h.degree},
                       {"basis_size", h.basis_size},
                       {"rank", h.rank},
                       {"kernel_size", h.kernel_size},
                       {"dimension", h.dimension},
                       {"certified", h.certified}});
  return Json{{"degree", e.degree},
              {"dimension", e.dimension.dimension},
              {"independent_variables", witness},
              {"stabilized", e.stabilized},
              {"certified", e.certified},
              {"generators", polys_json(e.ideal.basis())},
              {"kernel_size", e.kernel.size()},
              {"history", history}};
}

void run_contact_order(const FoliationFile& file, const AnalysisOptions& options, AnalysisRecord& record) {
  if (!options.candidate)
    throw UsageError("contact-order needs --candidate NAME");
  const NamedCandidate* c = file.find_candidate(*options.candidate);
  if (!c)
    throw UsageError("unknown candidate '" + *options.candidate + "'");
  Setup s = prepare(file, options, record, true);
  record.inputs["candidate"] = {{"name", c->name}, {"polynomial", c->poly.to_string()}};
  record.inputs["options"] = {{"word_cap", options.word_cap}, {"span_cap", options.span_cap}};

  ContactOrderOptions co{options.word_cap, options.span_cap, 4096};
  Json rows = Json::array();
  for (const auto* p : s.points) {
    auto r = contact_order(c->poly, s.foliation, Locus(p->coords), co);
    Json row{{"point", p->name}};
    if (r.is_finite()) {
      const auto& f = std::get<ContactOrderResult::Finite>(r.value);
      Json word = Json::array();
      for (auto i : f.witness)
        word.push_back(s.foliation.names[i]);
      row["kind"] = "finite";
      row["order"] = f.order;
      row["witness"] = word;
    } else if (r.is_infinite()) {
      const auto& inf = std::get<ContactOrderResult::Infinite>(r.value);
      row["kind"] = "infinite";
      row["certificate_kind"] = inf.ideal ? "stable_ideal" : "stable_span";
      row["certificate"] = polys_json(inf.certificate);
    } else {
      int bound = std::get<ContactOrderResult::AtLeast>(r.value).bound;
      row["kind"] = "at_least";
      row["bound"] = bound;
      record.warnings.push_back("contact order at " + p->name + " not decided: cap reached, order >= " +
                                std::to_string(bound));
    }
    rows.push_back(std::move(row));
  }
  record.result = {{"rows", rows}};
}

void run_estimates(const FoliationFile& file, const AnalysisOptions& options, AnalysisRecord& record, bool full) {
  if (options.max_degree < 1)
    throw UsageError("--max-degree must be at least 1");
  Setup s = prepare(file, options, record, true);
  record.inputs["options"] = {{"max_degree", options.max_degree}, {"word_cap", options.word_cap}};

  std::vector<EvalPoint> points;
  for (const auto* p : s.points)
    points.emplace_back(p->coords);
  auto table = nf_profile(points, s.foliation, options.max_degree, closure_options(options));

  Json rows = Json::array();
  std::size_t failures = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const std::string& name = s.points[i]->name;
    Json row{{"point", name}};
    if (!table[i].estimate) {
      row["error"] = table[i].error;
      ++failures;
      rows.push_back(std::move(row));
      continue;
    }
    const auto& e = *table[i].estimate;
    if (full) {
      row.update(estimate_json(e, file.context));
    } else {
      row["dimension"] = e.dimension.dimension;
      row["stabilized"] = e.stabilized;
      row["certified"] = e.certified;
    }
    if (!e.stabilized)
      record.warnings.push_back("estimate at " + name + " not stabilized at degree " +
                                std::to_string(options.max_degree));
    if (!e.certified)
      record.warnings.push_back("functional closure at " + name + " stopped at a cap; kernel may be too large");
    rows.push_back(std::move(row));
  }
  record.result = {{"rows", rows}};
  if (failures)
    record.error = std::to_string(failures) + " of " + std::to_string(table.size()) + " points failed";
}

void run_extactic(const FoliationFile& file, const AnalysisOptions& options, AnalysisRecord& record) {
  if (options.degree < 0)
    throw UsageError("--degree must be non-negative");
  Setup s = prepare(file, options, record, false);
  record.inputs["options"] = {{"degree", options.degree}};
  Json rows = Json::array();
  std::size_t failures = 0;
  for (std::size_t i = 0; i < s.foliation.size(); ++i) {
    Json row{{"field", s.foliation.names[i]}, {"degree", options.degree}};
    try {
      Polynomial e = extactic_polynomial(s.foliation.derivations[i], options.degree);
      row["polynomial"] = e.to_string();
      row["vanishes"] = e.is_zero();
    } catch (const Error& err) {
      row["error"] = err.what();
      ++failures;
    }
    rows.push_back(std::move(row));
  }
  record.result = {{"rows", rows}};
  if (failures)
    record.error = std::to_string(failures) + " of " + std::to_string(rows.size()) + " fields failed";
}

Json integral_json(const RationalFirstIntegral& fi) {
  Json exps = Json::array();
  for (const auto& e : fi.exponents)
    exps.push_back(e.get_str());
  return Json{{"numerator", fi.numerator.to_string()},
              {"denominator", fi.denominator.to_string()},
              {"text", fi.to_string()},
              {"exponents", exps}};
}

void run_first_integral(const FoliationFile& file, const AnalysisOptions& options, AnalysisRecord& record) {
  if (options.degree < 1)
    throw UsageError("--degree must be at least 1 for first-integral");
  Setup s = prepare(file, options, record, false);
  record.inputs["options"] = {{"degree", options.degree}};
  FirstIntegralSearch search = find_first_integral(s.foliation, options.degree);

  Json gens = Json::array();
  for (const auto& g : search.generators) {
    Json eig = Json::array();
    for (const auto& l : g.search.eigenvalues)
      eig.push_back(rational_to_string(l));
    Json pairs = Json::array();
    for (const auto& p : g.search.pairs)
      pairs.push_back({{"f", p.f.to_string()}, {"cofactor", p.cofactor.to_string()}});
    Json row{{"field", g.name},
             {"degree_preserving", g.search.degree_preserving},
             {"rational_coefficients", g.search.rational_coefficients},
             {"non_rational_spectrum", g.search.non_rational_spectrum},
             {"eigenvalues", eig},
             {"darboux_pairs", pairs},
             {"candidate", g.candidate ? integral_json(*g.candidate) : Json()},
             {"verified", g.verified}};
    gens.push_back(std::move(row));
    if (!g.search.degree_preserving)
      record.warnings.push_back(g.name + " raises degrees; constant-cofactor search skipped");
    if (!g.search.rational_coefficients)
      record.warnings.push_back(g.name + " has parameter coefficients; constant-cofactor search skipped");
    if (g.search.non_rational_spectrum)
      record.warnings.push_back(g.name + ": non-rational spectrum present");
  }
  Json integral;
  if (search.integral) {
    integral = integral_json(*search.integral);
    integral["verified"] = true;
  } else {
    record.warnings.push_back("no rational first integral found among constant-cofactor Darboux polynomials of degree <= " +
                              std::to_string(options.degree));
  }
  record.result = {{"generators", gens}, {"integral", integral}};
}

// --- text rendering ---

using Table = std::vector<std::vector<std::string>>;

std::string render_table(const Table& t) {
  std::vector<std::size_t> width;
  for (const auto& row : t)
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (width.size() <= i)
        width.push_back(0);
      width[i] = std::max(width[i], row[i].size());
    }
  std::string out;
  for (const auto& row : t) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size())
        line += std::string(width[i] - row[i].size() + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

std::string text(const Json& v) {
  if (v.is_string())
    return v.get<std::string>();
  if (v.is_boolean())
    return v.get<bool>() ? "yes" : "no";
  if (v.is_null())
    return "-";
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v)
      s += (s.empty() ? "" : ", ") + text(e);
    return s;
  }
  return v.dump();
}

Table rows_table(const Json& rows, const std::vector<std::pair<std::string, std::string>>& columns) {
  Table t;
  std::vector<std::string> header;
  for (const auto& c : columns)
    header.push_back(c.second);
  t.push_back(header);
  for (const auto& r : rows) {
    std::vector<std::string> line;
    for (const auto& c : columns) {
      if (r.contains("error") && c.first != "point" && c.first != "field") {
        line.push_back("error: " + r["error"].get<std::string>());
        break;
      }
      line.push_back(r.contains(c.first) ? text(r[c.first]) : "");
    }
    t.push_back(line);
  }
  return t;
}

std::string section_text(const AnalysisRecord& a) {
  std::string out = "== " + a.command + " ==\n";
  if (a.inputs.contains("foliation")) {
    for (const auto& g : a.inputs["foliation"]["generators"])
      out += "field " + g["name"].get<std::string>() + " : " + g["field"].get<std::string>() + "\n";
  }
  if (a.inputs.contains("candidate"))
    out += "candidate " + a.inputs["candidate"]["name"].get<std::string>() + " : " +
           a.inputs["candidate"]["polynomial"].get<std::string>() + "\n";
  out += "\n";

  const Json& r = a.result;
  if (!r.is_null()) {
    if (a.command == "contact-order") {
      Table t{{"point", "order", "witness / certificate"}};
      for (const auto& row : r["rows"]) {
        std::string kind = row["kind"];
        if (kind == "finite")
          t.push_back({row["point"], std::to_string(row["order"].get<int>()),
                       row["witness"].empty() ? "(empty word)" : text(row["witness"])});
        else if (kind == "infinite")
          t.push_back({row["point"], "infinite",
                       (row["certificate_kind"] == "stable_ideal" ? "stable ideal (" : "stable span {") +
                           text(row["certificate"]) + (row["certificate_kind"] == "stable_ideal" ? ")" : "}")});
        else
          t.push_back({row["point"], ">= " + std::to_string(row["bound"].get<int>()), "cap reached"});
      }
      out += render_table(t);
    } else if (a.command == "invariant") {
      out += render_table(rows_table(r["rows"], {{"point", "point"},
                                                 {"degree", "n"},
                                                 {"dimension", "dim"},
                                                 {"stabilized", "stabilized"},
                                                 {"certified", "certified"},
                                                 {"generators", "generators"}}));
    } else if (a.command == "profile") {
      out += render_table(rows_table(r["rows"], {{"point", "point"},
                                                 {"dimension", "dim"},
                                                 {"stabilized", "stabilized"},
                                                 {"certified", "certified"}}));
    } else if (a.command == "extactic") {
      out += render_table(rows_table(r["rows"], {{"field", "field"},
                                                 {"degree", "n"},
                                                 {"vanishes", "vanishes"},
                                                 {"polynomial", "extactic polynomial"}}));
    } else if (a.command == "first-integral") {
      Table t{{"field", "eigenvalues", "darboux pairs", "candidate", "verified"}};
      for (const auto& g : r["generators"]) {
        std::string pairs;
        for (const auto& p : g["darboux_pairs"])
          pairs += (pairs.empty() ? "" : ", ") + ("(" + p["f"].get<std::string>() + ", " +
                                                  p["cofactor"].get<std::string>() + ")");
        t.push_back({g["field"], text(g["eigenvalues"]), pairs.empty() ? "-" : pairs,
                     g["candidate"].is_null() ? "-" : g["candidate"]["text"].get<std::string>(), text(g["verified"])});
      }
      out += render_table(t);
      out += "\nfirst integral: " +
             (r["integral"].is_null() ? std::string("none found") : r["integral"]["text"].get<std::string>()) + "\n";
    }
  }
  if (!a.warnings.empty()) {
    out += "\nwarnings:\n";
    for (const auto& w : a.warnings)
      out += "  " + w + "\n";
  }
  if (a.error)
    out += "\nerror: " + *a.error + "\n";
  if (a.micros > 0)
    out += "\ntime: " + std::to_string(a.micros) + " us\n";
  return out;
}

} // namespace

bool Report::failed() const {
  return std::any_of(analyses.begin(), analyses.end(), [](const AnalysisRecord& a) { return a.error.has_value(); });
}

Json Report::to_json() const {
  Json analyses_json = Json::array();
  for (const auto& a : analyses) {
    Json entry{{"command", a.command}, {"inputs", a.inputs}, {"result", a.result}, {"warnings", a.warnings},
               {"micros", a.micros}};
    if (a.error)
      entry["error"] = *a.error;
    analyses_json.push_back(std::move(entry));
  }
  return Json{{"version", "1"}, {"analyses", analyses_json}, {"warnings", warnings}};
}

std::string Report::to_text() const {
  std::string out;
  for (const auto& a : analyses)
    out += (out.empty() ? "" : "\n") + section_text(a);
  if (!warnings.empty()) {
    out += "\nwarnings:\n";
    for (const auto& w : warnings)
      out += "  " + w + "\n";
  }
  return out;
}

AnalysisRecord run_analysis(const FoliationFile& file, const std::string& command, const AnalysisOptions& options) {
  if (std::find(commands.begin(), commands.end(), command) == commands.end())
    throw UsageError("unknown command '" + command + "'");
  if (options.word_cap < 0)
    throw UsageError("--word-cap must be non-negative");
  AnalysisRecord record;
  record.command = command;
  auto start = std::chrono::steady_clock::now();
  try {
    if (command == "contact-order")
      run_contact_order(file, options, record);
    else if (command == "invariant")
      run_estimates(file, options, record, true);
    else if (command == "profile")
      run_estimates(file, options, record, false);
    else if (command == "extactic")
      run_extactic(file, options, record);
    else
      run_first_integral(file, options, record);
  } catch (const UsageError&) {
    throw;
  } catch (const Error& e) {
    record.result = nullptr;
    record.error = e.what();
  }
  if (options.timing)
    record.micros = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start)
                        .count();
  return record;
}

void emit_report(const Report& report, ReportFormat format, const std::string& destination, std::ostream& stdout_stream) {
  std::string body = format == ReportFormat::json ? report.to_json().dump() + "\n" : report.to_text();
  if (destination.empty() || destination == "-") {
    stdout_stream << body;
    return;
  }
  std::ofstream out(destination, std::ios::binary);
  if (!out)
    throw Error("cannot write report to '" + destination + "'");
  out << body;
  if (!out.flush())
    throw Error("cannot write report to '" + destination + "'");
}

} // namespace folia
