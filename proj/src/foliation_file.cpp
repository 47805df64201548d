#include "folia/foliation_file.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace folia {

namespace {

enum class Tok { ident, integer, deriv, plus, minus, star, slash, caret, lparen, rparen, comma, colon, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;
};

std::string describe(const Token& t) {
  switch (t.kind) {
  case Tok::end:
    return "end of line";
  case Tok::ident:
    return "identifier '" + t.text + "'";
  case Tok::integer:
    return "integer " + t.text;
  case Tok::deriv:
    return "'d/d" + t.text + "'";
  default:
    return "'" + t.text + "'";
  }
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(std::string_view line, std::size_t lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    std::size_t col = i + 1;
    if (c == '#')
      break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (line.substr(i, 3) == "d/d" && i + 3 < line.size() && ident_start(line[i + 3])) {
      std::size_t j = i + 3;
      while (j < line.size() && ident_char(line[j]))
        ++j;
      out.push_back({Tok::deriv, std::string(line.substr(i + 3, j - i - 3)), col});
      i = j;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j]))
        ++j;
      out.push_back({Tok::ident, std::string(line.substr(i, j - i)), col});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j])))
        ++j;
      out.push_back({Tok::integer, std::string(line.substr(i, j - i)), col});
      i = j;
      continue;
    }
    Tok kind;
    switch (c) {
    case '+': kind = Tok::plus; break;
    case '-': kind = Tok::minus; break;
    case '*': kind = Tok::star; break;
    case '/': kind = Tok::slash; break;
    case '^': kind = Tok::caret; break;
    case '(': kind = Tok::lparen; break;
    case ')': kind = Tok::rparen; break;
    case ',': kind = Tok::comma; break;
    case ':': kind = Tok::colon; break;
    default:
      throw ParseError(lineno, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back({kind, std::string(1, c), col});
    ++i;
  }
  out.push_back({Tok::end, "", line.size() + 1});
  return out;
}

class LineParser {
public:
  LineParser(std::vector<Token> tokens, std::size_t lineno, ContextPtr ctx)
      : toks_(std::move(tokens)), line_(lineno), ctx_(std::move(ctx)) {}

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k)
      return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok k, const std::string& what) {
    if (peek().kind != k)
      fail("expected " + what + ", found " + describe(peek()), {what});
    return next();
  }
  [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected = {}) const {
    throw ParseError(line_, peek().column, message, std::move(expected));
  }
  [[noreturn]] void fail_at(const Token& t, const std::string& message) const {
    throw ParseError(line_, t.column, message);
  }

  // expr := term (('+' | '-') term)*
  Polynomial expr() {
    Polynomial v = term();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      bool minus = next().kind == Tok::minus;
      Polynomial r = term();
      v = minus ? v - r : v + r;
    }
    return v;
  }

  // term := unary (('*' | '/') unary)*
  Polynomial term() {
    Polynomial v = unary();
    while (peek().kind == Tok::star || peek().kind == Tok::slash) {
      const Token& op = next();
      if (op.kind == Tok::star) {
        v *= unary();
        continue;
      }
      const Token& at = peek();
      Polynomial d = unary();
      if (!d.is_constant())
        fail_at(at, "division by an expression involving variables");
      if (d.is_zero())
        fail_at(at, "division by zero");
      v = v.scaled(d.leading_term().coefficient.inverse());
    }
    return v;
  }

  // unary := ('-' | '+') unary | power; '^' binds tighter than the sign.
  Polynomial unary() {
    if (accept(Tok::minus))
      return -unary();
    if (accept(Tok::plus))
      return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (accept(Tok::caret)) {
      const Token& e = expect(Tok::integer, "non-negative integer exponent");
      if (e.text.size() > 4 || std::stoul(e.text) > 1000)
        fail_at(e, "exponent " + e.text + " is too large");
      base = base.pow(static_cast<unsigned>(std::stoul(e.text)));
    }
    return base;
  }

  Polynomial primary() {
    const Token& t = peek();
    switch (t.kind) {
    case Tok::integer:
      next();
      return Polynomial(ctx_, Scalar(mpq_class(mpz_class(t.text))));
    case Tok::ident: {
      next();
      if (auto i = ctx_->variable_index(t.text))
        return Polynomial::variable(ctx_, *i);
      if (auto i = ctx_->parameter_index(t.text))
        return Polynomial(ctx_, Scalar::parameter(*i));
      fail_at(t, "undeclared identifier '" + t.text + "'");
    }
    case Tok::lparen: {
      next();
      Polynomial v = expr();
      expect(Tok::rparen, "')'");
      return v;
    }
    case Tok::deriv:
      // A bare d/dx at the start of a coefficient means coefficient 1.
      if (implicit_one_ok())
        return Polynomial(ctx_, Scalar(1));
      [[fallthrough]];
    default:
      fail("expected an integer, identifier or '(', found " + describe(t), {"integer", "identifier", "'('"});
    }
  }

  std::size_t position() const { return pos_; }
  void set_coefficient_start(std::size_t p) { coefficient_start_ = p; }

private:
  bool implicit_one_ok() const {
    for (std::size_t k = coefficient_start_; k < pos_; ++k)
      if (toks_[k].kind != Tok::minus && toks_[k].kind != Tok::plus)
        return false;
    return coefficient_start_ != static_cast<std::size_t>(-1);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t line_;
  ContextPtr ctx_;
  std::size_t coefficient_start_ = static_cast<std::size_t>(-1);
};

bool is_keyword_line(const std::vector<Token>& toks, const char* word) {
  return toks.front().kind == Tok::ident && toks.front().text == word;
}

std::string scalar_text(const Scalar& s, const ContextPtr& ctx) { return s.to_string(ctx->parameters()); }

} // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message,
                       std::vector<std::string> expected)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line), column_(column), expected_(std::move(expected)) {}

const NamedField* FoliationFile::find_field(const std::string& name) const {
  for (const auto& f : fields)
    if (f.name == name)
      return &f;
  return nullptr;
}

const NamedPoint* FoliationFile::find_point(const std::string& name) const {
  for (const auto& p : points)
    if (p.name == name)
      return &p;
  return nullptr;
}

const NamedCandidate* FoliationFile::find_candidate(const std::string& name) const {
  for (const auto& c : candidates)
    if (c.name == name)
      return &c;
  return nullptr;
}

FoliationFile parse_foliation_file(std::string_view text) {
  FoliationFile file;
  std::optional<std::vector<std::string>> vars;
  std::vector<std::string> params;
  bool have_params = false;
  std::set<std::string> names;

  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find('\n', start);
    if (stop == std::string_view::npos)
      stop = text.size();
    std::string_view line = text.substr(start, stop - start);
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    start = stop + 1;
    ++lineno;

    auto toks = tokenize(line, lineno);
    if (toks.front().kind == Tok::end)
      continue;

    if (is_keyword_line(toks, "vars") || is_keyword_line(toks, "params")) {
      bool is_vars = toks.front().text == "vars";
      LineParser p(toks, lineno, nullptr);
      p.next();
      p.expect(Tok::colon, "':'");
      if (file.context)
        p.fail(std::string(is_vars ? "vars" : "params") + " must be declared before fields, points and candidates");
      if (is_vars ? vars.has_value() : have_params)
        p.fail_at(toks.front(), std::string("duplicate ") + (is_vars ? "vars" : "params") + " declaration");
      std::vector<std::string> list;
      while (p.peek().kind != Tok::end) {
        const Token& t = p.expect(Tok::ident, "identifier");
        bool clash = std::find(list.begin(), list.end(), t.text) != list.end() ||
                     (vars && std::find(vars->begin(), vars->end(), t.text) != vars->end()) ||
                     std::find(params.begin(), params.end(), t.text) != params.end();
        if (clash)
          p.fail_at(t, "duplicate name '" + t.text + "'");
        list.push_back(t.text);
        p.accept(Tok::comma);
      }
      if (is_vars) {
        if (list.empty())
          p.fail("vars declaration needs at least one variable", {"identifier"});
        vars = std::move(list);
      } else {
        params = std::move(list);
        have_params = true;
      }
      continue;
    }

    const char* kinds[] = {"field", "point", "candidate"};
    const char* kind = nullptr;
    for (const char* k : kinds)
      if (is_keyword_line(toks, k))
        kind = k;
    if (!kind)
      throw ParseError(lineno, toks.front().column,
                       "expected a declaration, found " + describe(toks.front()),
                       {"vars", "params", "field", "point", "candidate"});
    if (!vars)
      throw ParseError(lineno, toks.front().column, "no vars declaration");
    if (!file.context)
      file.context = make_context(*vars, params);
    const ContextPtr& ctx = file.context;

    LineParser p(toks, lineno, ctx);
    p.next();
    const Token& name = p.expect(Tok::ident, "name");
    if (!names.insert(name.text).second)
      p.fail_at(name, "duplicate name '" + name.text + "'");
    p.expect(Tok::colon, "':'");

    if (std::string_view(kind) == "field") {
      std::vector<Polynomial> comps(ctx->num_variables(), Polynomial(ctx));
      while (true) {
        p.set_coefficient_start(p.position());
        Polynomial coeff = p.expr();
        const Token& d = p.expect(Tok::deriv, "d/d<var>");
        auto idx = ctx->variable_index(d.text);
        if (!idx)
          p.fail_at(d, "undeclared identifier '" + d.text + "'");
        comps[*idx] += coeff;
        if (p.peek().kind == Tok::end)
          break;
        if (p.peek().kind == Tok::minus)
          continue;
        if (!p.accept(Tok::plus))
          p.fail("expected '+', '-' or end of line, found " + describe(p.peek()), {"'+'", "'-'", "end of line"});
      }
      file.fields.push_back({name.text, Derivation(ctx, std::move(comps))});
    } else if (std::string_view(kind) == "point") {
      p.expect(Tok::lparen, "'('");
      std::vector<Scalar> coords;
      std::vector<std::size_t> columns;
      while (true) {
        const Token& at = p.peek();
        Polynomial c = p.expr();
        if (!c.is_constant())
          p.fail_at(at, "point coordinate involves a variable");
        coords.push_back(c.is_zero() ? Scalar() : c.leading_term().coefficient);
        if (p.accept(Tok::rparen))
          break;
        if (!p.accept(Tok::comma))
          p.fail("expected ',' or ')', found " + describe(p.peek()), {"','", "')'"});
      }
      if (p.peek().kind != Tok::end)
        p.fail("expected end of line, found " + describe(p.peek()), {"end of line"});
      if (coords.size() != ctx->num_variables())
        p.fail_at(name, "point " + name.text + " has " + std::to_string(coords.size()) + " coordinates, expected " +
                            std::to_string(ctx->num_variables()));
      file.points.push_back({name.text, std::move(coords)});
    } else {
      Polynomial f = p.expr();
      if (p.peek().kind != Tok::end)
        p.fail("expected an operator or end of line, found " + describe(p.peek()),
               {"'+'", "'-'", "'*'", "'/'", "'^'", "end of line"});
      file.candidates.push_back({name.text, std::move(f)});
    }
  }
  if (!vars)
    throw ParseError(lineno == 0 ? 1 : lineno, 1, "no vars declaration");
  if (!file.context)
    file.context = make_context(*vars, params);
  return file;
}

std::string format_foliation_file(const FoliationFile& file) {
  const ContextPtr& ctx = file.context;
  std::string out = "vars:";
  for (const auto& v : ctx->variables())
    out += " " + v;
  out += "\n";
  if (ctx->num_parameters() > 0) {
    out += "params:";
    for (const auto& t : ctx->parameters())
      out += " " + t;
    out += "\n";
  }
  for (const auto& f : file.fields)
    out += "field " + f.name + " : " + f.field.to_string() + "\n";
  for (const auto& p : file.points) {
    out += "point " + p.name + " : (";
    for (std::size_t i = 0; i < p.coords.size(); ++i)
      out += (i ? ", " : "") + scalar_text(p.coords[i], ctx);
    out += ")\n";
  }
  for (const auto& c : file.candidates)
    out += "candidate " + c.name + " : " + c.poly.to_string() + "\n";
  return out;
}

bool operator==(const FoliationFile& a, const FoliationFile& b) {
  if (!(*a.context == *b.context) || a.fields.size() != b.fields.size() || a.points.size() != b.points.size() ||
      a.candidates.size() != b.candidates.size())
    return false;
  for (std::size_t i = 0; i < a.fields.size(); ++i)
    if (a.fields[i].name != b.fields[i].name || !(a.fields[i].field == b.fields[i].field))
      return false;
  for (std::size_t i = 0; i < a.points.size(); ++i)
    if (a.points[i].name != b.points[i].name || !(a.points[i].coords == b.points[i].coords))
      return false;
  for (std::size_t i = 0; i < a.candidates.size(); ++i)
    if (a.candidates[i].name != b.candidates[i].name || !(a.candidates[i].poly == b.candidates[i].poly))
      return false;
  return true;
}

} // namespace folia
