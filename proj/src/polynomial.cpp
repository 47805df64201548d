#include "folia/polynomial.hpp"

#include "folia/errors.hpp"

#include <algorithm>
#include <set>

namespace folia {

// --- VariableContext -------------------------------------------------------

VariableContext::VariableContext(std::vector<std::string> variables, std::vector<std::string> parameters)
    : variables_(std::move(variables)), parameters_(std::move(parameters)) {
  std::set<std::string> seen;
  for (const auto* list : {&variables_, &parameters_})
    for (const auto& name : *list)
      if (!seen.insert(name).second)
        throw DomainError("duplicate name '" + name + "' in variable context");
}

std::optional<std::size_t> VariableContext::variable_index(const std::string& name) const {
  auto it = std::find(variables_.begin(), variables_.end(), name);
  if (it == variables_.end())
    return std::nullopt;
  return static_cast<std::size_t>(it - variables_.begin());
}

std::optional<std::size_t> VariableContext::parameter_index(const std::string& name) const {
  auto it = std::find(parameters_.begin(), parameters_.end(), name);
  if (it == parameters_.end())
    return std::nullopt;
  return static_cast<std::size_t>(it - parameters_.begin());
}

std::string VariableContext::describe() const {
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
      s += (i ? "," : "") + v[i];
    return s;
  };
  std::string s = "vars(" + join(variables_) + ")";
  if (!parameters_.empty())
    s += " params(" + join(parameters_) + ")";
  return s;
}

ContextPtr make_context(std::vector<std::string> variables, std::vector<std::string> parameters) {
  return std::make_shared<const VariableContext>(std::move(variables), std::move(parameters));
}

void require_same_context(const ContextPtr& a, const ContextPtr& b) {
  if (a == b || *a == *b)
    return;
  throw ContextMismatch("context mismatch: " + a->describe() + " vs " + b->describe());
}

// --- Monomial --------------------------------------------------------------

Monomial::Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {
  for (auto e : exps_)
    degree_ += e;
}

Monomial Monomial::variable(std::size_t nvars, std::size_t index, std::uint32_t power) {
  std::vector<std::uint32_t> e(nvars, 0);
  e.at(index) = power;
  return Monomial(std::move(e));
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::size_t i = 0; i < r.exps_.size(); ++i)
    r.exps_[i] += b.exps_[i];
  r.degree_ += b.degree_;
  return r;
}

bool Monomial::divides(const Monomial& m) const {
  if (degree_ > m.degree_)
    return false;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > m.exps_[i])
      return false;
  return true;
}

Monomial Monomial::quotient_of(const Monomial& m) const {
  Monomial r = m;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    r.exps_[i] -= exps_[i];
  r.degree_ -= degree_;
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  std::vector<std::uint32_t> e(a.size());
  for (std::size_t i = 0; i < e.size(); ++i)
    e[i] = std::max(a[i], b[i]);
  return Monomial(std::move(e));
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] != 0 && other.exps_[i] != 0)
      return false;
  return true;
}

bool Monomial::supported_in(const std::vector<bool>& allowed) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] != 0 && !allowed[i])
      return false;
  return true;
}

int grevlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree())
    return a.degree() > b.degree() ? 1 : -1;
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i])
      return a[i] < b[i] ? 1 : -1;
  return 0;
}

int lex_compare(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i])
      return a[i] > b[i] ? 1 : -1;
  return 0;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  return tag == OrderTag::grevlex ? grevlex_compare(a, b) : lex_compare(a, b);
}

std::vector<Monomial> monomials_up_to(std::size_t nvars, std::uint32_t degree) {
  std::vector<Monomial> out;
  std::vector<std::uint32_t> e(nvars, 0);
  // Odometer over exponent vectors with bounded sum.
  auto recurse = [&](auto&& self, std::size_t i, std::uint32_t budget) -> void {
    if (i == nvars) {
      out.emplace_back(e);
      return;
    }
    for (std::uint32_t k = 0; k <= budget; ++k) {
      e[i] = k;
      self(self, i + 1, budget - k);
    }
    e[i] = 0;
  };
  recurse(recurse, 0, degree);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return grevlex_compare(a, b) > 0; });
  return out;
}

// --- Polynomial ------------------------------------------------------------

Polynomial::Polynomial(ContextPtr ctx) : ctx_(std::move(ctx)) {}

Polynomial::Polynomial(ContextPtr ctx, Scalar constant) : ctx_(std::move(ctx)) {
  if (!constant.is_zero())
    terms_.push_back({Monomial(ctx_->num_variables()), std::move(constant)});
}

Polynomial::Polynomial(ContextPtr ctx, std::vector<Term> sorted_terms, bool)
    : ctx_(std::move(ctx)), terms_(std::move(sorted_terms)) {}

Polynomial Polynomial::variable(ContextPtr ctx, std::size_t index) {
  if (index >= ctx->num_variables())
    throw ArityError("variable index " + std::to_string(index) + " out of range");
  auto m = Monomial::variable(ctx->num_variables(), index);
  return monomial(std::move(ctx), std::move(m));
}

Polynomial Polynomial::monomial(ContextPtr ctx, Monomial m, Scalar c) {
  if (m.size() != ctx->num_variables())
    throw ArityError("monomial arity does not match context");
  std::vector<Term> t;
  if (!c.is_zero())
    t.push_back({std::move(m), std::move(c)});
  return Polynomial(std::move(ctx), std::move(t), true);
}

Polynomial Polynomial::from_terms(ContextPtr ctx, std::vector<Term> terms) {
  std::map<Monomial, Scalar> acc;
  for (auto& t : terms) {
    if (t.monomial.size() != ctx->num_variables())
      throw ArityError("monomial arity does not match context");
    auto [it, inserted] = acc.try_emplace(t.monomial, t.coefficient);
    if (!inserted)
      it->second += t.coefficient;
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!c.is_zero())
      out.push_back({m, std::move(c)});
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return grevlex_compare(a.monomial, b.monomial) > 0; });
  return Polynomial(std::move(ctx), std::move(out), true);
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }

int Polynomial::degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().monomial.degree()); }

Scalar Polynomial::coefficient(const Monomial& m) const {
  for (const auto& t : terms_)
    if (t.monomial == m)
      return t.coefficient;
  return {};
}

Polynomial Polynomial::operator-() const {
  std::vector<Term> t = terms_;
  for (auto& x : t)
    x.coefficient = -x.coefficient;
  return Polynomial(ctx_, std::move(t), true);
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  require_same_context(a.ctx_, b.ctx_);
  std::vector<Term> out;
  out.reserve(a.terms_.size() + b.terms_.size());
  auto i = a.terms_.begin(), j = b.terms_.begin();
  while (i != a.terms_.end() && j != b.terms_.end()) {
    int c = grevlex_compare(i->monomial, j->monomial);
    if (c > 0) {
      out.push_back(*i++);
    } else if (c < 0) {
      out.push_back(*j++);
    } else {
      Scalar s = i->coefficient + j->coefficient;
      if (!s.is_zero())
        out.push_back({i->monomial, std::move(s)});
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), i, a.terms_.end());
  out.insert(out.end(), j, b.terms_.end());
  return Polynomial(a.ctx_, std::move(out), true);
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_context(a.ctx_, b.ctx_);
  if (a.is_zero() || b.is_zero())
    return Polynomial(a.ctx_);
  if (a.terms_.size() == 1)
    return b.times_monomial(a.terms_[0].monomial, a.terms_[0].coefficient);
  if (b.terms_.size() == 1)
    return a.times_monomial(b.terms_[0].monomial, b.terms_[0].coefficient);
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_)
      prod.push_back({ta.monomial * tb.monomial, ta.coefficient * tb.coefficient});
  return Polynomial::from_terms(a.ctx_, std::move(prod));
}

Polynomial Polynomial::scaled(const Scalar& c) const {
  if (c.is_zero())
    return Polynomial(ctx_);
  std::vector<Term> t = terms_;
  for (auto& x : t)
    x.coefficient *= c;
  return Polynomial(ctx_, std::move(t), true);
}

Polynomial Polynomial::times_monomial(const Monomial& m, const Scalar& c) const {
  if (c.is_zero())
    return Polynomial(ctx_);
  std::vector<Term> t;
  t.reserve(terms_.size());
  // Multiplication by a monomial preserves any monomial order.
  for (const auto& x : terms_)
    t.push_back({x.monomial * m, x.coefficient * c});
  return Polynomial(ctx_, std::move(t), true);
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(ctx_, Scalar(1)), base = *this;
  while (e) {
    if (e & 1u)
      result *= base;
    e >>= 1;
    if (e)
      base *= base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (is_zero())
    return *this;
  return scaled(leading_term().coefficient.inverse());
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!(a.ctx_ == b.ctx_ || *a.ctx_ == *b.ctx_))
    return false;
  if (a.terms_.size() != b.terms_.size())
    return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].monomial == b.terms_[i].monomial) || !(a.terms_[i].coefficient == b.terms_[i].coefficient))
      return false;
  return true;
}

Polynomial Polynomial::derivative(std::size_t var_index) const {
  if (var_index >= ctx_->num_variables())
    throw ArityError("derivative index " + std::to_string(var_index) + " out of range for " + ctx_->describe());
  std::vector<Term> t;
  for (const auto& x : terms_) {
    std::uint32_t e = x.monomial[var_index];
    if (e == 0)
      continue;
    auto exps = x.monomial.exponents();
    exps[var_index] -= 1;
    t.push_back({Monomial(std::move(exps)), x.coefficient * Scalar(static_cast<long>(e))});
  }
  // Lowering one exponent by one can reorder grevlex terms, so re-sort.
  return from_terms(ctx_, std::move(t));
}

Scalar Polynomial::evaluate(std::span<const Scalar> point) const {
  if (point.size() != ctx_->num_variables())
    throw ArityError("point has " + std::to_string(point.size()) + " coordinates, context has " +
                     std::to_string(ctx_->num_variables()) + " variables");
  return PointEvaluator(std::vector<Scalar>(point.begin(), point.end()))(*this);
}

Polynomial Polynomial::specialize_params(const std::map<std::string, mpq_class>& assignment) const {
  const auto& params = ctx_->parameters();
  std::vector<mpq_class> values(params.size(), 0);
  std::vector<bool> assigned(params.size(), false);
  for (const auto& [name, value] : assignment) {
    auto idx = ctx_->parameter_index(name);
    if (!idx)
      throw DomainError("unknown parameter '" + name + "'");
    values[*idx] = value;
    assigned[*idx] = true;
  }
  std::vector<Term> t;
  for (const auto& x : terms_) {
    if (!x.coefficient.is_rational()) {
      for (std::size_t i = 0; i < params.size(); ++i)
        if (!assigned[i] && (x.coefficient.numerator().degree_in(i) > 0 || x.coefficient.denominator().degree_in(i) > 0))
          throw DomainError("parameter '" + params[i] + "' is not assigned");
    }
    t.push_back({x.monomial, Scalar(x.coefficient.specialize(values))});
  }
  return from_terms(ctx_, std::move(t));
}

bool Polynomial::has_rational_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.coefficient.is_rational(); });
}

std::string Polynomial::to_string() const {
  if (terms_.empty())
    return "0";
  const auto& vars = ctx_->variables();
  const auto& params = ctx_->parameters();
  std::string out;
  for (const auto& [m, c] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0)
        continue;
      if (!mono.empty())
        mono += '*';
      mono += vars[i];
      if (m[i] > 1)
        mono += '^' + std::to_string(m[i]);
    }
    bool negative = false;
    std::string coeff;
    if (c.is_rational()) {
      negative = sgn(c.rational()) < 0;
      mpq_class mag = abs(c.rational());
      if (!(mag == 1) || mono.empty())
        coeff = mag.get_str();
    } else {
      // A monomial in the parameters is written bare, its sign pulled out.
      ParamPoly num = c.numerator();
      bool monomial = num.is_monomial() && c.denominator().is_constant();
      negative = monomial && num.leading_term().second < 0;
      coeff = (negative ? -c : c).to_string(params);
      bool fraction = !c.denominator().is_constant();
      if (!monomial && !fraction)
        coeff = "(" + coeff + ")";
    }
    std::string body = coeff.empty() ? mono : (mono.empty() ? coeff : coeff + "*" + mono);
    if (out.empty())
      out = negative ? "-" + body : body;
    else
      out += (negative ? " - " : " + ") + body;
  }
  return out;
}

std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
  require_same_context(a.context(), b.context());
  if (b.is_zero())
    throw DomainError("exact division by the zero polynomial");
  Polynomial r = a;
  std::vector<Term> quotient;
  const Term& lb = b.leading_term();
  Scalar inv = lb.coefficient.inverse();
  while (!r.is_zero()) {
    const Term& lr = r.leading_term();
    if (!lb.monomial.divides(lr.monomial))
      return std::nullopt;
    Monomial qm = lb.monomial.quotient_of(lr.monomial);
    Scalar qc = lr.coefficient * inv;
    r -= b.times_monomial(qm, qc);
    quotient.push_back({std::move(qm), std::move(qc)});
  }
  return Polynomial::from_terms(a.context(), std::move(quotient));
}

// --- PointEvaluator --------------------------------------------------------

PointEvaluator::PointEvaluator(std::vector<Scalar> point) : point_(std::move(point)), powers_(point_.size()) {}

const Scalar& PointEvaluator::power(std::size_t var, std::uint32_t e) const {
  auto& cache = powers_[var];
  if (cache.empty())
    cache.push_back(Scalar(1));
  while (cache.size() <= e)
    cache.push_back(cache.back() * point_[var]);
  return cache[e];
}

Scalar PointEvaluator::operator()(const Polynomial& p) const {
  if (point_.size() != p.context()->num_variables())
    throw ArityError("point has " + std::to_string(point_.size()) + " coordinates, context has " +
                     std::to_string(p.context()->num_variables()) + " variables");
  Scalar sum;
  for (const auto& [m, c] : p.terms()) {
    Scalar t = c;
    for (std::size_t i = 0; i < m.size() && !t.is_zero(); ++i)
      if (m[i] != 0)
        t *= power(i, m[i]);
    sum += t;
  }
  return sum;
}

} // namespace folia
