#include "folia/scalar.hpp"

#include "folia/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace folia {

namespace {

// Exponent vectors are trimmed, so std::vector's lexicographic operator< is
// exactly lex order on the zero-padded vectors.

void trim(ParamExponents& e) {
  while (!e.empty() && e.back() == 0)
    e.pop_back();
}

ParamExponents add_exponents(const ParamExponents& a, const ParamExponents& b) {
  ParamExponents r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i)
    r[i] += b[i];
  return r;
}

bool divides(const ParamExponents& d, const ParamExponents& m) {
  if (d.size() > m.size())
    return false;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > m[i])
      return false;
  return true;
}

ParamExponents sub_exponents(const ParamExponents& m, const ParamExponents& d) {
  ParamExponents r = m;
  for (std::size_t i = 0; i < d.size(); ++i)
    r[i] -= d[i];
  trim(r);
  return r;
}

ParamPoly mul_term(const ParamPoly& p, const ParamExponents& e, const mpq_class& c) {
  std::vector<ParamPoly::Term> out;
  out.reserve(p.terms().size());
  for (const auto& [pe, pc] : p.terms())
    out.emplace_back(add_exponents(pe, e), pc * c);
  // Multiplying by a monomial preserves lex order.
  return ParamPoly::from_terms(std::move(out));
}

// Univariate view in parameter v, coefficients indexed by power of v.
using UPoly = std::vector<ParamPoly>;

void utrim(UPoly& p) {
  while (!p.empty() && p.back().is_zero())
    p.pop_back();
}

UPoly split(const ParamPoly& p, std::size_t v) {
  UPoly out;
  std::vector<std::vector<ParamPoly::Term>> buckets;
  for (const auto& [e, c] : p.terms()) {
    std::uint32_t k = v < e.size() ? e[v] : 0;
    if (buckets.size() <= k)
      buckets.resize(k + 1);
    ParamExponents rest = e;
    if (v < rest.size())
      rest[v] = 0;
    trim(rest);
    buckets[k].emplace_back(std::move(rest), c);
  }
  out.reserve(buckets.size());
  for (auto& b : buckets) {
    std::sort(b.begin(), b.end());
    out.push_back(ParamPoly::from_terms(std::move(b)));
  }
  utrim(out);
  return out;
}

ParamPoly join(const UPoly& p, std::size_t v) {
  ParamPoly out;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k].is_zero())
      continue;
    ParamExponents e(v + 1, 0);
    e[v] = static_cast<std::uint32_t>(k);
    trim(e);
    out += mul_term(p[k], e, 1);
  }
  return out;
}

ParamPoly content(const UPoly& p) {
  ParamPoly g;
  for (const auto& c : p) {
    g = gcd(g, c);
    if (g.is_constant() && !g.is_zero())
      return ParamPoly(1);
  }
  return g;
}

UPoly divide_coefficients(const UPoly& p, const ParamPoly& d) {
  UPoly out;
  out.reserve(p.size());
  for (const auto& c : p)
    out.push_back(*divide_exact(c, d));
  return out;
}

// Sparse pseudo-remainder: an associate of prem(a, b) with respect to v.
UPoly pseudo_remainder(UPoly a, const UPoly& b) {
  const ParamPoly& lcb = b.back();
  while (!a.empty() && a.size() >= b.size()) {
    ParamPoly lca = a.back();
    std::size_t shift = a.size() - b.size();
    for (auto& c : a)
      c *= lcb;
    for (std::size_t j = 0; j < b.size(); ++j)
      a[j + shift] -= lca * b[j];
    utrim(a);
  }
  return a;
}

ParamPoly monomial_gcd(const ParamPoly& mono, const ParamPoly& p) {
  ParamExponents g = mono.leading_term().first;
  for (const auto& [e, c] : p.terms()) {
    g.resize(std::min(g.size(), e.size()));
    for (std::size_t i = 0; i < g.size(); ++i)
      g[i] = std::min(g[i], e[i]);
  }
  trim(g);
  return ParamPoly::from_terms({{g, mpq_class(1)}});
}

} // namespace

ParamPoly::ParamPoly(mpq_class c) {
  c.canonicalize();
  if (sgn(c) != 0)
    terms_.emplace_back(ParamExponents{}, std::move(c));
}

ParamPoly ParamPoly::parameter(std::size_t index) {
  ParamExponents e(index + 1, 0);
  e[index] = 1;
  return from_terms({{std::move(e), mpq_class(1)}});
}

ParamPoly ParamPoly::from_terms(std::vector<Term> terms) {
  ParamPoly p;
  p.terms_ = std::move(terms);
  return p;
}

bool ParamPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.empty());
}

mpq_class ParamPoly::constant_value() const {
  if (terms_.empty() || !terms_[0].first.empty())
    return 0;
  return terms_[0].second;
}

int ParamPoly::top_parameter() const {
  int top = -1;
  for (const auto& [e, c] : terms_)
    top = std::max(top, static_cast<int>(e.size()) - 1);
  return top;
}

std::uint32_t ParamPoly::degree_in(std::size_t index) const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_)
    if (index < e.size())
      d = std::max(d, e[index]);
  return d;
}

std::uint32_t ParamPoly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) {
    std::uint32_t s = 0;
    for (auto x : e)
      s += x;
    d = std::max(d, s);
  }
  return d;
}

ParamPoly ParamPoly::operator-() const {
  ParamPoly r = *this;
  for (auto& t : r.terms_)
    t.second = -t.second;
  return r;
}

ParamPoly operator+(const ParamPoly& a, const ParamPoly& b) {
  std::vector<ParamPoly::Term> out;
  out.reserve(a.terms_.size() + b.terms_.size());
  auto i = a.terms_.begin(), j = b.terms_.begin();
  while (i != a.terms_.end() && j != b.terms_.end()) {
    if (i->first < j->first) {
      out.push_back(*i++);
    } else if (j->first < i->first) {
      out.push_back(*j++);
    } else {
      mpq_class s = i->second + j->second;
      if (sgn(s) != 0)
        out.emplace_back(i->first, std::move(s));
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), i, a.terms_.end());
  out.insert(out.end(), j, b.terms_.end());
  return ParamPoly::from_terms(std::move(out));
}

ParamPoly operator-(const ParamPoly& a, const ParamPoly& b) { return a + (-b); }

ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
  if (a.is_zero() || b.is_zero())
    return {};
  if (a.is_monomial())
    return mul_term(b, a.terms_[0].first, a.terms_[0].second);
  if (b.is_monomial())
    return mul_term(a, b.terms_[0].first, b.terms_[0].second);
  std::map<ParamExponents, mpq_class> acc;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_)
      acc[add_exponents(ea, eb)] += ca * cb;
  std::vector<ParamPoly::Term> out;
  out.reserve(acc.size());
  for (auto& [e, c] : acc)
    if (sgn(c) != 0)
      out.emplace_back(e, std::move(c));
  return ParamPoly::from_terms(std::move(out));
}

ParamPoly ParamPoly::scaled(const mpq_class& c) const {
  if (sgn(c) == 0)
    return {};
  ParamPoly r = *this;
  for (auto& t : r.terms_)
    t.second *= c;
  return r;
}

std::optional<ParamPoly> divide_exact(const ParamPoly& a, const ParamPoly& b) {
  if (b.is_zero())
    throw PoleError("division of a parameter polynomial by zero");
  if (a.is_zero())
    return ParamPoly{};
  if (b.is_constant())
    return a.scaled(1 / b.constant_value());
  if (b.total_degree() > a.total_degree())
    return std::nullopt;
  ParamPoly r = a;
  std::vector<ParamPoly::Term> quotient;
  const auto& [be, bc] = b.leading_term();
  while (!r.is_zero()) {
    const auto& [re, rc] = r.leading_term();
    if (!divides(be, re))
      return std::nullopt;
    ParamExponents qe = sub_exponents(re, be);
    mpq_class qc = rc / bc;
    r -= mul_term(b, qe, qc);
    quotient.emplace_back(std::move(qe), std::move(qc));
  }
  // Quotient terms were produced in decreasing lex order.
  std::reverse(quotient.begin(), quotient.end());
  return ParamPoly::from_terms(std::move(quotient));
}

ParamPoly ParamPoly::monic() const {
  if (is_zero())
    return {};
  return scaled(1 / leading_term().second);
}

mpq_class ParamPoly::evaluate(std::span<const mpq_class> values) const {
  mpq_class sum = 0;
  for (const auto& [e, c] : terms_) {
    mpq_class t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0)
        continue;
      if (i >= values.size())
        throw ArityError("parameter assignment does not cover t" + std::to_string(i + 1));
      mpz_class num, den;
      mpz_pow_ui(num.get_mpz_t(), values[i].get_num_mpz_t(), e[i]);
      mpz_pow_ui(den.get_mpz_t(), values[i].get_den_mpz_t(), e[i]);
      t *= mpq_class(num, den);
    }
    sum += t;
  }
  sum.canonicalize();
  return sum;
}

namespace {

std::string monomial_text(const ParamExponents& e, std::span<const std::string> names) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0)
      continue;
    if (!s.empty())
      s += '*';
    s += i < names.size() ? names[i] : "t" + std::to_string(i + 1);
    if (e[i] > 1)
      s += '^' + std::to_string(e[i]);
  }
  return s;
}

} // namespace

std::string ParamPoly::to_string(std::span<const std::string> names) const {
  if (terms_.empty())
    return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    bool negative = sgn(c) < 0;
    mpq_class mag = abs(c);
    std::string mono = monomial_text(e, names);
    std::string body;
    if (mono.empty())
      body = mag.get_str();
    else if (mag == 1)
      body = mono;
    else
      body = mag.get_str() + "*" + mono;
    if (out.empty())
      out = negative ? "-" + body : body;
    else
      out += (negative ? " - " : " + ") + body;
  }
  return out;
}

ParamPoly gcd(const ParamPoly& a, const ParamPoly& b) {
  if (a.is_zero())
    return b.monic();
  if (b.is_zero())
    return a.monic();
  if (a.is_constant() || b.is_constant())
    return ParamPoly(1);
  if (a.is_monomial())
    return monomial_gcd(a, b);
  if (b.is_monomial())
    return monomial_gcd(b, a);
  if (a.monic() == b.monic())
    return a.monic();
  int top = std::max(a.top_parameter(), b.top_parameter());
  auto v = static_cast<std::size_t>(top);
  if (a.degree_in(v) == 0)
    return gcd(a, content(split(b, v)));
  if (b.degree_in(v) == 0)
    return gcd(content(split(a, v)), b);

  UPoly ua = split(a, v), ub = split(b, v);
  ParamPoly ca = content(ua), cb = content(ub);
  ParamPoly c = gcd(ca, cb);
  ua = divide_coefficients(ua, ca);
  ub = divide_coefficients(ub, cb);
  if (ua.size() < ub.size())
    std::swap(ua, ub);
  while (!ub.empty()) {
    if (ub.size() == 1) {
      // A nonzero remainder of degree 0 in v: the primitive parts are coprime.
      return c.monic();
    }
    UPoly r = pseudo_remainder(ua, ub);
    ua = std::move(ub);
    if (!r.empty())
      r = divide_coefficients(r, content(r));
    ub = std::move(r);
  }
  return (c * join(ua, v)).monic();
}

// ---------------------------------------------------------------------------

std::string rational_to_string(const mpq_class& q) { return q.get_str(); }

Scalar Scalar::parameter(std::size_t index) {
  return from_reduced(ParamPoly::parameter(index), ParamPoly(1));
}

Scalar Scalar::fraction(ParamPoly num, ParamPoly den) {
  if (den.is_zero())
    throw PoleError("division by zero");
  if (num.is_zero())
    return {};
  ParamPoly g = gcd(num, den);
  if (!g.is_constant()) {
    num = *divide_exact(num, g);
    den = *divide_exact(den, g);
  }
  return from_reduced(std::move(num), std::move(den));
}

Scalar Scalar::from_reduced(ParamPoly num, ParamPoly den) {
  if (num.is_zero())
    return {};
  mpq_class lc = den.leading_term().second;
  if (lc != 1) {
    mpq_class inv = 1 / lc;
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  if (num.is_constant() && den.is_constant())
    return Scalar(num.constant_value());
  Scalar s;
  s.f_ = std::make_shared<const Fraction>(Fraction{std::move(num), std::move(den)});
  return s;
}

const mpq_class& Scalar::rational() const {
  if (f_)
    throw DomainError("scalar is a rational function, not a rational number");
  return q_;
}

ParamPoly Scalar::numerator() const { return f_ ? f_->num : ParamPoly(q_); }

ParamPoly Scalar::denominator() const { return f_ ? f_->den : ParamPoly(1); }

int Scalar::top_parameter() const {
  if (!f_)
    return -1;
  return std::max(f_->num.top_parameter(), f_->den.top_parameter());
}

Scalar Scalar::operator-() const {
  if (!f_)
    return Scalar(mpq_class(-q_));
  Scalar s;
  s.f_ = std::make_shared<const Fraction>(Fraction{-f_->num, f_->den});
  return s;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (!a.f_ && !b.f_)
    return Scalar(mpq_class(a.q_ + b.q_));
  if (b.is_zero())
    return a;
  if (a.is_zero())
    return b;
  if (!b.f_)
    return Scalar::from_reduced(a.f_->num + a.f_->den.scaled(b.q_), a.f_->den);
  if (!a.f_)
    return Scalar::from_reduced(b.f_->num + b.f_->den.scaled(a.q_), b.f_->den);
  const ParamPoly &an = a.f_->num, &ad = a.f_->den;
  const ParamPoly &bn = b.f_->num, &bd = b.f_->den;
  if (ad == bd) {
    ParamPoly num = an + bn;
    if (ad.is_constant())
      return Scalar::from_reduced(std::move(num), ad);
    return Scalar::fraction(std::move(num), ad);
  }
  ParamPoly g = gcd(ad, bd);
  if (g.is_constant())
    return Scalar::from_reduced(an * bd + bn * ad, ad * bd);
  ParamPoly ad1 = *divide_exact(ad, g), bd1 = *divide_exact(bd, g);
  ParamPoly num = an * bd1 + bn * ad1;
  ParamPoly den = ad1 * bd;
  ParamPoly g2 = gcd(num, g);
  if (!g2.is_constant()) {
    num = *divide_exact(num, g2);
    den = *divide_exact(den, g2);
  }
  return Scalar::from_reduced(std::move(num), std::move(den));
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (!a.f_ && !b.f_)
    return Scalar(mpq_class(a.q_ * b.q_));
  if (a.is_zero() || b.is_zero())
    return {};
  if (!a.f_)
    return Scalar::from_reduced(b.f_->num.scaled(a.q_), b.f_->den);
  if (!b.f_)
    return Scalar::from_reduced(a.f_->num.scaled(b.q_), a.f_->den);
  ParamPoly g1 = gcd(a.f_->num, b.f_->den);
  ParamPoly g2 = gcd(b.f_->num, a.f_->den);
  ParamPoly an = a.f_->num, ad = a.f_->den, bn = b.f_->num, bd = b.f_->den;
  if (!g1.is_constant()) {
    an = *divide_exact(an, g1);
    bd = *divide_exact(bd, g1);
  }
  if (!g2.is_constant()) {
    bn = *divide_exact(bn, g2);
    ad = *divide_exact(ad, g2);
  }
  return Scalar::from_reduced(an * bn, ad * bd);
}

Scalar Scalar::inverse() const {
  if (is_zero())
    throw PoleError("division by zero");
  if (!f_)
    return Scalar(mpq_class(1 / q_));
  return from_reduced(f_->den, f_->num);
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

Scalar Scalar::pow(unsigned e) const {
  Scalar result(1), base = *this;
  while (e) {
    if (e & 1u)
      result *= base;
    e >>= 1;
    if (e)
      base *= base;
  }
  return result;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!a.f_ && !b.f_)
    return a.q_ == b.q_;
  if (!a.f_ || !b.f_)
    return false;
  return a.f_->num == b.f_->num && a.f_->den == b.f_->den;
}

mpq_class Scalar::specialize(std::span<const mpq_class> values) const {
  if (!f_)
    return q_;
  mpq_class den = f_->den.evaluate(values);
  if (sgn(den) == 0) {
    std::ostringstream msg;
    msg << "pole: denominator vanishes at (";
    for (std::size_t i = 0; i < values.size(); ++i)
      msg << (i ? ", " : "") << "t" << i + 1 << "=" << values[i].get_str();
    msg << ")";
    throw PoleError(msg.str());
  }
  mpq_class r = f_->num.evaluate(values) / den;
  r.canonicalize();
  return r;
}

bool Scalar::is_atomic() const {
  if (!f_)
    return sgn(q_) >= 0 && q_.get_den() == 1;
  if (!f_->den.is_constant())
    return false;
  return f_->num.is_monomial() && f_->num.leading_term().second == 1;
}

std::string Scalar::to_string(std::span<const std::string> names) const {
  if (!f_)
    return rational_to_string(q_);
  if (f_->den.is_constant())
    return f_->num.to_string(names);
  return "(" + f_->num.to_string(names) + ")/(" + f_->den.to_string(names) + ")";
}

} // namespace folia
