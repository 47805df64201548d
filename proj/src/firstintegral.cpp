#include "folia/firstintegral.hpp"

#include "folia/errors.hpp"
#include "folia/linalg.hpp"

#include <algorithm>
#include <map>

namespace folia {

namespace {

// Dense univariate polynomial over Q, constant term first, no trailing zeros.
using UPoly = std::vector<mpq_class>;

void trim(UPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0)
    p.pop_back();
}

UPoly derivative(const UPoly& p) {
  UPoly d;
  for (std::size_t i = 1; i < p.size(); ++i)
    d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

// Remainder of a by b (b nonzero); the quotient goes to *quot when given.
UPoly remainder(UPoly a, const UPoly& b, UPoly* quot = nullptr) {
  if (quot)
    quot->assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  while (a.size() >= b.size()) {
    mpq_class c = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    if (quot)
      (*quot)[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] -= c * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

UPoly monic(UPoly p) {
  if (!p.empty()) {
    mpq_class lc = p.back();
    for (auto& c : p)
      c /= lc;
  }
  return p;
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.empty()) {
    UPoly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(std::move(a));
}

mpq_class evaluate(const UPoly& p, const mpq_class& x) {
  mpq_class v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it)
    v = v * x + *it;
  return v;
}

class SturmSequence {
public:
  explicit SturmSequence(const UPoly& p) {
    seq_.push_back(p);
    seq_.push_back(derivative(p));
    while (!seq_.back().empty()) {
      UPoly r = remainder(seq_[seq_.size() - 2], seq_.back());
      for (auto& c : r)
        c = -c;
      if (r.empty())
        break;
      seq_.push_back(std::move(r));
    }
  }
  std::size_t sign_changes(const mpq_class& x) const {
    std::size_t changes = 0;
    int last = 0;
    for (const auto& s : seq_) {
      int v = sgn(evaluate(s, x));
      if (v == 0)
        continue;
      if (last != 0 && v != last)
        ++changes;
      last = v;
    }
    return changes;
  }
  // Distinct real roots in (a, b].
  std::size_t roots_in(const mpq_class& a, const mpq_class& b) const { return sign_changes(a) - sign_changes(b); }

private:
  std::vector<UPoly> seq_;
};

mpq_class ceil_q(const mpq_class& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return mpq_class(r);
}

mpq_class floor_q(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return mpq_class(r);
}

ParamPoly to_param_poly(const Polynomial& p) {
  std::vector<ParamPoly::Term> terms;
  for (const auto& t : p.terms()) {
    if (!t.coefficient.is_rational())
      throw DomainError("polynomial gcd needs rational coefficients");
    ParamExponents e = t.monomial.exponents();
    while (!e.empty() && e.back() == 0)
      e.pop_back();
    terms.emplace_back(std::move(e), t.coefficient.rational());
  }
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return ParamPoly::from_terms(std::move(terms));
}

Polynomial from_param_poly(const ContextPtr& ctx, const ParamPoly& p) {
  std::vector<Term> terms;
  for (const auto& [e, c] : p.terms()) {
    std::vector<std::uint32_t> exps(ctx->num_variables(), 0);
    std::copy(e.begin(), e.end(), exps.begin());
    terms.push_back({Monomial(std::move(exps)), Scalar(c)});
  }
  return Polynomial::from_terms(ctx, std::move(terms));
}

} // namespace

std::vector<mpq_class> characteristic_polynomial(std::vector<std::vector<mpq_class>> h) {
  const std::size_t n = h.size();
  // Reduce to upper Hessenberg form by elementary similarity transforms.
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && sgn(h[i][m - 1]) == 0)
      ++i;
    if (i == n)
      continue;
    if (i != m) {
      std::swap(h[i], h[m]);
      for (auto& row : h)
        std::swap(row[i], row[m]);
    }
    for (i = m + 1; i < n; ++i) {
      if (sgn(h[i][m - 1]) == 0)
        continue;
      mpq_class u = h[i][m - 1] / h[m][m - 1];
      for (std::size_t j = 0; j < n; ++j)
        h[i][j] -= u * h[m][j];
      for (std::size_t j = 0; j < n; ++j)
        h[j][m] += u * h[j][i];
    }
  }
  // p_{k+1} = (X - h_kk) p_k - sum_{i<k} h_ik (prod_{i<j<=k} h_{j,j-1}) p_i
  std::vector<UPoly> p{UPoly{1}};
  for (std::size_t k = 0; k < n; ++k) {
    UPoly next(p[k].size() + 1, 0);
    for (std::size_t d = 0; d < p[k].size(); ++d) {
      next[d + 1] += p[k][d];
      next[d] -= h[k][k] * p[k][d];
    }
    mpq_class prod = 1;
    for (std::size_t i = k; i-- > 0;) {
      prod *= h[i + 1][i];
      if (sgn(prod) == 0)
        break;
      mpq_class c = h[i][k] * prod;
      for (std::size_t d = 0; d < p[i].size(); ++d)
        next[d] -= c * p[i][d];
    }
    trim(next);
    p.push_back(std::move(next));
  }
  return p.back();
}

std::vector<mpq_class> rational_roots(const std::vector<mpq_class>& poly, bool* all_rational) {
  UPoly p = poly;
  trim(p);
  if (p.size() <= 1) {
    if (all_rational)
      *all_rational = true;
    return {};
  }
  // Work with the squarefree part scaled to integer coefficients; a rational
  // root k/l in lowest terms then has l dividing the leading coefficient, so
  // every root lies on the lattice (1/lead) Z.
  UPoly sqf;
  remainder(p, gcd(p, derivative(p)), &sqf);
  trim(sqf);
  mpz_class den = 1;
  for (const auto& c : sqf)
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  for (auto& c : sqf)
    c *= den;
  mpq_class lead = abs(sqf.back());
  mpq_class bound = 0;
  for (std::size_t i = 0; i + 1 < sqf.size(); ++i)
    bound = std::max(bound, mpq_class(abs(sqf[i]) / lead));
  bound += 1;

  SturmSequence sturm(sqf);
  mpq_class step = 1 / lead;
  std::vector<mpq_class> roots;
  std::vector<std::pair<mpq_class, mpq_class>> stack{{-bound, bound}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    if (sturm.roots_in(a, b) == 0)
      continue;
    if (b - a < step) {
      // (a, b] holds at most one lattice point.
      mpq_class k = ceil_q(a * lead);
      if (k / lead == a)
        k += 1;
      if (k <= floor_q(b * lead) && sgn(evaluate(sqf, k / lead)) == 0)
        roots.push_back(k / lead);
      continue;
    }
    mpq_class mid = (a + b) / 2;
    stack.emplace_back(a, mid);
    stack.emplace_back(mid, b);
  }
  std::sort(roots.begin(), roots.end());
  if (all_rational)
    *all_rational = roots.size() + 1 == sqf.size();
  return roots;
}

Polynomial polynomial_gcd(const Polynomial& a, const Polynomial& b) {
  require_same_context(a.context(), b.context());
  Polynomial g = from_param_poly(a.context(), gcd(to_param_poly(a), to_param_poly(b)));
  return g.is_zero() ? g : g.monic();
}

std::string RationalFirstIntegral::to_string() const {
  std::string num = numerator.to_string();
  std::string den = denominator.to_string();
  if (den == "1")
    return num;
  auto wrap = [](const Polynomial& p, std::string s) { return p.size() > 1 ? "(" + s + ")" : s; };
  return wrap(numerator, num) + " / " + wrap(denominator, den);
}

Polynomial extactic_polynomial(const Derivation& d, int n) {
  if (n < 0)
    throw DomainError("extactic degree must be non-negative");
  const ContextPtr& ctx = d.context();
  auto basis = monomials_up_to(ctx->num_variables(), static_cast<std::uint32_t>(n));
  const std::size_t m = basis.size();
  if (m > 10)
    throw UnsupportedSize("extactic determinant of size " + std::to_string(m) + " exceeds the limit of 10");

  std::vector<std::vector<Polynomial>> a(m);
  for (const auto& mono : basis)
    a[0].push_back(Polynomial::monomial(ctx, mono));
  for (std::size_t i = 1; i < m; ++i)
    for (const auto& p : a[i - 1])
      a[i].push_back(d.apply(p));

  // Fraction-free Bareiss elimination; every division is exact.
  bool negate = false;
  Polynomial prev(ctx, Scalar(1));
  for (std::size_t k = 0; k + 1 < m; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < m && a[r][k].is_zero())
        ++r;
      if (r == m)
        return Polynomial(ctx);
      std::swap(a[k], a[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < m; ++i) {
      for (std::size_t j = k + 1; j < m; ++j) {
        Polynomial t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        auto q = divide_exact(t, prev);
        if (!q)
          throw DomainError("inexact division in fraction-free elimination");
        a[i][j] = std::move(*q);
      }
      a[i][k] = Polynomial(ctx);
    }
    prev = a[k][k];
  }
  Polynomial det = a[m - 1][m - 1];
  return negate ? -det : det;
}

std::optional<Polynomial> darboux_cofactor_check(const Polynomial& f, const Derivation& d) {
  if (f.is_zero())
    throw DomainError("the zero polynomial has no cofactor");
  return divide_exact(d.apply(f), f);
}

CofactorSearch constant_cofactor_search(const Derivation& d, int deg) {
  if (deg < 1)
    throw DomainError("cofactor search degree must be at least 1");
  const ContextPtr& ctx = d.context();
  CofactorSearch out;
  auto basis = monomials_up_to(ctx->num_variables(), static_cast<std::uint32_t>(deg));
  const std::size_t m = basis.size();
  if (m > 60)
    throw UnsupportedSize("space of dimension " + std::to_string(m) + " exceeds the cofactor search limit of 60");
  out.degree_preserving = d.degree() <= 1;
  out.rational_coefficients = std::all_of(d.components().begin(), d.components().end(),
                                          [](const Polynomial& c) { return c.has_rational_coefficients(); });
  if (!out.degree_preserving || !out.rational_coefficients)
    return out;

  std::map<Monomial, std::size_t> index;
  for (std::size_t j = 0; j < m; ++j)
    index.emplace(basis[j], j);
  // Column j holds the coordinates of d(v_j).
  std::vector<std::vector<mpq_class>> t(m, std::vector<mpq_class>(m, 0));
  for (std::size_t j = 0; j < m; ++j) {
    Polynomial image = d.apply(Polynomial::monomial(ctx, basis[j]));
    for (const auto& term : image.terms())
      t[index.at(term.monomial)][j] = term.coefficient.rational();
  }

  bool all_rational = true;
  out.eigenvalues = rational_roots(characteristic_polynomial(t), &all_rational);
  out.non_rational_spectrum = !all_rational;

  for (const auto& lambda : out.eigenvalues) {
    linalg::Echelon rows;
    for (std::size_t i = 0; i < m; ++i) {
      linalg::SparseVector row;
      for (std::size_t j = 0; j < m; ++j) {
        mpq_class v = i == j ? mpq_class(t[i][j] - lambda) : t[i][j];
        if (sgn(v) != 0)
          row.emplace_back(j, Scalar(v));
      }
      rows.insert(std::move(row));
    }
    for (const auto& v : rows.kernel(m)) {
      std::vector<Term> terms;
      for (const auto& [col, c] : v)
        terms.push_back({basis[col], c});
      Polynomial f = Polynomial::from_terms(ctx, std::move(terms));
      if (f.is_constant())
        continue;
      out.pairs.push_back({std::move(f), Polynomial(ctx, Scalar(lambda))});
    }
  }
  return out;
}

std::optional<RationalFirstIntegral> combine_cofactors(const std::vector<DarbouxPair>& pairs) {
  if (pairs.empty())
    throw DomainError("no Darboux pairs to combine");
  const ContextPtr& ctx = pairs.front().f.context();
  const std::size_t s = pairs.size();

  std::map<Monomial, linalg::SparseVector> rows;
  for (std::size_t k = 0; k < s; ++k) {
    require_same_context(ctx, pairs[k].cofactor.context());
    for (const auto& t : pairs[k].cofactor.terms())
      rows[t.monomial].emplace_back(k, t.coefficient);
  }
  linalg::Echelon echelon;
  for (auto& [mono, row] : rows)
    echelon.insert(std::move(row));
  auto kernel = echelon.kernel(s);
  if (kernel.empty())
    return std::nullopt;

  std::vector<mpq_class> v(s, 0);
  for (const auto& [col, c] : kernel.front()) {
    if (!c.is_rational())
      throw DomainError("cofactor relation has parameter coefficients");
    v[col] = c.rational();
  }
  mpz_class den = 1, num = 0;
  for (const auto& q : v)
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  std::vector<mpz_class> e(s);
  for (std::size_t k = 0; k < s; ++k) {
    mpq_class scaled = v[k] * den;
    e[k] = scaled.get_num();
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), e[k].get_mpz_t());
  }
  auto first = std::find_if(e.begin(), e.end(), [](const mpz_class& z) { return sgn(z) != 0; });
  if (sgn(*first) < 0)
    num = -num;
  for (auto& z : e)
    z /= num;

  Polynomial top(ctx, Scalar(1)), bottom(ctx, Scalar(1));
  for (std::size_t k = 0; k < s; ++k) {
    if (sgn(e[k]) == 0)
      continue;
    mpz_class power = abs(e[k]);
    if (power > 1000)
      throw UnsupportedSize("cofactor relation needs exponent " + power.get_str());
    (sgn(e[k]) > 0 ? top : bottom) *= pairs[k].f.pow(static_cast<unsigned>(power.get_ui()));
  }
  if (top.has_rational_coefficients() && bottom.has_rational_coefficients()) {
    Polynomial g = polynomial_gcd(top, bottom);
    if (!g.is_constant()) {
      top = *divide_exact(top, g);
      bottom = *divide_exact(bottom, g);
    }
  }
  Scalar lc = bottom.leading_term().coefficient;
  if (!lc.is_one()) {
    Scalar inv = lc.inverse();
    top = top.scaled(inv);
    bottom = bottom.scaled(inv);
  }
  return RationalFirstIntegral{std::move(top), std::move(bottom), std::move(e)};
}

bool verify_first_integral(const RationalFirstIntegral& fi, const FoliationSpec& foliation) {
  if (fi.denominator.is_zero())
    return false;
  for (const auto& d : foliation.derivations)
    if (!(d.apply(fi.numerator) * fi.denominator - fi.numerator * d.apply(fi.denominator)).is_zero())
      return false;
  return true;
}

FirstIntegralSearch find_first_integral(const FoliationSpec& foliation, int deg) {
  FirstIntegralSearch out;
  for (std::size_t i = 0; i < foliation.size(); ++i) {
    GeneratorSearch g{foliation.names.at(i), constant_cofactor_search(foliation.derivations[i], deg), {}, false};
    if (!g.search.pairs.empty())
      g.candidate = combine_cofactors(g.search.pairs);
    g.verified = g.candidate && verify_first_integral(*g.candidate, foliation);
    if (g.verified && !out.integral)
      out.integral = g.candidate;
    out.generators.push_back(std::move(g));
  }
  return out;
}

} // namespace folia
