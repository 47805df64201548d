#include "folia/groebner.hpp"

#include "folia/errors.hpp"

#include <algorithm>
#include <set>

namespace folia {

namespace {

// Terms sorted by decreasing order; the working representation of Buchberger.
struct OrderedPoly {
  std::vector<Term> terms;
  bool empty() const { return terms.empty(); }
  const Monomial& lm() const { return terms.front().monomial; }
};

OrderedPoly to_ordered(const Polynomial& p, MonomialOrder order) {
  OrderedPoly o{p.terms()};
  if (order.tag != OrderTag::grevlex)
    std::sort(o.terms.begin(), o.terms.end(),
              [&](const Term& a, const Term& b) { return order.compare(a.monomial, b.monomial) > 0; });
  return o;
}

Polynomial from_ordered(const ContextPtr& ctx, OrderedPoly p) { return Polynomial::from_terms(ctx, std::move(p.terms)); }

// p - c * m * g, merged in the given order.
OrderedPoly sub_multiple(const OrderedPoly& p, const Scalar& c, const Monomial& m, const OrderedPoly& g,
                         MonomialOrder order) {
  OrderedPoly out;
  out.terms.reserve(p.terms.size() + g.terms.size());
  auto i = p.terms.begin();
  auto j = g.terms.begin();
  while (i != p.terms.end() || j != g.terms.end()) {
    if (j == g.terms.end()) {
      out.terms.push_back(*i++);
      continue;
    }
    Monomial gm = j->monomial * m;
    int cmp = i == p.terms.end() ? -1 : order.compare(i->monomial, gm);
    if (cmp > 0) {
      out.terms.push_back(*i++);
    } else if (cmp < 0) {
      out.terms.push_back({std::move(gm), -(c * j->coefficient)});
      ++j;
    } else {
      Scalar s = i->coefficient - c * j->coefficient;
      if (!s.is_zero())
        out.terms.push_back({std::move(gm), std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

OrderedPoly make_monic(OrderedPoly p) {
  if (p.empty() || p.terms.front().coefficient.is_one())
    return p;
  Scalar inv = p.terms.front().coefficient.inverse();
  for (auto& t : p.terms)
    t.coefficient *= inv;
  return p;
}

// Full reduction of p by the monic polynomials in basis (skipping index `skip`).
OrderedPoly reduce(OrderedPoly p, const std::vector<OrderedPoly>& basis, MonomialOrder order,
                   std::size_t skip = static_cast<std::size_t>(-1)) {
  OrderedPoly remainder;
  while (!p.empty()) {
    const Term& lt = p.terms.front();
    const OrderedPoly* divisor = nullptr;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (k == skip || basis[k].empty())
        continue;
      if (basis[k].lm().divides(lt.monomial)) {
        divisor = &basis[k];
        break;
      }
    }
    if (divisor) {
      Monomial q = divisor->lm().quotient_of(lt.monomial);
      Scalar c = lt.coefficient; // divisor is monic
      p = sub_multiple(p, c, q, *divisor, order);
    } else {
      remainder.terms.push_back(std::move(p.terms.front()));
      p.terms.erase(p.terms.begin());
    }
  }
  return remainder;
}

OrderedPoly spoly(const OrderedPoly& f, const OrderedPoly& g, MonomialOrder order) {
  Monomial l = lcm(f.lm(), g.lm());
  Monomial mf = f.lm().quotient_of(l);
  Monomial mg = g.lm().quotient_of(l);
  OrderedPoly a;
  a.terms.reserve(f.terms.size());
  Scalar cf = f.terms.front().coefficient.inverse();
  for (const auto& t : f.terms)
    a.terms.push_back({t.monomial * mf, t.coefficient * cf});
  Scalar cg = g.terms.front().coefficient.inverse();
  return sub_multiple(a, cg, mg, g, order);
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

std::vector<Polynomial> buchberger(const ContextPtr& ctx, const std::vector<Polynomial>& gens, MonomialOrder order) {
  std::vector<OrderedPoly> basis;
  std::vector<Pair> pending;
  std::set<std::pair<std::size_t, std::size_t>> pending_keys;
  bool unit = false;

  auto add = [&](OrderedPoly h) {
    h = make_monic(std::move(h));
    if (h.lm().is_one())
      unit = true;
    std::size_t k = basis.size();
    for (std::size_t i = 0; i < k; ++i) {
      pending.push_back({i, k, lcm(basis[i].lm(), h.lm())});
      pending_keys.insert({i, k});
    }
    basis.push_back(std::move(h));
  };

  for (const auto& g : gens) {
    OrderedPoly h = reduce(to_ordered(g, order), basis, order);
    if (!h.empty())
      add(std::move(h));
    if (unit)
      break;
  }

  while (!pending.empty() && !unit) {
    // Normal strategy: smallest lcm first, ties broken by pair indices.
    auto best = std::min_element(pending.begin(), pending.end(), [&](const Pair& a, const Pair& b) {
      int c = order.compare(a.lcm, b.lcm);
      if (c != 0)
        return c < 0;
      return std::tie(a.j, a.i) < std::tie(b.j, b.i);
    });
    Pair p = *best;
    pending.erase(best);
    pending_keys.erase({p.i, p.j});

    if (basis[p.i].lm().coprime(basis[p.j].lm()))
      continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == p.i || k == p.j || !basis[k].lm().divides(p.lcm))
        continue;
      auto key = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
      chain = !pending_keys.count(key(p.i, k)) && !pending_keys.count(key(p.j, k));
    }
    if (chain)
      continue;
    OrderedPoly h = reduce(spoly(basis[p.i], basis[p.j], order), basis, order);
    if (!h.empty())
      add(std::move(h));
  }

  if (unit)
    return {Polynomial(ctx, Scalar(1))};

  // Minimize, then tail-reduce.
  std::vector<OrderedPoly> minimal;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    bool redundant = false;
    for (std::size_t b = 0; b < basis.size() && !redundant; ++b) {
      if (a == b || !basis[b].lm().divides(basis[a].lm()))
        continue;
      redundant = !(basis[b].lm() == basis[a].lm()) || b < a;
    }
    if (!redundant)
      minimal.push_back(basis[a]);
  }
  std::vector<OrderedPoly> reduced;
  for (std::size_t a = 0; a < minimal.size(); ++a) {
    OrderedPoly tail{std::vector<Term>(minimal[a].terms.begin() + 1, minimal[a].terms.end())};
    OrderedPoly r = reduce(std::move(tail), minimal, order, a);
    r.terms.insert(r.terms.begin(), minimal[a].terms.front());
    reduced.push_back(std::move(r));
  }
  std::sort(reduced.begin(), reduced.end(),
            [&](const OrderedPoly& a, const OrderedPoly& b) { return order.compare(a.lm(), b.lm()) < 0; });
  std::vector<Polynomial> out;
  out.reserve(reduced.size());
  for (auto& r : reduced)
    out.push_back(from_ordered(ctx, std::move(r)));
  return out;
}

const std::vector<Polynomial>& grevlex_basis(const Ideal& ideal, std::optional<Ideal>& storage) {
  if (ideal.has_basis() && ideal.basis_order().tag == OrderTag::grevlex)
    return ideal.basis();
  storage = groebner_basis(ideal, MonomialOrder{OrderTag::grevlex});
  return storage->basis();
}

} // namespace

Ideal::Ideal(ContextPtr ctx, std::vector<Polynomial> generators)
    : ctx_(std::move(ctx)), generators_(std::move(generators)) {
  for (const auto& g : generators_)
    require_same_context(ctx_, g.context());
}

const std::vector<Polynomial>& Ideal::basis() const {
  if (!basis_)
    throw DomainError("ideal has no cached Groebner basis; call groebner_basis first");
  return *basis_;
}

bool Ideal::is_unit() const {
  if (basis_)
    return basis_->size() == 1 && basis_->front().is_constant();
  return groebner_basis(*this).is_unit();
}

Ideal groebner_basis(const Ideal& ideal, MonomialOrder order) {
  if (ideal.basis_ && ideal.order_.tag == order.tag)
    return ideal;
  Ideal out = ideal;
  out.basis_ = buchberger(ideal.ctx_, ideal.generators_, order);
  out.order_ = order;
  return out;
}

const Monomial& leading_monomial(const Polynomial& p, MonomialOrder order) {
  if (p.is_zero())
    throw DomainError("leading monomial of the zero polynomial");
  const Term* best = &p.terms().front();
  if (order.tag != OrderTag::grevlex)
    for (const auto& t : p.terms())
      if (order.compare(t.monomial, best->monomial) > 0)
        best = &t;
  return best->monomial;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, MonomialOrder order) {
  require_same_context(f.context(), g.context());
  return from_ordered(f.context(), spoly(to_ordered(f, order), to_ordered(g, order), order));
}

Polynomial normal_form(const Polynomial& p, const Ideal& ideal) {
  require_same_context(p.context(), ideal.context());
  const auto& basis = ideal.basis();
  MonomialOrder order = ideal.basis_order();
  std::vector<OrderedPoly> ob;
  ob.reserve(basis.size());
  for (const auto& b : basis)
    ob.push_back(to_ordered(b, order));
  return from_ordered(p.context(), reduce(to_ordered(p, order), ob, order));
}

bool ideal_membership(const Polynomial& p, const Ideal& ideal) {
  if (p.is_zero())
    return true;
  if (ideal.has_basis())
    return normal_form(p, ideal).is_zero();
  return normal_form(p, groebner_basis(ideal)).is_zero();
}

DimensionReport ideal_dimension(const Ideal& ideal) {
  const std::size_t n = ideal.context()->num_variables();
  if (n > 12)
    throw UnsupportedSize("ideal_dimension supports at most 12 variables, got " + std::to_string(n));
  std::optional<Ideal> storage;
  const auto& basis = ideal.has_basis() ? ideal.basis() : (storage = groebner_basis(ideal))->basis();
  MonomialOrder order = storage ? storage->basis_order() : ideal.basis_order();
  if (basis.size() == 1 && basis.front().is_constant())
    return {-1, {}};
  std::vector<Monomial> leads;
  for (const auto& b : basis)
    leads.push_back(leading_monomial(b, order));

  for (std::size_t size = n + 1; size-- > 0;) {
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      bool independent = std::none_of(leads.begin(), leads.end(), [&](const Monomial& m) { return m.supported_in(mask); });
      if (independent) {
        DimensionReport r{static_cast<int>(size), {}};
        for (std::size_t i = 0; i < n; ++i)
          if (mask[i])
            r.witness.push_back(i);
        return r;
      }
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  // Unreachable for proper ideals: the empty set is always independent.
  return {-1, {}};
}

std::uint64_t hilbert_h(const Ideal& ideal, std::uint32_t n) {
  std::optional<Ideal> storage;
  const auto& basis = grevlex_basis(ideal, storage);
  if (basis.size() == 1 && basis.front().is_constant())
    return 0;
  std::vector<Monomial> leads;
  for (const auto& b : basis)
    leads.push_back(b.leading_term().monomial);
  std::uint64_t count = 0;
  for (const auto& m : monomials_up_to(ideal.context()->num_variables(), n))
    if (std::none_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(m); }))
      ++count;
  return count;
}

} // namespace folia
