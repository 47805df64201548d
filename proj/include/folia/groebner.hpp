#pragma once

#include "folia/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace folia {

/// Ideal given by generators, with an optional cached reduced Groebner basis.
///
/// A cached basis is reduced: monic, and no term of any element is divisible
/// by the leading monomial of another element. Basis elements are sorted by
/// increasing leading monomial in the cached order.
class Ideal {
public:
  explicit Ideal(ContextPtr ctx, std::vector<Polynomial> generators = {});

  const ContextPtr& context() const { return ctx_; }
  const std::vector<Polynomial>& generators() const { return generators_; }
  bool has_basis() const { return basis_.has_value(); }
  /// Throws DomainError when no basis has been computed.
  const std::vector<Polynomial>& basis() const;
  MonomialOrder basis_order() const { return order_; }
  bool is_unit() const;

private:
  friend Ideal groebner_basis(const Ideal& ideal, MonomialOrder order);

  ContextPtr ctx_;
  std::vector<Polynomial> generators_;
  std::optional<std::vector<Polynomial>> basis_;
  MonomialOrder order_{};
};

/// Reduced Groebner basis by Buchberger's algorithm with the coprime and
/// chain criteria and normal selection strategy. Returns a copy of the ideal
/// carrying the basis.
Ideal groebner_basis(const Ideal& ideal, MonomialOrder order = {});

/// Fully reduced remainder of p modulo the cached basis; zero iff p in I.
/// Throws DomainError when the ideal carries no basis.
Polynomial normal_form(const Polynomial& p, const Ideal& ideal);

/// Decides p in I, computing a grevlex basis when none is cached.
bool ideal_membership(const Polynomial& p, const Ideal& ideal);

/// Leading monomial of p in the given order; precondition !p.is_zero().
const Monomial& leading_monomial(const Polynomial& p, MonomialOrder order);

/// S-polynomial of two polynomials in the given order.
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, MonomialOrder order);

struct DimensionReport {
  /// Krull dimension of V(I); -1 for the unit ideal.
  int dimension = 0;
  /// Variable indices of a maximal independent set modulo the leading ideal.
  std::vector<std::size_t> witness;
};

/// Dimension by the staircase method: the largest variable subset S such that
/// no leading monomial of the basis lies in k[S]. At most 12 variables.
DimensionReport ideal_dimension(const Ideal& ideal);

/// h_I(n) = dim F_n - dim (I cap F_n), counted as the grevlex standard
/// monomials of degree <= n.
std::uint64_t hilbert_h(const Ideal& ideal, std::uint32_t n);

} // namespace folia
