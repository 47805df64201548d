#pragma once

#include "folia/foliation.hpp"

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace folia {

/// d(f) = cofactor * f.
struct DarbouxPair {
  Polynomial f;
  Polynomial cofactor;
};

/// numerator / denominator with a nonzero denominator whose leading
/// coefficient is 1.
struct RationalFirstIntegral {
  Polynomial numerator;
  Polynomial denominator;
  /// Exponent of each combined Darboux polynomial, when built from pairs.
  std::vector<mpz_class> exponents;

  std::string to_string() const;
};

/// det(d^i(v_j)) over the basis v_1..v_m of F_n, largest monomial first.
/// Throws UnsupportedSize when m > 10.
Polynomial extactic_polynomial(const Derivation& d, int n);

/// The cofactor k with d(f) = k*f, if f divides d(f). Throws DomainError for f = 0.
std::optional<Polynomial> darboux_cofactor_check(const Polynomial& f, const Derivation& d);

struct CofactorSearch {
  std::vector<DarbouxPair> pairs;
  /// Rational eigenvalues of d on F_deg, increasing.
  std::vector<mpq_class> eigenvalues;
  /// False when some component has degree > 1, so d does not act on F_deg;
  /// the search is then skipped.
  bool degree_preserving = true;
  /// False when a coefficient involves a parameter; the search is then skipped.
  bool rational_coefficients = true;
  /// The characteristic polynomial has roots outside Q.
  bool non_rational_spectrum = false;
};

/// Darboux polynomials of degree <= deg with constant cofactor: the
/// non-constant eigenvectors of d acting on F_deg, ordered by eigenvalue and
/// then by basis position. Throws UnsupportedSize when dim F_deg > 60.
CofactorSearch constant_cofactor_search(const Derivation& d, int deg);

/// prod f_i^{m_i} for the first canonical integer relation sum m_i k_i = 0,
/// or std::nullopt when the cofactors are independent. Throws DomainError for
/// an empty list.
std::optional<RationalFirstIntegral> combine_cofactors(const std::vector<DarbouxPair>& pairs);

/// d(num)*den - num*d(den) = 0 for every generator d.
bool verify_first_integral(const RationalFirstIntegral& fi, const FoliationSpec& foliation);

struct GeneratorSearch {
  std::string name;
  CofactorSearch search;
  std::optional<RationalFirstIntegral> candidate;
  /// The candidate is annihilated by every generator of the foliation.
  bool verified = false;
};

struct FirstIntegralSearch {
  std::vector<GeneratorSearch> generators;
  /// First candidate, in generator order, verified against the whole foliation.
  std::optional<RationalFirstIntegral> integral;
};

/// Constant-cofactor search and recombination for each generator in turn.
FirstIntegralSearch find_first_integral(const FoliationSpec& foliation, int deg);

/// Characteristic polynomial det(X*I - m), coefficients from the constant term up.
std::vector<mpq_class> characteristic_polynomial(std::vector<std::vector<mpq_class>> m);

/// Distinct rational roots, increasing; `all_rational` reports whether every
/// complex root was found among them.
std::vector<mpq_class> rational_roots(const std::vector<mpq_class>& poly, bool* all_rational = nullptr);

/// gcd of two polynomials with rational coefficients, normalized monic in
/// grevlex. Throws DomainError on parameter coefficients.
Polynomial polynomial_gcd(const Polynomial& a, const Polynomial& b);

} // namespace folia
