#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace folia {

/// Exponent vector over the parameters t1..tk. Trailing zeros are trimmed so
/// that the constant monomial is the empty vector and vectors of different
/// nominal length compare consistently.
using ParamExponents = std::vector<std::uint32_t>;

/// Sparse polynomial in the parameters with rational coefficients.
///
/// Terms are kept sorted ascending in lexicographic order (parameter 0 most
/// significant), so the leading term is the last one. No zero coefficient is
/// ever stored.
class ParamPoly {
public:
  using Term = std::pair<ParamExponents, mpq_class>;

  ParamPoly() = default;
  explicit ParamPoly(mpq_class c);
  static ParamPoly parameter(std::size_t index);
  static ParamPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  /// Constant coefficient value; only meaningful when is_constant().
  mpq_class constant_value() const;
  const Term& leading_term() const { return terms_.back(); }

  /// Highest parameter index occurring with positive exponent, -1 for constants.
  int top_parameter() const;
  std::uint32_t degree_in(std::size_t index) const;
  std::uint32_t total_degree() const;

  ParamPoly operator-() const;
  friend ParamPoly operator+(const ParamPoly& a, const ParamPoly& b);
  friend ParamPoly operator-(const ParamPoly& a, const ParamPoly& b);
  friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b);
  ParamPoly scaled(const mpq_class& c) const;
  ParamPoly& operator+=(const ParamPoly& b) { return *this = *this + b; }
  ParamPoly& operator-=(const ParamPoly& b) { return *this = *this - b; }
  ParamPoly& operator*=(const ParamPoly& b) { return *this = *this * b; }
  friend bool operator==(const ParamPoly& a, const ParamPoly& b) = default;

  /// Quotient a / b when b divides a exactly.
  friend std::optional<ParamPoly> divide_exact(const ParamPoly& a, const ParamPoly& b);

  /// Scales so that the leading coefficient is 1 (zero stays zero).
  ParamPoly monic() const;
  mpq_class evaluate(std::span<const mpq_class> values) const;

  /// Renders with the given parameter names, highest lex term first.
  std::string to_string(std::span<const std::string> names) const;

private:
  std::vector<Term> terms_;
};

/// Greatest common divisor over Q, normalized monic (gcd(0,0) = 0).
ParamPoly gcd(const ParamPoly& a, const ParamPoly& b);

/// Element of Q or of Q(t1..tk).
///
/// Plain rationals are stored inline. Rational functions are stored as a
/// reduced fraction num/den with a monic denominator; a fraction whose numerator
/// and denominator are both constant collapses back to the inline rational, so
/// structural equality is canonical equality.
class Scalar {
public:
  Scalar() = default;
  Scalar(long v) : q_(v) {}
  Scalar(mpq_class v) : q_(std::move(v)) { q_.canonicalize(); }
  static Scalar parameter(std::size_t index);
  /// num/den, reduced. Throws PoleError when den is zero.
  static Scalar fraction(ParamPoly num, ParamPoly den);

  bool is_zero() const { return !f_ && sgn(q_) == 0; }
  bool is_one() const { return !f_ && q_ == 1; }
  bool is_rational() const { return !f_; }
  /// Rational value; throws DomainError for a non-constant rational function.
  const mpq_class& rational() const;
  ParamPoly numerator() const;
  ParamPoly denominator() const;
  /// Highest parameter index this scalar involves, -1 for a rational.
  int top_parameter() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }
  Scalar inverse() const;
  Scalar pow(unsigned e) const;
  friend bool operator==(const Scalar& a, const Scalar& b);

  /// Substitutes rational values for the parameters. Throws PoleError when
  /// the denominator vanishes.
  mpq_class specialize(std::span<const mpq_class> values) const;

  /// Canonical text: "3/2", "-1", "t1", "(t1 + 1)/(t2)".
  std::string to_string(std::span<const std::string> names) const;
  /// True when to_string() is a single factor that needs no parentheses
  /// after a unary sign or inside a product.
  bool is_atomic() const;

private:
  struct Fraction {
    ParamPoly num;
    ParamPoly den;
  };
  static Scalar from_reduced(ParamPoly num, ParamPoly den);

  mpq_class q_;
  std::shared_ptr<const Fraction> f_;
};

std::string rational_to_string(const mpq_class& q);

} // namespace folia
