#pragma once

#include "folia/scalar.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace folia {

/// Ordered variable and parameter names shared by every polynomial of a
/// computation. Names are unique across both lists.
class VariableContext {
public:
  VariableContext(std::vector<std::string> variables, std::vector<std::string> parameters = {});

  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<std::string>& parameters() const { return parameters_; }
  std::size_t num_variables() const { return variables_.size(); }
  std::size_t num_parameters() const { return parameters_.size(); }
  std::optional<std::size_t> variable_index(const std::string& name) const;
  std::optional<std::size_t> parameter_index(const std::string& name) const;
  /// "vars(u,v,x,y) params(t1,t2)"
  std::string describe() const;

  friend bool operator==(const VariableContext& a, const VariableContext& b) {
    return a.variables_ == b.variables_ && a.parameters_ == b.parameters_;
  }

private:
  std::vector<std::string> variables_;
  std::vector<std::string> parameters_;
};

using ContextPtr = std::shared_ptr<const VariableContext>;

ContextPtr make_context(std::vector<std::string> variables, std::vector<std::string> parameters = {});

/// Exponent vector with one slot per declared variable.
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps);
  static Monomial variable(std::size_t nvars, std::size_t index, std::uint32_t power = 1);

  std::size_t size() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }
  std::uint32_t degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  bool divides(const Monomial& m) const;
  /// m / *this; precondition divides(m).
  Monomial quotient_of(const Monomial& m) const;
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  bool coprime(const Monomial& other) const;
  /// True when the monomial only involves variables flagged in `allowed`.
  bool supported_in(const std::vector<bool>& allowed) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
  /// Plain lexicographic comparison of exponent vectors, for use as a map key.
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.exps_ < b.exps_; }

private:
  std::vector<std::uint32_t> exps_;
  std::uint32_t degree_ = 0;
};

enum class OrderTag { grevlex, lex };

/// Monomial order over the context's variable order (first variable largest).
struct MonomialOrder {
  OrderTag tag = OrderTag::grevlex;
  /// Negative, zero or positive as a < b, a == b, a > b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }
  std::string name() const { return tag == OrderTag::grevlex ? "grevlex" : "lex"; }
};

int grevlex_compare(const Monomial& a, const Monomial& b);
int lex_compare(const Monomial& a, const Monomial& b);

/// All monomials of total degree <= degree in nvars variables, largest first
/// in grevlex. This is the ordered basis of F_degree used everywhere.
std::vector<Monomial> monomials_up_to(std::size_t nvars, std::uint32_t degree);

struct Term {
  Monomial monomial;
  Scalar coefficient;
};

/// Sparse multivariate polynomial with Scalar coefficients.
///
/// Terms are stored sorted by decreasing grevlex order and no zero
/// coefficient is ever stored; two polynomials over the same context are
/// equal iff their term lists are equal.
class Polynomial {
public:
  explicit Polynomial(ContextPtr ctx);
  Polynomial(ContextPtr ctx, Scalar constant);
  static Polynomial variable(ContextPtr ctx, std::size_t index);
  static Polynomial monomial(ContextPtr ctx, Monomial m, Scalar c = Scalar(1));
  /// Builds from arbitrary terms: sorts, merges duplicates, drops zeros.
  static Polynomial from_terms(ContextPtr ctx, std::vector<Term> terms);

  const ContextPtr& context() const { return ctx_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  /// Leading term in grevlex; precondition !is_zero().
  const Term& leading_term() const { return terms_.front(); }
  Scalar coefficient(const Monomial& m) const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }
  Polynomial scaled(const Scalar& c) const;
  Polynomial times_monomial(const Monomial& m, const Scalar& c) const;
  Polynomial pow(unsigned e) const;
  /// Divides every coefficient by the leading one.
  Polynomial monic() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  /// Formal partial derivative with respect to variable var_index.
  Polynomial derivative(std::size_t var_index) const;
  /// Exact value at a point given as one Scalar per variable.
  Scalar evaluate(std::span<const Scalar> point) const;
  /// Substitutes rational values for named parameters. Every parameter that
  /// occurs must be assigned; throws PoleError when a denominator vanishes.
  Polynomial specialize_params(const std::map<std::string, mpq_class>& assignment) const;
  /// True when every coefficient is a plain rational.
  bool has_rational_coefficients() const;

  /// Canonical rendering, e.g. "3/2*x^2*y - 1".
  std::string to_string() const;

private:
  Polynomial(ContextPtr ctx, std::vector<Term> sorted_terms, bool);

  ContextPtr ctx_;
  std::vector<Term> terms_;
};

/// Quotient a / b when b divides a exactly (multivariate division with zero
/// remainder), std::nullopt otherwise. Throws DomainError when b is zero.
std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

/// Throws ContextMismatch unless both contexts are structurally equal.
void require_same_context(const ContextPtr& a, const ContextPtr& b);

/// Evaluates many polynomials at one point, caching coordinate powers.
class PointEvaluator {
public:
  explicit PointEvaluator(std::vector<Scalar> point);
  Scalar operator()(const Polynomial& p) const;
  const std::vector<Scalar>& point() const { return point_; }

private:
  const Scalar& power(std::size_t var, std::uint32_t e) const;

  std::vector<Scalar> point_;
  mutable std::vector<std::vector<Scalar>> powers_;
};

} // namespace folia
