#pragma once

#include "folia/groebner.hpp"
#include "folia/polynomial.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace folia {

/// Polynomial vector field sum_i a_i d/dx_i acting as a derivation.
class Derivation {
public:
  Derivation(ContextPtr ctx, std::vector<Polynomial> components);
  /// The zero field.
  explicit Derivation(ContextPtr ctx);
  /// d/dx_index
  static Derivation partial(ContextPtr ctx, std::size_t index);

  const ContextPtr& context() const { return ctx_; }
  const std::vector<Polynomial>& components() const { return components_; }
  const Polynomial& component(std::size_t i) const { return components_.at(i); }
  bool is_zero() const;
  /// Largest total degree among the components, -1 for the zero field.
  int degree() const;

  Polynomial apply(const Polynomial& f) const;
  Polynomial operator()(const Polynomial& f) const { return apply(f); }

  friend Derivation operator+(const Derivation& a, const Derivation& b);
  friend Derivation operator-(const Derivation& a, const Derivation& b);
  /// g * d, the module action of polynomials on fields.
  friend Derivation operator*(const Polynomial& g, const Derivation& d);
  friend bool operator==(const Derivation& a, const Derivation& b) { return a.components_ == b.components_; }

  /// "u*x d/dx + v*y d/dy"
  std::string to_string() const;

private:
  ContextPtr ctx_;
  std::vector<Polynomial> components_;
};

/// [d1, d2] with components d1(b_i) - d2(a_i).
Derivation lie_bracket(const Derivation& d1, const Derivation& d2);

/// Generating set of the module M_F spanned by a foliation.
struct FoliationSpec {
  std::vector<std::string> names;
  std::vector<Derivation> derivations;
  /// Every pairwise bracket was verified to lie in the module with
  /// coefficients of degree <= closure_degree_cap.
  bool bracket_closed = false;
  int closure_degree_cap = 0;

  std::size_t size() const { return derivations.size(); }
  const ContextPtr& context() const { return derivations.front().context(); }
};

/// Decides whether d = sum_k c_k gens[k] with polynomial c_k of degree <= degree_cap.
bool in_module(const Derivation& d, const std::vector<Derivation>& gens, int degree_cap);

/// Appends brackets that are not already module members until a fixpoint or
/// size_cap generators. Raw names default to D1, D2, ... and appended
/// brackets are named "[A,B]".
FoliationSpec close_under_brackets(const std::vector<Derivation>& gens, int degree_cap, std::size_t size_cap,
                                   std::vector<std::string> names = {});

/// d(g) reduces to zero modulo the ideal for every basis element g and
/// generator d; computes a basis when none is cached.
bool is_stable(const Ideal& ideal, const FoliationSpec& foliation);

/// Generator indices (i1, ..., ik) standing for d_{i1} o ... o d_{ik}.
using Word = std::vector<std::size_t>;

/// d_I(f): the rightmost generator is applied first.
Polynomial apply_word(const FoliationSpec& foliation, const Word& word, const Polynomial& f);

/// The subvariety Y: a point (membership by evaluation) or an ideal
/// (membership by normal form).
class Locus {
public:
  explicit Locus(std::vector<Scalar> point);
  /// Computes a grevlex basis when the ideal carries none.
  explicit Locus(const Ideal& ideal);

  bool is_point() const { return std::holds_alternative<std::vector<Scalar>>(data_); }
  const std::vector<Scalar>& point() const { return std::get<std::vector<Scalar>>(data_); }
  const Ideal& ideal() const { return std::get<Ideal>(data_); }
  bool contains(const Polynomial& f) const;

private:
  std::variant<std::vector<Scalar>, Ideal> data_;
};

/// Maximal ideal of a point with rational (or parameter) coordinates.
Ideal point_ideal(const ContextPtr& ctx, const std::vector<Scalar>& point);

struct ContactOrderResult {
  struct Finite {
    int order;
    Word witness;
  };
  struct Infinite {
    /// Elements of I_Y containing f in their span (or ideal) that is stable
    /// under every generator.
    std::vector<Polynomial> certificate;
    /// The certificate is the reduced basis of a stable ideal rather than a
    /// basis of a stable vector space.
    bool ideal = false;
  };
  struct AtLeast {
    int bound;
  };
  std::variant<Finite, Infinite, AtLeast> value;

  bool is_finite() const { return std::holds_alternative<Finite>(value); }
  bool is_infinite() const { return std::holds_alternative<Infinite>(value); }
  bool is_at_least() const { return std::holds_alternative<AtLeast>(value); }
  int order() const { return std::get<Finite>(value).order; }
};

struct ContactOrderOptions {
  int word_cap = 12;
  std::size_t span_cap = 64;
  /// Upper bound on the dimension of span{d_I(f) : |I| = k} for one k.
  std::size_t level_budget = 4096;
};

/// Contact order of f along Y: the least |I| with d_I(f) not in I_Y.
///
/// Words are ordered by increasing length and lexicographically within a
/// length; the witness is the first word in that order leaving I_Y. When every
/// word up to word_cap stays in I_Y, the answer is upgraded to Infinite by a
/// finite stable span inside I_Y, or else by a stable ideal generated by
/// derivatives d_I(f) already known to lie in I_Y; otherwise it is
/// AtLeast(word_cap + 1).
ContactOrderResult contact_order(const Polynomial& f, const FoliationSpec& foliation, const Locus& locus,
                                 const ContactOrderOptions& options = {});

/// Basis of span{d_I(f) : all words I}, grown breadth-first, in the order the
/// elements were adjoined; std::nullopt when it exceeds dim_cap.
std::optional<std::vector<Polynomial>> stable_span(const Polynomial& f, const FoliationSpec& foliation,
                                                   std::size_t dim_cap = 64);

std::string word_to_string(const Word& word, const FoliationSpec& foliation);

} // namespace folia
