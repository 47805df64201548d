#pragma once

#include "folia/foliation.hpp"
#include "folia/groebner.hpp"
#include "folia/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace folia {

/// A point x at which I(F,x) is computed. Generic points have coordinates
/// involving the declared parameters, which stand for independent
/// transcendentals.
struct EvalPoint {
  enum class Kind { closed, generic };

  std::vector<Scalar> coords;
  Kind kind = Kind::closed;

  /// Tags the point generic iff some coordinate involves a parameter.
  explicit EvalPoint(std::vector<Scalar> coords);
  /// Throws DomainError when a generic tag is requested for a rational point.
  EvalPoint(std::vector<Scalar> coords, Kind kind);

  bool is_generic() const { return kind == Kind::generic; }
};

struct ClosureOptions {
  /// Longest word considered is max(dim F_n, word_cap).
  int word_cap = 12;
  /// Upper bound on the number of functionals visited.
  std::size_t functional_cap = 4096;
};

/// Rows f -> d_I(f)(x) restricted to F_n, adjoined only when they raise the rank.
struct FunctionalMatrix {
  int degree = 0;
  /// Ordered basis of F_n, largest grevlex monomial first.
  std::vector<Monomial> basis;
  std::vector<linalg::SparseVector> rows;
  /// Word I of each row.
  std::vector<Word> words;
  /// Canonical basis of the common kernel of the rows.
  std::vector<Polynomial> kernel;
  /// The kernel provably equals I(F,x) cap F_n: either every functional was
  /// reached, or the ideal spanned by the kernel is stable under F.
  bool certified = false;
  /// Stable ideal generated by the kernel, with its grevlex basis, when that
  /// was the certificate.
  std::optional<Ideal> stable_ideal;
  std::size_t functionals_visited = 0;

  std::size_t rank() const { return rows.size(); }
};

/// Closure of evaluation at x under precomposition with the generators,
/// restricted to F_n.
///
/// Functionals are visited breadth-first through the tuples (d_I(v_j))_j over
/// the basis; a tuple linearly dependent on earlier ones cannot contribute new
/// rows through any descendant and is dropped. The search ends when no tuple
/// remains, when the rank reaches dim F_n, or when a rank stall produces a
/// kernel whose ideal is F-stable. Caps leave certified = false.
FunctionalMatrix functional_matrix(const EvalPoint& x, const FoliationSpec& foliation, int n,
                                   const ClosureOptions& options = {});

/// Kernel of the functional matrix: I(F,x) cap F_n in reduced row echelon
/// form over the graded basis.
std::vector<Polynomial> truncated_invariant_ideal(const EvalPoint& x, const FoliationSpec& foliation, int n,
                                                  const ClosureOptions& options = {});

struct DegreeStep {
  int degree = 0;
  std::size_t basis_size = 0;
  std::size_t rank = 0;
  std::size_t kernel_size = 0;
  int dimension = 0;
  bool certified = false;
};

struct InvariantEstimate {
  int degree = 0;
  std::vector<Polynomial> kernel;
  /// Ideal generated by the kernels of every degree up to `degree`, with a
  /// grevlex basis.
  Ideal ideal;
  DimensionReport dimension;
  /// Equal estimates at degree - 1 and degree.
  bool stabilized = false;
  /// Every truncation was certified exact.
  bool certified = false;
  std::vector<DegreeStep> history;
};

/// Upper bound on dim V(F,x) from the truncations n = 1..n_max.
InvariantEstimate invariant_variety_estimate(const EvalPoint& x, const FoliationSpec& foliation, int n_max,
                                             const ClosureOptions& options = {});

struct ProfileRow {
  std::optional<InvariantEstimate> estimate;
  std::string error;
};

/// One row per point, in input order; a failing point records its error.
std::vector<ProfileRow> nf_profile(const std::vector<EvalPoint>& points, const FoliationSpec& foliation, int n_max,
                                   const ClosureOptions& options = {});

} // namespace folia
