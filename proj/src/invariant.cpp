#include "folia/invariant.hpp"

#include "folia/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace folia {

namespace {

using Tuple = std::vector<Polynomial>;

// Linear span of tuples of polynomials, keyed by (slot, monomial).
class TupleSpan {
public:
  bool insert(const Tuple& t) {
    linalg::SparseVector v;
    for (std::size_t j = 0; j < t.size(); ++j)
      for (const auto& term : t[j].terms()) {
        auto [it, fresh] = columns_.try_emplace({j, term.monomial}, columns_.size());
        v.emplace_back(it->second, term.coefficient);
      }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return echelon_.insert(std::move(v));
  }

private:
  std::map<std::pair<std::size_t, Monomial>, std::size_t> columns_;
  linalg::Echelon echelon_;
};

std::vector<Polynomial> to_polynomials(const ContextPtr& ctx, const std::vector<linalg::SparseVector>& vectors,
                                       const std::vector<Monomial>& basis) {
  std::vector<Polynomial> out;
  out.reserve(vectors.size());
  for (const auto& v : vectors) {
    std::vector<Term> terms;
    for (const auto& [col, c] : v)
      terms.push_back({basis[col], c});
    out.push_back(Polynomial::from_terms(ctx, std::move(terms)));
  }
  return out;
}

// Generators in increasing grevlex order, so that low-degree elements such as
// u - 1 enter Buchberger first and reduce the rest on insertion.
Ideal ascending_ideal(const ContextPtr& ctx, std::vector<Polynomial> gens) {
  std::stable_sort(gens.begin(), gens.end(), [](const Polynomial& a, const Polynomial& b) {
    return grevlex_compare(a.leading_term().monomial, b.leading_term().monomial) < 0;
  });
  return Ideal(ctx, std::move(gens));
}

// The ideal J spanned by the kernel is F-stable iff d(g) reduces to zero for
// every basis element g and generator d.
std::optional<Ideal> stable_kernel_ideal(const ContextPtr& ctx, const std::vector<Polynomial>& kernel,
                                         const FoliationSpec& foliation) {
  Ideal j = groebner_basis(ascending_ideal(ctx, kernel));
  if (!is_stable(j, foliation))
    return std::nullopt;
  return j;
}

} // namespace

EvalPoint::EvalPoint(std::vector<Scalar> c) : coords(std::move(c)) {
  bool generic = std::any_of(coords.begin(), coords.end(), [](const Scalar& s) { return !s.is_rational(); });
  kind = generic ? Kind::generic : Kind::closed;
}

EvalPoint::EvalPoint(std::vector<Scalar> c, Kind k) : coords(std::move(c)), kind(k) {
  bool generic = std::any_of(coords.begin(), coords.end(), [](const Scalar& s) { return !s.is_rational(); });
  if (k == Kind::generic && !generic)
    throw DomainError("a generic point needs a coordinate involving a parameter");
}

FunctionalMatrix functional_matrix(const EvalPoint& x, const FoliationSpec& foliation, int n,
                                   const ClosureOptions& options) {
  if (n < 0)
    throw DomainError("truncation degree must be non-negative");
  if (foliation.derivations.empty())
    throw DomainError("a foliation needs at least one generator");
  const ContextPtr& ctx = foliation.context();
  const std::size_t nvars = ctx->num_variables();
  if (x.coords.size() != nvars)
    throw ArityError("point has " + std::to_string(x.coords.size()) + " coordinates, expected " +
                     std::to_string(nvars));

  FunctionalMatrix fm;
  fm.degree = n;
  fm.basis = monomials_up_to(nvars, static_cast<std::uint32_t>(n));
  const std::size_t m = fm.basis.size();
  const std::size_t depth_cap = std::max(m, static_cast<std::size_t>(std::max(options.word_cap, 0)));

  PointEvaluator ev(x.coords);
  linalg::Echelon echelon;
  TupleSpan tuples;
  std::deque<std::pair<Word, Tuple>> queue;

  Tuple start;
  start.reserve(m);
  for (const auto& mono : fm.basis)
    start.push_back(Polynomial::monomial(ctx, mono));
  tuples.insert(start);
  queue.emplace_back(Word{}, std::move(start));

  auto kernel_now = [&] { return to_polynomials(ctx, echelon.kernel(m), fm.basis); };

  bool truncated = false;
  bool grew_since_attempt = false;
  while (!queue.empty()) {
    auto [word, tuple] = std::move(queue.front());
    queue.pop_front();
    if (++fm.functionals_visited > options.functional_cap) {
      truncated = true;
      break;
    }

    linalg::SparseVector row;
    for (std::size_t j = 0; j < m; ++j) {
      Scalar value = ev(tuple[j]);
      if (!value.is_zero())
        row.emplace_back(j, std::move(value));
    }
    if (echelon.insert(row)) {
      fm.rows.push_back(std::move(row));
      fm.words.push_back(word);
      grew_since_attempt = true;
      if (echelon.rank() == m) {
        fm.certified = true;
        break;
      }
    } else if (grew_since_attempt) {
      grew_since_attempt = false;
      if (auto j = stable_kernel_ideal(ctx, kernel_now(), foliation)) {
        fm.certified = true;
        fm.stable_ideal = std::move(j);
        break;
      }
    }

    if (word.size() >= depth_cap) {
      truncated = true;
      continue;
    }
    for (std::size_t i = 0; i < foliation.size(); ++i) {
      Tuple child;
      child.reserve(m);
      for (const auto& p : tuple)
        child.push_back(foliation.derivations[i].apply(p));
      if (!tuples.insert(child))
        continue;
      Word w;
      w.reserve(word.size() + 1);
      w.push_back(i);
      w.insert(w.end(), word.begin(), word.end());
      queue.emplace_back(std::move(w), std::move(child));
    }
  }
  if (queue.empty() && !truncated)
    fm.certified = true;
  fm.kernel = kernel_now();
  return fm;
}

std::vector<Polynomial> truncated_invariant_ideal(const EvalPoint& x, const FoliationSpec& foliation, int n,
                                                  const ClosureOptions& options) {
  return functional_matrix(x, foliation, n, options).kernel;
}

InvariantEstimate invariant_variety_estimate(const EvalPoint& x, const FoliationSpec& foliation, int n_max,
                                             const ClosureOptions& options) {
  if (n_max < 1)
    throw DomainError("n_max must be at least 1");
  const ContextPtr& ctx = foliation.context();
  InvariantEstimate est{0, {}, groebner_basis(Ideal(ctx)), {}, false, true, {}};
  est.dimension = ideal_dimension(est.ideal);
  bool all_certified = true;

  for (int n = 1; n <= n_max; ++n) {
    FunctionalMatrix fm = functional_matrix(x, foliation, n, options);
    // Exact truncations nest, so a certified kernel already spans every
    // earlier one; otherwise take the union to keep the estimate monotone.
    if (fm.stable_ideal && all_certified) {
      est.ideal = *fm.stable_ideal;
    } else {
      std::vector<Polynomial> gens = est.ideal.basis();
      gens.insert(gens.end(), fm.kernel.begin(), fm.kernel.end());
      est.ideal = groebner_basis(ascending_ideal(ctx, std::move(gens)));
    }
    all_certified = all_certified && fm.certified;
    int previous = est.dimension.dimension;
    est.dimension = ideal_dimension(est.ideal);
    est.degree = n;
    est.kernel = std::move(fm.kernel);
    est.stabilized = n > 1 && previous == est.dimension.dimension;
    est.history.push_back({n, fm.basis.size(), fm.rank(), est.kernel.size(), est.dimension.dimension, fm.certified});
  }
  est.certified = all_certified;
  return est;
}

std::vector<ProfileRow> nf_profile(const std::vector<EvalPoint>& points, const FoliationSpec& foliation, int n_max,
                                   const ClosureOptions& options) {
  if (points.empty())
    throw DomainError("profile needs at least one point");
  std::vector<ProfileRow> rows;
  rows.reserve(points.size());
  for (const auto& p : points) {
    ProfileRow row;
    try {
      row.estimate = invariant_variety_estimate(p, foliation, n_max, options);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace folia
