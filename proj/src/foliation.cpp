#include "folia/foliation.hpp"

#include "folia/errors.hpp"
#include "folia/linalg.hpp"

#include <algorithm>
#include <map>

namespace folia {

namespace {

// Echelon basis of a space of polynomials; columns are assigned to monomials
// on first sight, which is all the elimination needs.
class PolySpan {
public:
  bool insert(const Polynomial& p) {
    if (!echelon_.insert(to_vector(p)))
      return false;
    basis_.push_back(p);
    return true;
  }
  const std::vector<Polynomial>& basis() const { return basis_; }

private:
  linalg::SparseVector to_vector(const Polynomial& p) {
    linalg::SparseVector v;
    v.reserve(p.size());
    for (const auto& t : p.terms()) {
      auto [it, fresh] = columns_.try_emplace(t.monomial, columns_.size());
      v.emplace_back(it->second, t.coefficient);
    }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  }

  std::map<Monomial, std::size_t> columns_;
  linalg::Echelon echelon_;
  std::vector<Polynomial> basis_;
};

// Column key of a module element: (component, monomial).
using ModuleKey = std::pair<std::size_t, Monomial>;

linalg::SparseVector module_vector(const Derivation& d, std::map<ModuleKey, std::size_t>& columns) {
  linalg::SparseVector v;
  for (std::size_t i = 0; i < d.components().size(); ++i)
    for (const auto& t : d.component(i).terms()) {
      auto [it, fresh] = columns.try_emplace(ModuleKey{i, t.monomial}, columns.size());
      v.emplace_back(it->second, t.coefficient);
    }
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

} // namespace

bool is_stable(const Ideal& ideal, const FoliationSpec& foliation) {
  Ideal j = ideal.has_basis() ? ideal : groebner_basis(ideal);
  for (const auto& g : j.basis())
    for (const auto& d : foliation.derivations)
      if (!normal_form(d.apply(g), j).is_zero())
        return false;
  return true;
}

Derivation::Derivation(ContextPtr ctx, std::vector<Polynomial> components)
    : ctx_(std::move(ctx)), components_(std::move(components)) {
  if (components_.size() != ctx_->num_variables())
    throw ArityError("derivation has " + std::to_string(components_.size()) + " components but the context declares " +
                     std::to_string(ctx_->num_variables()) + " variables");
  for (const auto& c : components_)
    require_same_context(ctx_, c.context());
}

Derivation::Derivation(ContextPtr ctx) : ctx_(ctx), components_(ctx->num_variables(), Polynomial(ctx)) {}

Derivation Derivation::partial(ContextPtr ctx, std::size_t index) {
  if (index >= ctx->num_variables())
    throw ArityError("no variable with index " + std::to_string(index));
  Derivation d(ctx);
  d.components_[index] = Polynomial(ctx, Scalar(1));
  return d;
}

bool Derivation::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

int Derivation::degree() const {
  int d = -1;
  for (const auto& c : components_)
    d = std::max(d, c.degree());
  return d;
}

Polynomial Derivation::apply(const Polynomial& f) const {
  require_same_context(ctx_, f.context());
  Polynomial out(ctx_);
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (components_[i].is_zero())
      continue;
    Polynomial df = f.derivative(i);
    if (!df.is_zero())
      out += components_[i] * df;
  }
  return out;
}

Derivation operator+(const Derivation& a, const Derivation& b) {
  require_same_context(a.ctx_, b.ctx_);
  Derivation out = a;
  for (std::size_t i = 0; i < out.components_.size(); ++i)
    out.components_[i] += b.components_[i];
  return out;
}

Derivation operator-(const Derivation& a, const Derivation& b) {
  require_same_context(a.ctx_, b.ctx_);
  Derivation out = a;
  for (std::size_t i = 0; i < out.components_.size(); ++i)
    out.components_[i] -= b.components_[i];
  return out;
}

Derivation operator*(const Polynomial& g, const Derivation& d) {
  require_same_context(g.context(), d.ctx_);
  Derivation out = d;
  for (auto& c : out.components_)
    c = g * c;
  return out;
}

std::string Derivation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const Polynomial& c = components_[i];
    if (c.is_zero())
      continue;
    std::string coeff = c.to_string();
    bool negative = c.size() == 1 && coeff.front() == '-';
    if (negative)
      coeff.erase(0, 1);
    if (c.size() > 1)
      coeff = "(" + coeff + ")";
    if (out.empty())
      out = negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    out += (coeff == "1" ? "" : coeff + " ") + "d/d" + ctx_->variables()[i];
  }
  return out.empty() ? "0" : out;
}

Derivation lie_bracket(const Derivation& d1, const Derivation& d2) {
  require_same_context(d1.context(), d2.context());
  std::vector<Polynomial> comps;
  comps.reserve(d1.components().size());
  for (std::size_t i = 0; i < d1.components().size(); ++i)
    comps.push_back(d1.apply(d2.component(i)) - d2.apply(d1.component(i)));
  return Derivation(d1.context(), std::move(comps));
}

bool in_module(const Derivation& d, const std::vector<Derivation>& gens, int degree_cap) {
  if (d.is_zero())
    return true;
  if (gens.empty() || degree_cap < 0)
    return false;
  const ContextPtr& ctx = d.context();
  std::map<ModuleKey, std::size_t> columns;
  linalg::SparseVector rhs = module_vector(d, columns);
  std::vector<linalg::SparseVector> unknowns;
  for (const auto& g : gens) {
    require_same_context(ctx, g.context());
    for (const auto& m : monomials_up_to(ctx->num_variables(), static_cast<std::uint32_t>(degree_cap)))
      unknowns.push_back(module_vector(Polynomial::monomial(ctx, m) * g, columns));
  }
  return linalg::solve(unknowns, rhs).has_value();
}

FoliationSpec close_under_brackets(const std::vector<Derivation>& gens, int degree_cap, std::size_t size_cap,
                                   std::vector<std::string> names) {
  if (gens.empty())
    throw DomainError("a foliation needs at least one generator");
  if (names.empty())
    for (std::size_t i = 0; i < gens.size(); ++i)
      names.push_back("D" + std::to_string(i + 1));
  if (names.size() != gens.size())
    throw ArityError("generator names do not match the generators");

  FoliationSpec spec{std::move(names), gens, true, degree_cap};
  // Pairs are visited column by column, so generators appended on the way get
  // their own pairs checked before the loop ends.
  for (std::size_t j = 1; j < spec.derivations.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      Derivation b = lie_bracket(spec.derivations[i], spec.derivations[j]);
      if (in_module(b, spec.derivations, degree_cap))
        continue;
      if (spec.derivations.size() >= size_cap) {
        spec.bracket_closed = false;
        return spec;
      }
      spec.names.push_back("[" + spec.names[i] + "," + spec.names[j] + "]");
      spec.derivations.push_back(std::move(b));
    }
  return spec;
}

Polynomial apply_word(const FoliationSpec& foliation, const Word& word, const Polynomial& f) {
  Polynomial out = f;
  for (auto it = word.rbegin(); it != word.rend() && !out.is_zero(); ++it)
    out = foliation.derivations.at(*it).apply(out);
  return out;
}

Locus::Locus(std::vector<Scalar> point) : data_(std::move(point)) {}

Locus::Locus(const Ideal& ideal) : data_(ideal.has_basis() ? ideal : groebner_basis(ideal)) {}

bool Locus::contains(const Polynomial& f) const {
  if (f.is_zero())
    return true;
  if (is_point())
    return f.evaluate(point()).is_zero();
  return normal_form(f, ideal()).is_zero();
}

Ideal point_ideal(const ContextPtr& ctx, const std::vector<Scalar>& point) {
  if (point.size() != ctx->num_variables())
    throw ArityError("point has " + std::to_string(point.size()) + " coordinates, expected " +
                     std::to_string(ctx->num_variables()));
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < point.size(); ++i)
    gens.push_back(Polynomial::variable(ctx, i) - Polynomial(ctx, point[i]));
  return Ideal(ctx, std::move(gens));
}

ContactOrderResult contact_order(const Polynomial& f, const FoliationSpec& foliation, const Locus& locus,
                                 const ContactOrderOptions& options) {
  using Result = ContactOrderResult;
  if (!locus.contains(f))
    return {Result::Finite{0, {}}};

  // Every d_I(f) with |I| = m lies in span(levels[m]), and the span is
  // exactly the span of those values. Membership in I_Y is linear, so a level
  // leaves I_Y iff one of its basis elements does.
  std::vector<std::vector<Polynomial>> levels{{f}};
  auto certify = [&]() -> std::optional<Result> {
    auto span = stable_span(f, foliation, options.span_cap);
    if (span && std::all_of(span->begin(), span->end(), [&](const Polynomial& p) { return locus.contains(p); }))
      return Result{Result::Infinite{std::move(*span), false}};
    // Every element of levels[0..m] lies in I_Y, hence so does the ideal
    // they generate; if that ideal is stable it lies in I(F,Y).
    std::vector<Polynomial> gens;
    for (const auto& level : levels) {
      gens.insert(gens.end(), level.begin(), level.end());
      Ideal j = groebner_basis(Ideal(f.context(), gens));
      if (j.is_unit())
        break;
      if (is_stable(j, foliation))
        return Result{Result::Infinite{j.basis(), true}};
    }
    return std::nullopt;
  };

  for (int m = 1; m <= options.word_cap; ++m) {
    PolySpan next;
    for (const auto& b : levels.back())
      for (const auto& d : foliation.derivations) {
        Polynomial v = d.apply(b);
        if (!v.is_zero())
          next.insert(v);
      }
    if (next.basis().size() > options.level_budget)
      return {Result::AtLeast{m}};
    levels.push_back(next.basis());
    if (levels.back().empty()) {
      if (auto c = certify())
        return *c;
      return {Result::AtLeast{options.word_cap + 1}};
    }
    bool leaves = std::any_of(levels.back().begin(), levels.back().end(),
                              [&](const Polynomial& p) { return !locus.contains(p); });
    if (!leaves)
      continue;

    // Greedy recovery of the lexicographically first witness: extend the
    // prefix by the smallest generator for which some completion leaves I_Y.
    Word witness;
    for (int pos = 0; pos < m; ++pos) {
      const auto& tail = levels[static_cast<std::size_t>(m - pos - 1)];
      for (std::size_t i = 0; i < foliation.size(); ++i) {
        Word trial = witness;
        trial.push_back(i);
        bool ok = std::any_of(tail.begin(), tail.end(),
                              [&](const Polynomial& t) { return !locus.contains(apply_word(foliation, trial, t)); });
        if (ok) {
          witness = std::move(trial);
          break;
        }
      }
    }
    return {Result::Finite{m, std::move(witness)}};
  }
  if (auto c = certify())
    return *c;
  return {Result::AtLeast{options.word_cap + 1}};
}

std::optional<std::vector<Polynomial>> stable_span(const Polynomial& f, const FoliationSpec& foliation,
                                                   std::size_t dim_cap) {
  PolySpan span;
  if (f.is_zero())
    return std::vector<Polynomial>{};
  span.insert(f);
  for (std::size_t k = 0; k < span.basis().size(); ++k) {
    for (const auto& d : foliation.derivations) {
      Polynomial v = d.apply(span.basis()[k]);
      if (!v.is_zero() && span.insert(v) && span.basis().size() > dim_cap)
        return std::nullopt;
    }
  }
  return span.basis();
}

std::string word_to_string(const Word& word, const FoliationSpec& foliation) {
  if (word.empty())
    return "id";
  std::string out;
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (k)
      out += " o ";
    out += foliation.names.at(word[k]);
  }
  return out;
}

} // namespace folia
