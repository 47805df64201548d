#include "folia/errors.hpp"
#include "folia/firstintegral.hpp"

#include "oracles.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace folia;
using testing::Ring;

namespace {

RationalFirstIntegral ratio(const Polynomial& num, const Polynomial& den) { return {num, den, {}}; }

// Extactic matrix rows d^i(v_j) evaluated at a rational point, for the
// determinant oracle.
std::vector<std::vector<mpq_class>> extactic_matrix_at(const Derivation& d, int n, const std::vector<mpq_class>& x) {
  std::vector<oracle::QPoly> comps;
  for (const auto& c : d.components())
    comps.push_back(oracle::from_poly(c));
  // Same column order as the library: largest grevlex monomial first.
  std::vector<oracle::Exps> basis;
  for (const auto& m : monomials_up_to(x.size(), static_cast<std::uint32_t>(n)))
    basis.push_back(m.exponents());
  std::vector<std::vector<mpq_class>> m;
  std::vector<oracle::QPoly> row;
  for (const auto& e : basis)
    row.push_back(oracle::QPoly{{e, mpq_class(1)}});
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::vector<mpq_class> values;
    for (const auto& p : row)
      values.push_back(oracle::evaluate(p, x));
    m.push_back(values);
    for (auto& p : row)
      p = oracle::apply_leibniz(comps, p);
  }
  return m;
}

} // namespace

TEST_CASE("extactic examples") {
  Ring r("x y");
  CHECK(extactic_polynomial(r.field("x d/dx + y d/dy"), 1).is_zero());
  Polynomial e = extactic_polynomial(r.field("x d/dx + 2*y d/dy"), 1);
  REQUIRE(e.size() == 1);
  CHECK(e.leading_term().monomial == Monomial(std::vector<std::uint32_t>{1, 1}));
  CHECK(extactic_polynomial(r.field("x d/dx + y d/dy"), 0) == r("1"));
  CHECK(extactic_polynomial(r.field("x d/dx + 2*y d/dy"), 0) == r("1"));
  CHECK_THROWS_AS(extactic_polynomial(r.field("d/dx"), 4), UnsupportedSize);
}

TEST_CASE("extactic determinant agrees with pointwise elimination") {
  Ring r("x y");
  std::mt19937 rng(73);
  std::vector<std::string> fields{"x d/dx + 2*y d/dy", "y d/dx - x d/dy", "x^2 d/dx + x*y d/dy", "d/dx + y d/dy",
                                  "(x - y) d/dx + x*y d/dy"};
  for (const auto& f : fields) {
    auto d = r.field(f);
    for (int n = 1; n <= 2; ++n) {
      Polynomial e = extactic_polynomial(d, n);
      for (int k = 0; k < 4; ++k) {
        std::vector<mpq_class> x{mpq_class(static_cast<long>(rng() % 7) - 3), mpq_class(static_cast<long>(rng() % 7) - 3)};
        Scalar value = e.evaluate(std::vector<Scalar>{Scalar(x[0]), Scalar(x[1])});
        REQUIRE(value == Scalar(oracle::determinant(extactic_matrix_at(d, n, x))));
      }
    }
  }
}

TEST_CASE("darboux cofactor checks") {
  Ring r("x y");
  auto d = r.field("x d/dx + 2*y d/dy");
  CHECK(darboux_cofactor_check(r("x"), d) == r("1"));
  CHECK(darboux_cofactor_check(r("y"), d) == r("2"));
  CHECK_FALSE(darboux_cofactor_check(r("x + y"), d));
  CHECK(darboux_cofactor_check(r("x^2 + y"), r.field("x*y d/dx + 2*y^2 d/dy")) == r("2*y"));
  CHECK_THROWS_AS(darboux_cofactor_check(r("0"), d), DomainError);
}

TEST_CASE("constant cofactor search examples") {
  Ring r("x y");
  auto a = constant_cofactor_search(r.field("x d/dx + 2*y d/dy"), 1);
  REQUIRE(a.pairs.size() == 2);
  CHECK(a.pairs[0].f == r("x"));
  CHECK(a.pairs[0].cofactor == r("1"));
  CHECK(a.pairs[1].f == r("y"));
  CHECK(a.pairs[1].cofactor == r("2"));
  CHECK(a.eigenvalues == std::vector<mpq_class>{0, 1, 2});

  auto b = constant_cofactor_search(r.field("2*x d/dx + 3*y d/dy"), 1);
  REQUIRE(b.pairs.size() == 2);
  CHECK(b.pairs[0].cofactor == r("2"));
  CHECK(b.pairs[1].cofactor == r("3"));

  auto c = constant_cofactor_search(r.field("d/dx"), 1);
  REQUIRE(c.pairs.size() == 1);
  CHECK(c.pairs[0].f == r("y"));
  CHECK(c.pairs[0].cofactor.is_zero());

  auto rot = constant_cofactor_search(r.field("y d/dx - x d/dy"), 1);
  CHECK(rot.non_rational_spectrum);
  CHECK(rot.pairs.empty());

  auto quad = constant_cofactor_search(r.field("x^2 d/dx"), 1);
  CHECK_FALSE(quad.degree_preserving);
  CHECK(quad.pairs.empty());

  Ring p("x y", "t1");
  auto par = constant_cofactor_search(p.field("t1*x d/dx"), 1);
  CHECK_FALSE(par.rational_coefficients);
  CHECK_THROWS_AS(constant_cofactor_search(r.field("d/dx"), 0), DomainError);
  CHECK_THROWS_AS(constant_cofactor_search(r.field("d/dx"), 10), UnsupportedSize);
}

TEST_CASE("combining cofactors") {
  Ring r("x y");
  auto fi = combine_cofactors({{r("x"), r("2")}, {r("y"), r("3")}});
  REQUIRE(fi);
  CHECK(fi->numerator == r("x^3"));
  CHECK(fi->denominator == r("y^2"));
  CHECK(fi->to_string() == "x^3 / y^2");
  CHECK(fi->exponents == std::vector<mpz_class>{3, -2});

  auto g = combine_cofactors({{r("x"), r("1")}, {r("y"), r("2")}});
  REQUIRE(g);
  CHECK(g->numerator == r("x^2"));
  CHECK(g->denominator == r("y"));

  CHECK_FALSE(combine_cofactors({{r("x"), r("1")}}));
  CHECK_THROWS_AS(combine_cofactors({}), DomainError);
}

TEST_CASE("verifying first integrals") {
  Ring r("x y");
  CHECK(verify_first_integral(ratio(r("x^2"), r("y")), r.foliation({"x d/dx + 2*y d/dy"})));
  CHECK(verify_first_integral(ratio(r("x*y"), r("1")), r.foliation({"-x d/dx + y d/dy"})));
  CHECK_FALSE(verify_first_integral(ratio(r("x"), r("1")), r.foliation({"d/dx"})));
  CHECK_FALSE(verify_first_integral(ratio(r("x^2"), r("y")), r.foliation({"x d/dx + 2*y d/dy", "d/dx"})));
}

TEST_CASE("diagonal family pipeline") {
  Ring r("x y");
  for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 3}, {5, 7}}) {
    auto F = r.foliation({std::to_string(p) + "*x d/dx + " + std::to_string(q) + "*y d/dy"});
    auto search = constant_cofactor_search(F.derivations[0], 1);
    auto fi = combine_cofactors(search.pairs);
    REQUIRE(fi);
    CHECK(fi->exponents == std::vector<mpz_class>{q, -p});
    CHECK(fi->numerator == r("x^" + std::to_string(q)));
    CHECK(fi->denominator == r("y^" + std::to_string(p)));
    CHECK(verify_first_integral(*fi, F));
    auto found = find_first_integral(F, 1);
    REQUIRE(found.integral);
    CHECK(found.integral->numerator == fi->numerator);
  }
  // (p,q) = (-1,1): the polynomial first integral x*y.
  auto fi = find_first_integral(r.foliation({"-x d/dx + y d/dy"}), 1);
  REQUIRE(fi.integral);
  CHECK(fi.integral->to_string() == "x*y");
}

TEST_CASE("extactic vanishing matches first-integral existence at degree 1") {
  Ring r("x y");
  auto d11 = r.foliation({"x d/dx + y d/dy"});
  CHECK(extactic_polynomial(d11.derivations[0], 1).is_zero());
  auto fi = find_first_integral(d11, 1);
  REQUIRE(fi.integral);
  CHECK(fi.integral->to_string() == "x / y");

  auto d12 = r.foliation({"x d/dx + 2*y d/dy"});
  CHECK_FALSE(extactic_polynomial(d12.derivations[0], 1).is_zero());
  // The degree-1 Darboux pairs combine only to x^2/y, which has degree 2.
  auto fi2 = find_first_integral(d12, 1);
  REQUIRE(fi2.integral);
  CHECK(fi2.integral->numerator.degree() == 2);
}

TEST_CASE("returned pairs satisfy their identity and multiply") {
  Ring r("x y z");
  std::mt19937 rng(79);
  for (int i = 0; i < 20; ++i) {
    // Upper triangular linear fields with integer diagonal.
    std::uniform_int_distribution<int> c(-3, 3);
    auto d = r.field(std::to_string(c(rng)) + "*x d/dx + (" + std::to_string(c(rng)) + "*y + " +
                     std::to_string(c(rng)) + "*x) d/dy + " + std::to_string(c(rng)) + "*z d/dz");
    auto search = constant_cofactor_search(d, 2);
    for (const auto& pr : search.pairs)
      REQUIRE(d(pr.f) == pr.cofactor * pr.f);
    for (std::size_t a = 0; a < search.pairs.size(); ++a)
      for (std::size_t b = 0; b < search.pairs.size(); ++b) {
        const auto &p1 = search.pairs[a], &p2 = search.pairs[b];
        REQUIRE(darboux_cofactor_check(p1.f * p2.f, d) == p1.cofactor + p2.cofactor);
      }
    if (!search.pairs.empty())
      if (auto fi = combine_cofactors(search.pairs))
        REQUIRE(verify_first_integral(*fi, FoliationSpec{{"D"}, {d}, true, 2}));
  }
}

TEST_CASE("characteristic polynomial and rational roots") {
  std::vector<std::vector<mpq_class>> m{{2, 1}, {0, 3}};
  CHECK(characteristic_polynomial(m) == std::vector<mpq_class>{6, -5, 1});
  bool all = false;
  CHECK(rational_roots({-6, 11, -6, 1}, &all) == std::vector<mpq_class>{1, 2, 3});
  CHECK(all);
  CHECK(rational_roots({-1, 0, 4}, &all) == std::vector<mpq_class>{mpq_class(-1, 2), mpq_class(1, 2)});
  CHECK(all);
  CHECK(rational_roots({-2, 0, 1}, &all).empty());
  CHECK_FALSE(all);
  // (x - 1)^2 (x^2 + 1)
  CHECK(rational_roots({1, -2, 2, -2, 1}, &all) == std::vector<mpq_class>{1});
  CHECK_FALSE(all);

  // Random integer matrices: det(X I - m) at integer X matches the oracle.
  std::mt19937 rng(83);
  for (int i = 0; i < 20; ++i) {
    std::size_t n = 1 + i % 5;
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
    for (auto& row : a)
      for (auto& v : row)
        v = static_cast<long>(rng() % 7) - 3;
    auto cp = characteristic_polynomial(a);
    REQUIRE(cp.size() == n + 1);
    for (long X = -2; X <= 2; ++X) {
      auto b = a;
      for (std::size_t k = 0; k < n; ++k) {
        for (auto& v : b[k])
          v = -v;
        b[k][k] += X;
      }
      mpq_class value = 0, power = 1;
      for (const auto& c : cp) {
        value += c * power;
        power *= X;
      }
      REQUIRE(value == oracle::determinant(b));
    }
  }
}

TEST_CASE("polynomial gcd") {
  Ring r("x y");
  CHECK(polynomial_gcd(r("x^2 - y^2"), r("x*y + y^2")) == r("x + y"));
  CHECK(polynomial_gcd(r("2*x"), r("4*x^2")) == r("x"));
  CHECK(polynomial_gcd(r("x"), r("y")) == r("1"));
  Ring p("x", "t1");
  CHECK_THROWS_AS(polynomial_gcd(p("t1*x"), p("x")), DomainError);
}
