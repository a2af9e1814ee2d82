#include <algorithm>

#include "doctest.h"
#include "loewy/chain.hpp"
#include "loewy/errors.hpp"
#include "loewy/laurent.hpp"
#include "loewy/painleve.hpp"
#include "support.hpp"

using namespace loewy;
using testing_support::Gen;

namespace {

DiffPolynomial u(int k) { return DiffPolynomial::var(k); }

// u0 prod_{k=1}^{n} (-(k + a_k u0))
UniPoly residue_closed_form(const std::vector<ExactComplex>& a) {
  UniPoly r = UniPoly::monomial(1, 1, Var::U0);
  for (size_t k = 0; k < a.size(); ++k)
    r *= UniPoly({ExactComplex(-static_cast<long>(k) - 1), -a[k]}, Var::U0);
  return r;
}

std::vector<ExactComplex> random_a(Gen& g, int n) {
  std::vector<ExactComplex> a;
  for (int k = 0; k < n; ++k) a.push_back(g.nonzero_gaussian(5, 3));
  return a;
}

}  // namespace

TEST_CASE("dominant terms") {
  DiffPolynomial e = expand_chain(FactorChain{1, {{1, 1}, {1, 1}}});
  CHECK(dominant_terms(e, -1) == expand_Dn({1, 1}));
  CHECK(dominant_terms(u(1), -1) == u(1));
  DiffPolynomial p = u(2) + u(0) * u(0);
  CHECK(dominant_terms(p, -2) == p);
  CHECK(monomial_exponent({0, 0, 1}, -2) == -4);
  CHECK(monomial_exponent({2}, -2) == -4);
}

TEST_CASE("leading balances") {
  auto b = leading_balances(expand_Dn({1, 1}));
  REQUIRE(b.size() == 2);
  CHECK(std::count(b.begin(), b.end(), LeadingBalance{-1, -1}) == 1);
  CHECK(std::count(b.begin(), b.end(), LeadingBalance{-1, -2}) == 1);

  auto r = leading_balances(u(1) - u(0) * u(0));
  REQUIRE(r.size() == 1);
  CHECK(r[0] == LeadingBalance{-1, -1});

  Gen g(31);
  for (int trial = 0; trial < 30; ++trial) {
    ExactComplex al = g.gaussian(), a1 = g.nonzero_gaussian(), b1 = g.gaussian(), a2 = g.nonzero_gaussian(),
                 b2 = g.gaussian();
    auto bs = leading_balances(expand_chain(FactorChain{al, {{a1, b1}, {a2, b2}}}));
    std::vector<ExactComplex> expect{ExactComplex(-1) / a1, ExactComplex(-2) / a2};
    std::sort(expect.begin(), expect.end());
    expect.erase(std::unique(expect.begin(), expect.end()), expect.end());
    std::vector<ExactComplex> got;
    for (const auto& x : bs) {
      CHECK(x.p == -1);
      got.push_back(x.u0);
    }
    std::sort(got.begin(), got.end());
    CHECK(got == expect);
  }
}

TEST_CASE("irrational leading coefficients are reported separately") {
  // u'' = 2u^3 + u^3 - ... with leading equation 2 u0 = 2 u0^3 * (1/2): use u'' - u^3 at p = -1
  auto s = find_balances(u(2) - u(0) * u(0) * u(0));
  // 2 u0 - u0^3 = 0 -> u0 = +-sqrt(2)
  CHECK(s.balances.empty());
  CHECK(s.irrational.size() == 2);
}

TEST_CASE("residue polynomial") {
  CHECK(residue_poly({1, 1}) == residue_closed_form({1, 1}));
  CHECK(residue_poly({1, 1}) == UniPoly({0, 2, 3, 1}, Var::U0));
  CHECK(residue_poly({1}) == UniPoly({0, -1, -1}, Var::U0));
  auto roots = exact_rational_roots(residue_poly({2, 4})).exact;
  std::vector<ExactComplex> expect{Rational(-1, 2), Rational(-1, 2), 0};
  CHECK(roots == expect);
  CHECK_THROWS_WITH_AS(residue_poly({1, 0}), "degenerate chain: some a_i = 0", DomainError);
  Gen g(32);
  for (int n = 1; n <= 5; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      auto a = random_a(g, n);
      CHECK(residue_poly(a) == residue_closed_form(a));
    }
}

TEST_CASE("indicial polynomial examples") {
  CHECK(indicial_direct(expand_Dn({1}), {-1, -1}) == UniPoly({1, 1}, Var::J));
  CHECK(indicial_direct(expand_Dn({1, 1}), {-1, -1}) == UniPoly({-1, 0, 1}, Var::J));
  CHECK(indicial_recursive({1, 1}, -1) == UniPoly({-1, 0, 1}, Var::J));
  // P_2(-2; j) = j P_1(-2; j) - R_1(-2)
  UniPoly p1 = indicial_recursive({1}, -2);
  UniPoly expect = p1 * UniPoly({0, 1}, Var::J) - UniPoly::constant(residue_poly({1}).eval(ExactComplex(-2)), Var::J);
  CHECK(indicial_recursive({1, 1}, -2) == expect);
  CHECK_THROWS_AS(indicial_direct(expand_Dn({1, 1}), {-1, 3}), DomainError);
}

TEST_CASE("Fuchs indices of the second-order chain") {
  Gen g(33);
  for (int trial = 0; trial < 30; ++trial) {
    ExactComplex al = g.gaussian(), a1 = g.nonzero_gaussian(), b1 = g.gaussian(), a2 = g.nonzero_gaussian(),
                 b2 = g.gaussian();
    DiffPolynomial e = expand_chain(FactorChain{al, {{a1, b1}, {a2, b2}}});
    auto f1 = exact_rational_roots(indicial_direct(e, {-1, ExactComplex(-1) / a1})).exact;
    std::vector<ExactComplex> e1{-1, ExactComplex(2) - a2 / a1};
    std::sort(e1.begin(), e1.end());
    CHECK(f1 == e1);
    auto f2 = exact_rational_roots(indicial_direct(e, {-1, ExactComplex(-2) / a2})).exact;
    std::vector<ExactComplex> e2{-1, ExactComplex(2) - ExactComplex(4) * a1 / a2};
    std::sort(e2.begin(), e2.end());
    CHECK(f2 == e2);
  }
}

TEST_CASE("recursive and direct indicial polynomials agree") {
  Gen g(34);
  for (int n = 1; n <= 5; ++n) {
    for (int trial = 0; trial < 12; ++trial) {
      auto a = random_a(g, n);
      DiffPolynomial d = expand_Dn(a);
      for (int k = 1; k <= n; ++k) {
        ExactComplex u0 = ExactComplex(-k) / a[k - 1];
        CHECK(indicial_recursive(a, u0) == indicial_direct(d, {-1, u0}));
      }
    }
  }
}

TEST_CASE("indicial polynomial of the derivative picks up (j - n - 1)") {
  Gen g(35);
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 6; ++trial) {
      auto a = random_a(g, n);
      DiffPolynomial d = expand_Dn(a);
      for (int k = 1; k <= n; ++k) {
        LeadingBalance bal{-1, ExactComplex(-k) / a[k - 1]};
        UniPoly lhs = indicial_direct(d.derivative(), bal);
        UniPoly rhs = indicial_direct(d, bal) * UniPoly({ExactComplex(-n - 1), 1}, Var::J);
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("appending a factor adds the index n+1-k a_{n+1}/a_k") {
  Gen g(36);
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 6; ++trial) {
      auto a = random_a(g, n + 1);
      std::vector<ExactComplex> head(a.begin(), a.begin() + n);
      for (int k = 1; k <= n; ++k) {
        ExactComplex u0 = ExactComplex(-k) / a[k - 1];
        auto before = exact_rational_roots(indicial_recursive(head, u0)).exact;
        auto after = exact_rational_roots(indicial_recursive(a, u0)).exact;
        before.push_back(ExactComplex(n + 1) - ExactComplex(k) * a[n] / a[k - 1]);
        std::sort(before.begin(), before.end());
        CHECK(after == before);
      }
    }
  }
}

TEST_CASE("genericity test") {
  auto v = genericity_test({1, 1}, 10);
  CHECK(v.verdict == Verdict::InS);
  CHECK(v.k == 1);
  CHECK(v.j == 1);
  CHECK(indicial_recursive({1, 1}, ExactComplex(-v.k) / ExactComplex(1)).eval(ExactComplex(v.j)).is_zero());
  v = genericity_test({1, 3}, 50);
  CHECK(v.verdict == Verdict::GenericW);
  CHECK(v.jmax == 50);
  v = genericity_test({0, 1}, 10);
  CHECK(v.verdict == Verdict::OnAxis);
  CHECK(v.axis == 1);
  CHECK(genericity_test({2, 0, 1}, 10).axis == 2);
}

TEST_CASE("Laurent expansion reproduces known exact solutions") {
  // u' - u^2 with u = -1/z
  auto s = laurent_expand(u(1) - u(0) * u(0), {-1, -1}, 6);
  REQUIRE(s.coefficients.size() == 7);
  for (int j = 1; j <= 6; ++j) CHECK(s.coefficients[j].is_zero());

  // particular solution alpha - 1/(a1 z) when alpha a1 + b1 = 0
  Gen g(37);
  for (int trial = 0; trial < 10; ++trial) {
    ExactComplex al = g.nonzero_gaussian(), a1 = g.nonzero_gaussian(), a2 = g.nonzero_gaussian(),
                 b2 = g.gaussian();
    ExactComplex b1 = -al * a1;
    if (ExactComplex(2) - a2 / a1 == ExactComplex(1)) continue;
    DiffPolynomial e = expand_chain(FactorChain{al, {{a1, b1}, {a2, b2}}});
    auto sol = laurent_expand(e, {-1, ExactComplex(-1) / a1}, 6);
    if (sol.obstructed()) continue;
    std::map<long, ExactComplex> inject;
    for (const auto& r : sol.resonances) inject[r.j] = 0;
    CHECK(sol.coefficients[1] == al);
    bool higher_zero = true;
    for (size_t j = 2; j < sol.coefficients.size(); ++j)
      if (!sol.coefficients[j].is_zero()) higher_zero = false;
    CHECK(higher_zero);
  }
}

TEST_CASE("A4 obstruction appears exactly off the compatibility condition") {
  Gen g(38);
  int obstructed = 0, free = 0;
  for (int trial = 0; trial < 40; ++trial) {
    ExactComplex al = g.gaussian(), a1 = g.nonzero_gaussian(), b1 = g.gaussian();
    ExactComplex a2 = ExactComplex(4) * a1;
    ExactComplex compat_b2 = ExactComplex(2) * b1 - ExactComplex(2) * al * a1;
    ExactComplex b2 = g.coin() ? compat_b2 : g.gaussian();
    DiffPolynomial e = expand_chain(FactorChain{al, {{a1, b1}, {a2, b2}}});
    auto s = laurent_expand(e, {-1, ExactComplex(-2) / a2}, 4);
    bool compat = (ExactComplex(2) * al * a1 - ExactComplex(2) * b1 + b2).is_zero();
    CHECK(s.obstructed() == !compat);
    REQUIRE(!s.resonances.empty());
    CHECK(s.resonances[0].j == 1);
    (compat ? free : obstructed)++;
  }
  CHECK(obstructed > 0);
  CHECK(free > 0);
}

TEST_CASE("Laurent series substitute to high order") {
  Gen g(39);
  for (int trial = 0; trial < 20; ++trial) {
    int n = static_cast<int>(g.integer(1, 3));
    FactorChain c;
    c.alpha = g.gaussian(4, 3);
    for (int k = 0; k < n; ++k) c.factors.push_back({g.nonzero_gaussian(4, 3), g.gaussian(4, 3)});
    DiffPolynomial e = expand_chain(c);
    for (const auto& bal : leading_balances(e)) {
      auto s = laurent_expand(e, bal, 5);
      if (s.obstructed()) continue;
      LaurentSeries us(bal.p, s.coefficients);
      LaurentSeries r = substitute(e, us);
      CHECK(r.lowest_nonzero() > s.q + 5);
    }
  }
}

TEST_CASE("depth validation") {
  CHECK_THROWS_AS(laurent_expand(u(1) - u(0) * u(0), {-1, -1}, -1), DomainError);
}
