#include <cmath>

#include "doctest.h"
#include "loewy/chain.hpp"
#include "loewy/errors.hpp"
#include "support.hpp"

using namespace loewy;
using testing_support::Gen;

namespace {

DiffPolynomial u(int k) { return DiffPolynomial::var(k); }
DiffPolynomial cst(const ExactComplex& c) { return DiffPolynomial::constant(c); }

FactorChain random_chain(Gen& g, int n, bool complex_part) {
  FactorChain c;
  c.alpha = g.gaussian(5, 3, complex_part);
  for (int k = 0; k < n; ++k) c.factors.push_back({g.gaussian(5, 3, complex_part), g.gaussian(5, 3, complex_part)});
  return c;
}

}  // namespace

TEST_CASE("expand_chain examples") {
  FactorChain c{0, {{-1, 0}, {-1, 0}}};
  CHECK(expand_chain(c) == u(2) + u(0) * u(1) * ExactComplex(3) + u(0) * u(0) * u(0));
  CHECK(expand_chain(FactorChain{0, {{0, 0}}}) == u(1));
  CHECK_THROWS_AS(expand_chain(FactorChain{0, {}}), ParseError);
}

TEST_CASE("second-order chain matches the hand-expanded form") {
  Gen g(21);
  for (int trial = 0; trial < 50; ++trial) {
    ExactComplex al = g.gaussian(), a1 = g.gaussian(), b1 = g.gaussian(), a2 = g.gaussian(), b2 = g.gaussian();
    DiffPolynomial expect = u(2) + u(1) * (cst(al * a1 - b1 - b2) - u(0) * (a1 * ExactComplex(2) + a2)) +
                            (u(0) - cst(al)) * (u(0) * a1 + cst(b1)) * (u(0) * a2 + cst(b2));
    CHECK(expand_chain(FactorChain{al, {{a1, b1}, {a2, b2}}}) == expect);
  }
}

TEST_CASE("expand_Dn examples") {
  CHECK(expand_Dn({1, 1}) == u(2) - u(0) * u(1) * ExactComplex(3) + u(0) * u(0) * u(0));
  CHECK(expand_Dn({1, 2}) == u(2) - u(0) * u(1) * ExactComplex(4) + u(0) * u(0) * u(0) * ExactComplex(2));
  CHECK(expand_Dn({-1, -1}) == u(2) + u(0) * u(1) * ExactComplex(3) + u(0) * u(0) * u(0));
}

TEST_CASE("expand_Dn weight identity and extreme terms") {
  Gen g(22);
  for (int n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<ExactComplex> a;
      for (int k = 0; k < n; ++k) a.push_back(g.nonzero_gaussian(4, 3));
      DiffPolynomial d = expand_Dn(a);
      for (const auto& [I, c] : d.terms()) CHECK(weight(I) == n + 1);
      MultiIndex top(n + 1, 0);
      top[n] = 1;
      CHECK(d.coeff(top) == 1);
      ExactComplex prod = n % 2 == 0 ? 1 : -1;
      for (const auto& ak : a) prod *= ak;
      CHECK(d.coeff({n + 1}) == prod);
    }
  }
}

TEST_CASE("expand_chain structural invariants") {
  Gen g(23);
  for (int trial = 0; trial < 60; ++trial) {
    int n = static_cast<int>(g.integer(1, 5));
    FactorChain c = random_chain(g, n, true);
    DiffPolynomial d = expand_chain(c);
    CHECK(d.order() == n);
    int top_terms = 0;
    for (const auto& [I, coef] : d.terms()) {
      CHECK(weight(I) <= n + 1);
      if (static_cast<int>(I.size()) == n + 1) {
        ++top_terms;
        CHECK(coef == 1);
      }
    }
    CHECK(top_terms == 1);
    ExactComplex prod = n % 2 == 0 ? 1 : -1;
    for (const auto& f : c.factors) prod *= f.a;
    CHECK(d.coeff({n + 1}) == prod);
    for (auto& f : c.factors) f.a = 0;
    DiffPolynomial lin = expand_chain(c);
    for (const auto& [I, coef] : lin.terms()) CHECK(total_degree(I) <= 1);
  }
}

TEST_CASE("apply_chain_numeric examples") {
  TestFunction sq;
  sq.exp_terms.push_back({1.0, 2, 0.0});
  CHECK(std::abs(apply_chain_numeric(FactorChain{0, {{0, 0}}}, sq, 3.0) - 6.0) < 1e-12);

  TestFunction pole;
  pole.pole_terms.push_back({1.0, 5.0, 1});
  CHECK(std::abs(apply_chain_numeric(FactorChain{0, {{-1, 0}, {-1, 0}}}, pole, 2.0)) < 1e-12);

  TestFunction ex;
  ex.exp_terms.push_back({1.0, 0, 1.0});
  CHECK(std::abs(apply_chain_numeric(FactorChain{0, {{1, 1}}}, ex, 0.0) - (-1.0)) < 1e-12);
}

TEST_CASE("expansion agrees with the numeric chain oracle") {
  Gen g(24);
  for (int trial = 0; trial < 100; ++trial) {
    int n = static_cast<int>(g.integer(1, 5));
    FactorChain c = random_chain(g, n, true);
    TestFunction f;
    for (int t = 0; t < 2; ++t)
      f.exp_terms.push_back({g.complex(1.5), static_cast<int>(g.integer(0, 3)), g.complex(1.2)});
    if (g.coin()) f.pole_terms.push_back({g.complex(1.0), g.complex(1.0) + 4.0, static_cast<int>(g.integer(1, 2))});
    Complex z = g.complex(1.0);
    Complex oracle = apply_chain_numeric(c, f, z);
    DiffPolynomial d = expand_chain(c);
    std::vector<Complex> jet = f.taylor(z, n + 1).jet();
    double scale = 1;
    for (Complex t : d.term_values(jet)) scale = std::max(scale, std::abs(t));
    CHECK(std::abs(d.eval(jet) - oracle) <= 1e-9 * scale);
  }
}
