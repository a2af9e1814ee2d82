#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "family_gen.hpp"
#include "loewy/classify.hpp"
#include "loewy/errors.hpp"
#include "loewy/verify.hpp"

using namespace loewy;
using testing_support::Gen;
using testing_support::small;
using testing_support::small_nz;

namespace {

using EC = ExactComplex;

ChainParams cp(long al, long a1, long b1, long a2, long b2) {
  return {EC(al), EC(a1), EC(b1), EC(a2), EC(b2)};
}

std::vector<const SolutionFamily*> with_tag(const ClassificationReport& r, const std::string& tag) {
  std::vector<const SolutionFamily*> out;
  for (const auto& f : r.families)
    if (f.case_tag == tag) out.push_back(&f);
  return out;
}

ResidualOptions opts(std::uint64_t seed, double tol = 1e-8) {
  ResidualOptions o;
  o.samples = 20;
  o.seed = seed;
  o.tol = tol;
  return o;
}

}  // namespace

TEST_CASE("classify examples") {
  auto r = classify(cp(0, 1, 0, 3, 0));
  CHECK(r.case_path == "I.B2");
  CHECK(r.completeness == Completeness::All);
  REQUIRE(r.families.size() == 2);
  CHECK(r.families[0].case_tag == "particular-riccati");
  CHECK(r.families[1].case_tag == "I.B2.rational");
  Expr u = instantiate(r.families[1], {{"z0", 0}});
  CHECK(std::abs(u.eval(1.0) - Complex(-2.0 / 3)) < 1e-15);

  auto un = classify({EC(0), EC(1), EC(0), EC(Rational(-4, 3)), EC(0)});
  CHECK(un.case_path == "I.B1");
  CHECK(un.completeness == Completeness::Unknown);
  CHECK(un.families.size() == 1);

  auto iv = classify(cp(1, 2, 1, 0, 3));
  CHECK(iv.case_path == "IV");
  REQUIRE(with_tag(iv, "IV.bessel").size() == 1);
  CHECK(with_tag(iv, "IV.bessel")[0]->constraints[2] == "nu = (alpha a1 + b1)/b2");

  CHECK(classify(cp(0, 1, 0, 2, 0)).case_path == "I.A0");
  CHECK(classify(cp(0, 1, 0, 2, 0)).completeness == Completeness::ParticularOnly);
  CHECK(classify(cp(1, 1, 0, 4, 5)).completeness == Completeness::ParticularOnly);
  CHECK(classify(cp(1, 0, 1, 1, 5)).completeness == Completeness::ParticularOnly);
}

TEST_CASE("particular Riccati branch instantiation") {
  auto r = classify(cp(0, 1, 0, 3, 0));
  Expr u = instantiate(r.families[0], {{"c", 0}});
  CHECK(std::abs(u.eval(2.0) - Complex(-0.5)) < 1e-15);
  auto r2 = classify(cp(1, 1, 1, 3, 0));
  Expr u2 = instantiate(r2.families[0], {{"c", 2}});
  CHECK(std::abs(u2.eval(0.5) - u2.eval(0.5)) == 0);
  CHECK(std::abs(r2.families[0].expr.bind({{"c", 2}}).eval(Complex(0)) - Complex(-3)) < 1e-14);
}

TEST_CASE("instantiate reports missing slots and violated constraints") {
  auto r = classify(cp(0, 1, 0, 3, 0));
  CHECK_THROWS_AS(instantiate(r.families[1], {}), DomainError);
  CHECK_THROWS_AS(instantiate(r.families[1], {{"z0", 0}, {"bogus", 1}}), DomainError);
  auto iv = classify(cp(1, 2, 1, 0, 3));
  const auto& f = *with_tag(iv, "IV.bessel")[0];
  CHECK_THROWS_WITH_AS(instantiate(f, {{"beta", 0}, {"c1", 1}, {"c2", 1}}),
                       "constraint violated: beta != 0", DomainError);
}

TEST_CASE("dispatch is a partition with boundary inputs in their own branch") {
  CHECK(classify(cp(1, 0, 0, 0, 2)).case_path == "V.3");
  CHECK(classify(cp(1, 0, 2, 0, 2)).case_path == "V.4");
  CHECK(classify(cp(1, 2, 1, 0, 0)).case_path == "V.1");
  CHECK(classify(cp(1, 0, 0, 2, 1)).case_path == "V.2");
  CHECK(classify(cp(1, 0, 1, 2, 1)).case_path == "III");
  CHECK(classify(cp(1, 1, 0, -2, 1)).case_path == "II.c=0");
  CHECK(classify(cp(1, 1, 0, -2, 0)).case_path == "II.c≠0");
  CHECK(classify(cp(1, 1, 0, 1, 0)).case_path == "I.A1");
  CHECK(classify(cp(1, 1, 0, -1, 0)).case_path == "I.A2");
  CHECK(classify(cp(1, 1, 0, -4, 0)).case_path == "I.A3");
  CHECK(classify(cp(1, 1, 0, 4, 0)).case_path == "I.A4");
  // j2 = 2 - 4/r, j1 = 2 - r over a grid of ratios r = a2/a1
  Gen g(11);
  for (long n = -12; n <= 12; ++n)
    for (long d = 1; d <= 6; ++d) {
      if (n == 0) continue;
      Rational r(n, d);
      r.canonicalize();
      ChainParams p{small(g), EC(1), small(g), EC(r), small(g)};
      std::string path = classify(p).case_path;
      EC j1 = EC(2) - EC(r), j2 = EC(2) - EC(4) / EC(r);
      std::string expect;
      if (r == -2) expect = std::string(path).substr(0, 2) == "II" ? path : "II";
      else if (r == 2) expect = "I.A0";
      else if (r == 1) expect = "I.A1";
      else if (r == -1) expect = "I.A2";
      else if (r == -4) expect = "I.A3";
      else if (r == 4) expect = "I.A4";
      else if (j2.is_integer() && sgn(j2.re()) >= 0 && !j1.is_integer()) expect = "I.B1";
      else if (j1.is_integer() != j2.is_integer()) expect = "I.B2";
      else expect = "I.C";
      CHECK_MESSAGE(path == expect, "a2/a1 = ", r.get_str());
    }
}

TEST_CASE("every family solves its equation at random admissible parameters") {
  Gen g(2024);
  std::uint64_t seed = 1;
  for (const auto& target : testing_support::chain_targets()) {
    int checked = 0;
    double worst = 0;
    for (int trial = 0; trial < 50; ++trial) {
      ChainParams p = target.draw(g);
      auto r = classify(p);
      auto fams = with_tag(r, target.tag);
      REQUIRE_MESSAGE(!fams.empty(), target.tag, " not emitted for case ", r.case_path);
      const SolutionFamily& f = *fams[g.integer(0, static_cast<long>(fams.size()) - 1)];
      Expr u = instantiate(f, testing_support::random_slots(g, f));
      auto rep = residual(f.equation, u, opts(seed++));
      worst = std::max(worst, rep.max_rel);
      CHECK_MESSAGE(rep.verdict == ResidualVerdict::Pass, target.tag, " ", f.formula(),
                    " residual ", rep.max_rel);
      ++checked;
    }
    MESSAGE(target.tag, ": ", checked, " instantiations, worst residual ", worst);
  }
}

TEST_CASE("broken instantiations fail the residual check") {
  Gen g(99);
  std::uint64_t seed = 500;
  double weakest = INFINITY;
  for (const auto& target : testing_support::chain_targets()) {
    for (int trial = 0; trial < 10; ++trial) {
      ChainParams p = target.draw(g);
      auto r = classify(p);
      const SolutionFamily& f = *with_tag(r, target.tag).front();
      Assignment a = complete_assignment(f, testing_support::random_slots(g, f));
      // the most sensitive constant stands for the constrained slot
      double worst = 0;
      for (int k = 0;; ++k) {
        auto bumped = testing_support::bump_constant(f.expr, 0.1, k);
        if (!bumped) break;
        worst = std::max(worst, residual(f.equation, bumped->bind(a), opts(seed)).max_rel);
      }
      ++seed;
      CHECK_MESSAGE(worst >= 1e-3, target.tag, " ", f.formula(), " residual ", worst);
      weakest = std::min(weakest, worst);
    }
  }
  MESSAGE("smallest probe residual ", weakest);
  // a perturbed derived slot
  auto fams = kpp_classify(EC(1), EC(0), EC(0), EC(1), EC(3));
  for (const auto& f : fams) {
    if (f.case_tag != "II.c=0.two-cot") continue;
    Assignment a = complete_assignment(f, {{"z0", 0.1}});
    Expr good = f.expr.bind(a);
    CHECK(residual(f.equation, good, opts(1)).verdict == ResidualVerdict::Pass);
    a["a"] += 0.1;
    CHECK(residual(f.equation, f.expr.bind(a), opts(1)).max_rel >= 1e-3);
    CHECK_THROWS_AS(instantiate(f, {{"z0", 0.1}, {"a", a["a"]}}), DomainError);
  }
}

TEST_CASE("particular Riccati family solves the first factor in both branches") {
  Gen g(7);
  int generic = 0, degenerate = 0;
  for (int trial = 0; trial < 100; ++trial) {
    ChainParams p{small(g), small_nz(g), small(g), small(g), small(g)};
    if (trial % 2) p.b1 = -p.alpha * p.a1;
    auto r = classify(p);
    const auto& f = r.families.front();
    REQUIRE(f.particular);
    REQUIRE(f.first_order.has_value());
    Expr u = instantiate(f, testing_support::random_slots(g, f));
    auto rep = residual(*f.first_order, u, opts(trial, 1e-10));
    CHECK_MESSAGE(rep.verdict == ResidualVerdict::Pass, f.formula(), " ", rep.max_rel);
    CHECK(residual(f.equation, u, opts(trial, 1e-10)).verdict == ResidualVerdict::Pass);
    ((p.alpha * p.a1 + p.b1).is_zero() ? degenerate : generic) += 1;
  }
  CHECK(generic >= 40);
  CHECK(degenerate >= 50);
}

TEST_CASE("beta is absorbed by rescaling the integration constants") {
  Gen g(5);
  for (const auto& target : testing_support::chain_targets()) {
    if (target.tag.rfind("I.A1", 0) != 0 && target.tag != "I.A4.iii") continue;
    for (int trial = 0; trial < 20; ++trial) {
      auto r = classify(target.draw(g));
      const SolutionFamily& f = *with_tag(r, target.tag).front();
      Assignment a = testing_support::random_slots(g, f);
      Complex t = g.annulus(0.5, 3.0);
      Assignment b = a;
      for (const char* s : {"beta", "c1", "c2", "c0"})
        if (target.tag == "I.A4.iii" ? std::string(s) != "c1" : std::string(s) != "c0")
          if (b.count(s)) b[s] *= t;
      Expr u = instantiate(f, a), v = instantiate(f, b);
      for (int k = 0; k < 5; ++k) {
        Complex z = g.annulus(0.3, 2.0);
        try {
          Complex x = u.eval(z);
          CHECK_MESSAGE(std::abs(x - v.eval(z)) <= 1e-9 * std::max(1.0, std::abs(x)), target.tag);
        } catch (const PoleNear&) {
        }
      }
    }
  }
}

TEST_CASE("the three refactorizations of the a2 = -4 a1 chain expand to the same equation") {
  Gen g(3);
  for (int trial = 0; trial < 50; ++trial) {
    const EC al = small(g), a1 = small_nz(g), b1 = small(g);
    const EC b1p = b1 + al * a1;
    struct Row {
      EC b2p, alpha1, beta1, beta2, alpha0;
    };
    const Row rows[] = {{EC(-2) * b1p, EC(-2) * a1, EC(-2) * b1p, b1p, EC(0)},
                        {EC(2) * b1p, EC(-2) * a1, b1p, EC(2) * b1p, EC(0)},
                        {EC(-6) * b1p, EC(-2) * a1, EC(-3) * b1p, EC(0), -b1p / a1}};
    for (const auto& row : rows) {
      const EC b2 = row.b2p + EC(4) * al * a1;
      FactorChain original{al, {{a1, b1}, {EC(-4) * a1, b2}}};
      // [D + A w - B2][D - A w - B1](w - A0) with w = u - alpha
      FactorChain other{al + row.alpha0,
                        {{row.alpha1, row.beta1 - row.alpha1 * al},
                         {-row.alpha1, row.beta2 + row.alpha1 * al}}};
      CHECK(expand_chain(original) == expand_chain(other));
    }
  }
}

TEST_CASE("fisher_meromorphic examples and residuals") {
  auto w1 = fisher_meromorphic(EC(0), EC(1), EC(0), EC(1));
  REQUIRE(w1.size() == 1);
  CHECK(w1[0].case_tag == "fisher.wp");
  CHECK(w1[0].formula().find("wp(z - z0, 3, g3)") != std::string::npos);
  auto w2 = fisher_meromorphic(EC(5), EC(1), EC(1), EC(0));
  REQUIRE(w2.size() == 1);
  CHECK(w2[0].case_tag == "fisher.wp-exp");
  CHECK(fisher_meromorphic(EC(1), EC(1), EC(0), EC(1)).empty());
  CHECK_THROWS_AS(fisher_meromorphic(EC(1), EC(0), EC(0), EC(1)), DomainError);

  Gen g(17);
  std::uint64_t seed = 0;
  for (int trial = 0; trial < 60; ++trial) {
    EC lambda = small_nz(g), e1 = small(g), e2 = small(g), c(0);
    if (trial % 2) {
      // c^2 lambda = 25 (e_i - e_j) with c = 5 m: lambda = (e_i - e_j)/m^2
      EC m = small_nz(g);
      while (e1 == e2) e2 = small(g);
      c = EC(5) * m;
      lambda = (trial % 4 == 1 ? e1 - e2 : e2 - e1) / (m * m);
    }
    auto fams = fisher_meromorphic(c, lambda, e1, e2);
    REQUIRE(!fams.empty());
    for (const auto& f : fams) {
      auto rep = residual(f.equation, instantiate(f, testing_support::random_slots(g, f)),
                          opts(seed++));
      CHECK_MESSAGE(rep.verdict == ResidualVerdict::Pass, f.formula(), " ", rep.max_rel);
    }
  }
}

TEST_CASE("kpp_classify examples and residuals") {
  auto r1 = kpp_classify(EC(1), EC(0), EC(0), EC(0), EC(1));
  CHECK(std::count_if(r1.begin(), r1.end(),
                      [](const SolutionFamily& f) { return f.case_tag == "II.c=0.rational"; }) == 2);
  // c = (-q1 + 2 q2 - q3)/lambda with q3 the midpoint of q1, q2
  const EC q1(1), q2(3), q3(2), lam(2);
  auto r2 = kpp_classify(lam, (-q1 + EC(2) * q2 - q3) / lam, q1, q2, q3);
  CHECK(std::any_of(r2.begin(), r2.end(),
                    [](const SolutionFamily& f) { return f.case_tag == "II.c≠0.wp-exp"; }));
  CHECK(kpp_classify(EC(1), EC(1), EC(0), EC(1), EC(5)).empty());
  CHECK_THROWS_AS(kpp_classify(EC(0), EC(1), EC(0), EC(1), EC(5)), DomainError);

  Gen g(23);
  std::uint64_t seed = 0;
  std::map<std::string, int> seen;
  for (int trial = 0; trial < 200; ++trial) {
    const EC lambda = small_nz(g);
    EC q[3] = {small(g), small(g), small(g)};
    EC c(0);
    switch (trial % 4) {
      case 0: break;
      case 1: q[2] = (q[0] + q[1]) / EC(2); break;
      case 2: c = (EC(2) * q[0] - q[1] - q[2]) / (trial % 8 < 4 ? lambda : -lambda); break;
      default:
        q[2] = (q[0] + q[1]) / EC(2);
        c = (EC(2) * q[0] - q[1] - q[2]) / lambda;
        break;
    }
    for (const auto& f : kpp_classify(lambda, c, q[0], q[1], q[2])) {
      ++seen[f.case_tag];
      auto rep = residual(f.equation, instantiate(f, testing_support::random_slots(g, f)),
                          opts(seed++));
      CHECK_MESSAGE(rep.verdict == ResidualVerdict::Pass, f.formula(), " ", rep.max_rel);
    }
  }
  for (const char* tag : {"II.c=0.cot", "II.c=0.two-cot", "II.c=0.wp", "II.c≠0.exp-ratio",
                          "II.c≠0.wp-exp"})
    CHECK_MESSAGE(seen[tag] > 0, tag);
}

TEST_CASE("two_cot_roots") {
  auto roots = two_cot_roots(Complex(1, 0), Complex(0, 0));
  REQUIRE(roots.size() == 1);
  CHECK(std::abs(roots[0] - Complex(std::numbers::pi / 2, 0)) < 1e-12);
  Gen g(8);
  for (int trial = 0; trial < 100; ++trial) {
    Complex m2 = g.annulus(0.2, 3.0), rhs = g.complex(3.0);
    for (Complex a : two_cot_roots(m2, rhs))
      CHECK(std::abs(m2 * std::cos(m2 * a) / std::sin(m2 * a) - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
  }
  CHECK(two_cot_roots(Complex(1, 0), Complex(0, 1)).empty());
}
