#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "family_gen.hpp"
#include "loewy/classify.hpp"
#include "loewy/errors.hpp"
#include "loewy/growth.hpp"
#include "loewy/specfun.hpp"

using namespace loewy;
using testing_support::Gen;

namespace {

using EC = ExactComplex;
constexpr double kPi = std::numbers::pi;

Expr z() { return Expr::z(); }

double T(const Expr& e, double r) { return proximity_m(e, r) + counting_N(e, r); }

// u3 = alpha - sqrt2 (b1/a2) c0 e^{b1 z} tanh((sqrt2 c0 e^{b1 z} + c1)/2) with a2 = 1, alpha = 0
Expr u3(double b1, Complex c0, Complex c1) {
  auto r = classify({EC(0), EC(0), EC(Rational(static_cast<long>(b1 * 2), 2)), EC(1), EC(static_cast<long>(b1 * 2))});
  REQUIRE(r.case_path == "III");
  return instantiate(r.family("III.tanh"), {{"c0", c0}, {"c1", c1}});
}

// Zeros of cosh((sqrt2 c0 e^{z} + c1)/2) in |z| <= t, located from the explicit logarithm.
int cosh_zero_count(Complex c0, Complex c1, double t) {
  int count = 0;
  const double s = std::sqrt(2.0);
  for (long k = -200000; k <= 200000; ++k) {
    // (s c0 e^z + c1)/2 = i pi (k + 1/2)
    Complex w = (Complex(0, 2 * kPi * (k + 0.5)) - c1) / (s * c0);
    Complex l = std::log(w);
    if (std::abs(l.real()) > t) continue;
    for (long m = -100; m <= 100; ++m) {
      Complex zk = l + Complex(0, 2 * kPi * m);
      if (std::abs(zk) <= t) ++count;
    }
  }
  return count;
}

}  // namespace

TEST_CASE("proximity function examples") {
  CHECK(proximity_m(exp(z()), 10) == doctest::Approx(10 / kPi).epsilon(0.01));
  CHECK(proximity_m(Expr(5), 3) == doctest::Approx(std::log(5.0)));
  CHECK(proximity_m(Expr(1) / z(), 2) == 0);
  CHECK_THROWS_WITH_AS(proximity_m(Expr(1) / (z() - z()), 2), "radius through pole cluster", DomainError);
  CHECK_THROWS_AS(proximity_m(exp(z()), 41), DomainError);
  CHECK_THROWS_AS(proximity_m(exp(z()), 0), DomainError);
}

TEST_CASE("counting function examples") {
  CHECK(counting_N(Expr(1) / z(), std::exp(1.0)) == doctest::Approx(1).epsilon(1e-6));
  CHECK(counting_N(exp(z()), 10) == 0);
  CHECK(counting_N(exp(z()) * z(), 10) == 0);
  // simple poles at 1 and -2i
  Expr rat = Expr(1) / ((z() - Expr(1)) * (z() + Expr(Complex(0, 2))));
  CHECK(counting_N(rat, 5) == doctest::Approx(std::log(5.0) + std::log(2.5)).epsilon(1e-6));
  CHECK(counting_n(rat, 0.5) == 0);
  CHECK(counting_n(rat, 1.5) == 1);
  CHECK(counting_n(rat, 3) == 2);
  CHECK(counting_n(Expr(1) / z().pow(3), 1) == 3);
  // cot z: poles at k pi
  CHECK(counting_n(cot(z()), 10) == 7);
  double expect = std::log(10.0);
  for (int k = 1; k <= 3; ++k) expect += 2 * std::log(10 / (k * kPi));
  CHECK(counting_N(cot(z()), 10) == doctest::Approx(expect).epsilon(1e-3));
  CHECK_THROWS_AS(counting_N(bessel_j(Expr(0.5), z()), 2), DomainError);
  CHECK_THROWS_AS(counting_N(log(z()), 2), DomainError);
}

TEST_CASE("Weierstrass lattice counting") {
  // wp(z - z0) with g3 = 0: square lattice
  Expr p = wp(z() - Expr(Complex(0.3, 0.1)), Expr(4), Expr(0));
  Lattice lat = wp_lattice(EllipticInvariants::make(4, 0));
  int direct = 0;
  for (int i = -20; i <= 20; ++i)
    for (int j = -20; j <= 20; ++j)
      if (std::abs(Complex(0.3, 0.1) + double(i) * lat.w1 + double(j) * lat.w2) <= 6) direct += 2;
  CHECK(counting_n(p, 6) == direct);
  auto curve = hayman_check(p, 1, radius_grid(5, 40, 8));
  REQUIRE(curve.fitted_order);
  CHECK(curve.fitted_order->rho1 == doctest::Approx(2).epsilon(0.15));
}

TEST_CASE("characteristic of the exponential") {
  for (double r : radius_grid(5, 40, 8)) CHECK(T(exp(z()), r) == doctest::Approx(r / kPi).epsilon(0.02));
  auto curve = hayman_check(exp(z()), 2, radius_grid(5, 40, 8));
  REQUIRE(curve.fitted_order);
  CHECK(curve.fitted_order->rho1 == doctest::Approx(1).epsilon(0.1));
}

TEST_CASE("constants are subexponential") {
  auto curve = hayman_check(Expr(5), 2, radius_grid(5, 40, 8));
  CHECK(curve.subexponential);
  CHECK(!curve.hayman_fit);
  for (double t : curve.t_values) CHECK(t == doctest::Approx(std::log(5.0)));
  CHECK_THROWS_AS(hayman_check(Expr(5), 3, radius_grid(5, 40, 8)), DomainError);
  CHECK_THROWS_AS(hayman_check(Expr(5), 2, radius_grid(5, 40, 5)), DomainError);
}

TEST_CASE("pole count of the tanh family matches the zeros of its cosh factor") {
  const Complex c0(0.7, 0.2), c1(0.4, -0.3);
  Expr u = u3(1, c0, c1);
  int previous = 0;
  for (double t : {2.0, 3.0, 4.0, 5.0}) {
    int n = counting_n(u, t);
    CHECK(n == cosh_zero_count(c0, c1, t));
    CHECK(n > previous);
    previous = n;
  }
}

TEST_CASE("the tanh family grows exponentially with exponent one") {
  Expr u = u3(1, Complex(0.7, 0.2), Complex(0.4, -0.3));
  auto curve = hayman_check(u, 2, radius_grid(5, 40, 8));
  REQUIRE(curve.hayman_fit);
  CHECK(curve.hayman_fit->c >= 0.8);
  CHECK(curve.hayman_fit->c <= 1.2);
  CHECK(curve.hayman_fit->consistent);
  REQUIRE(curve.fitted_order);
  REQUIRE(curve.fitted_order->rho2);
  CHECK(*curve.fitted_order->rho2 == doctest::Approx(1).epsilon(0.3));
  for (size_t i = 1; i < curve.t_values.size(); ++i)
    CHECK(curve.t_values[i] >= 0.98 * curve.t_values[i - 1]);
}

TEST_CASE("rational solutions at most quadruple under doubling") {
  auto r = classify({EC(0), EC(1), EC(0), EC(3), EC(0)});
  Expr u = instantiate(r.family("I.B2.rational"), {{"z0", Complex(0.2, 0.1)}});
  for (double rr : {4.0, 8.0, 16.0}) CHECK(T(u, 2 * rr) <= 4 * T(u, rr) + 1);
  // deg 1: T = log r + O(1)
  CHECK(T(u, 32) - T(u, 4) == doctest::Approx(std::log(8.0)).epsilon(0.02));
}

TEST_CASE("class W families: monotone characteristic, doubling bound and first main theorem") {
  Gen g(31);
  const char* tags[] = {"I.B2.exp-1", "I.B2.exp-2", "I.B2.exp-3", "I.B2.rational", "I.C.exp-1",
                        "I.C.rational", "I.A1.i", "I.A1.iii", "I.A1.v", "I.A4.i",
                        "II.c=0.rational", "II.c=0.cot", "II.c≠0.exp-ratio", "III.exp", "V.1", "V.2"};
  int checked = 0;
  for (const auto& target : testing_support::chain_targets()) {
    if (std::find_if(std::begin(tags), std::end(tags), [&](const char* t) { return target.tag == t; }) ==
        std::end(tags))
      continue;
    for (int trial = 0; trial < 3; ++trial) {
      auto r = classify(target.draw(g));
      const SolutionFamily* f = nullptr;
      for (const auto& x : r.families)
        if (x.case_tag == target.tag) f = &x;
      REQUIRE(f);
      Expr u = instantiate(*f, testing_support::random_slots(g, *f));
      std::vector<double> t;
      for (double rr : {4.0, 8.0, 16.0, 32.0}) t.push_back(T(u, rr));
      for (size_t i = 1; i < t.size(); ++i) {
        CHECK_MESSAGE(t[i] >= 0.98 * t[i - 1], target.tag, " ", f->formula());
        CHECK_MESSAGE(t[i] <= 4.5 * t[i - 1] + 1e-9, target.tag, " ", f->formula());
      }
      const double tr = T(u, 16), tinv = T(Expr(1) / u, 16);
      CHECK_MESSAGE(std::abs(tr - tinv) <= 3 + 0.05 * tr, target.tag, " ", f->formula(), " ", tr, " ", tinv);
      ++checked;
    }
  }
  CHECK(checked == 3 * static_cast<int>(std::size(tags)));
}
