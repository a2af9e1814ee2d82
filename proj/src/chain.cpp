#include "loewy/chain.hpp"

#include <algorithm>

#include "loewy/errors.hpp"

namespace loewy {

std::vector<ExactComplex> FactorChain::a_values() const {
  std::vector<ExactComplex> a;
  for (const auto& f : factors) a.push_back(f.a);
  return a;
}

bool operator==(const FactorChain& x, const FactorChain& y) {
  if (x.alpha != y.alpha || x.factors.size() != y.factors.size()) return false;
  for (size_t k = 0; k < x.factors.size(); ++k)
    if (x.factors[k].a != y.factors[k].a || x.factors[k].b != y.factors[k].b) return false;
  return true;
}

DiffPolynomial expand_chain(const FactorChain& chain) {
  if (chain.factors.empty()) throw ParseError("factor chain must have at least one factor");
  // Work in w = u - alpha, where a u + b = a w + (b + a alpha).
  DiffPolynomial w = DiffPolynomial::var(0);
  DiffPolynomial acc = w;
  for (const auto& f : chain.factors) {
    DiffPolynomial mult = w * f.a + DiffPolynomial::constant(f.b + f.a * chain.alpha);
    acc = acc.derivative() - mult * acc;
  }
  return acc.shift(-chain.alpha);
}

DiffPolynomial expand_Dn(const std::vector<ExactComplex>& a) {
  FactorChain c;
  for (const auto& ak : a) c.factors.push_back({ak, 0});
  if (c.factors.empty()) return DiffPolynomial::var(0);
  return expand_chain(c);
}

Taylor Taylor::constant(Complex v, size_t len) {
  std::vector<Complex> c(len);
  if (len) c[0] = v;
  return Taylor(std::move(c));
}

Taylor Taylor::derivative() const {
  std::vector<Complex> d;
  for (size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<double>(k));
  return Taylor(std::move(d));
}

std::vector<Complex> Taylor::jet() const {
  std::vector<Complex> j;
  double fact = 1;
  for (size_t k = 0; k < c_.size(); ++k) {
    if (k) fact *= static_cast<double>(k);
    j.push_back(c_[k] * fact);
  }
  return j;
}

Taylor operator+(const Taylor& x, const Taylor& y) {
  size_t n = std::min(x.size(), y.size());
  std::vector<Complex> c(n);
  for (size_t k = 0; k < n; ++k) c[k] = x[k] + y[k];
  return Taylor(std::move(c));
}

Taylor operator-(const Taylor& x, const Taylor& y) { return x + Complex(-1) * y; }

Taylor operator*(const Taylor& x, const Taylor& y) {
  size_t n = std::min(x.size(), y.size());
  std::vector<Complex> c(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; i + k < n; ++k) c[i + k] += x[i] * y[k];
  return Taylor(std::move(c));
}

Taylor operator*(Complex s, const Taylor& x) {
  std::vector<Complex> c(x.size());
  for (size_t k = 0; k < x.size(); ++k) c[k] = s * x[k];
  return Taylor(std::move(c));
}

Taylor TestFunction::taylor(Complex z0, size_t len) const {
  std::vector<Complex> c(len);
  for (const auto& t : exp_terms) {
    // z^m = (z0 + h)^m, e^{kz} = e^{k z0} e^{kh}
    std::vector<Complex> zp(len), ex(len);
    double binom = 1;
    for (int i = 0; i <= t.m && i < static_cast<int>(len); ++i) {
      zp[i] = binom * std::pow(z0, t.m - i);
      binom = binom * (t.m - i) / (i + 1);
    }
    Complex e0 = std::exp(t.k * z0);
    Complex term = e0;
    for (size_t i = 0; i < len; ++i) {
      ex[i] = term;
      term *= t.k / static_cast<double>(i + 1);
    }
    for (size_t i = 0; i < len; ++i)
      for (size_t k = 0; i + k < len; ++k) c[i + k] += t.c * zp[i] * ex[k];
  }
  for (const auto& t : pole_terms) {
    // (d + h)^{-m} = sum_i C(-m, i) d^{-m-i} h^i
    Complex d = z0 - t.p;
    if (std::abs(d) == 0) throw PoleNear("test function evaluated at its pole", t.p);
    double binom = 1;
    for (size_t i = 0; i < len; ++i) {
      c[i] += t.c * binom * std::pow(d, -t.m - static_cast<int>(i));
      binom = binom * (-t.m - static_cast<double>(i)) / static_cast<double>(i + 1);
    }
  }
  return Taylor(std::move(c));
}

Complex apply_chain_numeric(const FactorChain& chain, const TestFunction& f, Complex z) {
  size_t n = chain.factors.size();
  Taylor u = f.taylor(z, n + 1);
  Taylor acc = u - Taylor::constant(chain.alpha.approx(), n + 1);
  for (const auto& fac : chain.factors) {
    Taylor d = acc.derivative();
    Taylor mult = fac.a.approx() * u + Taylor::constant(fac.b.approx(), u.size());
    acc = d - mult * acc;
  }
  return acc.value();
}

}  // namespace loewy
