#pragma once

#include <vector>

#include "loewy/diffpoly.hpp"

namespace loewy {

struct Factor {
  ExactComplex a, b;
};

// [D - (a_n u + b_n)] ... [D - (a_1 u + b_1)] (u - alpha); factors[0] is innermost.
struct FactorChain {
  ExactComplex alpha;
  std::vector<Factor> factors;

  int order() const { return static_cast<int>(factors.size()); }
  std::vector<ExactComplex> a_values() const;
  friend bool operator==(const FactorChain& x, const FactorChain& y);
};

DiffPolynomial expand_chain(const FactorChain& chain);
// [D - a_n u] ... [D - a_1 u] u
DiffPolynomial expand_Dn(const std::vector<ExactComplex>& a);

// Truncated Taylor expansion about a point: c[k] = f^(k)(z0) / k!.
class Taylor {
 public:
  explicit Taylor(std::vector<Complex> c) : c_(std::move(c)) {}
  static Taylor constant(Complex v, size_t len);
  size_t size() const { return c_.size(); }
  Complex operator[](size_t k) const { return c_[k]; }
  Complex value() const { return c_.empty() ? Complex() : c_[0]; }
  // Loses one order of accuracy.
  Taylor derivative() const;
  std::vector<Complex> jet() const;  // (f, f', f'', ...)
  friend Taylor operator+(const Taylor& x, const Taylor& y);
  friend Taylor operator-(const Taylor& x, const Taylor& y);
  friend Taylor operator*(const Taylor& x, const Taylor& y);
  friend Taylor operator*(Complex s, const Taylor& x);

 private:
  std::vector<Complex> c_;
};

// Sum of terms c z^m e^{k z} and c (z - p)^{-m}.
struct TestFunction {
  struct ExpPoly {
    Complex c;
    int m;
    Complex k;
  };
  struct Pole {
    Complex c;
    Complex p;
    int m;
  };
  std::vector<ExpPoly> exp_terms;
  std::vector<Pole> pole_terms;

  Taylor taylor(Complex z0, size_t len) const;
};

// Evaluates the chain on f at z by composing factors on Taylor data.
Complex apply_chain_numeric(const FactorChain& chain, const TestFunction& f, Complex z);

}  // namespace loewy
