#pragma once

#include <random>
#include <vector>

#include "loewy/exact.hpp"

namespace testing_support {

using loewy::Complex;
using loewy::ExactComplex;
using loewy::Rational;

struct Gen {
  explicit Gen(unsigned long seed) : rng(seed) {}
  std::mt19937_64 rng;

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  bool coin() { return integer(0, 1) == 1; }

  Rational rational(long num = 9, long den = 5) {
    Rational q(integer(-num, num), integer(1, den));
    q.canonicalize();
    return q;
  }
  Rational nonzero_rational(long num = 9, long den = 5) {
    for (;;) {
      Rational q = rational(num, den);
      if (sgn(q) != 0) return q;
    }
  }
  ExactComplex gaussian(long num = 9, long den = 5, bool complex_part = true) {
    return {rational(num, den), complex_part ? rational(num, den) : Rational(0)};
  }
  ExactComplex nonzero_gaussian(long num = 9, long den = 5, bool complex_part = true) {
    for (;;) {
      ExactComplex z = gaussian(num, den, complex_part);
      if (!z.is_zero()) return z;
    }
  }
  Complex complex(double r) {
    return std::polar(real(0, r), real(0, 6.283185307179586));
  }
  Complex annulus(double r0, double r1) {
    return std::polar(real(r0, r1), real(0, 6.283185307179586));
  }
};

inline double rel_err(Complex a, Complex b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

}  // namespace testing_support
