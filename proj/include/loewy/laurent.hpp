#pragma once

#include <vector>

#include "loewy/diffpoly.hpp"

namespace loewy {

// sum_{i} c[i] z^{val + i}, known for exponents below prec.
class LaurentSeries {
 public:
  static constexpr int kExact = 1 << 28;

  LaurentSeries() = default;
  LaurentSeries(int val, std::vector<ExactComplex> c, int prec = kExact);
  static LaurentSeries constant(const ExactComplex& c);

  int valuation() const { return val_; }
  int precision() const { return prec_; }
  bool exact() const { return prec_ >= kExact / 2; }
  ExactComplex coeff(int exponent) const;
  // Lowest exponent with nonzero coefficient below prec; kExact if none.
  int lowest_nonzero() const;

  LaurentSeries derivative() const;
  friend LaurentSeries operator+(const LaurentSeries& x, const LaurentSeries& y);
  friend LaurentSeries operator*(const LaurentSeries& x, const LaurentSeries& y);
  friend LaurentSeries operator*(const ExactComplex& s, const LaurentSeries& x);

 private:
  int val_ = 0;
  std::vector<ExactComplex> c_;
  int prec_ = kExact;
};

// poly evaluated on u and its formal derivatives.
LaurentSeries substitute(const DiffPolynomial& poly, const LaurentSeries& u);

}  // namespace loewy
