#pragma once

#include <map>
#include <string>
#include <vector>

#include "loewy/exact.hpp"

namespace loewy {

// (i_0, ..., i_n): exponents of u, u', ..., u^(n).  Stored without trailing zeros,
// so the constant monomial is the empty vector.
using MultiIndex = std::vector<int>;

int weight(const MultiIndex& I);  // sum (k+1) i_k
int total_degree(const MultiIndex& I);

// Polynomial in u, u', ..., u^(n) with Gaussian-rational coefficients.
class DiffPolynomial {
 public:
  using Terms = std::map<MultiIndex, ExactComplex>;

  DiffPolynomial() = default;
  static DiffPolynomial constant(const ExactComplex& c);
  // u^(k)
  static DiffPolynomial var(int k);
  static DiffPolynomial monomial(MultiIndex I, const ExactComplex& c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int order() const;  // -1 when no derivative variable occurs
  ExactComplex coeff(const MultiIndex& I) const;
  int max_weight() const;

  DiffPolynomial& operator+=(const DiffPolynomial& o);
  DiffPolynomial& operator-=(const DiffPolynomial& o);
  DiffPolynomial& operator*=(const ExactComplex& s);
  friend DiffPolynomial operator+(DiffPolynomial a, const DiffPolynomial& b) { return a += b; }
  friend DiffPolynomial operator-(DiffPolynomial a, const DiffPolynomial& b) { return a -= b; }
  friend DiffPolynomial operator*(DiffPolynomial a, const ExactComplex& s) { return a *= s; }
  friend DiffPolynomial operator*(const DiffPolynomial& a, const DiffPolynomial& b);
  friend bool operator==(const DiffPolynomial& a, const DiffPolynomial& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const DiffPolynomial& a, const DiffPolynomial& b) { return !(a == b); }

  // Total derivative d/dz with u^(k) -> u^(k+1).
  DiffPolynomial derivative() const;
  // Substitute u -> u + s (only u itself moves; derivatives are unchanged).
  DiffPolynomial shift(const ExactComplex& s) const;

  // jet = (u, u', ..., u^(m)); m must cover order().
  Complex eval(const std::vector<Complex>& jet) const;
  ExactComplex eval(const std::vector<ExactComplex>& jet) const;
  // Individual term values, for scale-aware residuals.
  std::vector<Complex> term_values(const std::vector<Complex>& jet) const;

  std::string to_string() const;

 private:
  void add_term(const MultiIndex& I, const ExactComplex& c);
  Terms terms_;
};

}  // namespace loewy
