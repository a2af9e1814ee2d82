#pragma once

#include <string>
#include <vector>

#include "loewy/exact.hpp"

namespace loewy {

enum class Var { J, U0, Z };
const char* var_name(Var v);

// Univariate polynomial with Gaussian-rational coefficients, lowest degree first.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<ExactComplex> coeffs, Var var = Var::Z);
  static UniPoly constant(const ExactComplex& c, Var var = Var::Z);
  // x - r
  static UniPoly linear_root(const ExactComplex& r, Var var = Var::Z);
  static UniPoly monomial(const ExactComplex& c, int deg, Var var = Var::Z);

  const std::vector<ExactComplex>& coeffs() const { return c_; }
  Var var() const { return var_; }
  void set_var(Var v) { var_ = v; }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  ExactComplex coeff(int k) const;
  ExactComplex leading() const;

  ExactComplex eval(const ExactComplex& x) const;
  Complex eval(Complex x) const;
  UniPoly derivative() const;
  UniPoly monic() const;
  // Quotient by (x - r); remainder discarded, caller checks eval(r) == 0.
  UniPoly deflate(const ExactComplex& r) const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const UniPoly& o);
  UniPoly& operator*=(const ExactComplex& s);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const UniPoly& b) { return a *= b; }
  friend UniPoly operator*(UniPoly a, const ExactComplex& s) { return a *= s; }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

  std::string to_string() const;

 private:
  void trim();
  std::vector<ExactComplex> c_;
  Var var_ = Var::Z;
};

// Roots with multiplicity.  Degree <= 2 in closed form, otherwise Aberth
// iteration (200 sweeps) followed by one Newton polish per root.
std::vector<Complex> poly_roots(const UniPoly& p);
std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs);

// Exact integer roots, ascending, without multiplicity.
std::vector<long> rational_integer_roots(const UniPoly& p);

struct RootSplit {
  std::vector<ExactComplex> exact;  // with multiplicity
  std::vector<Complex> approx;      // remaining roots, not Gaussian-rational
};
// Gaussian-rational roots recovered exactly; the rest approximately.
RootSplit exact_rational_roots(const UniPoly& p);

}  // namespace loewy
