#pragma once

#include <gmpxx.h>

#include <complex>
#include <iosfwd>
#include <string>

namespace loewy {

using Rational = mpq_class;
using Complex = std::complex<double>;

// Gaussian rational re + i*im.
class ExactComplex {
 public:
  ExactComplex() = default;
  ExactComplex(long v) : re_(v), im_(0) {}  // NOLINT
  ExactComplex(Rational re, Rational im = 0);

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_integer() const;
  ExactComplex conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }
  Complex approx() const { return {re_.get_d(), im_.get_d()}; }

  ExactComplex operator-() const { return {-re_, -im_}; }
  ExactComplex& operator+=(const ExactComplex& o);
  ExactComplex& operator-=(const ExactComplex& o);
  ExactComplex& operator*=(const ExactComplex& o);
  ExactComplex& operator/=(const ExactComplex& o);

  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
  friend ExactComplex operator/(ExactComplex a, const ExactComplex& b) { return a /= b; }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }
  // Lexicographic on (re, im); used only for canonical ordering.
  friend bool operator<(const ExactComplex& a, const ExactComplex& b);

  ExactComplex pow(unsigned k) const;

  // "3", "-1/2", "1/3+2i", "-i", "2/5i" style rendering.
  std::string to_string() const;

  // Exact binary value of a double pair.
  static ExactComplex from_double(Complex z);
  // Continued-fraction rationalization; denominators bounded by max_den.
  static ExactComplex rationalize(Complex z, long max_den = 1000000);

 private:
  Rational re_, im_;
};

std::ostream& operator<<(std::ostream& os, const ExactComplex& z);

// Parse "p/q", "p", "-p/q".  Throws ParseError.
Rational parse_rational(const std::string& s);
std::string rational_to_string(const Rational& q);

// Best rational approximation of x with denominator <= max_den.
Rational rationalize_real(double x, long max_den = 1000000);

}  // namespace loewy
