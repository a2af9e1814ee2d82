#include "loewy/exact.hpp"

#include <cmath>
#include <ostream>

#include "loewy/errors.hpp"

namespace loewy {

ExactComplex::ExactComplex(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

bool ExactComplex::is_integer() const {
  return sgn(im_) == 0 && re_.get_den() == 1;
}

ExactComplex& ExactComplex::operator+=(const ExactComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ExactComplex& ExactComplex::operator-=(const ExactComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

ExactComplex& ExactComplex::operator*=(const ExactComplex& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

ExactComplex& ExactComplex::operator/=(const ExactComplex& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  Rational n = o.norm();
  Rational r = (re_ * o.re_ + im_ * o.im_) / n;
  Rational i = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

bool operator<(const ExactComplex& a, const ExactComplex& b) {
  if (a.re_ != b.re_) return a.re_ < b.re_;
  return a.im_ < b.im_;
}

ExactComplex ExactComplex::pow(unsigned k) const {
  ExactComplex result(1), base = *this;
  while (k) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k) base *= base;
  }
  return result;
}

std::string rational_to_string(const Rational& q) {
  return q.get_str();
}

std::string ExactComplex::to_string() const {
  if (sgn(im_) == 0) return rational_to_string(re_);
  std::string im;
  if (im_ == 1) {
    im = "i";
  } else if (im_ == -1) {
    im = "-i";
  } else {
    im = rational_to_string(im_) + "i";
  }
  if (sgn(re_) == 0) return im;
  if (im[0] != '-') im = "+" + im;
  return rational_to_string(re_) + im;
}

std::ostream& operator<<(std::ostream& os, const ExactComplex& z) {
  return os << z.to_string();
}

Rational parse_rational(const std::string& s) {
  auto bad = [&]() { return ParseError("not a rational numeral: \"" + s + "\""); };
  if (s.empty()) throw bad();
  size_t slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto digits = [](const std::string& t, bool allow_sign) {
    size_t i = 0;
    if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  if (!digits(num, true) || !digits(den, false)) throw bad();
  if (num[0] == '+') num = num.substr(1);
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw ParseError("zero denominator in \"" + s + "\"");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

ExactComplex ExactComplex::from_double(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("non-finite value cannot be made exact");
  return {Rational(z.real()), Rational(z.imag())};
}

Rational rationalize_real(double x, long max_den) {
  if (!std::isfinite(x)) throw DomainError("non-finite value cannot be rationalized");
  // Convergents of the continued fraction of the exact binary value.
  Rational exact(x);
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rational rest = exact;
  for (int it = 0; it < 64; ++it) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Rational frac = rest - Rational(a);
    if (sgn(frac) == 0) break;
    rest = 1 / frac;
  }
  Rational r(p1, q1);
  r.canonicalize();
  return r;
}

ExactComplex ExactComplex::rationalize(Complex z, long max_den) {
  return {rationalize_real(z.real(), max_den), rationalize_real(z.imag(), max_den)};
}

}  // namespace loewy
