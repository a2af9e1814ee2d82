#include "loewy/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "loewy/errors.hpp"

namespace loewy {

const char* var_name(Var v) {
  switch (v) {
    case Var::J: return "j";
    case Var::U0: return "u0";
    case Var::Z: return "z";
  }
  return "?";
}

UniPoly::UniPoly(std::vector<ExactComplex> coeffs, Var var) : c_(std::move(coeffs)), var_(var) {
  trim();
}

UniPoly UniPoly::constant(const ExactComplex& c, Var var) { return UniPoly({c}, var); }

UniPoly UniPoly::linear_root(const ExactComplex& r, Var var) { return UniPoly({-r, 1}, var); }

UniPoly UniPoly::monomial(const ExactComplex& c, int deg, Var var) {
  std::vector<ExactComplex> v(deg + 1);
  v[deg] = c;
  return UniPoly(std::move(v), var);
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

ExactComplex UniPoly::coeff(int k) const {
  if (k < 0 || k > degree()) return 0;
  return c_[k];
}

ExactComplex UniPoly::leading() const { return c_.empty() ? ExactComplex(0) : c_.back(); }

ExactComplex UniPoly::eval(const ExactComplex& x) const {
  ExactComplex acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Complex UniPoly::eval(Complex x) const {
  Complex acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->approx();
  return acc;
}

UniPoly UniPoly::derivative() const {
  std::vector<ExactComplex> d;
  for (int k = 1; k <= degree(); ++k) d.push_back(c_[k] * ExactComplex(k));
  return UniPoly(std::move(d), var_);
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  UniPoly m = *this;
  ExactComplex lc = leading();
  for (auto& c : m.c_) c /= lc;
  return m;
}

UniPoly UniPoly::deflate(const ExactComplex& r) const {
  if (degree() < 1) return UniPoly({}, var_);
  std::vector<ExactComplex> q(degree());
  ExactComplex carry;
  for (int k = degree(); k >= 1; --k) {
    carry = carry * r + c_[k];
    q[k - 1] = carry;
  }
  return UniPoly(std::move(q), var_);
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const UniPoly& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<ExactComplex> r(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t k = 0; k < o.c_.size(); ++k) r[i + k] += c_[i] * o.c_[k];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const ExactComplex& s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

std::string UniPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  const char* x = var_name(var_);
  for (int k = degree(); k >= 0; --k) {
    const ExactComplex& c = c_[k];
    if (c.is_zero()) continue;
    std::string cs = c.to_string();
    bool compound = !c.is_real() && sgn(c.re()) != 0;
    if (compound) cs = "(" + cs + ")";
    bool neg = !compound && cs[0] == '-';
    if (neg) cs = cs.substr(1);
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    if (k == 0) {
      os << cs;
      continue;
    }
    if (cs != "1") os << cs << "*";
    os << x;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

namespace {

Complex horner(const std::vector<Complex>& c, Complex x) {
  Complex acc;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<Complex> derivative(const std::vector<Complex>& c) {
  std::vector<Complex> d;
  for (size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * static_cast<double>(k));
  return d;
}

std::vector<Complex> quadratic(Complex a, Complex b, Complex c) {
  // a x^2 + b x + c, stable form.
  Complex disc = std::sqrt(b * b - 4.0 * a * c);
  Complex q = (std::real(std::conj(b) * disc) >= 0) ? -0.5 * (b + disc) : -0.5 * (b - disc);
  if (q == Complex(0)) return {Complex(0), Complex(0)};
  return {q / a, c / q};
}

std::vector<Complex> aberth(const std::vector<Complex>& c) {
  int n = static_cast<int>(c.size()) - 1;
  std::vector<Complex> dc = derivative(c);
  double radius = 0;
  for (int k = 0; k < n; ++k) radius = std::max(radius, std::pow(std::abs(c[k] / c[n]), 1.0 / (n - k)));
  if (radius == 0) radius = 1;
  std::vector<Complex> z(n);
  for (int k = 0; k < n; ++k) {
    double th = 2 * std::numbers::pi * k / n + 0.4;
    z[k] = radius * std::polar(1.0, th);
  }
  for (int it = 0; it < 200; ++it) {
    double worst = 0;
    for (int k = 0; k < n; ++k) {
      Complex pz = horner(c, z[k]);
      if (pz == Complex(0)) continue;
      Complex ratio = pz / horner(dc, z[k]);
      Complex sum;
      for (int m = 0; m < n; ++m)
        if (m != k) sum += 1.0 / (z[k] - z[m]);
      Complex step = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[k] -= step;
      worst = std::max(worst, std::abs(step) / (1 + std::abs(z[k])));
    }
    if (worst < 1e-16) break;
  }
  for (auto& r : z) {
    Complex d = horner(dc, r);
    if (std::abs(d) > 0) {
      Complex nr = r - horner(c, r) / d;
      if (std::isfinite(nr.real()) && std::isfinite(nr.imag()) &&
          std::abs(horner(c, nr)) <= std::abs(horner(c, r)))
        r = nr;
    }
  }
  return z;
}

}  // namespace

std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs) {
  std::vector<Complex> c = coeffs;
  while (!c.empty() && c.back() == Complex(0)) c.pop_back();
  if (c.empty()) throw DomainError("undefined roots");
  std::vector<Complex> roots;
  size_t lead0 = 0;
  while (lead0 < c.size() && c[lead0] == Complex(0)) ++lead0;
  roots.assign(lead0, Complex(0));
  c.erase(c.begin(), c.begin() + static_cast<long>(lead0));
  int n = static_cast<int>(c.size()) - 1;
  if (n == 1) {
    roots.push_back(-c[0] / c[1]);
  } else if (n == 2) {
    auto q = quadratic(c[2], c[1], c[0]);
    roots.insert(roots.end(), q.begin(), q.end());
  } else if (n > 2) {
    auto z = aberth(c);
    roots.insert(roots.end(), z.begin(), z.end());
  }
  return roots;
}

std::vector<Complex> poly_roots(const UniPoly& p) {
  if (p.is_zero()) throw DomainError("undefined roots");
  std::vector<Complex> c;
  for (const auto& e : p.coeffs()) c.push_back(e.approx());
  return poly_roots(c);
}

namespace {

// Integer polynomial proportional to the rational polynomial q (lowest first).
std::vector<mpz_class> clear_denominators(const std::vector<Rational>& q) {
  mpz_class l = 1;
  for (const auto& r : q) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.get_den_mpz_t());
  std::vector<mpz_class> out;
  for (const auto& r : q) out.push_back(r.get_num() * (l / r.get_den()));
  return out;
}

void integer_roots_of(const std::vector<mpz_class>& c, std::set<long>& out) {
  size_t low = 0;
  while (low < c.size() && c[low] == 0) ++low;
  if (low == c.size()) return;
  if (low > 0 && c.size() - low < 2) {
    out.insert(0);
    return;
  }
  if (low > 0) out.insert(0);
  std::vector<mpz_class> d(c.begin() + static_cast<long>(low), c.end());
  while (!d.empty() && d.back() == 0) d.pop_back();
  if (d.size() < 2) return;
  // Cauchy bound on root modulus.
  mpq_class bound = 0;
  for (size_t k = 0; k + 1 < d.size(); ++k) {
    mpq_class r(abs(d[k]), abs(d.back()));
    if (r > bound) bound = r;
  }
  bound += 1;
  mpz_class c0 = abs(d[0]);
  auto check = [&](const mpz_class& x) {
    mpz_class acc = 0;
    for (auto it = d.rbegin(); it != d.rend(); ++it) acc = acc * x + *it;
    if (acc == 0 && x.fits_slong_p()) out.insert(x.get_si());
  };
  // Any integer root divides c0 and lies within the bound.
  mpz_class limit = c0;
  if (mpq_class(limit) > bound) {
    mpz_class b;
    mpz_fdiv_q(b.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
    limit = b;
  }
  if (limit <= 2000000) {
    for (mpz_class x = 1; x <= limit; ++x) {
      if (c0 % x != 0) continue;
      check(x);
      check(-x);
    }
    return;
  }
  // Large bound: candidates from approximate roots near the real axis.
  std::vector<Complex> cd;
  for (const auto& v : d) cd.push_back(Complex(v.get_d(), 0));
  for (Complex r : poly_roots(cd)) {
    if (std::abs(r.imag()) > 0.5 + 1e-6 * std::abs(r)) continue;
    double f = std::floor(r.real());
    for (double x : {f - 1, f, f + 1, f + 2}) {
      if (std::abs(x) > 9.0e15) continue;
      mpz_class xi(static_cast<long>(x));
      if (xi != 0 && c0 % xi == 0) check(xi);
    }
  }
}

}  // namespace

std::vector<long> rational_integer_roots(const UniPoly& p) {
  if (p.is_zero()) throw DomainError("undefined roots");
  std::vector<Rational> re, im;
  for (const auto& c : p.coeffs()) {
    re.push_back(c.re());
    im.push_back(c.im());
  }
  bool re_zero = std::all_of(re.begin(), re.end(), [](const Rational& q) { return sgn(q) == 0; });
  std::set<long> cand;
  integer_roots_of(clear_denominators(re_zero ? im : re), cand);
  std::vector<long> out;
  for (long x : cand)
    if (p.eval(ExactComplex(x)).is_zero()) out.push_back(x);
  return out;
}

RootSplit exact_rational_roots(const UniPoly& p) {
  if (p.is_zero()) throw DomainError("undefined roots");
  RootSplit out;
  UniPoly rest = p;
  while (rest.degree() >= 1 && rest.coeff(0).is_zero()) {
    out.exact.push_back(0);
    rest = rest.deflate(0);
  }
  bool progress = true;
  while (rest.degree() >= 1 && progress) {
    progress = false;
    if (rest.degree() == 1) {
      out.exact.push_back(-rest.coeff(0) / rest.coeff(1));
      rest = UniPoly::constant(rest.coeff(1), rest.var());
      break;
    }
    for (Complex r : poly_roots(rest)) {
      for (long den : {1000000L, 1000L, 100L}) {
        ExactComplex cand = ExactComplex::rationalize(r, den);
        if (rest.eval(cand).is_zero()) {
          out.exact.push_back(cand);
          rest = rest.deflate(cand);
          progress = true;
          break;
        }
      }
      if (progress) break;
    }
  }
  if (rest.degree() >= 1) out.approx = poly_roots(rest);
  std::sort(out.exact.begin(), out.exact.end());
  return out;
}

}  // namespace loewy
