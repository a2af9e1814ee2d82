#include "loewy/diffpoly.hpp"

#include <sstream>

#include "loewy/errors.hpp"

namespace loewy {

namespace {

void normalize(MultiIndex& I) {
  while (!I.empty() && I.back() == 0) I.pop_back();
}

MultiIndex combine(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r(std::max(a.size(), b.size()), 0);
  for (size_t k = 0; k < a.size(); ++k) r[k] += a[k];
  for (size_t k = 0; k < b.size(); ++k) r[k] += b[k];
  return r;
}

std::vector<ExactComplex> binomial_row(int n) {
  std::vector<ExactComplex> row(n + 1);
  mpz_class c = 1;
  for (int k = 0; k <= n; ++k) {
    row[k] = ExactComplex(Rational(c));
    c = c * (n - k) / (k + 1);
  }
  return row;
}

}  // namespace

int weight(const MultiIndex& I) {
  int w = 0;
  for (size_t k = 0; k < I.size(); ++k) w += static_cast<int>(k + 1) * I[k];
  return w;
}

int total_degree(const MultiIndex& I) {
  int d = 0;
  for (int i : I) d += i;
  return d;
}

DiffPolynomial DiffPolynomial::constant(const ExactComplex& c) {
  DiffPolynomial p;
  p.add_term({}, c);
  return p;
}

DiffPolynomial DiffPolynomial::var(int k) {
  MultiIndex I(k + 1, 0);
  I[k] = 1;
  return monomial(std::move(I), 1);
}

DiffPolynomial DiffPolynomial::monomial(MultiIndex I, const ExactComplex& c) {
  normalize(I);
  DiffPolynomial p;
  p.add_term(I, c);
  return p;
}

void DiffPolynomial::add_term(const MultiIndex& I, const ExactComplex& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(I, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int DiffPolynomial::order() const {
  int n = -1;
  for (const auto& [I, c] : terms_) n = std::max(n, static_cast<int>(I.size()) - 1);
  return n;
}

ExactComplex DiffPolynomial::coeff(const MultiIndex& I) const {
  MultiIndex J = I;
  normalize(J);
  auto it = terms_.find(J);
  return it == terms_.end() ? ExactComplex(0) : it->second;
}

int DiffPolynomial::max_weight() const {
  int w = 0;
  for (const auto& [I, c] : terms_) w = std::max(w, weight(I));
  return w;
}

DiffPolynomial& DiffPolynomial::operator+=(const DiffPolynomial& o) {
  for (const auto& [I, c] : o.terms_) add_term(I, c);
  return *this;
}

DiffPolynomial& DiffPolynomial::operator-=(const DiffPolynomial& o) {
  for (const auto& [I, c] : o.terms_) add_term(I, -c);
  return *this;
}

DiffPolynomial& DiffPolynomial::operator*=(const ExactComplex& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [I, c] : terms_) c *= s;
  return *this;
}

DiffPolynomial operator*(const DiffPolynomial& a, const DiffPolynomial& b) {
  DiffPolynomial r;
  for (const auto& [I, c] : a.terms_)
    for (const auto& [J, d] : b.terms_) r.add_term(combine(I, J), c * d);
  return r;
}

DiffPolynomial DiffPolynomial::derivative() const {
  DiffPolynomial r;
  for (const auto& [I, c] : terms_) {
    for (size_t k = 0; k < I.size(); ++k) {
      if (I[k] == 0) continue;
      MultiIndex J = I;
      if (J.size() < k + 2) J.resize(k + 2, 0);
      J[k] -= 1;
      J[k + 1] += 1;
      normalize(J);
      r.add_term(J, c * ExactComplex(I[k]));
    }
  }
  return r;
}

DiffPolynomial DiffPolynomial::shift(const ExactComplex& s) const {
  if (s.is_zero()) return *this;
  DiffPolynomial r;
  for (const auto& [I, c] : terms_) {
    int e = I.empty() ? 0 : I[0];
    auto binom = binomial_row(e);
    ExactComplex sp = 1;
    // (u + s)^e = sum_k C(e,k) s^k u^(e-k)
    for (int k = 0; k <= e; ++k) {
      MultiIndex J = I;
      if (!J.empty()) J[0] = e - k;
      normalize(J);
      r.add_term(J, c * binom[k] * sp);
      sp *= s;
    }
  }
  return r;
}

namespace {

template <class T>
T monomial_value(const MultiIndex& I, const std::vector<T>& jet) {
  T v(1);
  for (size_t k = 0; k < I.size(); ++k)
    for (int e = 0; e < I[k]; ++e) v *= jet[k];
  return v;
}

void check_jet(const MultiIndex& I, size_t n) {
  if (I.size() > n) throw DomainError("jet too short for differential polynomial");
}

}  // namespace

Complex DiffPolynomial::eval(const std::vector<Complex>& jet) const {
  Complex acc;
  for (const auto& [I, c] : terms_) {
    check_jet(I, jet.size());
    acc += c.approx() * monomial_value(I, jet);
  }
  return acc;
}

ExactComplex DiffPolynomial::eval(const std::vector<ExactComplex>& jet) const {
  ExactComplex acc;
  for (const auto& [I, c] : terms_) {
    check_jet(I, jet.size());
    acc += c * monomial_value(I, jet);
  }
  return acc;
}

std::vector<Complex> DiffPolynomial::term_values(const std::vector<Complex>& jet) const {
  std::vector<Complex> out;
  for (const auto& [I, c] : terms_) {
    check_jet(I, jet.size());
    out.push_back(c.approx() * monomial_value(I, jet));
  }
  return out;
}

std::string DiffPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest weight first, then lexicographic.
  std::vector<std::pair<MultiIndex, ExactComplex>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
    if (weight(x.first) != weight(y.first)) return weight(x.first) > weight(y.first);
    return x.first > y.first;
  });
  for (const auto& [I, c] : ordered) {
    std::string cs = c.to_string();
    bool compound = !c.is_real() && sgn(c.re()) != 0;
    if (compound) cs = "(" + cs + ")";
    bool neg = !compound && cs[0] == '-';
    if (neg) cs = cs.substr(1);
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    std::string mono;
    for (size_t k = 0; k < I.size(); ++k) {
      if (I[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      std::string v = "u" + (k <= 3 ? std::string(k, '\'') : "^(" + std::to_string(k) + ")");
      if (I[k] > 1) v = (k == 0 ? v : "(" + v + ")") + "^" + std::to_string(I[k]);
      mono += v;
    }
    if (mono.empty()) os << cs;
    else if (cs == "1") os << mono;
    else os << cs << "*" << mono;
  }
  return os.str();
}

}  // namespace loewy
