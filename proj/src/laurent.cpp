#include "loewy/laurent.hpp"

#include <algorithm>

namespace loewy {

LaurentSeries::LaurentSeries(int val, std::vector<ExactComplex> c, int prec)
    : val_(val), c_(std::move(c)), prec_(std::min(prec, kExact)) {
  if (!exact() && static_cast<int>(c_.size()) > prec_ - val_) c_.resize(std::max(0, prec_ - val_));
  if (exact())
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

LaurentSeries LaurentSeries::constant(const ExactComplex& c) { return LaurentSeries(0, {c}); }

ExactComplex LaurentSeries::coeff(int exponent) const {
  int i = exponent - val_;
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[i];
}

int LaurentSeries::lowest_nonzero() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return val_ + static_cast<int>(i);
  return kExact;
}

LaurentSeries LaurentSeries::derivative() const {
  std::vector<ExactComplex> d(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) d[i] = c_[i] * ExactComplex(val_ + static_cast<long>(i));
  return LaurentSeries(val_ - 1, std::move(d), exact() ? kExact : prec_ - 1);
}

LaurentSeries operator+(const LaurentSeries& x, const LaurentSeries& y) {
  int val = std::min(x.val_, y.val_);
  int prec = std::min(x.prec_, y.prec_);
  int top = std::max(x.val_ + static_cast<int>(x.c_.size()), y.val_ + static_cast<int>(y.c_.size()));
  if (prec < LaurentSeries::kExact) top = std::min(top, prec);
  std::vector<ExactComplex> c(std::max(0, top - val));
  for (int e = val; e < top; ++e) c[e - val] = x.coeff(e) + y.coeff(e);
  return LaurentSeries(val, std::move(c), prec);
}

LaurentSeries operator*(const LaurentSeries& x, const LaurentSeries& y) {
  int val = x.val_ + y.val_;
  int prec = LaurentSeries::kExact;
  if (!x.exact()) prec = std::min(prec, x.prec_ + y.val_);
  if (!y.exact()) prec = std::min(prec, y.prec_ + x.val_);
  int len = static_cast<int>(x.c_.size() + y.c_.size());
  if (prec < LaurentSeries::kExact) len = std::min(len, prec - val);
  std::vector<ExactComplex> c(std::max(0, len));
  for (size_t i = 0; i < x.c_.size(); ++i) {
    if (x.c_[i].is_zero()) continue;
    for (size_t k = 0; k < y.c_.size() && static_cast<int>(i + k) < len; ++k)
      c[i + k] += x.c_[i] * y.c_[k];
  }
  return LaurentSeries(val, std::move(c), prec);
}

LaurentSeries operator*(const ExactComplex& s, const LaurentSeries& x) {
  std::vector<ExactComplex> c = x.c_;
  for (auto& v : c) v *= s;
  return LaurentSeries(x.val_, std::move(c), x.prec_);
}

LaurentSeries substitute(const DiffPolynomial& poly, const LaurentSeries& u) {
  int n = std::max(poly.order(), 0);
  std::vector<LaurentSeries> derivs{u};
  for (int k = 1; k <= n; ++k) derivs.push_back(derivs.back().derivative());
  // powers[k][e] = (u^(k))^e, built lazily.
  std::vector<std::vector<LaurentSeries>> powers(n + 1);
  auto power = [&](int k, int e) -> const LaurentSeries& {
    auto& pk = powers[k];
    if (pk.empty()) pk.push_back(LaurentSeries::constant(1));
    while (static_cast<int>(pk.size()) <= e) pk.push_back(pk.back() * derivs[k]);
    return pk[e];
  };
  LaurentSeries acc(0, {}, LaurentSeries::kExact);
  bool first = true;
  for (const auto& [I, c] : poly.terms()) {
    LaurentSeries term = LaurentSeries::constant(c);
    for (size_t k = 0; k < I.size(); ++k)
      if (I[k] > 0) term = term * power(static_cast<int>(k), I[k]);
    acc = first ? term : acc + term;
    first = false;
  }
  return acc;
}

}  // namespace loewy
