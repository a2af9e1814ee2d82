#include "loewy/painleve.hpp"

#include <algorithm>
#include <limits>

#include "loewy/chain.hpp"
#include "loewy/errors.hpp"
#include "loewy/laurent.hpp"

namespace loewy {

namespace {

// x (x-1) ... (x-k+1)
ExactComplex falling(long x, int k) {
  ExactComplex r = 1;
  for (int m = 0; m < k; ++m) r *= ExactComplex(x - m);
  return r;
}

// (j + p)(j + p - 1) ... (j + p - k + 1) as a polynomial in j.
UniPoly falling_in_j(int p, int k) {
  UniPoly r = UniPoly::constant(1, Var::J);
  for (int m = 0; m < k; ++m) r *= UniPoly({ExactComplex(p - m), 1}, Var::J);
  return r;
}

int min_exponent(const DiffPolynomial& poly, int p) {
  int q = std::numeric_limits<int>::max();
  for (const auto& [I, c] : poly.terms()) q = std::min(q, monomial_exponent(I, p));
  return q;
}

}  // namespace

int monomial_exponent(const MultiIndex& I, int p) {
  int e = 0;
  for (size_t k = 0; k < I.size(); ++k) e += I[k] * (p - static_cast<int>(k));
  return e;
}

DiffPolynomial dominant_terms(const DiffPolynomial& poly, int p) {
  if (poly.is_zero()) throw DomainError("zero differential polynomial has no dominant terms");
  int q = min_exponent(poly, p);
  DiffPolynomial d;
  for (const auto& [I, c] : poly.terms())
    if (monomial_exponent(I, p) == q) d += DiffPolynomial::monomial(I, c);
  return d;
}

UniPoly leading_poly(const DiffPolynomial& poly, int p) {
  UniPoly e({}, Var::U0);
  DiffPolynomial dom = dominant_terms(poly, p);
  for (const auto& [I, c] : dom.terms()) {
    ExactComplex v = c;
    for (size_t k = 0; k < I.size(); ++k) v *= falling(p, static_cast<int>(k)).pow(I[k]);
    e += UniPoly::monomial(v, total_degree(I), Var::U0);
  }
  return e;
}

BalanceSearch find_balances(const DiffPolynomial& poly, int p_bound) {
  if (poly.is_zero()) throw DomainError("zero differential polynomial");
  BalanceSearch out;
  out.p_bound = p_bound > 0 ? p_bound : std::max(poly.order(), 1);
  for (int p = -1; p >= -out.p_bound; --p) {
    if (dominant_terms(poly, p).terms().size() < 2) continue;
    UniPoly e = leading_poly(poly, p);
    if (e.is_zero()) continue;
    while (e.degree() >= 1 && e.coeff(0).is_zero()) e = e.deflate(0);
    if (e.degree() < 1) continue;
    RootSplit roots = exact_rational_roots(e);
    std::vector<ExactComplex> seen;
    for (const auto& r : roots.exact) {
      if (std::find(seen.begin(), seen.end(), r) != seen.end()) continue;
      seen.push_back(r);
      out.balances.push_back({p, r});
    }
    for (Complex r : roots.approx) out.irrational.emplace_back(p, r);
  }
  return out;
}

std::vector<LeadingBalance> leading_balances(const DiffPolynomial& poly, int p_bound) {
  return find_balances(poly, p_bound).balances;
}

UniPoly residue_poly(const std::vector<ExactComplex>& a) {
  for (const auto& ak : a)
    if (ak.is_zero()) throw DomainError("degenerate chain: some a_i = 0");
  // u^(k) at u0/z contributes u0 (-1)^k k! z^{-1-k}; every term has weight n+1.
  UniPoly r({}, Var::U0);
  DiffPolynomial d = expand_Dn(a);
  for (const auto& [I, c] : d.terms()) {
    ExactComplex v = c;
    for (size_t k = 0; k < I.size(); ++k) v *= falling(-1, static_cast<int>(k)).pow(I[k]);
    r += UniPoly::monomial(v, total_degree(I), Var::U0);
  }
  return r;
}

UniPoly indicial_direct(const DiffPolynomial& poly, const LeadingBalance& bal) {
  if (bal.u0.is_zero() || !leading_poly(poly, bal.p).eval(bal.u0).is_zero())
    throw DomainError("not a leading balance: u0 = " + bal.u0.to_string() +
                      ", p = " + std::to_string(bal.p));
  // Linearization of the dominant terms at u0 z^p applied to z^{j+p}.
  UniPoly P({}, Var::J);
  DiffPolynomial dom = dominant_terms(poly, bal.p);
  for (const auto& [I, c] : dom.terms()) {
    for (size_t k = 0; k < I.size(); ++k) {
      if (I[k] == 0) continue;
      ExactComplex v = c * ExactComplex(I[k]);
      for (size_t l = 0; l < I.size(); ++l) {
        int e = I[l] - (l == k ? 1 : 0);
        v *= (bal.u0 * falling(bal.p, static_cast<int>(l))).pow(e);
      }
      P += falling_in_j(bal.p, static_cast<int>(k)) * v;
    }
  }
  return P;
}

UniPoly indicial_recursive(const std::vector<ExactComplex>& a, const ExactComplex& u0) {
  if (a.empty()) throw DomainError("empty a-vector");
  for (const auto& ak : a)
    if (ak.is_zero()) throw DomainError("degenerate chain: some a_i = 0");
  // P_1 = j - 1 - 2 a_1 u0
  UniPoly P({ExactComplex(-1) - ExactComplex(2) * a[0] * u0, 1}, Var::J);
  for (size_t n = 1; n < a.size(); ++n) {
    std::vector<ExactComplex> head(a.begin(), a.begin() + static_cast<long>(n));
    ExactComplex Rn = residue_poly(head).eval(u0);
    UniPoly lin({ExactComplex(-static_cast<long>(n) - 1) - a[n] * u0, 1}, Var::J);
    P = P * lin - UniPoly::constant(a[n] * Rn, Var::J);
  }
  return P;
}

IndicialData indicial_data(const DiffPolynomial& poly, const LeadingBalance& bal) {
  IndicialData d;
  d.balance = bal;
  d.indicial = indicial_direct(poly, bal);
  if (d.indicial.degree() >= 1) {
    d.fuchs = exact_rational_roots(d.indicial);
    d.integer_indices = rational_integer_roots(d.indicial);
  }
  return d;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::GenericW: return "GenericW";
    case Verdict::InS: return "InS";
    case Verdict::OnAxis: return "OnAxis";
  }
  return "?";
}

GenericityVerdict genericity_test(const std::vector<ExactComplex>& a, int jmax) {
  if (jmax < 0) throw DomainError("jmax must be nonnegative");
  GenericityVerdict v;
  v.jmax = jmax;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) {
      v.verdict = Verdict::OnAxis;
      v.axis = static_cast<int>(i) + 1;
      return v;
    }
  }
  for (size_t k = 1; k <= a.size(); ++k) {
    ExactComplex u0 = ExactComplex(-static_cast<long>(k)) / a[k - 1];
    UniPoly P = indicial_recursive(a, u0);
    for (long j = 0; j <= jmax; ++j) {
      if (P.eval(ExactComplex(j)).is_zero()) {
        v.verdict = Verdict::InS;
        v.k = static_cast<int>(k);
        v.j = j;
        return v;
      }
    }
  }
  v.verdict = Verdict::GenericW;
  return v;
}

bool LaurentSolution::obstructed() const {
  return std::any_of(resonances.begin(), resonances.end(),
                     [](const Resonance& r) { return r.status == ResonanceStatus::Obstructed; });
}

LaurentSolution laurent_expand(const DiffPolynomial& poly, const LeadingBalance& bal, int depth,
                               const std::map<long, ExactComplex>& inject) {
  if (depth < 0) throw DomainError("depth must be nonnegative");
  UniPoly P = indicial_direct(poly, bal);
  LaurentSolution s;
  s.balance = bal;
  s.depth = depth;
  s.q = min_exponent(poly, bal.p);
  s.coefficients.push_back(bal.u0);
  for (int j = 1; j <= depth; ++j) {
    std::vector<ExactComplex> c = s.coefficients;
    c.push_back(0);
    LaurentSeries u(bal.p, c, bal.p + j + 1);
    ExactComplex Q = substitute(poly, u).coeff(s.q + j);
    ExactComplex Pj = P.eval(ExactComplex(j));
    if (!Pj.is_zero()) {
      s.coefficients.push_back(-Q / Pj);
      continue;
    }
    if (Q.is_zero()) {
      auto it = inject.find(j);
      s.resonances.push_back({j, ResonanceStatus::Free, 0});
      s.coefficients.push_back(it == inject.end() ? ExactComplex(0) : it->second);
    } else {
      s.resonances.push_back({j, ResonanceStatus::Obstructed, Q});
      break;
    }
  }
  return s;
}

}  // namespace loewy
