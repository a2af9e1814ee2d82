#include "loewy/linfact.hpp"

#include <algorithm>
#include <cmath>

#include "loewy/errors.hpp"

namespace loewy {

DiffPolynomial LinearODE::to_diffpoly() const {
  DiffPolynomial p = DiffPolynomial::var(order()) + DiffPolynomial::constant(constant);
  for (int k = 0; k < order(); ++k) p += DiffPolynomial::var(k) * coefficients[k];
  return p;
}

UniPoly characteristic_poly(const LinearODE& ode) {
  if (ode.coefficients.empty()) throw ParseError("linear ODE must have order >= 1");
  std::vector<ExactComplex> c = ode.coefficients;
  c.push_back(1);
  return UniPoly(std::move(c), Var::Z);
}

namespace {

bool all_real(const LinearODE& ode) {
  return std::all_of(ode.coefficients.begin(), ode.coefficients.end(),
                     [](const ExactComplex& c) { return c.is_real(); });
}

// Reals ascending, then conjugate pairs (+im, -im) by ascending real part.
std::vector<ExactComplex> order_roots(std::vector<ExactComplex> exact, std::vector<Complex> approx,
                                      bool real_input) {
  std::vector<ExactComplex> out;
  if (real_input) {
    std::vector<Complex> reals, uppers;
    for (Complex r : approx) {
      if (std::abs(r.imag()) <= 1e-12 * (1 + std::abs(r))) reals.push_back({r.real(), 0});
      else if (r.imag() > 0) uppers.push_back(r);
    }
    std::sort(exact.begin(), exact.end());
    std::vector<ExactComplex> exact_reals, exact_uppers;
    for (const auto& e : exact) {
      if (e.is_real()) exact_reals.push_back(e);
      else if (sgn(e.im()) > 0) exact_uppers.push_back(e);
    }
    std::vector<ExactComplex> reals_all = exact_reals;
    for (Complex r : reals) reals_all.push_back(ExactComplex::from_double(r));
    std::sort(reals_all.begin(), reals_all.end());
    std::vector<ExactComplex> uppers_all = exact_uppers;
    for (Complex r : uppers) uppers_all.push_back(ExactComplex::from_double(r));
    std::sort(uppers_all.begin(), uppers_all.end());
    out = reals_all;
    for (const auto& u : uppers_all) {
      out.push_back(u);
      out.push_back(u.conj());
    }
    return out;
  }
  out = exact;
  for (Complex r : approx) out.push_back(ExactComplex::from_double(r));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

FactorChain factor_linear(const LinearODE& ode) {
  UniPoly chi = characteristic_poly(ode);
  RootSplit roots = exact_rational_roots(chi);
  bool real_input = all_real(ode);
  std::vector<ExactComplex> b = order_roots(roots.exact, roots.approx, real_input);
  if (static_cast<int>(b.size()) != ode.order())
    throw DomainError("root count mismatch in linear factorization");
  FactorChain chain;
  for (const auto& r : b) chain.factors.push_back({0, r});
  ExactComplex prod = 1;
  for (const auto& r : b) prod *= r;
  int n = ode.order();
  if (!prod.is_zero()) {
    ExactComplex sign = (n + 1) % 2 == 0 ? 1 : -1;
    chain.alpha = ode.constant * sign / prod;
  } else if (!ode.constant.is_zero()) {
    throw DomainError("zero characteristic root with nonzero constant term: no chain of this form");
  }
  return chain;
}

}  // namespace loewy
