#include "loewy/verify.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "loewy/errors.hpp"
#include "loewy/laurent.hpp"

namespace loewy {

const char* residual_verdict_name(ResidualVerdict v) {
  return v == ResidualVerdict::Pass ? "Pass" : "Fail";
}

std::vector<Expr> jet_exprs(const Expr& u, int order) {
  std::vector<Expr> jet{u};
  for (int k = 1; k <= order; ++k) jet.push_back(differentiate(jet.back()));
  return jet;
}

namespace {

// Platform-independent uniform double in [0, 1).
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

namespace {

// Residual of one jet: numerator and normalizing term magnitude.
using JetResidual = std::function<std::pair<Complex, double>(const std::vector<Complex>&)>;

ResidualReport sample(int order, const Expr& u, const ResidualOptions& opt, const JetResidual& f) {
  if (opt.samples <= 0) throw DomainError("sample count must be positive");
  if (!(opt.r_min > 0 && opt.r_max > opt.r_min)) throw DomainError("bad sampling annulus");
  const std::vector<Expr> jet = jet_exprs(u, std::max(order, 0));
  std::mt19937_64 rng(opt.seed);
  ResidualReport rep;
  rep.tol = opt.tol;
  const int max_draws = 10 * opt.samples;
  const double r0sq = opt.r_min * opt.r_min, r1sq = opt.r_max * opt.r_max;
  for (int draw = 0; draw < max_draws && static_cast<int>(rep.points.size()) < opt.samples;
       ++draw) {
    const double r = std::sqrt(r0sq + unit(rng) * (r1sq - r0sq));
    const double th = 2 * std::numbers::pi * unit(rng);
    const Complex z = opt.center + std::polar(r, th);
    std::vector<Complex> vals;
    try {
      for (const auto& e : jet) vals.push_back(e.eval(z));
    } catch (const PoleNear&) {
      ++rep.pole_skips;
      continue;
    } catch (const Overflow&) {
      ++rep.pole_skips;
      continue;
    }
    auto [total, largest] = f(vals);
    const double rel = std::abs(total) / std::max(1.0, largest);
    rep.points.push_back(z);
    rep.residuals.push_back(rel);
    rep.max_rel = std::max(rep.max_rel, std::isfinite(rel) ? rel : INFINITY);
  }
  if (2 * static_cast<int>(rep.points.size()) < opt.samples)
    throw DomainError("inconclusive: only " + std::to_string(rep.points.size()) + " of " +
                      std::to_string(opt.samples) + " sample points avoided poles");
  rep.verdict = rep.max_rel <= opt.tol ? ResidualVerdict::Pass : ResidualVerdict::Fail;
  return rep;
}

double largest_term(const DiffPolynomial& poly, const std::vector<Complex>& jet) {
  double m = 0;
  for (Complex t : poly.term_values(jet)) m = std::max(m, std::abs(t));
  return m;
}

}  // namespace

ResidualReport residual(const DiffPolynomial& poly, const Expr& u, const ResidualOptions& opt) {
  return sample(poly.order(), u, opt, [&](const std::vector<Complex>& jet) {
    Complex total = 0;
    double m = 0;
    for (Complex t : poly.term_values(jet)) {
      m = std::max(m, std::abs(t));
      total += t;
    }
    return std::pair{total, m};
  });
}

ResidualReport residual(const FactorChain& chain, const Expr& u, const ResidualOptions& opt) {
  // The numerator is evaluated factor by factor on derivative jets, so an
  // exact solution of an inner factor gives an exact zero.
  const DiffPolynomial poly = expand_chain(chain);
  const Complex alpha = chain.alpha.approx();
  std::vector<std::pair<Complex, Complex>> ab;
  for (const auto& f : chain.factors) ab.emplace_back(f.a.approx(), f.b.approx());
  return sample(chain.order(), u, opt, [&](const std::vector<Complex>& jet) {
    std::vector<Complex> v = jet;
    v[0] -= alpha;
    for (const auto& [a, b] : ab) {
      // v <- v' - (a u + b) v, by Leibniz on the jets
      std::vector<Complex> next(v.size() - 1);
      for (size_t k = 0; k < next.size(); ++k) {
        Complex s = v[k + 1];
        double binom = 1;
        for (size_t i = 0; i <= k; ++i) {
          Complex c = a * jet[i] + (i == 0 ? b : Complex(0));
          s -= binom * c * v[k - i];
          binom = binom * static_cast<double>(k - i) / static_cast<double>(i + 1);
        }
        next[k] = s;
      }
      v = std::move(next);
    }
    return std::pair{v[0], largest_term(poly, jet)};
  });
}

std::optional<int> residual_series(const DiffPolynomial& poly, const LaurentSolution& s) {
  if (s.obstructed()) throw DomainError("Laurent solution has an obstructed resonance");
  LaurentSeries u(s.balance.p, s.coefficients);
  int low = substitute(poly, u).lowest_nonzero();
  if (low >= LaurentSeries::kExact) return std::nullopt;
  return low;
}

}  // namespace loewy
