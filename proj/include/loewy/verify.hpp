#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "loewy/chain.hpp"
#include "loewy/expr.hpp"
#include "loewy/painleve.hpp"

namespace loewy {

enum class ResidualVerdict { Pass, Fail };
const char* residual_verdict_name(ResidualVerdict v);

struct ResidualOptions {
  int samples = 20;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  Complex center{0, 0};
  double r_min = 0.3, r_max = 3.0;
};

struct ResidualReport {
  std::vector<Complex> points;  // usable sample points, in draw order
  std::vector<double> residuals;
  double max_rel = 0;
  int pole_skips = 0;
  double tol = 0;
  ResidualVerdict verdict = ResidualVerdict::Fail;
};

// Derivatives u, u', ..., u^(order) as expressions.
std::vector<Expr> jet_exprs(const Expr& u, int order);

// Evaluates poly on the jet of u at pseudo-random points of the annulus
// r_min <= |z - center| <= r_max.  Each residual is divided by max(1, largest
// |term|).  Points that hit PoleNear or Overflow are redrawn; fewer than
// samples/2 usable points throws DomainError ("inconclusive").
ResidualReport residual(const DiffPolynomial& poly, const Expr& u, const ResidualOptions& opt = {});
// For a chain the numerator is evaluated factor by factor; the normalization
// still uses the terms of the expanded polynomial.
ResidualReport residual(const FactorChain& chain, const Expr& u, const ResidualOptions& opt = {});

// Substitutes the truncated Laurent solution exactly.  Returns the lowest
// exponent with a nonzero coefficient, or nullopt if everything cancels.
// Throws DomainError on an obstructed solution.
std::optional<int> residual_series(const DiffPolynomial& poly, const LaurentSolution& s);

}  // namespace loewy
