#pragma once

#include <optional>
#include <vector>

#include "loewy/expr.hpp"

namespace loewy {

// Radii above this overflow even log-magnitude evaluation of exponential
// arguments like e^{e^{kz}}.
constexpr double kMaxGrowthRadius = 40;

struct GrowthOptions {
  int quad_points = 2048;
};

// m(r, f) = (1/2pi) int log+ |f(r e^{it})| dt by the trapezoid rule.  Nodes
// that hit a pole are replaced by the mean of their neighbours; more than 10%
// such nodes throws DomainError("radius through pole cluster").
double proximity_m(const Expr& e, double r, const GrowthOptions& opt = {});

// Number of poles in |z| <= t, with multiplicity, by the argument principle
// applied to the denominator of e.
int counting_n(const Expr& e, double t);

// N(r, f) = int_0^r (n(t) - n(0))/t dt + n(0) log r, from Jensen's formula on
// the denominator and by enumeration of Weierstrass lattices.  Throws
// DomainError when e has no supported pole description.
double counting_N(const Expr& e, double r, const GrowthOptions& opt = {});

struct OrderEstimate {
  double rho1 = 0;
  std::optional<double> rho2;  // needs T > 1 on the top half of the grid
};

struct HaymanFit {
  double a = 0, b = 0, c = 0;  // T(r) ~ a exp_{n-1}(b r^c)
  bool consistent = false;     // the fitted curve dominates every sample to 5%
};

struct GrowthCurve {
  int level = 2;
  std::vector<double> radii, m_values, n_values, t_values;
  std::optional<OrderEstimate> fitted_order;
  std::optional<HaymanFit> hayman_fit;
  bool subexponential = false;  // level 2 fit rejected
};

GrowthCurve hayman_check(const Expr& e, int level, const std::vector<double>& radii,
                         const GrowthOptions& opt = {});

// Slopes of log T and log log T against log r over the top half of the grid.
OrderEstimate order_estimate(const GrowthCurve& curve);

// Evenly spaced radii from rmin to rmax inclusive.
std::vector<double> radius_grid(double rmin, double rmax, int steps);

}  // namespace loewy
