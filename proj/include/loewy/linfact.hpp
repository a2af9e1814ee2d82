#pragma once

#include <vector>

#include "loewy/chain.hpp"
#include "loewy/poly.hpp"

namespace loewy {

// u^(n) + k_{n-1} u^(n-1) + ... + k_0 u + constant = 0
struct LinearODE {
  std::vector<ExactComplex> coefficients;  // k_0 .. k_{n-1}
  ExactComplex constant;

  int order() const { return static_cast<int>(coefficients.size()); }
  DiffPolynomial to_diffpoly() const;
};

UniPoly characteristic_poly(const LinearODE& ode);

// a_i = 0, b = characteristic roots (exact when Gaussian-rational), alpha from
// (-1)^{n+1} alpha prod b = constant.  Real input keeps conjugate pairs adjacent.
FactorChain factor_linear(const LinearODE& ode);

}  // namespace loewy
