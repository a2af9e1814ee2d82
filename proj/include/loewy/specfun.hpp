#pragma once

#include <utility>
#include <vector>

#include "loewy/exact.hpp"

namespace loewy {

enum class Degeneracy { Generic, DoubleRoot, TripleRoot };
const char* degeneracy_name(Degeneracy d);

struct EllipticInvariants {
  Complex g2, g3;
  Complex discriminant;  // g2^3 - 27 g3^2
  Degeneracy cls = Degeneracy::Generic;

  static EllipticInvariants make(Complex g2, Complex g3);
  // Characteristic length scale max(|g2|^{1/4}, |g3|^{1/6}).
  double scale() const;
};

// Weierstrass p and p' together.  extra_halvings forces additional
// duplication steps (consistency checks).
std::pair<Complex, Complex> wp_pair(Complex z, const EllipticInvariants& inv, int extra_halvings = 0);
Complex wp(Complex z, const EllipticInvariants& inv);
Complex wp_prime(Complex z, const EllipticInvariants& inv);
// Same, always through the Laurent/duplication path.
std::pair<Complex, Complex> wp_pair_generic(Complex z, const EllipticInvariants& inv,
                                            int extra_halvings = 0);
// Laurent coefficients c_k of p = z^-2 + sum_{k>=2} c_k z^{2k-2}, k = 2..kmax.
std::vector<Complex> wp_laurent_coefficients(Complex g2, Complex g3, int kmax);

// Two reduced generators of the period lattice (poles of p).
struct Lattice {
  Complex w1, w2;
};
Lattice wp_lattice(const EllipticInvariants& inv);

Complex gamma_fn(Complex z);
Complex rgamma(Complex z);  // 1/Gamma, entire

Complex bessel_j(Complex nu, Complex zeta);
Complex bessel_y(Complex nu, Complex zeta);
Complex bessel_j_prime(Complex nu, Complex zeta);
Complex bessel_y_prime(Complex nu, Complex zeta);

enum class Elementary { Exp, Tanh, Cot, Log, Sqrt };
Complex elementary(Elementary f, Complex z);

}  // namespace loewy
