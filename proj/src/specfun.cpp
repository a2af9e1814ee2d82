#include "loewy/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>
#include <vector>

#include "loewy/errors.hpp"

namespace loewy {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kLaurentK = 32;  // terms through z^60

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void check_finite(Complex v, const char* what) {
  if (!finite(v)) throw Overflow(std::string("overflow in ") + what);
}

}  // namespace

const char* degeneracy_name(Degeneracy d) {
  switch (d) {
    case Degeneracy::Generic: return "Generic";
    case Degeneracy::DoubleRoot: return "DoubleRoot";
    case Degeneracy::TripleRoot: return "TripleRoot";
  }
  return "?";
}

EllipticInvariants EllipticInvariants::make(Complex g2, Complex g3) {
  EllipticInvariants inv;
  inv.g2 = g2;
  inv.g3 = g3;
  inv.discriminant = g2 * g2 * g2 - 27.0 * g3 * g3;
  double ref = std::max(std::pow(std::abs(g2), 3), std::pow(std::abs(g3), 2));
  if (ref == 0) inv.cls = Degeneracy::TripleRoot;
  else if (std::abs(inv.discriminant) <= 1e-12 * ref) inv.cls = Degeneracy::DoubleRoot;
  return inv;
}

double EllipticInvariants::scale() const {
  return std::max(std::pow(std::abs(g2), 0.25), std::pow(std::abs(g3), 1.0 / 6.0));
}

std::vector<Complex> wp_laurent_coefficients(Complex g2, Complex g3, int kmax) {
  std::vector<Complex> c(std::max(kmax, 3) + 1);
  c[2] = g2 / 20.0;
  c[3] = g3 / 28.0;
  for (int k = 4; k <= kmax; ++k) {
    Complex s;
    for (int m = 2; m <= k - 2; ++m) s += c[m] * c[k - m];
    c[k] = 3.0 / ((2.0 * k + 1) * (k - 3)) * s;
  }
  c.resize(kmax + 1);
  return c;
}

std::pair<Complex, Complex> wp_pair_generic(Complex z, const EllipticInvariants& inv,
                                            int extra_halvings) {
  double s = inv.scale();
  double az = std::abs(z);
  if (az < 1e-7 / std::max(1.0, s)) throw PoleNear("wp evaluated at a lattice point", 0);
  int halvings = extra_halvings;
  while (az * s / std::ldexp(1.0, halvings) > 1.0) ++halvings;
  Complex w = std::ldexp(1.0, -halvings) * z;
  auto c = wp_laurent_coefficients(inv.g2, inv.g3, kLaurentK);
  Complex w2 = w * w;
  Complex p = 0, dp = 0;
  for (int k = kLaurentK; k >= 2; --k) {
    p = p * w2 + c[k];
    dp = dp * w2 + c[k] * (2.0 * k - 2);
  }
  // p = sum c_k w^{2k-4}, dp = sum (2k-2) c_k w^{2k-4}
  p = p * w2 + 1.0 / w2;
  dp = dp * w - 2.0 / (w2 * w);
  for (int i = 0; i < halvings; ++i) {
    if (std::abs(dp) == 0) throw PoleNear("wp duplication hit a half period", z);
    Complex m = (12.0 * p * p - inv.g2) / (2.0 * dp);
    Complex p2 = m * m / 4.0 - 2.0 * p;
    Complex dp2 = -(dp + m * (p2 - p));
    p = p2;
    dp = dp2;
  }
  double lim = 1e14 * std::max(1.0, s * s);
  if (!finite(p) || std::abs(p) > lim) {
    Complex at = finite(p) && finite(dp) && std::abs(dp) > 0 ? z + 2.0 * p / dp : z;
    throw PoleNear("wp evaluated near a lattice point", at);
  }
  return {p, dp};
}

namespace {

Lattice cached_lattice(const EllipticInvariants& inv) {
  thread_local std::vector<std::tuple<Complex, Complex, Lattice>> cache;
  for (const auto& [g2, g3, lat] : cache)
    if (g2 == inv.g2 && g3 == inv.g3) return lat;
  Lattice lat = wp_lattice(inv);
  if (cache.size() >= 64) cache.erase(cache.begin());
  cache.emplace_back(inv.g2, inv.g3, lat);
  return lat;
}

// z minus the nearest lattice point in the basis w1, w2.
Complex reduce_to_cell(Complex z, const Lattice& lat) {
  const double a = lat.w1.real(), b = lat.w2.real(), c = lat.w1.imag(), d = lat.w2.imag();
  const double det = a * d - b * c;
  const double x = (d * z.real() - b * z.imag()) / det;
  const double y = (a * z.imag() - c * z.real()) / det;
  return z - std::round(x) * lat.w1 - std::round(y) * lat.w2;
}

}  // namespace

std::pair<Complex, Complex> wp_pair(Complex z, const EllipticInvariants& inv, int extra_halvings) {
  switch (inv.cls) {
    case Degeneracy::TripleRoot: {
      if (std::abs(z) < 1e-7) throw PoleNear("wp evaluated at a lattice point", 0);
      return {1.0 / (z * z), -2.0 / (z * z * z)};
    }
    case Degeneracy::DoubleRoot: {
      // 4x^3 - g2 x - g3 = 4 (x - e)^2 (x + 2e)
      Complex e = -1.5 * inv.g3 / inv.g2;
      Complex k = std::sqrt(3.0 * e);
      Complex sh = std::sinh(k * z), ch = std::cosh(k * z);
      check_finite(sh, "wp");
      if (std::abs(sh) < 1e-8 * std::max(1.0, std::abs(ch))) {
        Complex n = std::round((k * z / Complex(0, kPi)).real());
        throw PoleNear("wp evaluated near a lattice point", n * Complex(0, kPi) / k);
      }
      Complex p = e + 3.0 * e / (sh * sh);
      Complex dp = -6.0 * e * k * ch / (sh * sh * sh);
      return {p, dp};
    }
    case Degeneracy::Generic:
      break;
  }
  // Duplication error grows like |z|^2, so far arguments are first reduced
  // into the fundamental cell.
  const double s = inv.scale();
  if (std::abs(z) * s > 1e15)
    throw Overflow("wp argument " + std::to_string(std::abs(z)) + " exceeds the lattice scale " +
                   std::to_string(1 / s) + " by more than 1e15");
  if (std::abs(z) * s <= 2) return wp_pair_generic(z, inv, extra_halvings);
  const Complex r = reduce_to_cell(z, cached_lattice(inv));
  try {
    return wp_pair_generic(r, inv, extra_halvings);
  } catch (const PoleNear& e) {
    throw PoleNear(e.what(), e.where() + (z - r));
  }
}

Complex wp(Complex z, const EllipticInvariants& inv) { return wp_pair(z, inv).first; }
Complex wp_prime(Complex z, const EllipticInvariants& inv) { return wp_pair(z, inv).second; }

Lattice wp_lattice(const EllipticInvariants& inv) {
  if (inv.cls != Degeneracy::Generic) throw DomainError("degenerate invariants have no period lattice");
  double s = inv.scale();
  std::vector<Complex> poles;
  // Newton on 1/sqrt(p) from a polar grid of starts.
  for (int ring = 1; ring <= 6; ++ring) {
    for (int t = 0; t < 12; ++t) {
      Complex w = (0.6 * ring / s) * std::polar(1.0, 2 * kPi * (t + 0.5 * ring) / 12);
      bool converged = false;
      for (int it = 0; it < 60 && !converged; ++it) {
        try {
          auto [p, dp] = wp_pair_generic(w, inv);
          Complex step = 2.0 * p / dp;
          w += step;
          if (std::abs(step) < 1e-13 / s) converged = true;
        } catch (const PoleNear& e) {
          w = e.where();
          converged = true;
        }
      }
      if (converged && std::abs(w) > 1e-3 / s) poles.push_back(w);
    }
  }
  if (poles.empty()) throw DomainError("failed to locate wp lattice");
  std::sort(poles.begin(), poles.end(), [](Complex x, Complex y) { return std::abs(x) < std::abs(y); });
  Complex w1 = poles.front();
  Complex w2 = 0;
  for (Complex p : poles) {
    double cross = std::abs((p / w1).imag());
    if (cross > 1e-6) {
      w2 = p;
      break;
    }
  }
  if (w2 == Complex(0)) throw DomainError("failed to locate a second wp period");
  // Lagrange-Gauss reduction.
  for (int it = 0; it < 100; ++it) {
    if (std::abs(w2) < std::abs(w1)) std::swap(w1, w2);
    double mu = std::round((w2 / w1).real());
    if (mu == 0) break;
    w2 -= mu * w1;
  }
  if (std::abs(w2) < std::abs(w1)) std::swap(w1, w2);
  return {w1, w2};
}

namespace {

using LComplex = std::complex<long double>;

const double kLanczos[] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                           771.32342877765313,   -176.61502916214059,   12.507343278686905,
                           -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool near_nonpositive_integer(Complex z) {
  return std::abs(z.imag()) < 1e-14 && z.real() <= 0.5 &&
         std::abs(z.real() - std::round(z.real())) < 1e-14;
}

}  // namespace

Complex gamma_fn(Complex z) {
  if (near_nonpositive_integer(z)) throw PoleNear("Gamma at a nonpositive integer", z);
  if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * gamma_fn(1.0 - z));
  z -= 1.0;
  Complex x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  Complex t = z + 7.5;
  return std::sqrt(2 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

Complex rgamma(Complex z) {
  if (near_nonpositive_integer(z)) return 0;
  if (z.real() < 0.5) return std::sin(kPi * z) * gamma_fn(1.0 - z) / kPi;
  return 1.0 / gamma_fn(z);
}

namespace {

constexpr double kSeriesRadius = 20;

bool is_integer_order(Complex nu, long& n) {
  if (std::abs(nu.imag()) > 1e-12) return false;
  double r = std::round(nu.real());
  if (std::abs(nu.real() - r) > 1e-12) return false;
  n = static_cast<long>(r);
  return true;
}

// Ascending series of J_nu for nu not a negative integer.
LComplex j_series(Complex nu, Complex zeta) {
  LComplex z(zeta), q = -z * z / 4.0L;
  LComplex t = LComplex(rgamma(nu + 1.0));
  LComplex nul(nu);
  LComplex sum = t;
  long double az = std::abs(z);
  for (int k = 1; k < 500; ++k) {
    t *= q / (static_cast<long double>(k) * (nul + static_cast<long double>(k)));
    sum += t;
    if (k > az && std::abs(t) <= 1e-19L * std::abs(sum)) break;
  }
  return std::exp(nul * std::log(z / 2.0L)) * sum;
}

// Hankel functions for large |zeta| by the asymptotic expansion.
std::pair<Complex, Complex> hankel_asymptotic(Complex nu, Complex zeta) {
  Complex mu = 4.0 * nu * nu;
  Complex sp = 1, sm = 1, a = 1;
  Complex ip(0, 1);
  Complex powp = 1, powm = 1;
  double last = 1e300;
  for (int k = 1; k < 200; ++k) {
    double odd = 2.0 * k - 1;
    a *= (mu - odd * odd) / (8.0 * k * zeta);
    powp *= ip;
    powm *= -ip;
    double mag = std::abs(a);
    if (mag > last) break;
    sp += powp * a;
    sm += powm * a;
    last = mag;
    if (mag < 1e-17) break;
  }
  Complex omega = zeta - nu * kPi / 2.0 - kPi / 4.0;
  Complex pre = std::sqrt(2.0 / (kPi * zeta));
  return {pre * std::exp(ip * omega) * sp, pre * std::exp(-ip * omega) * sm};
}

// (J, Y) for large |zeta|.  The left half-plane is reached from -zeta by
// zeta = -zeta e^{m pi i}, m = +-1, keeping the expansion away from its Stokes lines.
std::pair<Complex, Complex> large_argument(Complex nu, Complex zeta) {
  if (zeta.real() >= 0) {
    auto [h1, h2] = hankel_asymptotic(nu, zeta);
    return {0.5 * (h1 + h2), (h1 - h2) / Complex(0, 2)};
  }
  double m = zeta.imag() >= 0 ? 1 : -1;
  auto [j, y] = large_argument(nu, -zeta);
  Complex rot = std::exp(Complex(0, m * kPi) * nu);
  return {rot * j, y / rot + Complex(0, 2 * m) * std::cos(kPi * nu) * j};
}

Complex j_integer(long n, Complex zeta) {
  if (n < 0) return (n % 2 == 0 ? 1.0 : -1.0) * j_integer(-n, zeta);
  return Complex(j_series(static_cast<double>(n), zeta));
}

// Integer-order Y_n from the logarithmic series.
Complex y_integer(long n, Complex zeta) {
  if (n < 0) return (n % 2 == 0 ? 1.0 : -1.0) * y_integer(-n, zeta);
  const long double pi = std::numbers::pi_v<long double>;
  const long double euler = std::numbers::egamma_v<long double>;
  LComplex z(zeta), h = z / 2.0L, q = h * h;
  LComplex first = 0;
  if (n > 0) {
    // sum_{k<n} (n-k-1)!/k! q^k
    long double fac = 1;
    for (long m = 2; m < n; ++m) fac *= static_cast<long double>(m);  // (n-1)!
    LComplex qk = 1;
    for (long k = 0; k < n; ++k) {
      first += fac * qk;
      if (k + 1 < n) {
        fac /= static_cast<long double>((n - k - 1) * (k + 1));
        qk *= q;
      }
    }
    first *= std::pow(h, static_cast<long double>(-n)) / pi;
  }
  LComplex jn = j_series(static_cast<double>(n), zeta);
  LComplex log_part = 2.0L / pi * std::log(h) * jn;
  // sum (psi(k+1) + psi(n+k+1)) (-q)^k / (k! (n+k)!)
  long double hk = 0, hnk = 0;
  for (long m = 1; m <= n; ++m) hnk += 1.0L / m;
  long double nfac = 1;
  for (long m = 2; m <= n; ++m) nfac *= m;
  LComplex term = 1.0L / nfac, sum = 0;
  long double az = std::abs(z);
  for (long k = 0; k < 500; ++k) {
    if (k > 0) {
      term *= -q / (static_cast<long double>(k) * static_cast<long double>(n + k));
      hk += 1.0L / k;
      hnk += 1.0L / (n + k);
    }
    LComplex add = (2.0L * -euler + hk + hnk) * term;
    sum += add;
    if (k > az && std::abs(add) <= 1e-19L * std::abs(sum)) break;
  }
  LComplex last = std::pow(h, static_cast<long double>(n)) / pi * sum;
  return Complex(-first + log_part - last);
}

void check_zeta(Complex zeta) {
  if (std::abs(zeta) == 0) throw PoleNear("Bessel Y at zeta = 0", 0);
  if (zeta.imag() == 0 && zeta.real() < 0)
    throw DomainError("Bessel argument on the branch cut (negative real axis)");
}

}  // namespace

Complex bessel_j(Complex nu, Complex zeta) {
  long n = 0;
  bool integer = is_integer_order(nu, n);
  if (std::abs(zeta) == 0) {
    if (integer) return n == 0 ? 1.0 : 0.0;
    if (nu.real() > 0) return 0.0;
    throw PoleNear("J_nu at 0", 0);
  }
  if (!integer && zeta.imag() == 0 && zeta.real() < 0)
    throw DomainError("Bessel argument on the branch cut (negative real axis)");
  Complex v;
  if (std::abs(zeta) > kSeriesRadius) {
    auto [j, y] = large_argument(nu, zeta);
    v = j;
  } else if (integer) {
    v = j_integer(n, zeta);
  } else {
    v = Complex(j_series(nu, zeta));
  }
  check_finite(v, "bessel_j");
  return v;
}

Complex bessel_y(Complex nu, Complex zeta) {
  check_zeta(zeta);
  long n = 0;
  bool integer = is_integer_order(nu, n);
  Complex v;
  if (std::abs(zeta) > kSeriesRadius) {
    auto [j, y] = large_argument(nu, zeta);
    v = y;
  } else if (integer) {
    v = y_integer(n, zeta);
  } else {
    LComplex jp = j_series(nu, zeta), jm = j_series(-nu, zeta);
    LComplex nul(nu);
    const long double pi = std::numbers::pi_v<long double>;
    v = Complex((jp * std::cos(nul * pi) - jm) / std::sin(nul * pi));
  }
  check_finite(v, "bessel_y");
  return v;
}

Complex bessel_j_prime(Complex nu, Complex zeta) {
  return 0.5 * (bessel_j(nu - 1.0, zeta) - bessel_j(nu + 1.0, zeta));
}

Complex bessel_y_prime(Complex nu, Complex zeta) {
  return 0.5 * (bessel_y(nu - 1.0, zeta) - bessel_y(nu + 1.0, zeta));
}

Complex elementary(Elementary f, Complex z) {
  Complex v;
  switch (f) {
    case Elementary::Exp:
      v = std::exp(z);
      break;
    case Elementary::Tanh: {
      Complex c = std::cosh(z);
      if (std::abs(c) < 1e-12 * std::max(1.0, std::abs(std::sinh(z)))) throw PoleNear("tanh pole", z);
      v = std::tanh(z);
      break;
    }
    case Elementary::Cot: {
      Complex s = std::sin(z);
      if (std::abs(s) < 1e-12 * std::max(1.0, std::abs(std::cos(z)))) throw PoleNear("cot pole", z);
      v = std::cos(z) / s;
      break;
    }
    case Elementary::Log:
      if (std::abs(z) == 0) throw PoleNear("log at 0", 0);
      v = std::log(z);
      break;
    case Elementary::Sqrt:
      v = std::sqrt(z);
      break;
  }
  check_finite(v, "elementary function");
  return v;
}

}  // namespace loewy
