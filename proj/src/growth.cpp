#include "loewy/growth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "loewy/errors.hpp"
#include "loewy/specfun.hpp"

namespace loewy {

namespace {

constexpr double kPi = std::numbers::pi;

// Poles of wp(a z + b) or wp'(a z + b), of the given order at every lattice point.
struct LatticePoles {
  Complex a, b, g2, g3;
  int order = 2;
};

// e = num/den with num and den entire, apart from Weierstrass nodes whose
// poles are listed in `lattices` and which may only occur in num.
struct Divisor {
  Expr num, den;
  std::vector<LatticePoles> lattices;
  bool num_entire = true;
};

[[noreturn]] void unsupported(const Expr& e) {
  throw DomainError("pole counting not supported for " + e.render());
}

bool constant(const Expr& e) { return !e.depends_on_z(); }

bool same(const Expr& x, const Expr& y) { return x.render() == y.render(); }

std::vector<LatticePoles> merge(std::vector<LatticePoles> x, const std::vector<LatticePoles>& y,
                                bool add_orders) {
  for (const auto& l : y) {
    auto it = std::find_if(x.begin(), x.end(), [&](const LatticePoles& m) {
      return m.a == l.a && m.b == l.b && m.g2 == l.g2 && m.g3 == l.g3;
    });
    if (it == x.end()) x.push_back(l);
    else it->order = add_orders ? it->order + l.order : std::max(it->order, l.order);
  }
  return x;
}

// Entire argument of exp, tanh or cot.
Expr entire_argument(const Divisor& d, const Expr& e) {
  if (!constant(d.den) || !d.lattices.empty() || !d.num_entire) unsupported(e);
  return d.num / d.den;
}

Divisor divisor(const Expr& e) {
  using Op = Expr::Op;
  if (constant(e)) return {e, Expr(1), {}, true};
  const auto& a = e.args();
  switch (e.op()) {
    case Op::Z: return {e, Expr(1), {}, true};
    case Op::Neg: {
      Divisor d = divisor(a[0]);
      d.num = -d.num;
      return d;
    }
    case Op::Add:
    case Op::Sub: {
      Divisor x = divisor(a[0]), y = divisor(a[1]);
      auto combine = [&](const Expr& p, const Expr& q) { return e.op() == Op::Add ? p + q : p - q; };
      Divisor out;
      if (same(x.den, y.den)) {
        out.num = combine(x.num, y.num);
        out.den = x.den;
      } else {
        out.num = combine(x.num * y.den, y.num * x.den);
        out.den = x.den * y.den;
      }
      out.lattices = merge(x.lattices, y.lattices, false);
      out.num_entire = x.num_entire && y.num_entire;
      return out;
    }
    case Op::Mul: {
      Divisor x = divisor(a[0]), y = divisor(a[1]);
      return {x.num * y.num, x.den * y.den, merge(x.lattices, y.lattices, true),
              x.num_entire && y.num_entire};
    }
    case Op::Div: {
      Divisor x = divisor(a[0]), y = divisor(a[1]);
      if (!y.num_entire || !y.lattices.empty()) unsupported(e);
      return {x.num * y.den, x.den * y.num, x.lattices, x.num_entire};
    }
    case Op::Pow: {
      Divisor x = divisor(a[0]);
      const int k = e.exponent();
      if (k >= 0) {
        for (auto& l : x.lattices) l.order *= k;
        return {x.num.pow(k), x.den.pow(k), x.lattices, x.num_entire};
      }
      if (!x.num_entire || !x.lattices.empty()) unsupported(e);
      return {x.den.pow(-k), x.num.pow(-k), {}, true};
    }
    case Op::Exp: return {exp(entire_argument(divisor(a[0]), e)), Expr(1), {}, true};
    case Op::Tanh: {
      Expr q = exp(Expr(2) * entire_argument(divisor(a[0]), e));
      return {q - Expr(1), q + Expr(1), {}, true};
    }
    case Op::Cot: {
      Expr q = exp(Expr(Complex(0, 2)) * entire_argument(divisor(a[0]), e));
      return {Expr(Complex(0, 1)) * (q + Expr(1)), q - Expr(1), {}, true};
    }
    case Op::Wp:
    case Op::WpPrime: {
      const Expr& w = a[0];
      Expr dw = differentiate(w);
      if (!constant(a[1]) || !constant(a[2]) || dw.depends_on_z()) unsupported(e);
      LatticePoles l{dw.eval(0), w.eval(0), a[1].eval(0), a[2].eval(0), e.op() == Op::Wp ? 2 : 3};
      if (l.a == Complex(0)) return {e, Expr(1), {}, true};
      return {e, Expr(1), {l}, false};
    }
    default: unsupported(e);
  }
}

// Poles z_k = (L - b)/a of one lattice with |z_k| <= r.
std::vector<Complex> lattice_poles(const LatticePoles& l, double r) {
  auto inv = EllipticInvariants::make(l.g2, l.g3);
  std::vector<Complex> out;
  const double reach = std::abs(l.a) * r + std::abs(l.b);
  auto keep = [&](Complex L) {
    Complex z = (L - l.b) / l.a;
    if (std::abs(z) <= r) out.push_back(z);
  };
  switch (inv.cls) {
    case Degeneracy::TripleRoot: keep(0); break;
    case Degeneracy::DoubleRoot: {
      // p = e + 3e/sinh^2(k w), poles at w = n pi i/k
      Complex e = -1.5 * l.g3 / l.g2;
      Complex step = Complex(0, kPi) / std::sqrt(3.0 * e);
      const long n = static_cast<long>(std::ceil(reach / std::abs(step))) + 1;
      for (long j = -n; j <= n; ++j) keep(static_cast<double>(j) * step);
      break;
    }
    case Degeneracy::Generic: {
      Lattice lat = wp_lattice(inv);
      const double area = std::abs((std::conj(lat.w1) * lat.w2).imag());
      const double h = area / std::max(std::abs(lat.w1), std::abs(lat.w2));
      const long n = static_cast<long>(std::ceil(reach / h)) + 1;
      for (long i = -n; i <= n; ++i)
        for (long j = -n; j <= n; ++j)
          keep(static_cast<double>(i) * lat.w1 + static_cast<double>(j) * lat.w2);
      break;
    }
  }
  return out;
}

void check_radius(double r) {
  if (!(r > 0)) throw DomainError("radius must be positive");
  if (r > kMaxGrowthRadius)
    throw DomainError("radius " + std::to_string(r) + " above the cap " + std::to_string(kMaxGrowthRadius));
}

// Trapezoid mean of f(r e^{it}); nodes where f throws PoleNear or is -inf are
// filled from their neighbours.  Returns the mean and the number filled.
template <class F>
std::pair<double, int> circle_mean(F&& f, double r, int nodes) {
  std::vector<double> v(nodes);
  std::vector<bool> ok(nodes, true);
  int bad = 0;
  for (int j = 0; j < nodes; ++j) {
    const Complex z = std::polar(r, 2 * kPi * j / nodes);
    try {
      v[j] = f(z);
      if (!std::isfinite(v[j])) ok[j] = false;
    } catch (const PoleNear&) {
      ok[j] = false;
    }
    if (!ok[j]) ++bad;
  }
  if (bad == nodes) return {0.0, bad};
  double sum = 0;
  for (int j = 0; j < nodes; ++j) {
    if (ok[j]) {
      sum += v[j];
      continue;
    }
    int lo = j, hi = j;
    while (!ok[(lo + nodes) % nodes]) --lo;
    while (!ok[hi % nodes]) ++hi;
    sum += 0.5 * (v[(lo + nodes) % nodes] + v[hi % nodes]);
  }
  return {sum / nodes, bad};
}

// log|c| and k for den ~ c z^k at the origin.
std::pair<double, int> leading_term(const Expr& den) {
  try {
    const double l = den.eval_log(0).log_abs;
    if (std::isfinite(l) && l > std::log(1e-12)) return {l, 0};
  } catch (const PoleNear&) {
  }
  const double r1 = 1e-3, r2 = 2e-3;
  auto logabs = [&](Complex z) { return den.eval_log(z).log_abs; };
  const double m1 = circle_mean(logabs, r1, 64).first, m2 = circle_mean(logabs, r2, 64).first;
  const int k = static_cast<int>(std::lround((m2 - m1) / std::log(2.0)));
  return {m1 - k * std::log(r1), k};
}

}  // namespace

double proximity_m(const Expr& e, double r, const GrowthOptions& opt) {
  check_radius(r);
  if (opt.quad_points < 8) throw DomainError("too few quadrature points");
  auto [mean, bad] = circle_mean([&](Complex z) { return std::max(0.0, e.eval_log(z).log_abs); }, r,
                                 opt.quad_points);
  if (10 * bad > opt.quad_points) throw DomainError("radius through pole cluster");
  return mean;
}

double counting_N(const Expr& e, double r, const GrowthOptions& opt) {
  check_radius(r);
  Divisor d = divisor(e);
  double total = 0;
  if (!constant(d.den)) {
    const double lc = leading_term(d.den).first;
    auto [mean, bad] = circle_mean([&](Complex z) { return d.den.eval_log(z).log_abs; }, r, opt.quad_points);
    if (10 * bad > opt.quad_points) throw DomainError("radius through pole cluster");
    total += std::max(0.0, mean - lc);
  }
  for (const auto& l : d.lattices)
    for (Complex z : lattice_poles(l, r))
      total += l.order * (std::abs(z) < 1e-12 ? std::log(r) : std::log(r / std::abs(z)));
  return total;
}

int counting_n(const Expr& e, double t) {
  if (!(t > 0)) throw DomainError("radius must be positive");
  Divisor d = divisor(e);
  int count = 0;
  for (const auto& l : d.lattices) count += l.order * static_cast<int>(lattice_poles(l, t).size());
  if (constant(d.den)) return count;

  auto arg_at = [&](double r, double th) { return d.den.eval_log(std::polar(r, th)).arg; };
  // Winding by summing argument steps, halving any step above pi/4.  A full
  // turn inside one base arc is invisible, so callers compare two base grids.
  auto winding = [&](double r, int base) {
    double total = 0;
    for (int j = 0; j < base; ++j) {
      struct Arc {
        double t0, t1, a0, a1;
        int depth;
      };
      const double t0 = 2 * kPi * j / base, t1 = 2 * kPi * (j + 1) / base;
      std::vector<Arc> stack{{t0, t1, arg_at(r, t0), arg_at(r, t1), 0}};
      while (!stack.empty()) {
        Arc s = stack.back();
        stack.pop_back();
        const double step = std::remainder(s.a1 - s.a0, 2 * kPi);
        if (std::abs(step) <= kPi / 4 || s.depth >= 30) {
          total += step;
          continue;
        }
        const double tm = 0.5 * (s.t0 + s.t1), am = arg_at(r, tm);
        stack.push_back({s.t0, tm, s.a0, am, s.depth + 1});
        stack.push_back({tm, s.t1, am, s.a1, s.depth + 1});
      }
    }
    return total / (2 * kPi);
  };
  for (int attempt = 0; attempt < 5; ++attempt) {
    const double r = t * (1 + 1e-7 * attempt);
    try {
      double w = winding(r, 256);
      for (int base = 512; base <= (1 << 20); base *= 2) {
        const double finer = winding(r, base);
        if (std::abs(finer - w) <= 0.2) {
          if (std::abs(w - std::round(w)) > 0.2) break;
          return count + static_cast<int>(std::lround(w));
        }
        w = finer;
      }
    } catch (const PoleNear&) {
    }
  }
  throw DomainError("contour through a pole at radius " + std::to_string(t));
}

std::vector<double> radius_grid(double rmin, double rmax, int steps) {
  if (steps < 2 || !(rmin > 0) || !(rmax > rmin)) throw DomainError("bad radius grid");
  std::vector<double> out;
  for (int i = 0; i < steps; ++i) out.push_back(rmin + (rmax - rmin) * i / (steps - 1));
  return out;
}

OrderEstimate order_estimate(const GrowthCurve& curve) {
  const size_t n = curve.radii.size();
  if (n < 6) throw DomainError("order estimate needs at least 6 radii");
  auto slope = [&](auto&& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (size_t i = n / 2; i < n; ++i) {
      const double x = std::log(curve.radii[i]), v = y(curve.t_values[i]);
      sx += x, sy += v, sxx += x * x, sxy += x * v, ++m;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
  };
  for (size_t i = n / 2; i < n; ++i)
    if (!(curve.t_values[i] > 0)) throw DomainError("nonpositive characteristic in the top half of the grid");
  OrderEstimate out;
  out.rho1 = slope([](double t) { return std::log(t); });
  bool above_one = true;
  for (size_t i = n / 2; i < n; ++i) above_one = above_one && curve.t_values[i] > 1;
  if (above_one) out.rho2 = slope([](double t) { return std::log(std::log(t)); });
  return out;
}

namespace {

// Least squares for y = A + b x.
std::pair<double, double> line_fit(const std::vector<double>& x, const std::vector<double>& y, double* sse) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) sx += x[i], sy += y[i], sxx += x[i] * x[i], sxy += x[i] * y[i];
  const double den = n * sxx - sx * sx;
  const double b = den == 0 ? 0 : (n * sxy - sx * sy) / den;
  const double A = (sy - b * sx) / n;
  if (sse) {
    *sse = 0;
    for (size_t i = 0; i < x.size(); ++i) *sse += std::pow(y[i] - A - b * x[i], 2);
  }
  return {A, b};
}

}  // namespace

GrowthCurve hayman_check(const Expr& e, int level, const std::vector<double>& radii, const GrowthOptions& opt) {
  if (level != 1 && level != 2) throw DomainError("Hayman level must be 1 or 2");
  if (radii.size() < 6) throw DomainError("Hayman check needs at least 6 radii");
  for (size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1])) throw DomainError("radii must be increasing");
  GrowthCurve c;
  c.level = level;
  c.radii = radii;
  for (double r : radii) {
    const double m = proximity_m(e, r, opt), n = counting_N(e, r, opt);
    c.m_values.push_back(m);
    c.n_values.push_back(n);
    c.t_values.push_back(m + n);
  }
  try {
    c.fitted_order = order_estimate(c);
  } catch (const DomainError&) {
  }

  const double tmax = *std::max_element(c.t_values.begin(), c.t_values.end());
  const double tmin = *std::min_element(c.t_values.begin(), c.t_values.end());
  if (!(tmin > 0) || tmax - tmin <= 1e-9 * std::max(1.0, tmax)) {
    c.subexponential = level == 2;
    return c;
  }
  std::vector<double> y;
  for (double t : c.t_values) y.push_back(std::log(t));
  HaymanFit fit;
  auto fitted = [&](double r) {
    return level == 1 ? std::log(fit.a) + fit.c * std::log(r) : std::log(fit.a) + fit.b * std::pow(r, fit.c);
  };
  if (level == 1) {
    // T < a r^c
    std::vector<double> x;
    for (double r : radii) x.push_back(std::log(r));
    auto [A, slope] = line_fit(x, y, nullptr);
    fit.a = std::exp(A);
    fit.b = 1;
    fit.c = slope;
  } else {
    // T < a exp(b r^c): scan c, then refine by golden section
    auto sse_at = [&](double cc, double* A, double* b) {
      std::vector<double> x;
      for (double r : radii) x.push_back(std::pow(r, cc));
      double s;
      auto [a0, b0] = line_fit(x, y, &s);
      if (A) *A = a0;
      if (b) *b = b0;
      return s;
    };
    double best = 0.05, best_s = INFINITY;
    for (double cc = 0.05; cc <= 4.0 + 1e-9; cc += 0.01) {
      double s = sse_at(cc, nullptr, nullptr);
      if (s < best_s) best_s = s, best = cc;
    }
    double lo = std::max(0.01, best - 0.01), hi = best + 0.01;
    const double g = (std::sqrt(5.0) - 1) / 2;
    for (int it = 0; it < 60; ++it) {
      double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
      if (sse_at(x1, nullptr, nullptr) < sse_at(x2, nullptr, nullptr)) hi = x2;
      else lo = x1;
    }
    double A, b;
    fit.c = 0.5 * (lo + hi);
    sse_at(fit.c, &A, &b);
    fit.a = std::exp(A);
    fit.b = b;
    if (b <= 0 || fit.c < 0.25) {
      c.subexponential = true;
      return c;
    }
  }
  fit.consistent = true;
  for (size_t i = 0; i < radii.size(); ++i)
    if (y[i] > fitted(radii[i]) + 0.05 * std::max(1.0, std::abs(y[i]))) fit.consistent = false;
  c.hayman_fit = fit;
  return c;
}

}  // namespace loewy
