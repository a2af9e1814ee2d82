#include "loewy/expr.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <unordered_map>

#include "loewy/errors.hpp"
#include "loewy/specfun.hpp"

namespace loewy {

struct Expr::Node {
  Op op;
  Complex value;
  std::string name;
  int k = 0;
  std::vector<Expr> args;
};

namespace {

constexpr double kPoleRel = 1e-8;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// The args vector lives inside the shared node, so its address identifies the node.
const void* node_key(const Expr& e) { return &e.args(); }

}  // namespace

Expr make_node(Expr::Op op, std::vector<Expr> args, int k) { return Expr::make(op, std::move(args), k); }

Expr Expr::make(Op op, std::vector<Expr> args, int k) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->k = k;
  n->args = std::move(args);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr::Expr() : Expr(Complex(0)) {}

Expr::Expr(Complex c) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = c;
  n_ = std::move(n);
}

Expr Expr::z() { return make(Op::Z, {}); }

Expr Expr::param(const std::string& name) {
  auto n = std::make_shared<Node>();
  n->op = Op::Param;
  n->name = name;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr::Op Expr::op() const { return n_->op; }
Complex Expr::value() const { return n_->value; }
const std::string& Expr::name() const { return n_->name; }
int Expr::exponent() const { return n_->k; }
const std::vector<Expr>& Expr::args() const { return n_->args; }

Expr operator+(const Expr& x, const Expr& y) {
  if (x.is_const() && y.is_const()) return x.value() + y.value();
  if (x.is_const(0)) return y;
  if (y.is_const(0)) return x;
  return make_node(Expr::Op::Add, {x, y}, 0);
}

Expr operator-(const Expr& x, const Expr& y) {
  if (x.is_const() && y.is_const()) return x.value() - y.value();
  if (y.is_const(0)) return x;
  if (x.is_const(0)) return -y;
  return make_node(Expr::Op::Sub, {x, y}, 0);
}

Expr operator*(const Expr& x, const Expr& y) {
  if (x.is_const() && y.is_const()) return x.value() * y.value();
  if (x.is_const(0) || y.is_const(0)) return Expr();
  if (x.is_const(1)) return y;
  if (y.is_const(1)) return x;
  if (x.is_const(-1)) return -y;
  if (y.is_const(-1)) return -x;
  return make_node(Expr::Op::Mul, {x, y}, 0);
}

Expr operator/(const Expr& x, const Expr& y) {
  if (y.is_const(0)) throw DomainError("division by the constant 0");
  if (x.is_const() && y.is_const()) return x.value() / y.value();
  if (x.is_const(0)) return Expr();
  if (y.is_const(1)) return x;
  return make_node(Expr::Op::Div, {x, y}, 0);
}

Expr operator-(const Expr& x) {
  if (x.is_const()) return -x.value();
  if (x.op() == Expr::Op::Neg) return x.args()[0];
  return make_node(Expr::Op::Neg, {x}, 0);
}

Expr Expr::pow(int k) const {
  if (k == 0) return Expr(1);
  if (k == 1) return *this;
  if (is_const()) return std::pow(value(), k);
  if (op() == Op::Pow) return args()[0].pow(exponent() * k);
  return make(Op::Pow, {*this}, k);
}

Expr exp(const Expr& x) {
  if (x.is_const(0)) return Expr(1);
  return make_node(Expr::Op::Exp, {x}, 0);
}
Expr tanh(const Expr& x) { return make_node(Expr::Op::Tanh, {x}, 0); }
Expr cot(const Expr& x) { return make_node(Expr::Op::Cot, {x}, 0); }
Expr log(const Expr& x) { return make_node(Expr::Op::Log, {x}, 0); }
Expr sqrt(const Expr& x) {
  if (x.is_const()) return std::sqrt(x.value());
  return make_node(Expr::Op::Sqrt, {x}, 0);
}
Expr wp(const Expr& w, const Expr& g2, const Expr& g3) { return make_node(Expr::Op::Wp, {w, g2, g3}, 0); }
Expr wp_prime(const Expr& w, const Expr& g2, const Expr& g3) {
  return make_node(Expr::Op::WpPrime, {w, g2, g3}, 0);
}
Expr bessel_j(const Expr& nu, const Expr& zeta) { return make_node(Expr::Op::BesselJ, {nu, zeta}, 0); }
Expr bessel_y(const Expr& nu, const Expr& zeta) { return make_node(Expr::Op::BesselY, {nu, zeta}, 0); }
Expr bessel_j_prime(const Expr& nu, const Expr& zeta) {
  return make_node(Expr::Op::BesselJPrime, {nu, zeta}, 0);
}
Expr bessel_y_prime(const Expr& nu, const Expr& zeta) {
  return make_node(Expr::Op::BesselYPrime, {nu, zeta}, 0);
}

namespace {

// Rebuilds e bottom-up, sharing results for shared subtrees.
Expr rebuild(const Expr& e, const std::function<std::optional<Expr>(const Expr&)>& leaf,
             std::unordered_map<const void*, Expr>& memo) {
  const void* key = node_key(e);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  if (auto r = leaf(e)) return memo.emplace(key, *r).first->second;
  using Op = Expr::Op;
  std::vector<Expr> a;
  for (const Expr& x : e.args()) a.push_back(rebuild(x, leaf, memo));
  Expr out;
  switch (e.op()) {
    case Op::Const: case Op::Param: case Op::Z: out = e; break;
    case Op::Add: out = a[0] + a[1]; break;
    case Op::Sub: out = a[0] - a[1]; break;
    case Op::Mul: out = a[0] * a[1]; break;
    case Op::Div: out = a[0] / a[1]; break;
    case Op::Neg: out = -a[0]; break;
    case Op::Pow: out = a[0].pow(e.exponent()); break;
    case Op::Exp: out = exp(a[0]); break;
    case Op::Tanh: out = tanh(a[0]); break;
    case Op::Cot: out = cot(a[0]); break;
    case Op::Log: out = log(a[0]); break;
    case Op::Sqrt: out = sqrt(a[0]); break;
    case Op::Wp: out = wp(a[0], a[1], a[2]); break;
    case Op::WpPrime: out = wp_prime(a[0], a[1], a[2]); break;
    case Op::BesselJ: out = bessel_j(a[0], a[1]); break;
    case Op::BesselY: out = bessel_y(a[0], a[1]); break;
    case Op::BesselJPrime: out = bessel_j_prime(a[0], a[1]); break;
    case Op::BesselYPrime: out = bessel_y_prime(a[0], a[1]); break;
  }
  return memo.emplace(key, out).first->second;
}

template <class F>
Expr transform(const Expr& e, F&& leaf) {
  std::unordered_map<const void*, Expr> memo;
  std::function<std::optional<Expr>(const Expr&)> f = leaf;
  return rebuild(e, f, memo);
}

void collect(const Expr& e, const std::function<void(const Expr&)>& visit,
             std::unordered_map<const void*, bool>& seen) {
  if (!seen.emplace(node_key(e), true).second) return;
  visit(e);
  for (const Expr& a : e.args()) collect(a, visit, seen);
}

}  // namespace

Expr Expr::compose(const Expr& w) const {
  return transform(*this, [&](const Expr& x) -> std::optional<Expr> {
    if (x.op() == Op::Z) return w;
    return std::nullopt;
  });
}

Expr Expr::bind(const std::map<std::string, Complex>& values) const {
  return transform(*this, [&](const Expr& x) -> std::optional<Expr> {
    if (x.op() != Op::Param) return std::nullopt;
    auto it = values.find(x.name());
    if (it == values.end()) return std::nullopt;
    return Expr(it->second);
  });
}

std::set<std::string> Expr::params() const {
  std::set<std::string> out;
  std::unordered_map<const void*, bool> seen;
  collect(*this, [&](const Expr& x) { if (x.op() == Op::Param) out.insert(x.name()); }, seen);
  return out;
}

bool Expr::depends_on_z() const {
  bool found = false;
  std::unordered_map<const void*, bool> seen;
  collect(*this, [&](const Expr& x) { if (x.op() == Op::Z) found = true; }, seen);
  return found;
}

namespace {

struct Evaluator {
  Complex z;
  std::unordered_map<const void*, Complex> memo;

  Complex operator()(const Expr& e) {
    auto it = memo.find(node_key(e));
    if (it != memo.end()) return it->second;
    Complex v = compute(e);
    if (!finite(v)) throw Overflow("overflow while evaluating " + e.render());
    memo.emplace(node_key(e), v);
    return v;
  }

  // A small value counts as a pole only within 1e-8 (relative to |z|) of a
  // zero, by the Newton distance |d/d'|.
  bool beside_zero(const Expr& d, Complex v) {
    try {
      Evaluator sub;
      sub.z = z;
      return std::abs(v) < kPoleRel * std::max(1.0, std::abs(z)) * std::abs(sub(differentiate(d)));
    } catch (const DomainError&) {
      return true;
    }
  }

  Complex compute(const Expr& e) {
    using Op = Expr::Op;
    const auto& a = e.args();
    switch (e.op()) {
      case Op::Const: return e.value();
      case Op::Param: throw DomainError("unbound parameter " + e.name());
      case Op::Z: return z;
      case Op::Add: return (*this)(a[0]) + (*this)(a[1]);
      case Op::Sub: return (*this)(a[0]) - (*this)(a[1]);
      case Op::Mul: return (*this)(a[0]) * (*this)(a[1]);
      case Op::Div: {
        Complex num = (*this)(a[0]), den = (*this)(a[1]);
        // small against the terms it was summed from
        if (den == Complex(0) || std::abs(den) < kPoleRel * bound(a[1]) ||
            (std::abs(den) < kPoleRel * std::min(1.0, std::abs(num)) && beside_zero(a[1], den)))
          throw PoleNear("vanishing denominator", z);
        return num / den;
      }
      case Op::Neg: return -(*this)(a[0]);
      case Op::Pow: {
        Complex b = (*this)(a[0]);
        if (e.exponent() < 0 && (b == Complex(0) || std::abs(b) < kPoleRel * bound(a[0]) ||
                                 (std::abs(b) < kPoleRel && beside_zero(a[0], b))))
          throw PoleNear("negative power of a vanishing base", z);
        return std::pow(b, e.exponent());
      }
      case Op::Exp: return elementary(Elementary::Exp, (*this)(a[0]));
      case Op::Tanh: return special(Elementary::Tanh, (*this)(a[0]));
      case Op::Cot: return special(Elementary::Cot, (*this)(a[0]));
      case Op::Log: return special(Elementary::Log, (*this)(a[0]));
      case Op::Sqrt: return elementary(Elementary::Sqrt, (*this)(a[0]));
      case Op::Wp:
      case Op::WpPrime: {
        Complex w = (*this)(a[0]);
        auto inv = EllipticInvariants::make((*this)(a[1]), (*this)(a[2]));
        try {
          auto [p, dp] = wp_pair(w, inv);
          return e.op() == Op::Wp ? p : dp;
        } catch (const PoleNear& err) {
          throw PoleNear(std::string(err.what()), z);
        }
      }
      case Op::BesselJ: case Op::BesselY: case Op::BesselJPrime: case Op::BesselYPrime: {
        Complex nu = (*this)(a[0]), zeta = (*this)(a[1]);
        try {
          switch (e.op()) {
            case Op::BesselJ: return loewy::bessel_j(nu, zeta);
            case Op::BesselY: return loewy::bessel_y(nu, zeta);
            case Op::BesselJPrime: return loewy::bessel_j_prime(nu, zeta);
            default: return loewy::bessel_y_prime(nu, zeta);
          }
        } catch (const PoleNear& err) {
          throw PoleNear(std::string(err.what()), z);
        }
      }
    }
    throw DomainError("unknown expression node");
  }

  Complex special(Elementary f, Complex x) {
    try {
      return elementary(f, x);
    } catch (const PoleNear& err) {
      throw PoleNear(std::string(err.what()), z);
    }
  }

  // Size of e with every sum replaced by the sum of magnitudes.
  std::unordered_map<const void*, double> bounds;

  double bound(const Expr& e) {
    auto it = bounds.find(node_key(e));
    if (it != bounds.end()) return it->second;
    using Op = Expr::Op;
    const auto& a = e.args();
    double b;
    switch (e.op()) {
      case Op::Add: case Op::Sub: b = bound(a[0]) + bound(a[1]); break;
      case Op::Mul: b = bound(a[0]) * bound(a[1]); break;
      case Op::Neg: b = bound(a[0]); break;
      case Op::Div: b = bound(a[0]) / std::abs((*this)(a[1])); break;
      case Op::Pow:
        b = e.exponent() >= 0 ? std::pow(bound(a[0]), e.exponent()) : std::abs((*this)(e));
        break;
      case Op::Wp: case Op::WpPrime: {
        // computed to absolute accuracy on the scale the invariants set
        double s = std::max({1.0, std::sqrt(std::abs((*this)(a[1]))), std::cbrt(std::abs((*this)(a[2])))});
        b = std::max(std::abs((*this)(e)), e.op() == Op::Wp ? s : s * std::sqrt(s));
        break;
      }
      default: b = std::abs((*this)(e)); break;
    }
    if (!std::isfinite(b)) b = std::abs((*this)(e));
    bounds.emplace(node_key(e), b);
    return b;
  }
};

using LogValue = Expr::LogValue;

LogValue to_log(Complex v) {
  if (v == Complex(0)) return {-std::numeric_limits<double>::infinity(), 0};
  return {std::log(std::abs(v)), std::arg(v)};
}

Complex from_log(const LogValue& v) {
  if (v.log_abs > 700) throw Overflow("overflow: log|value| = " + std::to_string(v.log_abs));
  return std::polar(std::exp(v.log_abs), v.arg);
}

LogValue log_add(LogValue x, LogValue y) {
  if (std::isinf(x.log_abs) && x.log_abs < 0) return y;
  if (std::isinf(y.log_abs) && y.log_abs < 0) return x;
  if (y.log_abs > x.log_abs) std::swap(x, y);
  Complex s = std::polar(1.0, x.arg) + std::polar(std::exp(y.log_abs - x.log_abs), y.arg);
  LogValue r = to_log(s);
  r.log_abs += x.log_abs;
  return r;
}

struct LogEvaluator {
  Complex z;
  Evaluator plain{z, {}};
  std::unordered_map<const void*, LogValue> memo;

  LogValue operator()(const Expr& e) {
    auto it = memo.find(node_key(e));
    if (it != memo.end()) return it->second;
    LogValue v = compute(e);
    memo.emplace(node_key(e), v);
    return v;
  }

  Complex value(const Expr& e) { return from_log((*this)(e)); }

  bool beside_zero(const Expr& d, LogValue v) {
    try {
      LogEvaluator sub;
      sub.z = z;
      sub.plain.z = z;
      return v.log_abs < std::log(kPoleRel * std::max(1.0, std::abs(z))) + sub(differentiate(d)).log_abs;
    } catch (const DomainError&) {
      return true;
    }
  }

  LogValue compute(const Expr& e) {
    using Op = Expr::Op;
    const auto& a = e.args();
    switch (e.op()) {
      case Op::Const: case Op::Param: case Op::Z: return to_log(plain(e));
      case Op::Add: return log_add((*this)(a[0]), (*this)(a[1]));
      case Op::Sub: {
        LogValue y = (*this)(a[1]);
        y.arg += std::numbers::pi;
        return log_add((*this)(a[0]), y);
      }
      case Op::Mul: {
        LogValue x = (*this)(a[0]), y = (*this)(a[1]);
        return {x.log_abs + y.log_abs, x.arg + y.arg};
      }
      case Op::Div: {
        LogValue x = (*this)(a[0]), y = (*this)(a[1]);
        if (!std::isfinite(y.log_abs) || y.log_abs < std::log(kPoleRel) + log_bound(a[1]) ||
            (y.log_abs < std::log(kPoleRel) + std::min(0.0, x.log_abs) && beside_zero(a[1], y)))
          throw PoleNear("vanishing denominator", z);
        return {x.log_abs - y.log_abs, x.arg - y.arg};
      }
      case Op::Neg: {
        LogValue x = (*this)(a[0]);
        return {x.log_abs, x.arg + std::numbers::pi};
      }
      case Op::Pow: {
        LogValue x = (*this)(a[0]);
        if (e.exponent() < 0 && (!std::isfinite(x.log_abs) || x.log_abs < std::log(kPoleRel) + log_bound(a[0]) ||
                                 (x.log_abs < std::log(kPoleRel) && beside_zero(a[0], x))))
          throw PoleNear("negative power of a vanishing base", z);
        return {x.log_abs * e.exponent(), x.arg * e.exponent()};
      }
      case Op::Exp: {
        LogValue x = (*this)(a[0]);
        if (x.log_abs > 700) throw Overflow("overflow: exponent of size e^" + std::to_string(x.log_abs));
        Complex w = std::polar(std::exp(x.log_abs), x.arg);
        return {w.real(), std::remainder(w.imag(), 2 * std::numbers::pi)};
      }
      case Op::Tanh: case Op::Cot: {
        Complex x = value(a[0]);
        // cot(x) = i / tanh(i x)
        Complex t = e.op() == Op::Tanh ? x : Complex(0, 1) * x;
        Complex v;
        if (std::abs(t.real()) > 20) {
          double s = t.real() > 0 ? 1 : -1;
          Complex q = std::exp(-2.0 * s * t);
          v = s * (1.0 - q) / (1.0 + q);
        } else {
          v = plain.special(Elementary::Tanh, t);
        }
        if (e.op() == Op::Cot) {
          if (std::abs(v) < 1e-12) throw PoleNear("cot pole", z);
          v = Complex(0, 1) / v;
        }
        return to_log(v);
      }
      default: {
        // Remaining nodes take moderate arguments; evaluate directly.
        Evaluator ev{z, {}};
        std::vector<Expr> args;
        for (const Expr& x : a) args.push_back(Expr(value(x)));
        return to_log(ev(rebuild_with(e, args)));
      }
    }
  }

  // log of Evaluator::bound, kept finite for large arguments.
  std::unordered_map<const void*, double> bounds;

  double log_bound(const Expr& e) {
    auto it = bounds.find(node_key(e));
    if (it != bounds.end()) return it->second;
    using Op = Expr::Op;
    const auto& a = e.args();
    double b;
    switch (e.op()) {
      case Op::Add: case Op::Sub: {
        double x = log_bound(a[0]), y = log_bound(a[1]);
        if (x < y) std::swap(x, y);
        b = std::isinf(y) ? x : x + std::log1p(std::exp(y - x));
        break;
      }
      case Op::Mul: b = log_bound(a[0]) + log_bound(a[1]); break;
      case Op::Neg: b = log_bound(a[0]); break;
      case Op::Div: b = log_bound(a[0]) - (*this)(a[1]).log_abs; break;
      case Op::Pow:
        b = e.exponent() >= 0 ? e.exponent() * log_bound(a[0]) : (*this)(e).log_abs;
        break;
      default: b = (*this)(e).log_abs; break;
    }
    bounds.emplace(node_key(e), b);
    return b;
  }

  static Expr rebuild_with(const Expr& e, const std::vector<Expr>& a) {
    using Op = Expr::Op;
    switch (e.op()) {
      case Op::Log: return log(a[0]);
      case Op::Sqrt: return sqrt(a[0]);
      case Op::Wp: return wp(a[0], a[1], a[2]);
      case Op::WpPrime: return wp_prime(a[0], a[1], a[2]);
      case Op::BesselJ: return bessel_j(a[0], a[1]);
      case Op::BesselY: return bessel_y(a[0], a[1]);
      case Op::BesselJPrime: return bessel_j_prime(a[0], a[1]);
      case Op::BesselYPrime: return bessel_y_prime(a[0], a[1]);
      default: throw DomainError("unexpected node in log evaluation");
    }
  }
};

}  // namespace

Complex Expr::eval(Complex z) const {
  Evaluator ev{z, {}};
  return ev(*this);
}

Expr::LogValue Expr::eval_log(Complex z) const {
  LogEvaluator ev{z, Evaluator{z, {}}, {}};
  LogValue v = ev(*this);
  v.arg = std::remainder(v.arg, 2 * std::numbers::pi);
  return v;
}

std::string format_complex(Complex c) {
  auto num = [](double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::string(buf);
  };
  if (c.imag() == 0) return num(c.real());
  if (c.real() == 0) return num(c.imag()) + "i";
  return "(" + num(c.real()) + (c.imag() < 0 ? "-" : "+") + num(std::abs(c.imag())) + "i)";
}

namespace {

int precedence(const Expr& e) {
  using Op = Expr::Op;
  switch (e.op()) {
    case Op::Add: case Op::Sub: return 1;
    case Op::Mul: case Op::Div: return 2;
    case Op::Neg: return 3;
    case Op::Pow: return 4;
    case Op::Const: {
      Complex c = e.value();
      if (c.real() < 0 && c.imag() == 0) return 3;
      if (c.real() == 0 && c.imag() < 0) return 3;
      return 5;
    }
    default: return 5;
  }
}

std::string render_at(const Expr& e, int min_prec) {
  using Op = Expr::Op;
  auto wrap = [&](const std::string& s) { return precedence(e) < min_prec ? "(" + s + ")" : s; };
  const auto& a = e.args();
  auto fn = [&](const char* name) {
    std::string s = std::string(name) + "(";
    for (size_t i = 0; i < a.size(); ++i) s += (i ? ", " : "") + render_at(a[i], 0);
    return s + ")";
  };
  switch (e.op()) {
    case Op::Const: return wrap(format_complex(e.value()));
    case Op::Param: return e.name();
    case Op::Z: return "z";
    case Op::Add: return wrap(render_at(a[0], 1) + " + " + render_at(a[1], 1));
    case Op::Sub: return wrap(render_at(a[0], 1) + " - " + render_at(a[1], 2));
    case Op::Mul: return wrap(render_at(a[0], 2) + "*" + render_at(a[1], 3));
    case Op::Div: return wrap(render_at(a[0], 2) + "/" + render_at(a[1], 3));
    case Op::Neg: return wrap("-" + render_at(a[0], 3));
    case Op::Pow: return wrap(render_at(a[0], 5) + "^" + (e.exponent() < 0 ? "(" + std::to_string(e.exponent()) + ")" : std::to_string(e.exponent())));
    case Op::Exp: return fn("exp");
    case Op::Tanh: return fn("tanh");
    case Op::Cot: return fn("cot");
    case Op::Log: return fn("log");
    case Op::Sqrt: return fn("sqrt");
    case Op::Wp: return fn("wp");
    case Op::WpPrime: return fn("wp'");
    case Op::BesselJ: return fn("J");
    case Op::BesselY: return fn("Y");
    case Op::BesselJPrime: return fn("J'");
    case Op::BesselYPrime: return fn("Y'");
  }
  return "?";
}

}  // namespace

std::string Expr::render() const { return render_at(*this, 0); }

Expr differentiate(const Expr& e) {
  std::unordered_map<const void*, Expr> memo;
  std::function<Expr(const Expr&)> d = [&](const Expr& x) -> Expr {
    auto it = memo.find(node_key(x));
    if (it != memo.end()) return it->second;
    using Op = Expr::Op;
    const auto& a = x.args();
    Expr r;
    switch (x.op()) {
      case Op::Const: case Op::Param: r = Expr(); break;
      case Op::Z: r = Expr(1); break;
      case Op::Add: r = d(a[0]) + d(a[1]); break;
      case Op::Sub: r = d(a[0]) - d(a[1]); break;
      case Op::Neg: r = -d(a[0]); break;
      case Op::Mul: r = d(a[0]) * a[1] + a[0] * d(a[1]); break;
      case Op::Div: {
        Expr db = d(a[1]);
        r = db.is_const(0) ? d(a[0]) / a[1] : (d(a[0]) - x * db) / a[1];
        break;
      }
      case Op::Pow: r = Expr(x.exponent()) * a[0].pow(x.exponent() - 1) * d(a[0]); break;
      case Op::Exp: r = x * d(a[0]); break;
      case Op::Tanh: r = (Expr(1) - x.pow(2)) * d(a[0]); break;
      case Op::Cot: r = -(Expr(1) + x.pow(2)) * d(a[0]); break;
      case Op::Log: r = d(a[0]) / a[0]; break;
      case Op::Sqrt: r = d(a[0]) / (Expr(2) * x); break;
      case Op::Wp: r = wp_prime(a[0], a[1], a[2]) * d(a[0]); break;
      case Op::WpPrime:
        r = (Expr(6) * wp(a[0], a[1], a[2]).pow(2) - a[1] / Expr(2)) * d(a[0]);
        break;
      case Op::BesselJ: r = bessel_j_prime(a[0], a[1]) * d(a[1]); break;
      case Op::BesselY: r = bessel_y_prime(a[0], a[1]) * d(a[1]); break;
      case Op::BesselJPrime: case Op::BesselYPrime: {
        // f'' = -f'/zeta - (1 - nu^2/zeta^2) f
        Expr f = x.op() == Op::BesselJPrime ? bessel_j(a[0], a[1]) : bessel_y(a[0], a[1]);
        Expr second = -x / a[1] - (Expr(1) - a[0].pow(2) / a[1].pow(2)) * f;
        r = second * d(a[1]);
        break;
      }
    }
    return memo.emplace(node_key(x), r).first->second;
  };
  return d(e);
}

}  // namespace loewy
