#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "loewy/exact.hpp"

namespace loewy {

// Closed-form expressions in z with named parameter slots.
class Expr {
 public:
  enum class Op {
    Const, Param, Z,
    Add, Sub, Mul, Div, Neg, Pow,
    Exp, Tanh, Cot, Log, Sqrt,
    Wp, WpPrime,                 // args: w, g2, g3
    BesselJ, BesselY,            // args: nu, zeta
    BesselJPrime, BesselYPrime,
  };

  Expr();  // 0
  Expr(Complex c);
  Expr(double c) : Expr(Complex(c)) {}
  Expr(int c) : Expr(Complex(c)) {}
  Expr(const ExactComplex& c) : Expr(c.approx()) {}

  static Expr z();
  static Expr param(const std::string& name);

  Op op() const;
  Complex value() const;                    // Const
  const std::string& name() const;          // Param
  int exponent() const;                     // Pow
  const std::vector<Expr>& args() const;
  bool is_const() const { return op() == Op::Const; }
  bool is_const(Complex c) const { return is_const() && value() == c; }

  friend Expr operator+(const Expr& x, const Expr& y);
  friend Expr operator-(const Expr& x, const Expr& y);
  friend Expr operator*(const Expr& x, const Expr& y);
  friend Expr operator/(const Expr& x, const Expr& y);
  friend Expr operator-(const Expr& x);
  Expr pow(int k) const;

  // Replaces z by w.
  Expr compose(const Expr& w) const;
  Expr bind(const std::map<std::string, Complex>& values) const;
  std::set<std::string> params() const;
  bool depends_on_z() const;

  // Throws PoleNear near poles and DomainError on unbound slots.
  Complex eval(Complex z) const;
  // log|f(z)| and arg f(z), tracked through exp so huge values do not overflow.
  struct LogValue {
    double log_abs;
    double arg;
  };
  LogValue eval_log(Complex z) const;

  std::string render() const;

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  static Expr make(Op op, std::vector<Expr> args, int k = 0);
  std::shared_ptr<const Node> n_;
  friend Expr make_node(Op op, std::vector<Expr> args, int k);
};

Expr exp(const Expr& x);
Expr tanh(const Expr& x);
Expr cot(const Expr& x);
Expr log(const Expr& x);
Expr sqrt(const Expr& x);
Expr wp(const Expr& w, const Expr& g2, const Expr& g3);
Expr wp_prime(const Expr& w, const Expr& g2, const Expr& g3);
Expr bessel_j(const Expr& nu, const Expr& zeta);
Expr bessel_y(const Expr& nu, const Expr& zeta);
Expr bessel_j_prime(const Expr& nu, const Expr& zeta);
Expr bessel_y_prime(const Expr& nu, const Expr& zeta);

// d/dz.  Parameters, g2, g3 and nu are treated as constants.
Expr differentiate(const Expr& e);

std::string format_complex(Complex c);

}  // namespace loewy
