#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loewy/chain.hpp"
#include "loewy/expr.hpp"

namespace loewy {

// [D - (a2 u + b2)][D - (a1 u + b1)](u - alpha)
struct ChainParams {
  ExactComplex alpha, a1, b1, a2, b2;

  FactorChain chain() const;
  static ChainParams from_chain(const FactorChain& c);  // throws DomainError unless n = 2
};

enum class Completeness { All, ParticularOnly, Unknown };
const char* completeness_name(Completeness c);

using Assignment = std::map<std::string, Complex>;

struct SolutionFamily {
  std::string id;        // unique within a report, e.g. "I.A2.ii+" or "II.c=0.rational#2"
  std::string case_tag;  // e.g. "I.A2.ii", "IV.bessel", "particular-riccati"
  std::string kind;      // short description of the closed form and where it comes from
  Expr expr;             // u(z); free and derived slots appear as parameters
  std::vector<std::string> free_params;
  std::vector<std::string> derived_params;
  std::vector<std::string> nonzero_params;
  std::vector<std::string> constraints;  // conditions on the equation parameters, already checked
  bool particular = false;
  DiffPolynomial equation;                  // the ODE the family solves
  std::optional<DiffPolynomial> first_order;  // set for the Riccati particular family
  // Fills derived slots; throws DomainError when they cannot be solved.
  std::function<void(Assignment&)> derive;

  std::string formula() const { return expr.render(); }
};

struct ClassificationReport {
  ChainParams params;
  std::string case_path;
  std::vector<SolutionFamily> families;
  Completeness completeness = Completeness::All;
  std::vector<std::string> notes;

  const SolutionFamily& family(const std::string& id) const;  // id or decimal index
};

ClassificationReport classify(const ChainParams& p);

// w'' + c w' - (6/lambda)(w - e1)(w - e2) = 0
DiffPolynomial fisher_equation(const ExactComplex& c, const ExactComplex& lambda,
                               const ExactComplex& e1, const ExactComplex& e2);
std::vector<SolutionFamily> fisher_meromorphic(const ExactComplex& c, const ExactComplex& lambda,
                                               const ExactComplex& e1, const ExactComplex& e2);

// u'' + c u' - (2/lambda^2)(u - q1)(u - q2)(u - q3) = 0
DiffPolynomial kpp_equation(const ExactComplex& lambda, const ExactComplex& c,
                            const ExactComplex& q1, const ExactComplex& q2, const ExactComplex& q3);
std::vector<SolutionFamily> kpp_classify(const ExactComplex& lambda, const ExactComplex& c,
                                         const ExactComplex& q1, const ExactComplex& q2,
                                         const ExactComplex& q3);

// Binds every slot.  Throws DomainError naming the missing slot or the failed constraint.
Expr instantiate(const SolutionFamily& f, const Assignment& assignment);
// Same, returning the completed assignment (derived slots filled in).
Assignment complete_assignment(const SolutionFamily& f, const Assignment& assignment);

// Roots a of m2 cot(m2 a) = rhs, one per class modulo pi/m2; Newton from 8 starts.
std::vector<Complex> two_cot_roots(Complex m2, Complex rhs);

}  // namespace loewy
