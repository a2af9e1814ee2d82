#pragma once

#include <map>
#include <optional>
#include <vector>

#include "loewy/diffpoly.hpp"
#include "loewy/poly.hpp"

namespace loewy {

// u ~ u0 z^p near a movable pole.
struct LeadingBalance {
  int p = -1;
  ExactComplex u0;
  friend bool operator==(const LeadingBalance& x, const LeadingBalance& y) {
    return x.p == y.p && x.u0 == y.u0;
  }
};

// z-exponent of the monomial I under u = u0 z^p: sum i_k (p - k).
int monomial_exponent(const MultiIndex& I, int p);
DiffPolynomial dominant_terms(const DiffPolynomial& poly, int p);
// Coefficient of the leading power after u = u0 z^p, as a polynomial in u0.
UniPoly leading_poly(const DiffPolynomial& poly, int p);

struct BalanceSearch {
  std::vector<LeadingBalance> balances;
  // Nonzero leading roots that are not Gaussian rationals.
  std::vector<std::pair<int, Complex>> irrational;
  int p_bound = 1;  // p ranged over -1 .. -p_bound
};
// p_bound <= 0 means the order of poly.
BalanceSearch find_balances(const DiffPolynomial& poly, int p_bound = 0);
std::vector<LeadingBalance> leading_balances(const DiffPolynomial& poly, int p_bound = 0);

// z^{n+1} D_n(u0 / z), from the expansion.
UniPoly residue_poly(const std::vector<ExactComplex>& a);
UniPoly indicial_direct(const DiffPolynomial& poly, const LeadingBalance& bal);
UniPoly indicial_recursive(const std::vector<ExactComplex>& a, const ExactComplex& u0);

struct IndicialData {
  LeadingBalance balance;
  UniPoly indicial;
  RootSplit fuchs;
  std::vector<long> integer_indices;
};
IndicialData indicial_data(const DiffPolynomial& poly, const LeadingBalance& bal);

enum class Verdict { GenericW, InS, OnAxis };
const char* verdict_name(Verdict v);

struct GenericityVerdict {
  Verdict verdict = Verdict::GenericW;
  int k = 0;   // InS: balance index, 1-based
  long j = 0;  // InS: nonnegative integer index
  int axis = 0;  // OnAxis: first vanishing a_i, 1-based
  int jmax = 0;
};
GenericityVerdict genericity_test(const std::vector<ExactComplex>& a, int jmax);

enum class ResonanceStatus { Free, Obstructed };

struct Resonance {
  long j = 0;
  ResonanceStatus status = ResonanceStatus::Free;
  ExactComplex q;  // Q_j; zero when Free
};

struct LaurentSolution {
  LeadingBalance balance;
  std::vector<ExactComplex> coefficients;  // u_0 .. u_m
  std::vector<Resonance> resonances;
  int depth = 0;  // requested depth
  int q = 0;      // leading exponent of poly(u)
  bool obstructed() const;
};

// Solves P(u0; j) u_j + Q_j = 0 for j = 1..depth.  Free resonant coefficients
// default to 0 unless given in inject.
LaurentSolution laurent_expand(const DiffPolynomial& poly, const LeadingBalance& bal, int depth,
                               const std::map<long, ExactComplex>& inject = {});

}  // namespace loewy
