#include "loewy/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "loewy/errors.hpp"

namespace loewy {

namespace {

using EC = ExactComplex;

Expr k(const EC& c) { return Expr(c); }
Expr zv() { return Expr::z(); }
Expr slot(const char* name) { return Expr::param(name); }

SolutionFamily make_family(std::string tag, std::string kind, Expr u,
                           std::vector<std::string> constraints,
                           std::vector<std::string> nonzero = {}) {
  SolutionFamily f;
  f.case_tag = std::move(tag);
  f.kind = std::move(kind);
  f.expr = std::move(u);
  f.constraints = std::move(constraints);
  f.nonzero_params = std::move(nonzero);
  for (const auto& p : f.expr.params()) f.free_params.push_back(p);
  return f;
}

void set_derived(SolutionFamily& f, std::vector<std::string> derived,
                 std::function<void(Assignment&)> fn) {
  std::erase_if(f.free_params, [&](const std::string& p) {
    return std::find(derived.begin(), derived.end(), p) != derived.end();
  });
  f.derived_params = std::move(derived);
  f.derive = std::move(fn);
}

bool nonneg_integer(const EC& x) { return x.is_integer() && sgn(x.re()) >= 0; }

// Drops repeated closed forms and assigns unique ids.
void finalize(std::vector<SolutionFamily>& fams) {
  std::vector<SolutionFamily> out;
  std::set<std::string> seen;
  std::map<std::string, int> count;
  for (auto& f : fams) {
    if (!seen.insert(f.formula()).second) continue;
    int n = ++count[f.case_tag];
    f.id = n == 1 ? f.case_tag : f.case_tag + "#" + std::to_string(n);
    out.push_back(std::move(f));
  }
  fams = std::move(out);
}

SolutionFamily particular_family(const ChainParams& p) {
  const EC w = p.alpha * p.a1 + p.b1;
  Expr u;
  std::string cons;
  if (p.a1.is_zero()) {
    u = k(p.alpha) + slot("c") * exp(k(p.b1) * zv());
    cons = "a1 = 0";
  } else if (!w.is_zero()) {
    Expr e = exp(k(w) * zv());
    u = -(k(p.alpha) + k(p.b1) * slot("c") * e) / (k(p.a1) * slot("c") * e - 1);
    cons = "alpha a1 + b1 != 0";
  } else {
    u = k(p.alpha) - 1 / (k(p.a1) * zv() - slot("c"));
    cons = "alpha a1 + b1 = 0";
  }
  auto f = make_family("particular-riccati", "Riccati solution of the first factor", u, {cons});
  f.particular = true;
  f.first_order = expand_chain(FactorChain{p.alpha, {{p.a1, p.b1}}});
  return f;
}

// Exponential and rational families of the residual region a2 != a1, -a1, +-4a1, 2a1.
void table_exponential(const ChainParams& p, const std::string& tag,
                       std::vector<SolutionFamily>& out) {
  const EC &al = p.alpha, &a1 = p.a1, &b1 = p.b1, &a2 = p.a2, &b2 = p.b2;
  const EC w = al * a1 + b1;
  const Expr t = zv() - slot("z0");
  if (!w.is_zero()) {
    if (b2 == EC(2) * al * a1 - al * a2 + EC(2) * b1) {
      Expr u = k((EC(-2) * al * a1 + al * a2 - EC(2) * b1) / a2) -
               k(EC(2) * w / a2) / (exp(k(w) * t) - 1);
      out.push_back(make_family(tag + ".exp-1", "exponential, shifted by alpha", u,
                                {"b2 = 2 alpha a1 - alpha a2 + 2 b1", "alpha a1 + b1 != 0"}));
    }
    if (b2 == (EC(-2) * al * a1 * a1 - EC(2) * a1 * b1 + a2 * b1) / a1) {
      Expr u = -k(EC(2) * w / a2) / (exp(k(w) * t) - 1) - k(b1 / a1);
      out.push_back(
          make_family(tag + ".exp-2", "exponential, shifted by -b1/a1", u,
                      {"b2 = (-2 alpha a1^2 - 2 a1 b1 + a2 b1)/a1", "alpha a1 + b1 != 0"}));
    }
    if (b2 == (a2 * b1 - al * a1 * a2) / (EC(2) * a1)) {
      Expr F = exp(k(a2 * w / (EC(2) * a1)) * t);
      Expr u = -(k(al * a1) + k(b1) * F) / (k(a1) * (F - 1));
      out.push_back(make_family(tag + ".exp-3", "exponential with rate a2 (alpha a1 + b1)/(2 a1)",
                                u,
                                {"b2 = (a2 b1 - alpha a1 a2)/(2 a1)", "alpha a1 + b1 != 0"}));
    }
  }
  if (b1 == -al * a1 && b2 == -al * a2) {
    Expr u = -k(EC(2) / a2) / t - k(b2 / a2);
    out.push_back(make_family(tag + ".rational", "simple pole", u,
                              {"b1 = -alpha a1", "b2 = -alpha a2"}));
  }
}

void subcase_a1(const ChainParams& p, std::vector<SolutionFamily>& out) {
  const EC &al = p.alpha, &a1 = p.a1, &b1 = p.b1, &b2 = p.b2;
  const Expr z = zv(), c1 = slot("c1"), c2 = slot("c2"), be = slot("beta");
  const EC s1 = b1 + al * a1, d = b1 - b2, s2 = al * a1 + b2;
  if (!s1.is_zero() && !d.is_zero() && !s2.is_zero()) {
    Expr X1 = exp(k(s1) * z), X2 = exp(k(s2) * z);
    Expr C = c1 * X1 + c2;
    Expr num = k(d * s2) * (k(al * a1) * c2 - k(b1) * c1 * X1) - k(a1 * b2) * be * X2;
    Expr den = k(a1) * (k(a1) * (k(al * d) * C + be * X2) + k(d * b2) * C);
    out.push_back(make_family("I.A1.i", "two exponentials", num / den,
                              {"a2 = a1", "(b1 + alpha a1)(b1 - b2)(alpha a1 + b2) != 0"}));
  }
  if (s1.is_zero() && !d.is_zero() && !s2.is_zero()) {
    // u = -v'/(a1 v) - b2/a1
    Expr X = exp(k(d) * z);
    Expr v = -k(a1 / (d * d)) * be + X * (c2 * z + c1);
    Expr dv = X * (k(d) * (c2 * z + c1) + c2);
    Expr u = -dv / (k(a1) * v) - k(b2 / a1);
    out.push_back(make_family("I.A1.ii", "exponential times linear", u,
                              {"a2 = a1", "b1 + alpha a1 = 0", "(b1 - b2)(alpha a1 + b2) != 0"}));
  }
  if (d.is_zero() && !s2.is_zero()) {
    Expr X2 = exp(k(s2) * z);
    Expr num = X2 * (k(b2 * b2) * c2 - k(a1) * (be + k(b2) * (be * z - k(al) * c2))) +
               k(al * a1) * c1;
    Expr den = k(a1) * (X2 * (k(a1) * (be * z - k(al) * c2) - k(b2) * c2) + c1);
    out.push_back(make_family("I.A1.iii", "exponential with linear coefficients", num / den,
                              {"a2 = a1", "b1 = b2", "alpha a1 + b2 != 0"}));
  }
  if (!d.is_zero() && s2.is_zero()) {
    Expr X1 = exp(k(s1) * z);
    Expr num = k(a1) * (k(al * a1) * (k(al) * c2 + be * z) - be + k(al * b1) * c2) -
               k(b1) * c1 * X1;
    Expr den = k(a1) * (c1 * X1 + k(a1) * (k(al) * c2 + be * z) + k(b1) * c2);
    out.push_back(make_family("I.A1.iv", "exponential over linear", num / den,
                              {"a2 = a1", "b1 != b2", "alpha a1 + b2 = 0"}));
  }
  if (d.is_zero() && s2.is_zero()) {
    Expr num = -k(EC(2) * a1) * (k(al) * c1 + z * (be + k(al) * c2)) +
               k(al * a1 * a1) * be * z.pow(2) + k(EC(2)) * c2;
    Expr den = k(a1) * (k(a1) * be * z.pow(2) - k(EC(2)) * (c2 * z + c1));
    out.push_back(make_family("I.A1.v", "rational, two poles", num / den,
                              {"a2 = a1", "b1 = b2 = -alpha a1"}));
  }
}

// u = shift + scale (2 E P + P') / (E P - sub E^3) with E = e^{c z/5}, P = wp(e^{-c z/5} - zeta0; 0, g3)
Expr wp_exp_form(const EC& c, const EC& scale, const EC& shift, bool cubic) {
  Expr E = exp(k(c / EC(5)) * zv());
  Expr W = exp(k(-c / EC(5)) * zv()) - slot("zeta0");
  Expr P = wp(W, Expr(0), slot("g3")), Q = wp_prime(W, Expr(0), slot("g3"));
  Expr den = E * P;
  if (cubic) den = den - E.pow(3);
  return k(shift) + k(scale) * (k(EC(2)) * E * P + Q) / den;
}

void subcase_a2(const ChainParams& p, std::vector<SolutionFamily>& out) {
  const EC &al = p.alpha, &a1 = p.a1, &b1 = p.b1, &b2 = p.b2;
  const EC c = al * a1 - b1 - EC(2) * b2;
  if (c.is_zero()) {
    const EC m = b2 - al * a1;
    Expr W = zv() - slot("z0");
    Expr g2 = k(m.pow(4) / EC(12));
    Expr P = wp(W, g2, slot("g3")), Q = wp_prime(W, g2, slot("g3"));
    Expr u = k(EC(12)) * Q / (k(a1) * (k(m * m) - k(EC(12)) * P)) + k(b2 / a1);
    out.push_back(make_family("I.A2.i", "Weierstrass", u,
                              {"a2 = -a1", "alpha a1 - b1 - 2 b2 = 0",
                               "g2 = (b2 - alpha a1)^4/12"}));
  }
  const EC prod = (b1 + b2) * (al * a1 - b2);
  if (!prod.is_zero()) {
    for (int s : {1, -1}) {
      if (EC(-6) * c * c != EC(25 * s) * prod) continue;
      Expr u = wp_exp_form(c, c / (EC(5) * a1), b2 / a1, s < 0);
      out.push_back(make_family(
          "I.A2.ii", "Weierstrass of an exponential", u,
          {"a2 = -a1", s > 0 ? "-6 c^2 = 25 (b1 + b2)(alpha a1 - b2)"
                             : "6 c^2 = 25 (b1 + b2)(alpha a1 - b2)",
           "c = alpha a1 - b1 - 2 b2", "(b1 + b2)(alpha a1 - b2) != 0", "g2 = 0"}));
    }
  }
}

void subcase_a3(const ChainParams& p, std::vector<SolutionFamily>& out) {
  const EC &al = p.alpha, &a1 = p.a1, &b1 = p.b1, &b2 = p.b2;
  const EC s = al * a1 + b1;
  if (b2 == EC(2) * (al * a1 - b1)) {
    Expr W = zv() - slot("z0");
    Expr g2 = k(s.pow(4) / EC(12));
    Expr P = wp(W, g2, slot("g3")), Q = wp_prime(W, g2, slot("g3"));
    Expr u = -k(EC(12)) * Q / (k(EC(2) * a1) * (k(s * s) - k(EC(12)) * P)) -
             k((b1 - al * a1) / (EC(2) * a1));
    out.push_back(make_family("I.A3.i", "Weierstrass",
                              u, {"a2 = -4 a1", "b2 = 2 (alpha a1 - b1)",
                                  "g2 = (b1 + alpha a1)^4/12"}));
  }
  if (!s.is_zero() && b2 == EC(2) * (EC(3) * al * a1 + b1)) {
    const EC c = EC(-5) * s;
    out.push_back(make_family("I.A3.ii", "Weierstrass of an exponential",
                              wp_exp_form(c, -c / (EC(10) * a1), -b1 / a1, false),
                              {"a2 = -4 a1", "b2 = 2 (3 alpha a1 + b1)", "alpha a1 + b1 != 0",
                               "g2 = 0"}));
  }
  if (!s.is_zero() && b2 == EC(-2) * (al * a1 + EC(3) * b1)) {
    const EC c = EC(5) * s;
    out.push_back(make_family("I.A3.iii", "Weierstrass of an exponential",
                              wp_exp_form(c, -c / (EC(10) * a1), al, false),
                              {"a2 = -4 a1", "b2 = -2 (alpha a1 + 3 b1)", "alpha a1 + b1 != 0",
                               "g2 = 0"}));
  }
}

void subcase_a4(const ChainParams& p, std::vector<SolutionFamily>& out,
                std::vector<std::string>& notes) {
  const EC &al = p.alpha, &a1 = p.a1, &b1 = p.b1, &b2 = p.b2;
  if (EC(2) * al * a1 - EC(2) * b1 + b2 != EC(0)) {
    notes.push_back("resonance j = 1 is obstructed: 2 alpha a1 - 2 b1 + b2 != 0");
    return;
  }
  const EC w = al * a1 + b1;
  const Expr z = zv();
  const std::vector<std::string> base = {"a2 = 4 a1", "2 alpha a1 - 2 b1 + b2 = 0"};
  auto with = [&](std::string extra) {
    auto v = base;
    v.push_back(std::move(extra));
    return v;
  };
  if (w.is_zero()) {
    Expr u = k(al) - 1 / (k(EC(2) * a1) * (z - slot("c0"))) -
             1 / (k(EC(2) * a1) * (z - slot("c1")));
    out.push_back(make_family("I.A4.i", "rational, two poles", u, with("alpha a1 + b1 = 0")));
    return;
  }
  Expr e = exp(k(w) * z);
  Expr u2 = k(al) - k(w / (EC(2) * a1)) * e / (e + slot("c1"));
  out.push_back(make_family("I.A4.ii", "exponential", u2, with("alpha a1 + b1 != 0")));
  Expr c0 = slot("c0");
  Expr f = e - slot("c1");
  Expr u3 = k(al) - k(w.pow(3)) * c0 * e * f /
                        (k(a1) * (k(EC(256) * a1) * slot("beta") + k(w * w) * c0 * f.pow(2)));
  out.push_back(make_family("I.A4.iii", "exponential, quadratic denominator", u3,
                            with("alpha a1 + b1 != 0"), {"c0", "beta"}));
}

void case_three(const ChainParams& p, std::vector<SolutionFamily>& out,
                std::vector<std::string>& notes) {
  const EC &al = p.alpha, &b1 = p.b1, &a2 = p.a2, &b2 = p.b2;
  if (al * a2 - EC(2) * b1 + b2 != EC(0)) {
    notes.push_back("compatibility condition alpha a2 - 2 b1 + b2 = 0 fails");
    return;
  }
  Expr e = exp(k(b1) * zv());
  Expr u1 = k(al) - k(EC(2) * b1 / a2) * e / (e - slot("c1"));
  out.push_back(make_family("III.exp", "exponential", u1,
                            {"a1 = 0", "b2 = -alpha a2 + 2 b1", "c0 = 0"}));
  Expr r2 = sqrt(Expr(2));
  Expr c0 = slot("c0");
  Expr u2 = k(al) - r2 * k(b1 / a2) * c0 * e * tanh((r2 * c0 * e + slot("c1")) / 2);
  out.push_back(make_family("III.tanh", "tanh of an exponential", u2,
                            {"a1 = 0", "b2 = -alpha a2 + 2 b1"}, {"c0"}));
}

void case_four(const ChainParams& p, std::vector<SolutionFamily>& out) {
  const EC &al = p.alpha, &a1 = p.a1, &b1 = p.b1, &b2 = p.b2;
  Expr S = sqrt(k(a1) * slot("beta"));
  Expr X = exp(k(b2 / EC(2)) * zv());
  Expr zeta = k(EC(2) / b2) * S * X;
  Expr nu = k((al * a1 + b1) / b2);
  Expr c1 = slot("c1"), c2 = slot("c2");
  Expr num = c1 * bessel_j_prime(nu, zeta) + c2 * bessel_y_prime(nu, zeta);
  Expr den = c1 * bessel_j(nu, zeta) + c2 * bessel_y(nu, zeta);
  Expr u = k((al * a1 - b1) / (EC(2) * a1)) - S / k(a1) * X * num / den;
  out.push_back(make_family("IV.bessel", "Bessel functions of an exponential", u,
                            {"a2 = 0", "a1 b2 != 0", "nu = (alpha a1 + b1)/b2",
                             "zeta = (2 sqrt(a1 beta)/b2) e^{b2 z/2}"},
                            {"beta"}));
}

}  // namespace

FactorChain ChainParams::chain() const { return FactorChain{alpha, {{a1, b1}, {a2, b2}}}; }

ChainParams ChainParams::from_chain(const FactorChain& c) {
  if (c.order() != 2) throw DomainError("classification needs exactly two factors");
  return {c.alpha, c.factors[0].a, c.factors[0].b, c.factors[1].a, c.factors[1].b};
}

const char* completeness_name(Completeness c) {
  switch (c) {
    case Completeness::All: return "All";
    case Completeness::ParticularOnly: return "ParticularOnly";
    case Completeness::Unknown: return "Unknown";
  }
  return "?";
}

const SolutionFamily& ClassificationReport::family(const std::string& id) const {
  for (const auto& f : families)
    if (f.id == id) return f;
  if (!id.empty() && std::all_of(id.begin(), id.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
    size_t i = std::stoul(id);
    if (i < families.size()) return families[i];
  }
  throw DomainError("no family '" + id + "' in case " + case_path);
}

ClassificationReport classify(const ChainParams& p) {
  ClassificationReport r;
  r.params = p;
  const EC &a1 = p.a1, &b1 = p.b1, &a2 = p.a2, &b2 = p.b2;
  std::vector<SolutionFamily> fams{particular_family(p)};
  bool unknown = false;

  if (a1.is_zero() && a2.is_zero()) {
    const Expr z = zv();
    if (b1 != b2) {
      r.case_path = "V.3";
      Expr u = slot("c1") * exp(k(b1) * z) + slot("c2") * exp(k(b2) * z) + k(p.alpha);
      fams.push_back(make_family("V.3", "linear, two exponentials", u, {"a1 = a2 = 0", "b1 != b2"}));
    } else {
      r.case_path = "V.4";
      Expr u = (slot("c1") + slot("c2") * z) * exp(k(b1) * z) + k(p.alpha);
      fams.push_back(make_family("V.4", "linear, double exponent", u, {"a1 = a2 = 0", "b1 = b2"}));
    }
  } else if (!a1.is_zero() && a2.is_zero() && b2.is_zero()) {
    r.case_path = "V.1";
    Expr c1 = slot("c1");
    Expr u = (c1 * cot(slot("c2") - c1 * zv() / 2) + k(p.alpha * a1 - b1)) / k(EC(2) * a1);
    fams.push_back(make_family("V.1", "cot", u, {"a2 = 0", "b2 = 0"}));
  } else if (a1.is_zero() && b1.is_zero()) {
    r.case_path = "V.2";
    Expr c1 = slot("c1");
    Expr u = (c1 * cot(slot("c2") - c1 * zv() / 2) - k(b2)) / k(a2);
    fams.push_back(make_family("V.2", "cot", u, {"a1 = 0", "b1 = 0"}));
  } else if (a2.is_zero()) {
    r.case_path = "IV";
    case_four(p, fams);
  } else if (a1.is_zero()) {
    r.case_path = "III";
    case_three(p, fams, r.notes);
  } else if (EC(2) * a1 + a2 == EC(0)) {
    const EC lambda = EC(1) / a1;
    const EC c = p.alpha * a1 - b1 - b2;
    r.case_path = c.is_zero() ? "II.c=0" : "II.c≠0";
    auto kpp = kpp_classify(lambda, c, p.alpha, -b1 / a1, b2 / (EC(2) * a1));
    if (kpp.empty()) r.notes.push_back("no compatibility branch of the travelling-wave form holds");
    for (auto& f : kpp) fams.push_back(std::move(f));
  } else {
    const EC j1 = EC(2) - a2 / a1, j2 = EC(2) - EC(4) * a1 / a2;
    if (a2 == EC(2) * a1) {
      r.case_path = "I.A0";
      r.notes.push_back("a2 = 2 a1: only the first-factor solutions are meromorphic");
    } else if (a2 == a1) {
      r.case_path = "I.A1";
      subcase_a1(p, fams);
    } else if (a2 == -a1) {
      r.case_path = "I.A2";
      subcase_a2(p, fams);
    } else if (a2 == EC(-4) * a1) {
      r.case_path = "I.A3";
      subcase_a3(p, fams);
    } else if (a2 == EC(4) * a1) {
      r.case_path = "I.A4";
      subcase_a4(p, fams, r.notes);
    } else if (nonneg_integer(j2) && !j1.is_integer()) {
      r.case_path = "I.B1";
      unknown = true;
      r.notes.push_back("Fuchs index 2 - 4 a1/a2 = " + j2.to_string() +
                        " is a nonnegative integer while 2 - a2/a1 is not an integer; "
                        "the solutions are not classified");
    } else if (j1.is_integer() != j2.is_integer()) {
      r.case_path = "I.B2";
      table_exponential(p, "I.B2", fams);
    } else {
      r.case_path = "I.C";
      table_exponential(p, "I.C", fams);
    }
  }

  const DiffPolynomial eq = expand_chain(p.chain());
  for (auto& f : fams) f.equation = eq;
  finalize(fams);
  r.families = std::move(fams);
  bool general = std::any_of(r.families.begin(), r.families.end(),
                             [](const SolutionFamily& f) { return !f.particular; });
  r.completeness = unknown ? Completeness::Unknown
                   : general ? Completeness::All
                             : Completeness::ParticularOnly;
  return r;
}

DiffPolynomial fisher_equation(const EC& c, const EC& lambda, const EC& e1, const EC& e2) {
  if (lambda.is_zero()) throw DomainError("lambda must be nonzero");
  auto u = DiffPolynomial::var(0);
  return DiffPolynomial::var(2) + DiffPolynomial::var(1) * c -
         (u - DiffPolynomial::constant(e1)) * (u - DiffPolynomial::constant(e2)) *
             (EC(6) / lambda);
}

std::vector<SolutionFamily> fisher_meromorphic(const EC& c, const EC& lambda, const EC& e1,
                                               const EC& e2) {
  const DiffPolynomial eq = fisher_equation(c, lambda, e1, e2);
  std::vector<SolutionFamily> out;
  if (c.is_zero()) {
    Expr g2 = k(EC(3) * (e1 - e2) * (e1 - e2) / (lambda * lambda));
    Expr u = k(lambda) * wp(zv() - slot("z0"), g2, slot("g3")) + k((e1 + e2) / EC(2));
    out.push_back(make_family("fisher.wp", "Weierstrass", u,
                              {"c = 0", "g2 = 3 (e1 - e2)^2/lambda^2"}));
  } else {
    const EC e[2] = {e1, e2};
    for (int i = 0; i < 2; ++i) {
      const EC d = e[i] - e[1 - i];
      if (c * c * lambda != EC(25) * d) continue;
      Expr W = exp(k(-c / EC(5)) * zv()) - slot("zeta0");
      Expr u = k(d) * exp(k(EC(-2) * c / EC(5)) * zv()) * wp(W, Expr(0), slot("g3")) + k(e[1 - i]);
      out.push_back(make_family("fisher.wp-exp", "Weierstrass of an exponential", u,
                                {i == 0 ? "c^2 lambda = 25 (e1 - e2)" : "c^2 lambda = 25 (e2 - e1)",
                                 "g2 = 0"}));
    }
  }
  for (auto& f : out) f.equation = eq;
  finalize(out);
  return out;
}

DiffPolynomial kpp_equation(const EC& lambda, const EC& c, const EC& q1, const EC& q2,
                            const EC& q3) {
  if (lambda.is_zero()) throw DomainError("lambda must be nonzero");
  auto u = DiffPolynomial::var(0);
  return DiffPolynomial::var(2) + DiffPolynomial::var(1) * c -
         (u - DiffPolynomial::constant(q1)) * (u - DiffPolynomial::constant(q2)) *
             (u - DiffPolynomial::constant(q3)) * (EC(2) / (lambda * lambda));
}

std::vector<SolutionFamily> kpp_classify(const EC& lambda, const EC& c, const EC& q1,
                                         const EC& q2, const EC& q3) {
  const DiffPolynomial eq = kpp_equation(lambda, c, q1, q2, q3);
  const EC q[3] = {q1, q2, q3};
  const EC s1 = q1 + q2 + q3, s2 = q1 * q2 + q2 * q3 + q3 * q1, s3 = q1 * q2 * q3;
  const Expr t = zv() - slot("z0");
  std::vector<SolutionFamily> out;
  auto other = [](int i, int j) { return 3 - i - j; };

  if (c.is_zero()) {
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        if (q[i] != q[j]) continue;
        const EC& qk = q[other(i, j)];
        for (int s : {1, -1}) {
          Expr u = k(EC(3) * lambda * lambda) / (t * (k(q[j] - qk) * t + k(EC(3 * s) * lambda))) +
                   k(q[j]);
          out.push_back(make_family("II.c=0.rational", "rational", u, {"c = 0", "q_i = q_j"}));
        }
      }
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        const EC& qk = q[other(i, j)];
        if (q[i] == q[j] || EC(2) * qk != q[i] + q[j]) continue;
        const EC m1 = EC(0, 1) * (q[i] - q[j]) / (EC(2) * lambda);
        for (int s : {1, -1}) {
          Expr u = k(EC(s) * lambda * m1) * cot(k(m1) * t) + k(s1 / EC(3));
          out.push_back(make_family("II.c=0.cot", "cot", u,
                                    {"c = 0", "q_k = (q_i + q_j)/2",
                                     "m1 = i (q_i - q_j)/(2 lambda) != 0"}));
        }
      }
    for (int i = 0; i < 3; ++i) {
      const EC& qj = q[(i + 1) % 3];
      const EC& qk = q[(i + 2) % 3];
      const EC rad = -(qj - q[i]) * (qk - q[i]);
      if (rad.is_zero()) continue;
      // cot(m2 a) = +-i has no root: q_i is an endpoint of an arithmetic triple
      const EC x = qj - q[i], y = qk - q[i];
      if ((EC(2) * x - y) * (x - EC(2) * y) == EC(0)) continue;
      const Complex lam = lambda.approx();
      const Complex m2 = std::sqrt(rad.approx()) / (std::sqrt(2.0) * lam);
      const Complex rhs = ((qj + qk - EC(2) * q[i]) / (EC(3) * lambda)).approx();
      Expr u = Expr(lam * m2) * (cot(Expr(m2) * t) - cot(Expr(m2) * (t - slot("a")))) + k(q[i]);
      auto f = make_family("II.c=0.two-cot", "difference of two cot", u,
                           {"c = 0", "h = q_i", "m2 = sqrt(-(q_j - q_i)(q_k - q_i))/(sqrt 2 lambda)",
                            "m2 cot(m2 a) = (q_j + q_k - 2 q_i)/(3 lambda)"});
      set_derived(f, {"a"}, [m2, rhs](Assignment& as) {
        auto it = as.find("a");
        if (it != as.end()) {
          Complex r = m2 * std::cos(m2 * it->second) / std::sin(m2 * it->second) - rhs;
          if (!(std::abs(r) <= 1e-10 * std::max(1.0, std::abs(rhs))))
            throw DomainError("constraint violated: m2 cot(m2 a) = (q_j + q_k - 2 q_i)/(3 lambda)");
          return;
        }
        auto roots = two_cot_roots(m2, rhs);
        if (roots.empty())
          throw DomainError("constraint m2 cot(m2 a) = (q_j + q_k - 2 q_i)/(3 lambda) has no root");
        as["a"] = roots.front();
      });
      out.push_back(std::move(f));
    }
    {
      const Expr h = slot("h");
      const EC l2 = lambda * lambda;
      Expr pa = (k(EC(3)) * h.pow(2) - k(EC(2) * s1) * h + k(s2)) / k(EC(6) * l2);
      Expr g2 = (-k(EC(3)) * h.pow(4) + k(EC(4) * s1) * h.pow(3) - k(EC(6) * s2) * h.pow(2) +
                 k(EC(12) * s3) * h + k(s2 * s2 - EC(4) * s1 * s3)) /
                k(EC(3) * l2 * l2);
      const EC d = s1 * s1 - EC(3) * s2;
      Expr g3 = (k(EC(3) * d) * h.pow(4) - k(EC(4) * s1 * d) * h.pow(3) +
                 k(EC(6) * s2 * d) * h.pow(2) - k(EC(12) * s3 * d) * h +
                 k(-s2.pow(3) + EC(6) * s1 * s2 * s3 - EC(27) * s3 * s3)) /
                k(EC(27) * l2 * l2 * l2);
      Expr pi = (h - k(q1)) * (h - k(q2)) * (h - k(q3));
      Expr u = pi / k(l2) / (wp(t, g2, g3) - pa) + h;
      out.push_back(make_family("II.c=0.wp", "Weierstrass", u,
                                {"c = 0", "wp(a) = (3 h^2 - 2 h s1 + s2)/(6 lambda^2)",
                                 "wp'(a) = (h - q1)(h - q2)(h - q3)/lambda^3",
                                 "g2, g3 polynomial in h"}));
    }
  } else {
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3, kk = (i + 2) % 3;
      for (int s : {1, -1}) {
        const EC L = EC(s) * lambda;
        if (c * L != EC(2) * q[i] - q[j] - q[kk]) continue;
        std::vector<std::string> cons = {"c != 0", s > 0 ? "c lambda = 2 q_i - q_j - q_k"
                                                         : "-c lambda = 2 q_i - q_j - q_k"};
        if (q[j] != q[kk]) {
          Expr ej = exp(k(q[j] / L) * t), ek = exp(k(q[kk] / L) * t);
          Expr u = (k(q[j]) * ej - k(q[kk]) * ek) / (ej - ek);
          out.push_back(make_family("II.c≠0.exp-ratio", "ratio of exponentials", u, cons));
        } else {
          cons.push_back("q_j = q_k");
          out.push_back(make_family("II.c≠0.rational", "simple pole", k(q[j]) + k(L) / t, cons));
        }
      }
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        const int kk = other(i, j);
        if (q[i] == q[j] || EC(2) * q[kk] != q[i] + q[j]) continue;
        for (int s : {1, -1}) {
          const EC L = EC(s) * lambda;
          if (c * L != EC(2) * q[i] - q[j] - q[kk]) continue;
          const EC kappa = -(q[i] - q[kk]) / L;
          Expr e = exp(k(kappa) * zv());
          Expr W = e - slot("zeta0");
          Expr u = -k((q[i] - q[kk]) / EC(2)) * e * wp_prime(W, slot("g2"), Expr(0)) /
                       wp(W, slot("g2"), Expr(0)) +
                   k(q[kk]);
          out.push_back(make_family("II.c≠0.wp-exp", "Weierstrass of an exponential", u,
                                    {"c != 0", "q_k = (q_i + q_j)/2",
                                     s > 0 ? "c lambda = 2 q_i - q_j - q_k"
                                           : "-c lambda = 2 q_i - q_j - q_k",
                                     "g3 = 0"}));
        }
      }
  }
  for (auto& f : out) f.equation = eq;
  finalize(out);
  return out;
}

std::vector<Complex> two_cot_roots(Complex m2, Complex rhs) {
  if (m2 == Complex(0)) throw DomainError("m2 must be nonzero");
  const double pi = std::numbers::pi;
  const Complex target = rhs / m2;
  std::vector<Complex> xs;
  for (int s = 0; s < 8; ++s) {
    Complex x(pi * (s + 0.5) / 8, (s % 2 ? -0.5 : 0.5) * (1 + s / 2));
    bool ok = false;
    for (int it = 0; it < 200; ++it) {
      Complex ct = std::cos(x) / std::sin(x);
      Complex dx = (ct - target) / (-(1.0 + ct * ct));
      x -= dx;
      if (!std::isfinite(x.real()) || !std::isfinite(x.imag()) || std::abs(x.imag()) > 300) break;
      if (std::abs(dx) < 1e-15 * (1 + std::abs(x))) {
        ok = true;
        break;
      }
    }
    if (!ok) continue;
    x -= pi * std::floor(x.real() / pi);
    Complex a = x / m2;
    Complex r = m2 * std::cos(m2 * a) / std::sin(m2 * a) - rhs;
    if (!(std::abs(r) <= 1e-10 * std::max(1.0, std::abs(rhs)))) continue;
    bool dup = false;
    for (Complex y : xs) {
      Complex dd = x - y;
      dd -= pi * std::round(dd.real() / pi);
      if (std::abs(dd) < 1e-8) dup = true;
    }
    if (!dup) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end(), [](Complex p, Complex q) {
    return p.real() != q.real() ? p.real() < q.real() : p.imag() < q.imag();
  });
  std::vector<Complex> out;
  for (Complex x : xs) out.push_back(x / m2);
  return out;
}

Assignment complete_assignment(const SolutionFamily& f, const Assignment& assignment) {
  auto known = [&](const std::string& n) {
    return std::find(f.free_params.begin(), f.free_params.end(), n) != f.free_params.end() ||
           std::find(f.derived_params.begin(), f.derived_params.end(), n) != f.derived_params.end();
  };
  for (const auto& [name, v] : assignment) {
    if (!known(name)) throw DomainError("family " + f.id + " has no slot '" + name + "'");
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw DomainError("slot '" + name + "' is not finite");
  }
  Assignment out = assignment;
  for (const auto& n : f.free_params)
    if (!out.count(n)) throw DomainError("missing value for slot '" + n + "'");
  for (const auto& n : f.nonzero_params)
    if (out.count(n) && out.at(n) == Complex(0))
      throw DomainError("constraint violated: " + n + " != 0");
  if (f.derive) f.derive(out);
  for (const auto& n : f.derived_params)
    if (!out.count(n)) throw DomainError("derived slot '" + n + "' was not solved");
  return out;
}

Expr instantiate(const SolutionFamily& f, const Assignment& assignment) {
  return f.expr.bind(complete_assignment(f, assignment));
}

}  // namespace loewy
