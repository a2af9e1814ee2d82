#include "loewy/io.hpp"

#include <cmath>

#include "loewy/errors.hpp"

namespace loewy::io {

namespace {

Rational rational_from_json(const Json& j, Numerals mode) {
  if (j.is_number_integer()) return Rational(j.dump());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_float()) {
    if (mode == Numerals::Exact)
      throw ParseError("exact numerals must be integers or \"p/q\" strings, got " + j.dump());
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw ParseError("non-finite numeral");
    return Rational(x);
  }
  throw ParseError("expected a numeral, got " + j.dump());
}

double real_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_rational(j.get<std::string>()).get_d();
  throw ParseError("expected a numeral, got " + j.dump());
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object with \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

void only_fields(const Json& j, std::initializer_list<const char*> keys) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) throw ParseError("unknown field \"" + it.key() + "\"");
  }
}

}  // namespace

ExactComplex exact_from_json(const Json& j, Numerals mode) {
  if (j.is_object()) {
    only_fields(j, {"re", "im"});
    Rational re = j.contains("re") ? rational_from_json(j["re"], mode) : Rational(0);
    Rational im = j.contains("im") ? rational_from_json(j["im"], mode) : Rational(0);
    return {re, im};
  }
  return {rational_from_json(j, mode), 0};
}

Complex complex_from_json(const Json& j) {
  if (j.is_object()) {
    only_fields(j, {"re", "im"});
    return {j.contains("re") ? real_from_json(j["re"]) : 0.0, j.contains("im") ? real_from_json(j["im"]) : 0.0};
  }
  return {real_from_json(j), 0.0};
}

Json to_json(const ExactComplex& z) {
  return Json{{"re", rational_to_string(z.re())}, {"im", rational_to_string(z.im())}};
}

Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

FactorChain chain_from_json(const Json& j, Numerals mode) {
  if (!j.is_object()) throw ParseError("chain must be an object");
  only_fields(j, {"alpha", "factors"});
  FactorChain c;
  c.alpha = j.contains("alpha") ? exact_from_json(j["alpha"], mode) : ExactComplex(0);
  const Json& fs = field(j, "factors");
  if (!fs.is_array() || fs.empty()) throw ParseError("\"factors\" must be a nonempty array");
  for (const auto& f : fs) {
    if (!f.is_object()) throw ParseError("factor must be an object");
    only_fields(f, {"a", "b"});
    c.factors.push_back({exact_from_json(field(f, "a"), mode),
                         f.contains("b") ? exact_from_json(f["b"], mode) : ExactComplex(0)});
  }
  return c;
}

Json to_json(const FactorChain& c) {
  Json fs = Json::array();
  for (const auto& f : c.factors) fs.push_back(Json{{"a", to_json(f.a)}, {"b", to_json(f.b)}});
  return Json{{"alpha", to_json(c.alpha)}, {"factors", fs}};
}

LinearODE linear_ode_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("linear ODE must be an object");
  only_fields(j, {"coefficients", "constant"});
  const Json& cs = field(j, "coefficients");
  if (!cs.is_array() || cs.empty()) throw ParseError("\"coefficients\" must be a nonempty array");
  LinearODE ode;
  for (const auto& c : cs) ode.coefficients.push_back(exact_from_json(c));
  if (j.contains("constant")) ode.constant = exact_from_json(j["constant"]);
  return ode;
}

Json to_json(const DiffPolynomial& p) {
  Json terms = Json::array();
  for (const auto& [index, coeff] : p.terms()) terms.push_back(Json{{"index", index}, {"coeff", to_json(coeff)}});
  return Json{{"text", p.to_string()}, {"terms", terms}};
}

Assignment assignment_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("assignment must be an object");
  Assignment a;
  for (auto it = j.begin(); it != j.end(); ++it) a[it.key()] = complex_from_json(it.value());
  return a;
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace loewy::io
