#pragma once

#include <string>

#include "json.hpp"
#include "loewy/chain.hpp"
#include "loewy/classify.hpp"
#include "loewy/linfact.hpp"

namespace loewy::io {

using Json = nlohmann::ordered_json;

// How numerals are accepted.  Exact mode takes integers, "p/q" strings and
// {"re", "im"} objects of those; Approximate mode also takes floats.
enum class Numerals { Exact, Approximate };

ExactComplex exact_from_json(const Json& j, Numerals mode = Numerals::Exact);
Complex complex_from_json(const Json& j);

// {"re": "p/q", "im": "p/q"}
Json to_json(const ExactComplex& z);
// {"re": x, "im": y}
Json to_json(Complex z);

FactorChain chain_from_json(const Json& j, Numerals mode = Numerals::Exact);
Json to_json(const FactorChain& c);

// {"coefficients": [k_0, ..., k_{n-1}], "constant": c} for
// u^(n) + k_{n-1} u^(n-1) + ... + k_0 u + c = 0; "constant" defaults to 0.
LinearODE linear_ode_from_json(const Json& j);

// {"text": "...", "terms": [{"index": [i_0, ...], "coeff": cplx}, ...]}
Json to_json(const DiffPolynomial& p);

// Parameter name -> complex value.
Assignment assignment_from_json(const Json& j);

// Parses text as JSON, turning syntax errors into ParseError.
Json parse(const std::string& text);

}  // namespace loewy::io
