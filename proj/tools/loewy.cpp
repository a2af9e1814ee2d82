#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "loewy/classify.hpp"
#include "loewy/errors.hpp"
#include "loewy/growth.hpp"
#include "loewy/io.hpp"
#include "loewy/laurent.hpp"
#include "loewy/linfact.hpp"
#include "loewy/painleve.hpp"
#include "loewy/verify.hpp"

using namespace loewy;
using io::Json;

namespace {

struct Flags {
  std::string input;
  std::string inline_json;
  bool batch = false;
  bool pretty = false;
  int depth = 8;
  int jmax = 64;
  int samples = 20;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  double rmin = 5, rmax = 40;
  int steps = 8;
  int quad_points = 2048;
  int level = 2;
  std::string table;
};

Json poly_coeffs(const UniPoly& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(io::to_json(c));
  return out;
}

Json expand_cmd(const Json& in) {
  FactorChain c = io::chain_from_json(in);
  return Json{{"chain", io::to_json(c)}, {"order", c.order()}, {"polynomial", io::to_json(expand_chain(c))}};
}

Json painleve_cmd(const Json& in, const Flags& fl) {
  if (fl.jmax < 0) throw DomainError("--jmax must be nonnegative");
  if (fl.depth < 1) throw DomainError("--depth must be positive");
  FactorChain c = io::chain_from_json(in);
  DiffPolynomial poly = expand_chain(c);
  BalanceSearch search = find_balances(poly);
  Json balances = Json::array();
  for (const auto& bal : search.balances) {
    IndicialData d = indicial_data(poly, bal);
    Json exact = Json::array(), approx = Json::array();
    for (const auto& r : d.fuchs.exact) exact.push_back(io::to_json(r));
    for (const auto& r : d.fuchs.approx) approx.push_back(io::to_json(r));
    int depth = fl.depth;
    for (long j : d.integer_indices) depth = std::max<long>(depth, j);
    LaurentSolution s = laurent_expand(poly, bal, depth);
    Json res = Json::array();
    for (const auto& r : s.resonances)
      res.push_back(Json{{"j", r.j},
                         {"status", r.status == ResonanceStatus::Free ? "Free" : "Obstructed"},
                         {"q", io::to_json(r.q)}});
    Json coeffs = Json::array();
    for (const auto& u : s.coefficients) coeffs.push_back(io::to_json(u));
    balances.push_back(Json{{"p", bal.p},
                            {"u0", io::to_json(bal.u0)},
                            {"indicial", poly_coeffs(d.indicial)},
                            {"indicialText", d.indicial.to_string()},
                            {"fuchsIndices", Json{{"exact", exact}, {"approx", approx}}},
                            {"integerIndices", d.integer_indices},
                            {"resonances", res},
                            {"depth", depth},
                            {"laurent", coeffs}});
  }
  Json irrational = Json::array();
  for (const auto& [p, u0] : search.irrational) irrational.push_back(Json{{"p", p}, {"u0", io::to_json(u0)}});

  GenericityVerdict g = genericity_test(c.a_values(), fl.jmax);
  Json gen{{"verdict", verdict_name(g.verdict)}, {"jmax", g.jmax}};
  if (g.verdict == Verdict::InS) gen["witness"] = Json{{"k", g.k}, {"j", g.j}};
  if (g.verdict == Verdict::OnAxis) gen["axis"] = g.axis;
  return Json{{"chain", io::to_json(c)},
              {"pBound", search.p_bound},
              {"balances", balances},
              {"irrationalBalances", irrational},
              {"genericity", gen}};
}

Json factor_linear_cmd(const Json& in) {
  LinearODE ode = io::linear_ode_from_json(in);
  FactorChain c = factor_linear(ode);
  const bool exact = exact_rational_roots(characteristic_poly(ode)).approx.empty();
  return Json{{"chain", io::to_json(c)},
              {"characteristic", poly_coeffs(characteristic_poly(ode))},
              {"exactRoots", exact},
              {"reexpanded", io::to_json(expand_chain(c))}};
}

Json family_json(const SolutionFamily& f) {
  return Json{{"id", f.id},
              {"caseTag", f.case_tag},
              {"kind", f.kind},
              {"expression", f.formula()},
              {"freeParams", f.free_params},
              {"derivedParams", f.derived_params},
              {"nonzeroParams", f.nonzero_params},
              {"constraints", f.constraints},
              {"particular", f.particular}};
}

Json classify_cmd(const Json& in) {
  FactorChain c = io::chain_from_json(in);
  if (c.order() != 2) throw DomainError("classify needs a chain of two factors");
  ClassificationReport r = classify(ChainParams::from_chain(c));
  Json families = Json::array();
  for (const auto& f : r.families) families.push_back(family_json(f));
  return Json{{"chain", io::to_json(c)},
              {"casePath", r.case_path},
              {"completeness", completeness_name(r.completeness)},
              {"families", families},
              {"notes", r.notes}};
}

// {"chain": ..., "family": id, "assignment": {...}}
struct Instance {
  FactorChain chain;
  ClassificationReport report;
  const SolutionFamily* family = nullptr;
  Assignment assignment;
  Expr u;
};

Instance instance_from_json(const Json& in) {
  if (!in.is_object() || !in.contains("chain") || !in.contains("family"))
    throw ParseError("expected {\"chain\": ..., \"family\": ..., \"assignment\": {...}}");
  for (auto it = in.begin(); it != in.end(); ++it)
    if (it.key() != "chain" && it.key() != "family" && it.key() != "assignment")
      throw ParseError("unknown field \"" + it.key() + "\"");
  Instance x;
  x.chain = io::chain_from_json(in["chain"], io::Numerals::Approximate);
  if (x.chain.order() != 2) throw DomainError("solution families exist for chains of two factors only");
  x.report = classify(ChainParams::from_chain(x.chain));
  const Json& id = in["family"];
  if (!id.is_string() && !id.is_number_integer()) throw ParseError("\"family\" must be an id string or index");
  x.family = &x.report.family(id.is_string() ? id.get<std::string>() : id.dump());
  Assignment given = in.contains("assignment") ? io::assignment_from_json(in["assignment"]) : Assignment{};
  x.assignment = complete_assignment(*x.family, given);
  x.u = instantiate(*x.family, x.assignment);
  return x;
}

Json assignment_json(const Assignment& a) {
  Json out = Json::object();
  for (const auto& [k, v] : a) out[k] = io::to_json(v);
  return out;
}

Json verify_cmd(const Json& in, const Flags& fl) {
  Instance x = instance_from_json(in);
  ResidualOptions opt;
  opt.samples = fl.samples;
  opt.seed = fl.seed;
  opt.tol = fl.tol;
  ResidualReport rep = x.family->equation == expand_chain(x.chain) ? residual(x.chain, x.u, opt)
                                                                   : residual(x.family->equation, x.u, opt);
  Json points = Json::array();
  for (Complex z : rep.points) points.push_back(io::to_json(z));
  return Json{{"family", x.family->id},
              {"expression", x.u.render()},
              {"assignment", assignment_json(x.assignment)},
              {"samplePoints", points},
              {"residuals", rep.residuals},
              {"maxRelativeResidual", rep.max_rel},
              {"poleSkips", rep.pole_skips},
              {"tol", rep.tol},
              {"verdict", residual_verdict_name(rep.verdict)}};
}

Json growth_cmd(const Json& in, const Flags& fl) {
  Instance x = instance_from_json(in);
  GrowthOptions opt;
  opt.quad_points = fl.quad_points;
  GrowthCurve g = hayman_check(x.u, fl.level, radius_grid(fl.rmin, fl.rmax, fl.steps), opt);
  Json order = nullptr, fit = nullptr;
  if (g.fitted_order) {
    order = Json{{"rho1", g.fitted_order->rho1}, {"rho2", nullptr}};
    if (g.fitted_order->rho2) order["rho2"] = *g.fitted_order->rho2;
  }
  if (g.hayman_fit)
    fit = Json{{"a", g.hayman_fit->a}, {"b", g.hayman_fit->b}, {"c", g.hayman_fit->c},
               {"consistent", g.hayman_fit->consistent}};
  if (!fl.table.empty()) {
    std::ofstream t(fl.table);
    if (!t) throw std::ios_base::failure("cannot write " + fl.table);
    t << "# r m N T\n";
    t.precision(17);
    for (size_t i = 0; i < g.radii.size(); ++i)
      t << g.radii[i] << ' ' << g.m_values[i] << ' ' << g.n_values[i] << ' ' << g.t_values[i] << '\n';
  }
  return Json{{"family", x.family->id},
              {"expression", x.u.render()},
              {"assignment", assignment_json(x.assignment)},
              {"level", g.level},
              {"radii", g.radii},
              {"mValues", g.m_values},
              {"nValues", g.n_values},
              {"tValues", g.t_values},
              {"fittedOrder", order},
              {"haymanFit", fit},
              {"subexponential", g.subexponential}};
}

Json error_json(const char* kind, const std::string& message) {
  return Json{{"error", Json{{"kind", kind}, {"message", message}}}};
}

// Runs one request; returns the exit code and writes one JSON document.
int run_one(const std::string& cmd, const std::string& text, const Flags& fl, std::ostream& out) {
  Json result;
  int code = 0;
  try {
    Json in = io::parse(text);
    if (cmd == "expand") result = expand_cmd(in);
    else if (cmd == "painleve") result = painleve_cmd(in, fl);
    else if (cmd == "factor-linear") result = factor_linear_cmd(in);
    else if (cmd == "classify") result = classify_cmd(in);
    else if (cmd == "verify") result = verify_cmd(in, fl);
    else result = growth_cmd(in, fl);
  } catch (const ParseError& e) {
    result = error_json("parse", e.what());
    code = 1;
  } catch (const DomainError& e) {
    result = error_json("domain", e.what());
    code = 2;
  } catch (const std::ios_base::failure& e) {
    result = error_json("io", e.what());
    code = 1;
  }
  out << (fl.pretty && !fl.batch ? result.dump(2) : result.dump()) << '\n';
  return code;
}

std::string read_input(const Flags& fl) {
  if (!fl.inline_json.empty()) return fl.inline_json;
  if (fl.input.empty() || fl.input == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(fl.input);
  if (!f) throw std::ios_base::failure("cannot read " + fl.input);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Loewy-factorizable ODE toolkit: expansion, Painleve analysis, classification and growth"};
  app.require_subcommand(1, 1);
  Flags fl;

  auto common = [&](CLI::App* s) {
    s->add_option("input", fl.input, "input file; '-' or omitted reads stdin");
    s->add_option("--json", fl.inline_json, "inline JSON input");
    s->add_flag("--batch", fl.batch, "one JSON input per line, one JSON output per line");
    s->add_flag("--pretty", fl.pretty, "indented output");
  };
  auto* expand = app.add_subcommand("expand", "expand a factor chain into a differential polynomial");
  auto* painleve = app.add_subcommand("painleve", "balances, Fuchs indices, resonances and genericity");
  auto* factor = app.add_subcommand("factor-linear", "factor a constant-coefficient linear ODE");
  auto* classify_app = app.add_subcommand("classify", "closed-form meromorphic solutions of a two-factor chain");
  auto* verify = app.add_subcommand("verify", "numerical residual of an instantiated solution family");
  auto* growth = app.add_subcommand("growth", "Nevanlinna characteristic and growth fit of a solution family");
  for (auto* s : {expand, painleve, factor, classify_app, verify, growth}) common(s);
  painleve->add_option("--depth", fl.depth, "Laurent depth (raised to the largest integer index)");
  painleve->add_option("--jmax", fl.jmax, "genericity search bound");
  verify->add_option("--samples", fl.samples, "sample points");
  verify->add_option("--seed", fl.seed, "sample seed");
  verify->add_option("--tol", fl.tol, "relative residual tolerance");
  growth->add_option("--rmin", fl.rmin, "smallest radius");
  growth->add_option("--rmax", fl.rmax, "largest radius");
  growth->add_option("--steps", fl.steps, "number of radii");
  growth->add_option("--quad-points", fl.quad_points, "trapezoid nodes per circle");
  growth->add_option("--level", fl.level, "1: power law in r, 2: exponential of a power");
  growth->add_option("--table", fl.table, "also write an r m N T table to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cout << error_json("parse", e.what()).dump() << '\n';
    return 1;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  std::string text;
  try {
    text = read_input(fl);
  } catch (const std::ios_base::failure& e) {
    std::cout << error_json("io", e.what()).dump() << '\n';
    return 1;
  }
  if (!fl.batch) return run_one(cmd, text, fl, std::cout);
  int code = 0;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    code = std::max(code, run_one(cmd, line, fl, std::cout));
  }
  return code;
}
