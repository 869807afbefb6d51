#include "qpa/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>

#include "qpa/equivariance.hpp"
#include "qpa/errors.hpp"
#include "qpa/flows.hpp"
#include "qpa/linebundle.hpp"
#include "qpa/parse.hpp"
#include "qpa/quantize.hpp"
#include "qpa/verify.hpp"

namespace qpa {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  bool json = false;
  std::uint64_t seed = 1;
  std::string mode;
  int order = -1;
  std::string a, b;
  std::string y, omega, t = "1", apply, model = "moebius", op, phi, z, s, algebra;
  std::string kappa = "0", lambda = "0", k_factor = "1";
  int n = 1, k = 1;
  int slice = -1;
};

Rat parse_rat(const std::string& s) {
  const Value v = parse_value(s);
  if (kind_of(v) != ExprKind::Poly || !std::get<Poly>(v).is_constant())
    throw PreconditionError("expected a rational number, got '" + s + "'");
  return std::get<Poly>(v).constant_term();
}

json exps(const MultiIndex& a) { return json(a.exponents()); }

json to_json(const Poly& p) {
  json terms = json::array();
  for (const auto& [a, c] : p.terms()) terms.push_back({{"coeff", c.get_str()}, {"x", exps(a)}});
  return {{"type", "poly"}, {"n", p.dim()}, {"order", p.degree()}, {"terms", terms}, {"text", p.to_string()}};
}

json to_json(const SymbolPoly& p) {
  json terms = json::array();
  const auto n = static_cast<std::size_t>(p.dim());
  for (const auto& [a, c] : p.raw().terms())
    terms.push_back({{"coeff", c.get_str()}, {"x", exps(a.slice(0, n))}, {"xi", exps(a.slice(n, n))}});
  return {{"type", "symbol"}, {"n", p.dim()}, {"order", p.xi_degree()}, {"terms", terms}, {"text", p.to_string()}};
}

json to_json(const DiffOp& d) {
  json terms = json::array();
  for (const auto& [a, c] : d.terms()) terms.push_back({{"coeff", c.to_string()}, {"d", exps(a)}});
  return {{"type", "diffop"}, {"n", d.dim()}, {"order", d.is_zero() ? -1 : d.order()}, {"terms", terms},
          {"text", d.to_string()}};
}

json to_json(const TrigPoly& t) {
  json coeffs = json::array();
  for (const auto& [m, c] : t.modes()) {
    Rat k(m, 2);
    k.canonicalize();
    coeffs.push_back({{"k", k.get_str()}, {"cos", c.cos.get_str()}, {"sin", c.sin.get_str()}});
  }
  Rat top(std::max(t.max_twice_mode(), -1), 2);
  top.canonicalize();
  return {{"type", "trig"}, {"n", 1}, {"parity", to_string(t.parity())}, {"order", t.is_zero() ? "-1" : top.get_str()},
          {"coeffs", coeffs}, {"text", t.to_string()}};
}

json to_json(const CircleOp& d) {
  json coeffs = json::array();
  for (std::size_t j = 0; j < d.coeffs().size(); ++j)
    if (!d.coeffs()[j].is_zero()) coeffs.push_back({{"j", j}, {"coeff", d.coeffs()[j].to_string()}});
  return {{"type", "circle_op"}, {"n", 1}, {"order", d.is_zero() ? -1 : d.order()}, {"coeffs", coeffs},
          {"text", d.to_string()}};
}

json to_json(const HSeries& h) {
  json coeffs = json::array();
  for (const auto& c : h.coefficients()) coeffs.push_back(c.to_string());
  return {{"type", "hseries"}, {"n", h.dim()}, {"order", h.order()}, {"coeffs", coeffs}, {"text", h.to_string()}};
}

json to_json(const FirstOrderOp& u) {
  json j = to_json(u.to_diffop());
  j["type"] = "first_order";
  return j;
}

json to_json(const AffineMap& m) {
  json comps = json::array();
  for (const auto& c : m.components()) comps.push_back(c.to_string());
  return {{"type", "affine_map"}, {"n", m.dim()}, {"order", 1}, {"coeffs", comps}};
}

std::string text_of(const json& j) { return j.contains("text") ? j["text"].get<std::string>() : j.dump(); }

void emit(std::ostream& out, const Options& o, const json& j) {
  if (o.json)
    out << j.dump() << "\n";
  else
    out << text_of(j) << "\n";
}

// Largest variable index among expression or list sources.
int dim_hint(const std::vector<std::string>& srcs) {
  int n = 1;
  for (const auto& s : srcs) {
    if (s.empty()) continue;
    if (s.front() == '[') {
      const auto list = parse_poly_list(s);
      n = std::max(n, list.empty() ? 1 : list.front().dim());
    } else {
      n = std::max(n, infer(parse(s)).n);
    }
  }
  return n;
}

DiffOp as_diffop(const Value& v) {
  if (kind_of(v) == ExprKind::Poly) return DiffOp::multiplication(std::get<Poly>(v));
  if (kind_of(v) != ExprKind::DiffOp) throw PreconditionError(std::string("expected an operator, got a ") + to_string(kind_of(v)));
  return std::get<DiffOp>(v);
}

SymbolPoly as_symbol(const Value& v) {
  if (kind_of(v) == ExprKind::Poly) return SymbolPoly::from_function(std::get<Poly>(v));
  if (kind_of(v) != ExprKind::Symbol) throw PreconditionError(std::string("expected a symbol, got a ") + to_string(kind_of(v)));
  return std::get<SymbolPoly>(v);
}

Mode mode_or(const Options& o, Mode fallback) { return o.mode.empty() ? fallback : parse_mode(o.mode); }

Deriv1Params d1_params(const Options& o, int n) {
  Deriv1Params p = Deriv1Params::zero(n);
  if (!o.y.empty()) p.y = parse_field(o.y, n);
  p.kappa = parse_rat(o.kappa);
  p.lambda = parse_rat(o.lambda);
  if (!o.omega.empty()) p.omega = parse_form(o.omega, n);
  return p;
}

BundleModel model_of(const Options& o, int n) {
  if (o.model == "moebius") return BundleModel::moebius_s1();
  if (o.model == "circle" || o.model == "trivial") return BundleModel::trivial_s1();
  if (o.model == "rn") return BundleModel::trivial_rn(n);
  throw PreconditionError("unknown model '" + o.model + "' (moebius, circle, rn)");
}

json report_json(const CheckReport& r) {
  return {{"passed", r.passed}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"residual", r.residual}, {"mode", to_string(r.mode)}};
}

int cmd_compose(const Options& o, std::ostream& out) {
  auto v = parse_values({o.a, o.b});
  if (kind_of(v[0]) == ExprKind::CircleOp || kind_of(v[0]) == ExprKind::Trig) {
    auto c = [](const Value& x) {
      return kind_of(x) == ExprKind::CircleOp ? std::get<CircleOp>(x) : CircleOp::multiplication(std::get<TrigPoly>(x));
    };
    emit(out, o, to_json(compose(c(v[0]), c(v[1]))));
  } else {
    emit(out, o, to_json(compose(as_diffop(v[0]), as_diffop(v[1]))));
  }
  return kExitOk;
}

int cmd_bracket(const Options& o, std::ostream& out) {
  auto v = parse_values({o.a, o.b});
  if (kind_of(v[0]) == ExprKind::CircleOp) {
    emit(out, o, to_json(commutator(std::get<CircleOp>(v[0]), std::get<CircleOp>(v[1]))));
  } else if (kind_of(v[0]) == ExprKind::Symbol) {
    throw PreconditionError("bracket acts on operators; use poisson for symbols");
  } else {
    emit(out, o, to_json(commutator(as_diffop(v[0]), as_diffop(v[1]))));
  }
  return kExitOk;
}

int cmd_apply(const Options& o, std::ostream& out) {
  const Value op = parse_value(o.a);
  if (kind_of(op) == ExprKind::CircleOp || kind_of(op) == ExprKind::Trig) {
    const CircleOp c = kind_of(op) == ExprKind::CircleOp ? std::get<CircleOp>(op)
                                                         : CircleOp::multiplication(std::get<TrigPoly>(op));
    emit(out, o, to_json(c.apply(parse_trig(o.b))));
    return kExitOk;
  }
  const int n = dim_hint({o.a, o.b});
  emit(out, o, to_json(as_diffop(parse_values({o.a}, n)[0]).apply(parse_poly(o.b, n))));
  return kExitOk;
}

int cmd_symbol(const Options& o, std::ostream& out) {
  const DiffOp d = as_diffop(parse_value(o.a));
  emit(out, o, to_json(o.order < 0 ? principal_symbol(d) : symbol_k(d, o.order)));
  return kExitOk;
}

int cmd_quantize(const Options& o, std::ostream& out) {
  emit(out, o, to_json(q_affine(as_symbol(parse_value(o.a)))));
  return kExitOk;
}

int cmd_star(const Options& o, std::ostream& out) {
  auto v = parse_values({o.a, o.b});
  emit(out, o, to_json(star(as_symbol(v[0]), as_symbol(v[1]), o.order < 0 ? 2 : o.order)));
  return kExitOk;
}

int cmd_poisson(const Options& o, std::ostream& out) {
  auto v = parse_values({o.a, o.b});
  emit(out, o, to_json(poisson_bracket(as_symbol(v[0]), as_symbol(v[1]))));
  return kExitOk;
}

int cmd_derive(const Options& o, std::ostream& out) {
  const int n = dim_hint({o.a, o.y, o.omega});
  const Value u = parse_values({o.a}, n)[0];
  std::string alg = o.algebra;
  if (alg.empty()) {
    if (kind_of(u) == ExprKind::Symbol)
      alg = "s";
    else
      alg = as_diffop(u).order() <= 1 ? "d1" : "d";
  }
  const ClosedOneForm w = o.omega.empty() ? ClosedOneForm(n) : parse_form(o.omega, n);
  if (alg == "d1") {
    Deriv1Params p = d1_params(o, n);
    emit(out, o, to_json(deriv_d1(p, FirstOrderOp::from_diffop(as_diffop(u)))));
  } else if (alg == "s") {
    const SymbolPoly q = o.y.empty() ? SymbolPoly(n) : as_symbol(parse_values({o.y}, n)[0]);
    emit(out, o, to_json(deriv_s(q, parse_rat(o.kappa), w, as_symbol(u))));
  } else if (alg == "d") {
    const DiffOp delta = o.y.empty() ? DiffOp(n) : as_diffop(parse_values({o.y}, n)[0]);
    emit(out, o, to_json(deriv_d(delta, w, as_diffop(u))));
  } else {
    throw PreconditionError("unknown algebra '" + alg + "' (d1, s, d)");
  }
  return kExitOk;
}

int cmd_automorph(const Options& o, std::ostream& out) {
  const int n = std::max(dim_hint({o.a, o.omega, o.phi}), o.phi.empty() ? 1 : static_cast<int>(parse_poly_list(o.phi).size()));
  AffineMap phi = AffineMap::identity(n);
  if (!o.phi.empty()) {
    const auto comps = parse_poly_list(o.phi, n);
    if (static_cast<int>(comps.size()) != n) throw PreconditionError("--phi needs " + std::to_string(n) + " components");
    AffineMap::Matrix m(static_cast<std::size_t>(n), std::vector<Rat>(static_cast<std::size_t>(n), Rat(0)));
    std::vector<Rat> c;
    for (int i = 0; i < n; ++i) {
      if (comps[static_cast<std::size_t>(i)].degree() > 1) throw PreconditionError("--phi must be affine");
      for (int j = 0; j < n; ++j)
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            comps[static_cast<std::size_t>(i)].coeff(MultiIndex::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(j)));
      c.push_back(comps[static_cast<std::size_t>(i)].constant_term());
    }
    phi = AffineMap(m, c);
  }
  const AutoParams a{phi, parse_rat(o.k_factor), parse_rat(o.lambda),
                     o.omega.empty() ? ClosedOneForm(n) : parse_form(o.omega, n)};
  emit(out, o, to_json(automorphism_d1(a, FirstOrderOp::from_diffop(as_diffop(parse_values({o.a}, n)[0])))));
  return kExitOk;
}

int cmd_flow(const Options& o, std::ostream& out) {
  const int n = dim_hint({o.y});
  const AffineField y = AffineField::from_field(parse_field(o.y, n));
  const FlowMap f = flow(y, parse_rat(o.t), mode_or(o, y.nilpotent() ? Mode::Exact : Mode::Numeric));
  json j = to_json(f.map);
  j["mode"] = to_string(f.mode);
  j["t"] = f.t.get_str();
  if (o.json) {
    out << j.dump() << "\n";
  } else {
    std::string s;
    for (const auto& c : j["coeffs"]) s += (s.empty() ? "" : ", ") + c.get<std::string>();
    out << "[" << s << "]\n";
  }
  return kExitOk;
}

int cmd_one_param(const Options& o, std::ostream& out) {
  const int n = dim_hint({o.y, o.omega, o.apply});
  const Deriv1Params p = d1_params(o, n);
  const Mode mode = mode_or(o, natural_mode(p));
  const Rat t = parse_rat(o.t);
  const FirstOrderOp u = FirstOrderOp::from_diffop(as_diffop(parse_values({o.apply}, n)[0]));
  const FirstOrderOp r = one_param_group(p, t, u, mode);
  // Group-law self check Φ_t Φ_t = Φ_{2t}.
  const FirstOrderOp lhs = one_param_group(p, t, r, mode), rhs = one_param_group(p, t + t, u, mode);
  const double residual = probe_distance(lhs, rhs);
  json j = to_json(r);
  j["mode"] = to_string(mode);
  j["lhs"] = lhs.to_string();
  j["rhs"] = rhs.to_string();
  j["residual"] = residual;
  emit(out, o, j);
  return kExitOk;
}

int cmd_div_check(const Options& o, std::ostream& out) {
  const int n = dim_hint({o.y, o.z});
  const AffineField y = AffineField::from_field(parse_field(o.y, n));
  const Rat t = parse_rat(o.t);
  Mode mode = mode_or(o, y.nilpotent() ? Mode::Exact : Mode::Numeric);
  CheckReport r;
  if (o.z.empty()) {
    r = div3_check(y, t, mode);
  } else {
    const AffineField z = AffineField::from_field(parse_field(o.z, n));
    if (o.mode.empty() && !z.nilpotent()) mode = Mode::Numeric;
    r = div_cocycle_check(flow(y, t, mode), flow(z, parse_rat(o.s), mode));
  }
  if (o.json)
    out << report_json(r).dump() << "\n";
  else
    out << (r.passed ? "pass" : "FAIL") << " (" << to_string(r.mode) << ", residual " << r.residual << ")\n  lhs: " << r.lhs
        << "\n  rhs: " << r.rhs << "\n";
  return r.passed ? kExitOk : kExitVerifyFailed;
}

int cmd_bundle(const Options& o, std::ostream& out) {
  const int n = o.model == "rn" ? dim_hint({o.op, o.apply}) : 1;
  const BundleModel m = model_of(o, n);
  BundleOp d = m.on_circle() ? BundleOp::of(m, parse_circle_op(o.op)) : BundleOp::of(m, parse_diffop(o.op, n));
  const int ord = bundle_order(d);
  json j{{"type", "bundle_op"}, {"model", m.name()}, {"n", m.on_circle() ? 1 : n}, {"order", ord}};
  j["op"] = std::visit([](const auto& x) { return to_json(x); }, d.op);
  if (ord >= 0) j["symbol"] = symbol_bundle(d, ord).to_string();
  if (m.on_circle()) j["global"] = globalize_iso(m, FrameChoice::uniform(m), d).to_string();
  if (!o.apply.empty()) {
    const Section s = m.on_circle() ? Section::of(m, parse_trig(o.apply)) : Section::of(m, parse_poly(o.apply, n));
    j["result"] = bundle_apply(d, s).to_string();
  }
  if (o.json) {
    out << j.dump() << "\n";
  } else {
    out << "order " << ord << "\n";
    if (j.contains("symbol")) out << "symbol " << j["symbol"].get<std::string>() << "\n";
    if (j.contains("global")) out << "global " << j["global"].get<std::string>() << "\n";
    if (j.contains("result")) out << j["result"].get<std::string>() << "\n";
  }
  return kExitOk;
}

int cmd_equivariant(const Options& o, std::ostream& out) {
  const auto s = solve_equivariant_symbol(o.n, o.k, DensityWeight{parse_rat(o.lambda)}, o.slice);
  json coeffs = json::array();
  for (int m = 1; m <= s.k; ++m)
    for (int j = 1; j <= m; ++j) coeffs.push_back({{"m", m}, {"j", j}, {"value", s.coeff(m, j).get_str()}});
  json j{{"status", to_string(s.status)}, {"n", s.n}, {"k", s.k}, {"lambda", s.weight.lambda.get_str()},
         {"coefficients", coeffs}, {"rank", s.rank}, {"unknowns", s.unknowns}, {"slice_degree", s.slice_degree}};
  if (o.json) {
    out << j.dump() << "\n";
  } else {
    out << to_string(s.status) << "\n";
    for (const auto& c : coeffs)
      out << "c[" << c["m"].get<int>() << "," << c["j"].get<int>() << "] = " << c["value"].get<std::string>() << "\n";
  }
  return s.status == SolveStatus::Unique ? kExitOk : kExitVerifyFailed;
}

int cmd_verify(const Options& o, std::ostream& out) {
  std::vector<std::string> names;
  if (o.a == "all")
    names = suite_names();
  else
    names = {o.a};
  bool ok = true;
  json arr = json::array();
  const auto start = std::chrono::steady_clock::now();
  for (const auto& name : names) {
    const SuiteResult r = run_suite(name, o.seed);
    ok = ok && r.passed;
    if (o.json) {
      arr.push_back({{"suite", r.name}, {"passed", r.passed}, {"checks", r.checks}, {"seconds", r.seconds},
                     {"summary", r.summary}, {"counterexample", r.detail}});
    } else {
      out << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks, " << r.seconds << " s)";
      if (!r.summary.empty()) out << ": " << r.summary;
      out << "\n";
      if (!r.passed) out << "  counterexample: " << r.detail << "\n";
    }
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (o.json)
    out << json{{"passed", ok}, {"seconds", total}, {"suites", arr}}.dump() << "\n";
  else
    out << (ok ? "all passed" : "FAILED") << " in " << total << " s\n";
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations in quantum Poisson algebras of differential operators and symbols", "qpa"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json, "Machine-readable output");
  app.add_option("--seed", o.seed, "Seed for randomized suites");
  app.add_option("--mode", o.mode, "exact or numeric");

  std::function<int(const Options&, std::ostream&)> action;
  auto verb = [&](const char* name, const char* help, auto fn) {
    CLI::App* c = app.add_subcommand(name, help);
    c->callback([&action, fn] { action = fn; });
    return c;
  };

  auto two = [&](CLI::App* c, const char* an, const char* bn) {
    c->add_option(an, o.a)->required();
    c->add_option(bn, o.b)->required();
  };
  two(verb("compose", "Operator composition A∘B", cmd_compose), "A", "B");
  two(verb("bracket", "Commutator [A,B] of operators", cmd_bracket), "A", "B");
  two(verb("apply", "Apply an operator to a function or section", cmd_apply), "OP", "F");
  auto* sym = verb("symbol", "Principal symbol, or the order-k symbol with --order k", cmd_symbol);
  sym->add_option("OP", o.a)->required();
  sym->add_option("--order", o.order, "Order k bounding the operator");
  verb("quantize", "Normal-ordered quantization of a symbol", cmd_quantize)->add_option("P", o.a)->required();
  auto* st = verb("star", "Star product truncated at --order", cmd_star);
  two(st, "F", "G");
  st->add_option("--order", o.order, "Truncation order N (default 2)");
  two(verb("poisson", "Poisson bracket {F,G}", cmd_poisson), "F", "G");

  auto* der = verb("derive", "Apply a classified derivation", cmd_derive);
  der->add_option("U", o.a)->required();
  der->add_option("--algebra", o.algebra, "d1, s or d (inferred from U)");
  der->add_option("--Y", o.y, "Generator: field (d1), symbol Q (s) or operator Delta (d)");
  der->add_option("--kappa", o.kappa, "Rational kappa");
  der->add_option("--lambda", o.lambda, "Rational lambda (d1)");
  der->add_option("--omega", o.omega, "Closed form [w1, ..., wn]");

  auto* aut = verb("automorph", "Apply an automorphism of first-order operators", cmd_automorph);
  aut->add_option("U", o.a)->required();
  aut->add_option("--phi", o.phi, "Affine map [p1, ..., pn]");
  aut->add_option("--K", o.k_factor, "Nonzero rational K");
  aut->add_option("--lambda", o.lambda, "Rational Lambda");
  aut->add_option("--omega", o.omega, "Closed form [w1, ..., wn]");

  auto* fl = verb("flow", "Time-t flow of an affine field", cmd_flow);
  fl->add_option("--Y", o.y, "Affine vector field")->required();
  fl->add_option("--t", o.t, "Time");

  auto* op = verb("one-param", "One-parameter group of a derivation of D1", cmd_one_param);
  op->add_option("--Y", o.y, "Affine vector field");
  op->add_option("--kappa", o.kappa, "Rational kappa");
  op->add_option("--lambda", o.lambda, "Rational lambda");
  op->add_option("--omega", o.omega, "Closed form [w1, ..., wn]");
  op->add_option("--t", o.t, "Time");
  op->add_option("--apply", o.apply, "First-order operator u")->required();

  auto* dc = verb("div-check", "Divergence identities of flows", cmd_div_check);
  dc->add_option("--Y", o.y, "Affine vector field")->required();
  dc->add_option("--t", o.t, "Time for Y");
  dc->add_option("--Z", o.z, "Second field: check the cocycle of the two flows");
  dc->add_option("--s", o.s, "Time for Z")->default_val("1");

  auto* bu = verb("bundle", "Operators on line bundles", cmd_bundle);
  bu->add_option("--model", o.model, "moebius, circle or rn");
  bu->add_option("--op", o.op, "Operator")->required();
  bu->add_option("--apply", o.apply, "Section to apply the operator to");

  auto* eq = verb("equivariant", "Solve for the projectively equivariant symbol map", cmd_equivariant);
  eq->add_option("--n", o.n, "Dimension (1 or 2)");
  eq->add_option("--k", o.k, "Order (0 to 4)");
  eq->add_option("--lambda", o.lambda, "Density weight");
  eq->add_option("--slice", o.slice, "Coefficient degree bound of the test slice (default k+2)");

  auto* ve = verb("verify", "Run a named invariant suite, or all", cmd_verify);
  ve->add_option("SUITE", o.a, "Suite name or all")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitParse;
  }
  try {
    return action(o, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const DimensionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kExitPrecondition;
  }
}

}  // namespace qpa
