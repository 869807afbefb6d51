#include "qpa/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "qpa/equivariance.hpp"
#include "qpa/errors.hpp"
#include "qpa/flows.hpp"
#include "qpa/linebundle.hpp"
#include "qpa/parse.hpp"
#include "qpa/quantize.hpp"
#include "qpa/random.hpp"

namespace qpa {

namespace {

class Suite {
 public:
  explicit Suite(SuiteResult& r) : r_(r) {}

  bool check(bool ok, const std::function<std::string()>& why) {
    ++r_.checks;
    if (!ok && r_.passed) {
      r_.passed = false;
      r_.detail = why();
    }
    return ok;
  }
  bool failed() const { return !r_.passed; }
  void note(const std::string& s) { r_.summary += (r_.summary.empty() ? "" : "; ") + s; }

 private:
  SuiteResult& r_;
};

std::string pair_text(const std::string& a, const std::string& b) { return "u = " + a + ", v = " + b; }

std::string sci(double v) {
  std::ostringstream os;
  os.precision(2);
  os << std::scientific << v;
  return os.str();
}

void theorem3(Suite& s, Rng& rng) {
  const int pairs = 200;
  for (int i = 0; i < pairs; ++i) {
    const int n = rng.uniform(1, 2);
    const int p = rng.uniform(0, 3), q = rng.uniform(0, 3);
    const DiffOp a = random_diffop_of_order(rng, n, p, 2, 3), b = random_diffop_of_order(rng, n, q, 2, 3);
    const SymbolPoly sa = principal_symbol(a), sb = principal_symbol(b);
    s.check(symbol_k(compose(a, b), p + q) == sa * sb,
            [&] { return "product of symbols: " + pair_text(a.to_string(), b.to_string()); });
    const DiffOp c = commutator(a, b);
    if (p + q == 0) {
      s.check(c.is_zero(), [&] { return "functions commute: " + pair_text(a.to_string(), b.to_string()); });
      continue;
    }
    s.check(c.order() <= p + q - 1 && symbol_k(c, p + q - 1) == poisson_bracket(sa, sb),
            [&] { return "bracket of symbols: " + pair_text(a.to_string(), b.to_string()); });
  }
  s.note(std::to_string(pairs) + " operator pairs, n <= 2, order <= 3");
}

void normal_order(Suite& s, Rng& rng) {
  const int values = 200;
  for (int i = 0; i < values; ++i) {
    const int n = rng.uniform(1, 2);
    const DiffOp d = random_diffop(rng, n, 3, 3, 4);
    s.check(q_affine(sigma_aff(d)) == d, [&] { return "q_affine(sigma_aff(D)) != D for D = " + d.to_string(); });
    const SymbolPoly p = random_symbol(rng, n, 3, 3, 4);
    s.check(sigma_aff(q_affine(p)) == p, [&] { return "sigma_aff(q_affine(P)) != P for P = " + p.to_string(); });
  }
  s.note(std::to_string(values) + " operators and " + std::to_string(values) + " symbols");
}

void star_suite(Suite& s, Rng& rng) {
  const int pairs = 100, order = 3;
  for (int i = 0; i < pairs; ++i) {
    const int n = rng.uniform(1, 2);
    const SymbolPoly f = random_symbol(rng, n, 2, 2, 3), g = random_symbol(rng, n, 2, 2, 3),
                     h = random_symbol(rng, n, 2, 2, 2);
    const HSeries fg = star(f, g, order);
    s.check(fg == star_by_composition(f, g, order),
            [&] { return "closed form vs composition: " + pair_text(f.to_string(), g.to_string()); });
    s.check(star(fg, as_series(h, order)) == star(as_series(f, order), star(g, h, order)),
            [&] { return "associativity: F = " + f.to_string() + ", G = " + g.to_string() + ", H = " + h.to_string(); });
    s.check(fg[0] == f * g, [&] { return "classical limit: " + pair_text(f.to_string(), g.to_string()); });
    s.check(fg[1] - star(g, f, order)[1] == poisson_bracket(f, g),
            [&] { return "hbar^1 commutator: " + pair_text(f.to_string(), g.to_string()); });
  }
  s.note(std::to_string(pairs) + " triples, truncation order " + std::to_string(order));
}

void derivations_suite(Suite& s, Rng& rng) {
  const int tuples = 10, pairs = 200;
  for (int t = 0; t < tuples && !s.failed(); ++t) {
    const int n = rng.uniform(1, 2);
    const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(t);
    const Deriv1Params p = random_deriv1_params(rng, n);
    const auto r1 = check_derivation(
        std::function<FirstOrderOp(const FirstOrderOp&)>([&](const FirstOrderOp& u) { return deriv_d1(p, u); }), n,
        pairs, seed);
    s.check(r1.passed, [&] { return "deriv_d1 Leibniz: " + pair_text(r1.u, r1.v) + ": " + r1.lhs + " vs " + r1.rhs; });

    const SymbolPoly q = random_symbol(rng, n, 2, 2, 3);
    const Rat kappa = rng.small_rat_or_zero();
    const ClosedOneForm w = random_closed_form(rng, n, 1, 2);
    const auto r2 = check_derivation(
        std::function<SymbolPoly(const SymbolPoly&)>([&](const SymbolPoly& u) { return deriv_s(q, kappa, w, u); }), n,
        pairs, seed);
    s.check(r2.passed, [&] { return "deriv_s Leibniz: " + pair_text(r2.u, r2.v) + ": " + r2.lhs + " vs " + r2.rhs; });

    const DiffOp delta = random_diffop(rng, n, 2, 2, 3);
    const auto r3 = check_derivation(
        std::function<DiffOp(const DiffOp&)>([&](const DiffOp& u) { return deriv_d(delta, w, u); }), n, pairs, seed);
    s.check(r3.passed, [&] { return "deriv_d Leibniz: " + pair_text(r3.u, r3.v) + ": " + r3.lhs + " vs " + r3.rhs; });
  }
  for (int i = 0; i < 50; ++i) {
    const int n = rng.uniform(1, 2);
    const Poly h = random_poly(rng, n, 3, 3);
    const ClosedOneForm w = random_closed_form(rng, n, 1, 2);
    const ClosedOneForm wh = w + ClosedOneForm::exact(h);
    const SymbolPoly q = random_symbol(rng, n, 2, 2, 3), p = random_symbol(rng, n, 2, 3, 3);
    const Rat kappa = rng.small_rat_or_zero();
    s.check(deriv_s(q, kappa, w, p) == deriv_s(q + SymbolPoly::from_function(h), kappa, wh, p),
            [&] { return "gauge (Q,w) ~ (Q+h,w+dh) with h = " + h.to_string(); });
    const DiffOp delta = random_diffop(rng, n, 2, 2, 3), d = random_diffop(rng, n, 3, 2, 3);
    s.check(deriv_d(delta, w, d) == deriv_d(delta + DiffOp::multiplication(h), wh, d),
            [&] { return "gauge (Delta,w) ~ (Delta+h,w+dh) with h = " + h.to_string(); });
    const int k = rng.uniform(1, 4);
    const DiffOp dk = random_diffop_of_order(rng, n, k, 2, 3);
    const DiffOp l = omega_bar(w, dk);
    s.check(l.order() <= k - 1 && symbol_k(l, k - 1) == vertical_lift(w, principal_symbol(dk)),
            [&] { return "omega_bar weight -1 fails on " + dk.to_string(); });
  }
  // Deg does not extend: D1 = d1^2, D2 = x1^2.
  const DiffOp d1 = compose(DiffOp::partial(1, 0), DiffOp::partial(1, 0));
  const DiffOp d2 = DiffOp::multiplication(Poly::variable(1, 0).pow(2));
  const DiffOp lhs = deg_via_sigma_aff(commutator(d1, d2));
  const DiffOp rhs = commutator(deg_via_sigma_aff(d1), d2) + commutator(d1, deg_via_sigma_aff(d2));
  s.check(lhs == DiffOp::identity(1) * Rat(-2) && rhs.is_zero() && lhs != rhs,
          [&] { return "stored Deg counterexample no longer separates: " + lhs.to_string() + " vs " + rhs.to_string(); });
  s.note(std::to_string(tuples) + " parameter tuples x " + std::to_string(pairs) +
         " pairs per algebra; Deg counterexample D1 = d1^2, D2 = x1^2: " + lhs.to_string() + " vs " +
         (rhs.is_zero() ? "0" : rhs.to_string()));
}

std::vector<FirstOrderOp> d1_probes(int n) {
  std::vector<FirstOrderOp> out{FirstOrderOp::function(Poly::constant(n, 1))};
  for (int i = 0; i < n; ++i) {
    out.push_back(FirstOrderOp::function(Poly::variable(n, i)));
    out.push_back(FirstOrderOp::field(VectorField::partial(n, i)));
    for (int j = 0; j < n; ++j) out.push_back(FirstOrderOp::field(Poly::variable(n, i) * VectorField::partial(n, j)));
  }
  return out;
}

void one_param_suite(Suite& s, Rng& rng) {
  const std::vector<Rat> exact_grid{Rat(-1), Rat(-1, 2), Rat(0), Rat(1, 3), Rat(1)};
  const std::vector<Rat> num_grid{Rat(-1, 4), Rat(-1, 8), Rat(0), Rat(1, 8), Rat(1, 4)};
  double worst_group = 0, worst_bracket = 0, worst_order = 1e9;
  int grid_points = 0;
  for (int k = 0; k < 3; ++k) {
    const int n = k == 0 ? 1 : 2;
    const Deriv1Params p{random_nilpotent_field(rng, n).to_field(), Rat(0), rng.small_rat_or_zero(),
                         random_closed_form(rng, n, 1, 2)};
    const FirstOrderOp u = random_first_order(rng, n);
    s.check(one_param_group(p, Rat(0), u, Mode::Exact) == u, [&] { return "Phi_0 != id on " + u.to_string(); });
    for (const Rat& t : exact_grid)
      for (const Rat& w : exact_grid) {
        ++grid_points;
        s.check(one_param_group(p, t, one_param_group(p, w, u, Mode::Exact), Mode::Exact) ==
                    one_param_group(p, t + w, u, Mode::Exact),
                [&] { return "exact group law at t = " + t.get_str() + ", s = " + w.get_str() + " on " + u.to_string(); });
      }
    const auto probes = d1_probes(n);
    for (const auto& a : probes)
      for (const auto& b : probes)
        s.check(one_param_group(p, Rat(1, 2), bracket(a, b), Mode::Exact) ==
                    bracket(one_param_group(p, Rat(1, 2), a, Mode::Exact), one_param_group(p, Rat(1, 2), b, Mode::Exact)),
                [&] { return "exact bracket preservation: " + pair_text(a.to_string(), b.to_string()); });
  }
  for (int k = 0; k < 2; ++k) {
    const int n = k + 1;
    const Deriv1Params p{random_affine_field(rng, n).to_field(), Rat(1 + k, 4), rng.small_rat_or_zero(),
                         random_closed_form(rng, n, 1, 1)};
    const FirstOrderOp u = random_first_order(rng, n);
    s.check(one_param_group(p, Rat(0), u, Mode::Numeric) == u, [&] { return "numeric Phi_0 != id"; });
    for (const Rat& t : num_grid)
      for (const Rat& w : num_grid) {
        ++grid_points;
        const double r = probe_distance(one_param_group(p, t, one_param_group(p, w, u, Mode::Numeric), Mode::Numeric),
                                        one_param_group(p, t + w, u, Mode::Numeric));
        worst_group = std::max(worst_group, r);
        s.check(r < 1e-9, [&] { return "numeric group law residual " + sci(r) + " at t = " + t.get_str() + ", s = " + w.get_str(); });
      }
    const auto probes = d1_probes(n);
    for (std::size_t i = 0; i < probes.size(); ++i)
      for (std::size_t j = i + 1; j < probes.size(); ++j) {
        const Rat t(1, 4);
        const double r = probe_distance(one_param_group(p, t, bracket(probes[i], probes[j]), Mode::Numeric),
                                        bracket(one_param_group(p, t, probes[i], Mode::Numeric),
                                                one_param_group(p, t, probes[j], Mode::Numeric)));
        worst_bracket = std::max(worst_bracket, r);
        s.check(r < 1e-9, [&] { return "numeric bracket residual " + sci(r) + " on " + pair_text(probes[i].to_string(), probes[j].to_string()); });
      }
    const auto g = generator_check(p, u, Rat(1, 64), Mode::Numeric);
    worst_order = std::min(worst_order, g.order);
    s.check(g.passed && g.order >= 1.9, [&] { return "generator convergence order " + std::to_string(g.order); });
  }
  s.note(std::to_string(grid_points) + " (t,s) grid points; numeric group residual " + sci(worst_group) +
         ", bracket residual " + sci(worst_bracket) + ", generator order " + std::to_string(worst_order).substr(0, 4));
}

void cocycle_suite(Suite& s, Rng& rng) {
  double worst = 0;
  const int pairs = 20;
  const int n2 = 2;
  const AffineField s1 = AffineField::from_field(Poly::variable(n2, 0) * VectorField::partial(n2, 1));
  const AffineField s2 = AffineField::from_field(Poly::variable(n2, 1) * VectorField::partial(n2, 0));
  for (int i = 0; i < pairs; ++i) {
    const int n = i < 4 ? 2 : rng.uniform(1, 3);
    // The first pairs are the non-commuting shears x1 d2 and x2 d1.
    const AffineField a = i < 4 ? s1 : random_nilpotent_field(rng, n);
    const AffineField b = i < 4 ? s2 : random_nilpotent_field(rng, n);
    const Rat t = rng.small_rat(), u = rng.small_rat();
    const auto re = div_cocycle_check(flow(a, t, Mode::Exact), flow(b, u, Mode::Exact));
    s.check(re.passed && re.residual == 0.0, [&] { return "exact cocycle: " + re.lhs + " vs " + re.rhs; });
    const auto r3 = div3_check(a, t, Mode::Exact);
    s.check(r3.passed && r3.residual == 0.0, [&] { return "exact div3: " + r3.lhs + " vs " + r3.rhs; });

    const AffineField na = i < 4 ? s1 : random_affine_field(rng, n);
    const AffineField nb = i < 4 ? s2 : random_affine_field(rng, n);
    const Rat tn = from_double(rng.uniform_real(-1, 1)), un = from_double(rng.uniform_real(-1, 1));
    const auto rn = div_cocycle_check(flow(na, tn, Mode::Numeric), flow(nb, un, Mode::Numeric));
    worst = std::max(worst, rn.residual);
    s.check(rn.passed && rn.residual < 1e-9, [&] { return "numeric cocycle residual " + sci(rn.residual); });
    const auto r3n = div3_check(na, tn, Mode::Numeric);
    worst = std::max(worst, r3n.residual);
    s.check(r3n.passed && r3n.residual < 1e-9, [&] { return "numeric div3 residual " + sci(r3n.residual); });
  }
  s.note(std::to_string(pairs) + " flow pairs per mode including shears x1*d2, x2*d1; numeric residual " + sci(worst));
}

void linebundle_suite(Suite& s, Rng& rng) {
  const BundleModel mob = BundleModel::moebius_s1();
  const int pairs = 100;
  for (int i = 0; i < pairs; ++i) {
    const BundleOp d = BundleOp::of(mob, random_circle_op(rng, 2)), e = BundleOp::of(mob, random_circle_op(rng, 2));
    const FrameChoice f{{rng.uniform(0, 1) ? 1 : -1, rng.uniform(0, 1) ? 1 : -1}};
    s.check(globalize_iso(mob, f, commutator(d, e)) == commutator(globalize_iso(mob, f, d), globalize_iso(mob, f, e)),
            [&] { return "globalize_iso bracket: " + pair_text(d.to_string(), e.to_string()); });
    s.check(globalize_iso(mob, f, d) == globalize_iso(mob, f.flipped(), d),
            [&] { return "frame choice dependence on " + d.to_string(); });
    for (int m = 0; m < 2; ++m) {
      const int ord = d.order();
      if (ord < 0) continue;
      const BundleOp scaled = std::get<BundleOp>(gauge_transform(d, TrigPoly::constant(Rat(m ? -1 : 3))));
      s.check(symbol_bundle(scaled, ord) == symbol_bundle(d, ord), [&] { return "constant gauge changes symbol of " + d.to_string(); });
    }
  }
  for (int i = 0; i < 20; ++i) {
    const int n = rng.uniform(1, 2);
    const BundleOp d = BundleOp::of(BundleModel::trivial_rn(n), random_diffop_of_order(rng, n, rng.uniform(1, 3), 2, 3));
    const Poly psi = Poly::constant(n, rng.uniform(1, 3)) + Poly::variable(n, 0).pow(2);
    const GaugedOp g = std::get<GaugedOp>(gauge_transform(d, psi));
    s.check(gauge_symbol_invariant(g, d.order()), [&] { return "gauge symbol invariance on R^n for " + d.to_string(); });
    const BundleOp c = BundleOp::of(mob, CircleOp::term(TrigPoly::cos(Rat(1)), 1 + i % 2) + random_circle_op(rng, i % 2));
    const TrigPoly tpsi = TrigPoly::constant(Rat(3)) + TrigPoly::sin(Rat(1)) - TrigPoly::cos(Rat(2), Rat(1, 2));
    const GaugedOp gc = std::get<GaugedOp>(gauge_transform(c, tpsi));
    s.check(gauge_symbol_invariant(gc, c.order()), [&] { return "gauge symbol invariance on the band for " + c.to_string(); });
  }
  const FrameChoice f = FrameChoice::uniform(mob);
  for (int i = 0; i < 10; ++i) {
    const BundleOp x = BundleOp::of(mob, CircleOp::term(random_trig(rng, Parity::Periodic, 2, 2), 1));
    const auto rep = check_derivation_generic<BundleOp>(
        [&](const BundleOp& u) { return deriv_cx(x, f, u); },
        [](const BundleOp& u, const BundleOp& v) { return commutator(u, v); },
        [&](Rng& r) { return BundleOp::of(mob, random_circle_op(r, 2)); }, 20, 500 + static_cast<std::uint64_t>(i),
        [](const BundleOp& u) { return u.to_string(); });
    s.check(rep.passed, [&] { return "deriv_cx Leibniz: " + pair_text(rep.u, rep.v); });
  }
  const int ops = 100;
  for (int i = 0; i < ops; ++i) {
    const BundleOp d = BundleOp::of(mob, random_circle_op(rng, 3));
    s.check(bundle_order(d) == d.order(), [&] { return "bundle_order mismatch on " + d.to_string(); });
    const int n = rng.uniform(1, 2);
    const BundleOp e = BundleOp::of(BundleModel::trivial_rn(n), random_diffop(rng, n, 3, 2, 3));
    s.check(bundle_order(e) == e.order(), [&] { return "bundle_order mismatch on " + e.to_string(); });
  }
  s.note(std::to_string(pairs) + " Moebius operator pairs; " + std::to_string(2 * ops) + " operators for bundle_order");
}

void equivariance_suite(Suite& s, Rng& rng) {
  const auto s0 = solve_equivariant_symbol(1, 1, DensityWeight{Rat(0)});
  s.check(s0.status == SolveStatus::Unique && s0.coeff(1, 1) == 0,
          [&] { return "lambda = 0: c = " + s0.coeff(1, 1).get_str() + " (" + to_string(s0.status) + ")"; });
  for (int i = 0; i < 5; ++i) {
    const Rat lam = rng.small_rat();
    const auto sol = solve_equivariant_symbol(1, 1, DensityWeight{lam});
    s.check(sol.status == SolveStatus::Unique && sol.coeff(1, 1) == lam,
            [&] { return "lambda = " + lam.get_str() + ": c = " + sol.coeff(1, 1).get_str(); });
    // Hand-derived map Q(h xi) = h d + lambda h'.
    EquivariantSolution hand = EquivariantSolution::affine(1, 1, DensityWeight{lam});
    hand.c[1][1] = lam;
    s.check(verify_intertwining(hand, 10, 700 + static_cast<std::uint64_t>(i)).passed,
            [&] { return "hand-derived map fails at lambda = " + lam.get_str(); });
    const Poly h = random_poly(rng, 1, 3, 3);
    s.check(quantize_sl(sol, SymbolPoly::from_coefficient(h, MultiIndex{1})) ==
                DiffOp::term(h, MultiIndex{1}) + DiffOp::multiplication(h.diff(0) * lam),
            [&] { return "Q(h xi) != h d + lambda h' for h = " + h.to_string(); });
  }
  int solved = 0;
  auto solved_passes = [&](int n, int k, const Rat& lam) {
    const auto sol = solve_equivariant_symbol(n, k, DensityWeight{lam});
    ++solved;
    s.check(sol.status == SolveStatus::Unique, [&] {
      return "n = " + std::to_string(n) + ", k = " + std::to_string(k) + ", lambda = " + lam.get_str() + ": " +
             to_string(sol.status);
    });
    const auto rep = verify_intertwining(sol, 6, 800 + static_cast<std::uint64_t>(solved));
    s.check(rep.passed, [&] { return "solved map fails under " + rep.generator + " on " + rep.op; });
  };
  for (int k = 0; k <= 3; ++k)
    for (const Rat& lam : {Rat(0), Rat(1), Rat(-1, 3), Rat(1, 2)}) solved_passes(1, k, lam);
  for (int k = 0; k <= 2; ++k)
    for (const Rat& lam : {Rat(0), Rat(1, 3), Rat(2)}) solved_passes(2, k, lam);
  for (int n = 1; n <= 2; ++n) {
    const auto aff = EquivariantSolution::affine(n, 3, DensityWeight{rng.small_rat()});
    const auto rep = verify_intertwining(aff, 10, 900, GeneratorSet::Affine);
    s.check(rep.passed, [&] { return "sigma_aff fails affine intertwining under " + rep.generator + " on " + rep.op; });
  }
  const auto aff = EquivariantSolution::affine(1, 1, DensityWeight{Rat(1)});
  const auto rep = verify_intertwining(aff, 20, 901, GeneratorSet::Full);
  s.check(!rep.passed, [] { return "sigma_aff unexpectedly intertwines sl(2) at lambda = 1"; });
  s.note(std::to_string(solved) + " solved maps verified; sigma_aff counterexample at lambda = 1: X = " + rep.generator +
         ", D = " + rep.op + ", sigma(L_X D) = " + rep.lhs + ", L_X sigma(D) = " + rep.rhs);
}

template <class T>
bool round_trips(const T& v, int n) {
  const Value back = evaluate(parse(v.to_string()), kind_of(Value(v)), n);
  return std::holds_alternative<T>(back) && std::get<T>(back) == v;
}

void parse_suite(Suite& s, Rng& rng) {
  const int rounds = 110;
  int values = 0;
  for (int i = 0; i < rounds; ++i) {
    const int n = rng.uniform(1, 3);
    const Poly p = random_poly(rng, n, 3, 4);
    const SymbolPoly q = random_symbol(rng, n, 2, 3, 4);
    const DiffOp d = random_diffop(rng, n, 3, 2, 4);
    const TrigPoly t = random_trig(rng, rng.uniform(0, 1) ? Parity::Periodic : Parity::Antiperiodic, 7, 4);
    const CircleOp c = random_circle_op(rng, 3);
    s.check(round_trips(p, n), [&] { return "poly: " + p.to_string(); });
    s.check(round_trips(q, n), [&] { return "symbol: " + q.to_string(); });
    s.check(round_trips(d, n), [&] { return "operator: " + d.to_string(); });
    s.check(round_trips(t, 0), [&] { return "trig: " + t.to_string(); });
    s.check(round_trips(c, 0), [&] { return "circle operator: " + c.to_string(); });
    values += 5;
  }
  s.note(std::to_string(values) + " printed values parsed back");
}

using SuiteFn = void (*)(Suite&, Rng&);

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> r{
      {"theorem3", theorem3},         {"normal-order", normal_order}, {"star", star_suite},
      {"derivations", derivations_suite}, {"one-param", one_param_suite}, {"cocycle", cocycle_suite},
      {"linebundle", linebundle_suite}, {"equivariance", equivariance_suite}, {"parse", parse_suite}};
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"theorem3", "normal-order", "star",         "derivations", "one-param",
                                              "cocycle",  "linebundle",   "equivariance", "parse"};
  return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw PreconditionError("unknown suite '" + name + "'");
  SuiteResult r;
  r.name = name;
  Rng rng(seed);
  Suite s(r);
  const auto start = std::chrono::steady_clock::now();
  try {
    it->second(s, rng);
  } catch (const Error& e) {
    r.passed = false;
    if (r.detail.empty()) r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace qpa
