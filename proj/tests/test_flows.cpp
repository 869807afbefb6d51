#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "qpa/errors.hpp"
#include "qpa/flows.hpp"

using namespace qpa;
using namespace testing_helpers;

namespace {

bool is_zero(const FirstOrderOp& u) { return u.f.is_zero() && u.x.is_zero(); }

// exp(tC)u as a power series in the generator. C is nilpotent on the
// relevant finite-dimensional space when Y is nilpotent affine and κ = 0,
// so the series terminates and the result is exact.
FirstOrderOp series(const Deriv1Params& p, const Rat& t, const FirstOrderOp& u, int max_terms = 200) {
  FirstOrderOp sum = u, term = u;
  for (int k = 1; k <= max_terms; ++k) {
    term = deriv_d1(p, term) * (t / k);
    if (is_zero(term)) break;
    sum = sum + term;
    if (k > 30) term = term.rounded();
  }
  return sum;
}

double map_distance(const AffineMap& a, const AffineMap& b) {
  double d = 0;
  for (int i = 0; i < a.dim(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    d = std::max(d, std::abs(to_double(a.offset()[ui] - b.offset()[ui])));
    for (int j = 0; j < a.dim(); ++j)
      d = std::max(d, std::abs(to_double(a.linear()[ui][static_cast<std::size_t>(j)] -
                                         b.linear()[ui][static_cast<std::size_t>(j)])));
  }
  return d;
}

VectorField field(std::vector<Poly> c) { return VectorField(std::move(c)); }

}  // namespace

TEST_CASE("flow examples") {
  const Rat t = R(3, 2);
  FlowMap tr = flow(AffineField::from_field(VectorField::partial(1, 0)), t, Mode::Exact);
  CHECK(tr.map.components()[0] == X(1, 0) + C(1, t));

  FlowMap shear = flow(AffineField::from_field(field({C(2, 0), X(2, 0)})), t, Mode::Exact);
  CHECK(shear.map.components()[0] == X(2, 0));
  CHECK(shear.map.components()[1] == X(2, 1) + X(2, 0) * t);

  FlowMap e = flow(AffineField::from_field(field({X(1, 0)})), R(1), Mode::Numeric);
  CHECK(std::abs(to_double(e.map.linear()[0][0]) - std::exp(1.0)) < 1e-12);
  CHECK(e.map.offset()[0] == 0);

  CHECK_THROWS_AS(flow(AffineField::from_field(field({X(1, 0)})), R(1), Mode::Exact), PreconditionError);
  CHECK_THROWS_AS(AffineField::from_field(field({X(1, 0).pow(2)})), PreconditionError);
  CHECK(AffineField::from_field(field({C(2, 0), X(2, 0)})).nilpotent());
  CHECK_FALSE(AffineField::from_field(field({X(2, 1), X(2, 0)})).nilpotent());
}

TEST_CASE("flow group law") {
  Rng rng(71);
  for (int s = 0; s < 30; ++s) {
    int n = rng.uniform(1, 3);
    AffineField y = random_nilpotent_field(rng, n);
    Rat t = rng.small_rat_or_zero(), u = rng.small_rat_or_zero();
    CHECK(flow(y, t, Mode::Exact).map.compose(flow(y, u, Mode::Exact).map) == flow(y, t + u, Mode::Exact).map);
    CHECK(flow(y, Rat(0), Mode::Exact).map == AffineMap::identity(n));
    CHECK(map_distance(flow(y, t, Mode::Numeric).map, flow(y, t, Mode::Exact).map) < 1e-9);
    // Symbolic time specializes to the fixed-time flow.
    auto comps = symbolic_flow(y);
    auto fixed = flow(y, t, Mode::Exact).map.components();
    for (int i = 0; i < n; ++i) CHECK(comps[static_cast<std::size_t>(i)].eval_var(n, t).resize(n) == fixed[static_cast<std::size_t>(i)]);

    AffineField g = random_affine_field(rng, n);
    double td = rng.uniform_real(-1, 1), ud = rng.uniform_real(-1, 1);
    CHECK(map_distance(flow(g, from_double(td), Mode::Numeric).map.compose(flow(g, from_double(ud), Mode::Numeric).map),
                       flow(g, from_double(td + ud), Mode::Numeric).map) < 1e-9);
  }
}

TEST_CASE("group divergence examples") {
  const Rat t = R(5, 4);
  CHECK(group_divergence(flow(AffineField::from_field(VectorField::partial(1, 0)), t, Mode::Exact)).is_zero());
  Poly d = group_divergence(flow(AffineField::from_field(field({X(1, 0)})), t, Mode::Numeric));
  CHECK(std::abs(to_double(d.constant_term()) - 1.25) < 1e-12);
  CHECK(group_divergence(flow(AffineField::from_field(field({C(2, 0), X(2, 0)})), t, Mode::Exact)).is_zero());
  CHECK_THROWS_AS(group_divergence(AffineMap({{R(2)}}, {R(0)}), Mode::Exact), PreconditionError);
  CHECK_THROWS_AS(group_divergence(AffineMap({{R(0)}}, {R(0)}), Mode::Numeric), PreconditionError);
  CHECK(std::abs(to_double(group_divergence(AffineMap({{R(-2)}}, {R(1)}), Mode::Numeric).constant_term()) -
                 std::log(2.0)) < 1e-15);
}

TEST_CASE("divergence cocycle examples") {
  auto tr = AffineField::from_field(VectorField::partial(2, 0));
  auto r1 = div_cocycle_check(flow(tr, R(1), Mode::Exact), flow(tr, R(-3, 2), Mode::Exact));
  CHECK(r1.passed);
  CHECK(r1.residual == 0.0);

  auto e = AffineField::from_field(field({X(1, 0)}));
  auto r2 = div_cocycle_check(flow(e, R(1, 2), Mode::Numeric), flow(e, R(3, 4), Mode::Numeric));
  CHECK(r2.passed);
  CHECK(r2.residual < 1e-12);

  auto s1 = AffineField::from_field(field({C(2, 0), X(2, 0)}));
  auto s2 = AffineField::from_field(field({X(2, 1), C(2, 0)}));
  auto r3 = div_cocycle_check(flow(s1, R(2, 3), Mode::Numeric), flow(s2, R(-5, 7), Mode::Numeric));
  CHECK(r3.passed);
  CHECK(r3.mode == Mode::Numeric);

  Rng rng(72);
  for (int s = 0; s < 20; ++s) {
    int n = rng.uniform(1, 3);
    auto a = random_affine_field(rng, n), b = random_affine_field(rng, n);
    CHECK(div_cocycle_check(flow(a, from_double(rng.uniform_real(-1, 1)), Mode::Numeric),
                            flow(b, from_double(rng.uniform_real(-1, 1)), Mode::Numeric))
              .passed);
    auto na = random_nilpotent_field(rng, n), nb = random_nilpotent_field(rng, n);
    CHECK(div_cocycle_check(flow(na, rng.small_rat(), Mode::Exact), flow(nb, rng.small_rat(), Mode::Exact)).passed);
  }
}

TEST_CASE("div3 examples") {
  const Rat t = R(7, 3);
  CHECK(div3_check(AffineField::from_field(VectorField::partial(1, 0)), t, Mode::Exact).passed);
  auto r = div3_check(AffineField::from_field(field({X(1, 0)})), t, Mode::Numeric);
  CHECK(r.passed);
  CHECK(r.residual < 1e-12);
  CHECK(div3_check(AffineField::from_field(field({C(2, 0), X(2, 0)})), t, Mode::Exact).passed);
  Rng rng(73);
  for (int s = 0; s < 10; ++s) {
    int n = rng.uniform(1, 3);
    CHECK(div3_check(random_affine_field(rng, n), from_double(rng.uniform_real(-2, 2)), Mode::Numeric).passed);
    CHECK(div3_check(random_nilpotent_field(rng, n), rng.small_rat(), Mode::Exact).passed);
  }
}

TEST_CASE("push-pull identity") {
  Rng rng(74);
  for (int s = 0; s < 20; ++s) {
    int n = rng.uniform(1, 3);
    auto x = random_field(rng, n, 2, 3);
    CHECK(pushpull_check(flow(random_nilpotent_field(rng, n), rng.small_rat(), Mode::Exact), x).passed);
    CHECK(pushpull_check(flow(random_affine_field(rng, n), from_double(rng.uniform_real(-1, 1)), Mode::Numeric), x)
              .passed);
  }
}

TEST_CASE("scaling factors solve their recursions") {
  Rng rng(75);
  for (int s = 0; s < 30; ++s) {
    Rat kappa = rng.small_rat_or_zero(), lambda = rng.small_rat_or_zero();
    Rat t = rng.small_rat_or_zero() / 4, u = rng.small_rat_or_zero() / 4;
    const Mode m = kappa == 0 ? Mode::Exact : Mode::Numeric;
    CHECK(k_factor(kappa, Rat(0), m) == 1);
    CHECK(lambda_factor(kappa, lambda, Rat(0), m) == 0);
    Rat kk = k_factor(kappa, t, m) * k_factor(kappa, u, m) - k_factor(kappa, t + u, m);
    Rat ll = lambda_factor(kappa, lambda, t, m) + k_factor(kappa, t, m) * lambda_factor(kappa, lambda, u, m) -
             lambda_factor(kappa, lambda, t + u, m);
    if (m == Mode::Exact) {
      CHECK(kk == 0);
      CHECK(ll == 0);
    } else {
      CHECK(std::abs(to_double(kk)) < 1e-12);
      CHECK(std::abs(to_double(ll)) < 1e-12);
    }
  }
  CHECK_THROWS_AS(k_factor(R(1), R(1), Mode::Exact), PreconditionError);
}

TEST_CASE("numeric quadrature of polynomial-valued integrands") {
  // ∫₀¹ e^{s} x1 + s² ds = (e-1) x1 + 1/3
  Poly r = integrate_numeric(
      [](double s) { return (X(1, 0) * from_double(std::exp(s)) + C(1, from_double(s * s))).rounded(); }, 0.0, 1.0);
  CHECK(std::abs(to_double(r.coeff(MultiIndex{1})) - (std::exp(1.0) - 1)) < 1e-13);
  CHECK(std::abs(to_double(r.constant_term()) - 1.0 / 3) < 1e-13);
  Poly back = integrate_numeric([](double s) { return C(1, from_double(std::cos(s))); }, 2.0, 0.0);
  CHECK(std::abs(to_double(back.constant_term()) + std::sin(2.0)) < 1e-13);
}

TEST_CASE("one-parameter group examples") {
  const int n = 1;
  FirstOrderOp u{X(n, 0).pow(2) + C(n, 1), field({X(n, 0).pow(3)})};
  const Rat t = R(1, 2);

  Deriv1Params kp = Deriv1Params::zero(n);
  kp.kappa = 2;
  FirstOrderOp a = one_param_group(kp, t, u, Mode::Numeric);
  CHECK(a.x == u.x);
  CHECK(probe_distance(a, FirstOrderOp(u.f * from_double(std::exp(1.0)), u.x)) < 1e-12);

  Deriv1Params lp = Deriv1Params::zero(n);
  lp.lambda = 3;
  CHECK(one_param_group(lp, t, u, Mode::Exact) == FirstOrderOp(u.f + divergence(u.x) * (R(3) * t), u.x));

  Deriv1Params wp = Deriv1Params::zero(n);
  wp.y = VectorField::partial(n, 0);
  wp.omega = ClosedOneForm::exact(X(n, 0));
  FirstOrderOp ex = one_param_group(wp, t, u, Mode::Exact);
  FirstOrderOp nu = one_param_group(wp, t, u, Mode::Numeric);
  CHECK(probe_distance(ex, nu) < 1e-9);
  CHECK(ex == series(wp, t, u));

  CHECK(one_param_group(kp, Rat(0), u, Mode::Numeric) == u);
  Deriv1Params quad = Deriv1Params::zero(n);
  quad.y = field({X(n, 0).pow(2)});
  CHECK_THROWS_AS(one_param_group(quad, t, u, Mode::Numeric), PreconditionError);
  CHECK_THROWS_AS(one_param_group(kp, t, u, Mode::Exact), PreconditionError);
  CHECK(natural_mode(kp) == Mode::Numeric);
  CHECK(natural_mode(wp) == Mode::Exact);
}

TEST_CASE("one-parameter groups agree with the exponential series of the generator") {
  Rng rng(76);
  for (int s = 0; s < 20; ++s) {
    int n = rng.uniform(1, 2);
    Deriv1Params p{random_nilpotent_field(rng, n).to_field(), Rat(0), rng.small_rat_or_zero(),
                   random_closed_form(rng, n, 1, 2)};
    auto u = random_first_order(rng, n);
    Rat t = rng.small_rat();
    CHECK(one_param_group(p, t, u, Mode::Exact) == series(p, t, u));
  }
  for (int s = 0; s < 10; ++s) {
    int n = rng.uniform(1, 2);
    Deriv1Params p{random_affine_field(rng, n).to_field(), rng.small_rat_or_zero() / 4, rng.small_rat_or_zero(),
                   random_closed_form(rng, n, 1, 2)};
    auto u = random_first_order(rng, n);
    Rat t = R(rng.uniform(-3, 3), 8);
    CHECK(probe_distance(one_param_group(p, t, u, Mode::Numeric), series(p, t, u)) < 1e-9);
  }
}

TEST_CASE("one-parameter group law and automorphism property") {
  Rng rng(77);
  for (int s = 0; s < 12; ++s) {
    int n = rng.uniform(1, 2);
    Deriv1Params p{random_nilpotent_field(rng, n).to_field(), Rat(0), rng.small_rat_or_zero(),
                   random_closed_form(rng, n, 1, 2)};
    auto u = random_first_order(rng, n), v = random_first_order(rng, n);
    Rat t = rng.small_rat_or_zero(), w = rng.small_rat_or_zero();
    CHECK(one_param_group(p, t, one_param_group(p, w, u, Mode::Exact), Mode::Exact) ==
          one_param_group(p, t + w, u, Mode::Exact));
    CHECK(one_param_group(p, Rat(0), u, Mode::Exact) == u);
    CHECK(one_param_group(p, t, bracket(u, v), Mode::Exact) ==
          bracket(one_param_group(p, t, u, Mode::Exact), one_param_group(p, t, v, Mode::Exact)));
  }
  for (int s = 0; s < 6; ++s) {
    int n = rng.uniform(1, 2);
    Deriv1Params p{random_affine_field(rng, n).to_field(), rng.small_rat_or_zero() / 4, rng.small_rat_or_zero(),
                   random_closed_form(rng, n, 1, 1)};
    auto u = random_first_order(rng, n), v = random_first_order(rng, n);
    Rat t = R(rng.uniform(-4, 4), 8), w = R(rng.uniform(-4, 4), 8);
    CHECK(probe_distance(one_param_group(p, t, one_param_group(p, w, u, Mode::Numeric), Mode::Numeric),
                         one_param_group(p, t + w, u, Mode::Numeric)) < 1e-9);
    CHECK(probe_distance(one_param_group(p, t, bracket(u, v), Mode::Numeric),
                         bracket(one_param_group(p, t, u, Mode::Numeric), one_param_group(p, t, v, Mode::Numeric))) <
          1e-9);
  }
}

TEST_CASE("generator check") {
  const int n = 1;
  Deriv1Params kp = Deriv1Params::zero(n);
  kp.kappa = 1;
  auto r1 = generator_check(kp, FirstOrderOp::function(X(n, 0) + C(n, 2)), R(1, 64), Mode::Numeric);
  CHECK(r1.passed);
  CHECK(r1.order >= 1.9);

  Deriv1Params lp = Deriv1Params::zero(n);
  lp.lambda = 1;
  CHECK(generator_check(lp, FirstOrderOp::field(field({X(n, 0).pow(2)})), R(1, 64), Mode::Exact).passed);

  Deriv1Params yp = Deriv1Params::zero(n);
  yp.y = VectorField::partial(n, 0);
  CHECK(generator_check(yp, FirstOrderOp::function(X(n, 0)), R(1, 64), Mode::Exact).passed);

  Rng rng(78);
  for (int s = 0; s < 6; ++s) {
    int m = rng.uniform(1, 2);
    Deriv1Params p{random_affine_field(rng, m).to_field(), rng.small_rat_or_zero() / 2, rng.small_rat_or_zero(),
                   random_closed_form(rng, m, 1, 1)};
    auto rep = generator_check(p, random_first_order(rng, m), R(1, 64), Mode::Numeric);
    CHECK(rep.passed);
  }
  CHECK_THROWS_AS(generator_check(kp, FirstOrderOp::function(X(n, 0)), R(0), Mode::Numeric), PreconditionError);
}
