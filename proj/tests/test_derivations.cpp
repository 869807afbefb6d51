#include "doctest.h"
#include "helpers.hpp"
#include "qpa/derivations.hpp"
#include "qpa/errors.hpp"
#include "qpa/quantize.hpp"

using namespace qpa;
using namespace testing_helpers;

namespace {

VectorField field1(const Poly& p) { return VectorField(std::vector<Poly>{p}); }

// Probe basis {1, xᵢ, ∂ᵢ, xᵢ∂ⱼ} of D¹.
std::vector<FirstOrderOp> d1_probes(int n) {
  std::vector<FirstOrderOp> out{FirstOrderOp::function(C(n, 1))};
  for (int i = 0; i < n; ++i) {
    out.push_back(FirstOrderOp::function(X(n, i)));
    out.push_back(FirstOrderOp::field(VectorField::partial(n, i)));
    for (int j = 0; j < n; ++j) out.push_back(FirstOrderOp::field(X(n, i) * VectorField::partial(n, j)));
  }
  return out;
}

}  // namespace

TEST_CASE("divergence examples and cocycle identity") {
  CHECK(divergence(field1(X(1, 0))) == C(1, 1));
  CHECK(divergence(field1(X(1, 0).pow(2))) == X(1, 0) * R(2));
  CHECK(divergence(VectorField::partial(1, 0)).is_zero());
  Rng rng(11);
  for (int s = 0; s < 30; ++s) {
    int n = rng.uniform(1, 3);
    auto x = random_field(rng, n, 2, 3), z = random_field(rng, n, 2, 3);
    CHECK(divergence(bracket(x, z)) == x.apply(divergence(z)) - z.apply(divergence(x)));
  }
}

TEST_CASE("first-order operators agree with DiffOp") {
  Rng rng(12);
  for (int s = 0; s < 30; ++s) {
    int n = rng.uniform(1, 2);
    auto u = random_first_order(rng, n), v = random_first_order(rng, n);
    CHECK(bracket(u, v).to_diffop() == commutator(u.to_diffop(), v.to_diffop()));
    CHECK(FirstOrderOp::from_diffop(u.to_diffop()) == u);
  }
  CHECK_THROWS_AS(FirstOrderOp::from_diffop(compose(D(1, 0), D(1, 0))), PreconditionError);
}

TEST_CASE("deriv_d1 examples") {
  const int n = 1;
  FirstOrderOp u{X(n, 0).pow(3) + C(n, 2), field1(X(n, 0))};
  Deriv1Params kappa = Deriv1Params::zero(n);
  kappa.kappa = 1;
  CHECK(deriv_d1(kappa, u) == FirstOrderOp::function(u.f));

  Deriv1Params lam = Deriv1Params::zero(n);
  lam.lambda = 1;
  CHECK(deriv_d1(lam, FirstOrderOp::field(field1(X(n, 0).pow(2)))) == FirstOrderOp::function(X(n, 0) * R(2)));

  Deriv1Params y = Deriv1Params::zero(n);
  y.y = VectorField::partial(n, 0);
  CHECK(deriv_d1(y, FirstOrderOp::function(X(n, 0))) == FirstOrderOp::function(C(n, 1)));

  CHECK_THROWS_AS(deriv_d1(Deriv1Params::zero(2), u), DimensionError);
}

TEST_CASE("deriv_s examples") {
  const int n = 1;
  ClosedOneForm zero(n);
  CHECK(deriv_s(SC(n, 0), R(1), zero, XI(n, 0) * XI(n, 0)) == SC(n, -1) * XI(n, 0) * XI(n, 0));
  CHECK(deriv_s(XI(n, 0), R(0), zero, SX(n, 0)) == SC(n, 1));
  CHECK(deriv_s(SC(n, 0), R(0), ClosedOneForm::exact(X(n, 0)), XI(n, 0) * XI(n, 0)) ==
        SC(n, 2) * XI(n, 0));
}

TEST_CASE("deriv_d examples") {
  ClosedOneForm dx1 = ClosedOneForm::exact(X(1, 0));
  CHECK(deriv_d(D(1, 0), ClosedOneForm(1), M(X(1, 0))) == Id(1));
  CHECK(deriv_d(DiffOp(1), dx1, compose(D(1, 0), D(1, 0))) == D(1, 0) * R(2));
  CHECK(deriv_d(DiffOp(2), ClosedOneForm::exact(X(2, 0)), M(X(2, 1))).is_zero());
}

TEST_CASE("automorphism_d1 examples") {
  const int n = 1;
  FirstOrderOp u{X(n, 0) + C(n, 3), field1(X(n, 0).pow(2))};
  AutoParams k2{AffineMap::identity(n), R(2), R(0), ClosedOneForm(n)};
  CHECK(automorphism_d1(k2, u) == FirstOrderOp(u.f * R(2), u.x));

  AutoParams l1{AffineMap::identity(n), R(1), R(1), ClosedOneForm(n)};
  FirstOrderOp v = FirstOrderOp::field(field1(X(n, 0).pow(2)));
  CHECK(automorphism_d1(l1, v) == FirstOrderOp(X(n, 0) * R(2), v.x));

  const Rat t = R(3, 2);
  AutoParams tr{AffineMap::translation({t}), R(1), R(0), ClosedOneForm(n)};
  FirstOrderOp img = automorphism_d1(tr, FirstOrderOp::function(X(n, 0)));
  CHECK(img == FirstOrderOp::function(X(n, 0) - C(n, t)));
  // Pushed-forward coordinate function composed with φ gives back x₁.
  CHECK(tr.phi.pullback(img.f) == X(n, 0));

  AffineMap singular({{R(0)}}, {R(0)});
  CHECK_THROWS_AS(automorphism_d1({singular, R(1), R(0), ClosedOneForm(n)}, u), PreconditionError);
  CHECK_THROWS_AS(automorphism_d1({AffineMap::identity(n), R(0), R(0), ClosedOneForm(n)}, u),
                  PreconditionError);
}

TEST_CASE("affine map algebra") {
  Rng rng(13);
  for (int s = 0; s < 20; ++s) {
    int n = rng.uniform(1, 3);
    AffineMap a = random_affine_map(rng, n), b = random_affine_map(rng, n);
    CHECK(a.compose(a.inverse()) == AffineMap::identity(n));
    CHECK(a.compose(b).determinant() == a.determinant() * b.determinant());
    auto f = random_poly(rng, n, 3, 4);
    CHECK(a.compose(b).pullback(f) == b.pullback(a.pullback(f)));
    auto x = random_field(rng, n, 2, 2);
    CHECK(a.compose(b).push_forward(x) == a.push_forward(b.push_forward(x)));
    // (φ_*X)(f) = (X(f∘φ)) ∘ φ⁻¹
    CHECK(a.push_forward(x).apply(f) == a.inverse().pullback(x.apply(a.pullback(f))));
  }
}

TEST_CASE("classified derivations satisfy Leibniz exactly") {
  Rng rng(21);
  for (int s = 0; s < 6; ++s) {
    int n = rng.uniform(1, 2);
    Deriv1Params p = random_deriv1_params(rng, n);
    auto r1 = check_derivation(
        std::function<FirstOrderOp(const FirstOrderOp&)>([&](const FirstOrderOp& u) { return deriv_d1(p, u); }),
        n, 100, 100 + static_cast<std::uint64_t>(s));
    CHECK(r1.passed);
    CHECK(r1.samples == 100);

    auto q = random_symbol(rng, n, 2, 2, 3);
    Rat kappa = rng.small_rat_or_zero();
    auto w = random_closed_form(rng, n, 1, 2);
    auto r2 = check_derivation(
        std::function<SymbolPoly(const SymbolPoly&)>([&](const SymbolPoly& u) { return deriv_s(q, kappa, w, u); }),
        n, 40, 200 + static_cast<std::uint64_t>(s));
    CHECK(r2.passed);

    auto delta = random_diffop(rng, n, 2, 2, 3);
    auto r3 = check_derivation(
        std::function<DiffOp(const DiffOp&)>([&](const DiffOp& u) { return deriv_d(delta, w, u); }), n, 20,
        300 + static_cast<std::uint64_t>(s));
    CHECK(r3.passed);
  }
}

TEST_CASE("divergence alone on D1 is a derivation") {
  Deriv1Params p = Deriv1Params::zero(2);
  p.lambda = 1;
  auto r = check_derivation(
      std::function<FirstOrderOp(const FirstOrderOp&)>([&](const FirstOrderOp& u) { return deriv_d1(p, u); }), 2,
      100, 5);
  CHECK(r.passed);
}

TEST_CASE("Deg transported through sigma_aff is not a derivation of D") {
  const int n = 1;
  DiffOp d1 = compose(D(n, 0), D(n, 0)), d2 = M(X(n, 0).pow(2));
  DiffOp lhs = deg_via_sigma_aff(commutator(d1, d2));
  DiffOp rhs = commutator(deg_via_sigma_aff(d1), d2) + commutator(d1, deg_via_sigma_aff(d2));
  CHECK(lhs == Id(n) * R(-2));
  CHECK(rhs.is_zero());
  auto r = check_derivation(std::function<DiffOp(const DiffOp&)>(deg_via_sigma_aff), n, 50, 1);
  CHECK_FALSE(r.passed);
  CHECK(r.lhs != r.rhs);
  // On symbols the same map is a derivation of the Poisson algebra.
  auto rs = check_derivation(std::function<SymbolPoly(const SymbolPoly&)>(deg_derivation), 2, 50, 1);
  CHECK(rs.passed);
}

TEST_CASE("conjugating the vertical lift through sigma_aff fails Leibniz") {
  const int n = 1;
  ClosedOneForm w(std::vector<Poly>{X(n, 0)});
  auto conj = [&](const DiffOp& d) { return q_affine(vertical_lift(w, sigma_aff(d))); };
  DiffOp d1 = compose(D(n, 0), D(n, 0)), d2 = DiffOp::term(X(n, 0), MultiIndex{1});
  DiffOp lhs = conj(commutator(d1, d2));
  DiffOp rhs = commutator(conj(d1), d2) + commutator(d1, conj(d2));
  CHECK(lhs == DiffOp::term(X(n, 0) * R(4), MultiIndex{1}));
  CHECK(lhs != rhs);
  // The commutator realization agrees with the conjugated map on constant forms.
  ClosedOneForm c = ClosedOneForm::exact(X(n, 0) * R(3));
  Rng rng(4);
  for (int s = 0; s < 20; ++s) {
    auto d = random_diffop(rng, n, 3, 2, 3);
    CHECK(omega_bar(c, d) == q_affine(vertical_lift(c, sigma_aff(d))));
  }
}

TEST_CASE("gauge redundancy of deriv_s and deriv_d") {
  Rng rng(31);
  for (int s = 0; s < 30; ++s) {
    int n = rng.uniform(1, 2);
    auto h = random_poly(rng, n, 3, 3);
    auto w = random_closed_form(rng, n, 1, 2);
    auto wh = w + ClosedOneForm::exact(h);
    auto q = random_symbol(rng, n, 2, 2, 3);
    Rat kappa = rng.small_rat_or_zero();
    auto p = random_symbol(rng, n, 2, 3, 3);
    CHECK(deriv_s(q, kappa, w, p) == deriv_s(q + SymbolPoly::from_function(h), kappa, wh, p));
    auto delta = random_diffop(rng, n, 2, 2, 3);
    auto d = random_diffop(rng, n, 3, 2, 3);
    CHECK(deriv_d(delta, w, d) == deriv_d(delta + M(h), wh, d));
  }
}

TEST_CASE("omega_bar has filtration weight -1") {
  Rng rng(41);
  for (int s = 0; s < 40; ++s) {
    int n = rng.uniform(1, 2);
    int k = rng.uniform(1, 4);
    auto d = random_diffop_of_order(rng, n, k, 2, 3);
    auto w = random_closed_form(rng, n, 1, 2);
    DiffOp l = omega_bar(w, d);
    CHECK(l.order() <= k - 1);
    CHECK(symbol_k(l, k - 1) == vertical_lift(w, principal_symbol(d)));
  }
}

TEST_CASE("derivation parameters are separated by the probe basis") {
  Rng rng(51);
  for (int s = 0; s < 30; ++s) {
    int n = rng.uniform(1, 2);
    Deriv1Params a = random_deriv1_params(rng, n), b = random_deriv1_params(rng, n);
    switch (s % 4) {
      case 0: b = a; b.kappa += 1; break;
      case 1: b = a; b.lambda += R(1, 2); break;
      case 2: b = a; b.omega = a.omega + ClosedOneForm::exact(X(n, 0) * X(n, n - 1)); break;
      default: b = a; b.y[0] += C(n, 1); break;
    }
    bool differs = false;
    for (const auto& u : d1_probes(n)) differs = differs || !(deriv_d1(a, u) == deriv_d1(b, u));
    CHECK(differs);
  }
}

TEST_CASE("automorphisms preserve the D1 bracket") {
  Rng rng(61);
  for (int s = 0; s < 30; ++s) {
    int n = rng.uniform(1, 2);
    AutoParams a{random_affine_map(rng, n), rng.small_rat(), rng.small_rat_or_zero(), random_closed_form(rng, n, 1, 2)};
    auto u = random_first_order(rng, n), v = random_first_order(rng, n);
    CHECK(automorphism_d1(a, bracket(u, v)) == bracket(automorphism_d1(a, u), automorphism_d1(a, v)));
  }
}
