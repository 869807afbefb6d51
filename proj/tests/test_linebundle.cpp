#include "doctest.h"
#include "helpers.hpp"
#include "qpa/derivations.hpp"
#include "qpa/errors.hpp"
#include "qpa/linebundle.hpp"

using namespace qpa;
using namespace testing_helpers;

namespace {

const BundleModel kMoebius = BundleModel::moebius_s1();
const BundleModel kCircle = BundleModel::trivial_s1();

TrigPoly T(const Rat& c) { return TrigPoly::constant(c); }

TrigPoly random_section(Rng& rng, Parity p) { return random_trig(rng, p, 5, 3); }

}  // namespace

TEST_CASE("circle operator composition matches the action on sections") {
  Rng rng(81);
  for (int s = 0; s < 40; ++s) {
    CircleOp d = random_circle_op(rng, 2), e = random_circle_op(rng, 2);
    for (Parity p : {Parity::Periodic, Parity::Antiperiodic}) {
      TrigPoly sec = random_section(rng, p);
      CHECK(compose(d, e).apply(sec) == d.apply(e.apply(sec)));
      CHECK(commutator(d, e).apply(sec) == d.apply(e.apply(sec)) - e.apply(d.apply(sec)));
    }
  }
  CHECK_THROWS_AS(CircleOp::multiplication(TrigPoly::cos(R(1, 2))), ModeMixError);
}

TEST_CASE("bundle_apply examples") {
  BundleOp dd = BundleOp::of(kMoebius, CircleOp::derivative());
  Section s = bundle_apply(dd, Section::of(kMoebius, TrigPoly::cos(R(1, 2))));
  CHECK(s.trig() == TrigPoly::sin(R(1, 2), R(-1, 2)));
  CHECK(s.trig().parity() == Parity::Antiperiodic);

  BundleOp mc = BundleOp::of(kMoebius, CircleOp::multiplication(TrigPoly::cos(R(1))));
  Section t = bundle_apply(mc, Section::of(kMoebius, TrigPoly::sin(R(1, 2))));
  CHECK(t.trig() == TrigPoly::sin(R(3, 2), R(1, 2)) - TrigPoly::sin(R(1, 2), R(1, 2)));

  BundleModel r1 = BundleModel::trivial_rn(1);
  BundleOp xd = BundleOp::of(r1, DiffOp::term(X(1, 0), MultiIndex{1}));
  CHECK(bundle_apply(xd, Section::of(r1, X(1, 0).pow(2))).poly() == X(1, 0).pow(2) * R(2));

  CHECK_THROWS_AS(bundle_apply(dd, Section::of(kCircle, T(R(1)))), PreconditionError);
  CHECK_THROWS_AS(Section::of(kMoebius, TrigPoly::cos(R(1))), ModeMixError);
  CHECK_THROWS_AS(Section::of(kCircle, TrigPoly::cos(R(1, 2))), ModeMixError);
}

TEST_CASE("bundle_order examples and agreement with the representation order") {
  CHECK(bundle_order(BundleOp::of(kMoebius, CircleOp::multiplication(TrigPoly::cos(R(2)) + T(R(3))))) == 0);
  CHECK(bundle_order(BundleOp::of(kMoebius, CircleOp::derivative())) == 1);
  BundleOp d2 = BundleOp::of(kMoebius, CircleOp::term(TrigPoly::cos(R(1)), 2) + CircleOp::identity());
  CHECK(bundle_order(d2) == 2);
  CHECK(bundle_order(BundleOp::of(kMoebius, CircleOp())) == kZeroOrder);
  Rng rng(82);
  for (int s = 0; s < 30; ++s) {
    BundleOp d = BundleOp::of(kMoebius, random_circle_op(rng, 3));
    CHECK(bundle_order(d) == d.order());
    int n = rng.uniform(1, 2);
    BundleOp e = BundleOp::of(BundleModel::trivial_rn(n), random_diffop(rng, n, 3, 2, 3));
    CHECK(bundle_order(e) == e.order());
  }
}

TEST_CASE("gauge transformations") {
  Rng rng(83);
  BundleModel r1 = BundleModel::trivial_rn(1);
  for (int s = 0; s < 10; ++s) {
    BundleOp d = BundleOp::of(r1, random_diffop(rng, 1, 3, 2, 3));
    auto g = gauge_transform(d, Poly::constant(1, R(-1)));
    REQUIRE(std::holds_alternative<BundleOp>(g));
    CHECK(std::get<BundleOp>(g) == d);
  }
  BundleOp cd = BundleOp::of(kCircle, CircleOp::term(TrigPoly::cos(R(1)), 1));
  CHECK(std::get<BundleOp>(gauge_transform(cd, T(R(2)))) == cd);
  CHECK_THROWS_AS(gauge_transform(cd, T(R(0))), PreconditionError);

  // ψ = x₁ on {x₁ > 0}: m_{x₁}∘∂₁∘m_{1/x₁} sends x₁ᵐ to (m-1)x₁^{m-1}.
  BundleOp d1 = BundleOp::of(r1, D(1, 0));
  auto g = gauge_transform(d1, X(1, 0), GaugeChart{{0}});
  REQUIRE(std::holds_alternative<GaugedOp>(g));
  const GaugedOp& go = std::get<GaugedOp>(g);
  for (int m = 1; m <= 5; ++m)
    CHECK(go.apply(Section::of(r1, X(1, 0).pow(static_cast<unsigned>(m)))).poly() ==
          X(1, 0).pow(static_cast<unsigned>(m - 1)) * R(m - 1));
  CHECK_THROWS_AS(go.apply(Section::of(r1, C(1, 1))), PreconditionError);
  CHECK_THROWS_AS(gauge_transform(d1, X(1, 0)), PreconditionError);
  CHECK_THROWS_AS(gauge_transform(d1, X(1, 0) - C(1, 1), GaugeChart{{0}}), PreconditionError);
}

TEST_CASE("positivity certificates") {
  CHECK(certified_nonvanishing(C(2, 3), {}));
  CHECK(certified_nonvanishing(X(2, 0).pow(2) + C(2, 1), {}));
  CHECK(certified_nonvanishing(-(X(2, 0) + X(2, 1).pow(2)), GaugeChart{{0}}));
  CHECK_FALSE(certified_nonvanishing(X(2, 1).pow(2), {}));
  CHECK_FALSE(certified_nonvanishing(X(2, 0) * X(2, 1), GaugeChart{{0}}));
  CHECK(certified_nonvanishing(T(R(3)) + TrigPoly::cos(R(1)) + TrigPoly::sin(R(2), R(-1)), {}));
  CHECK_FALSE(certified_nonvanishing(T(R(2)) + TrigPoly::cos(R(1)) + TrigPoly::sin(R(2), R(-1)), {}));
}

TEST_CASE("algebraic symbols are gauge invariant") {
  Rng rng(84);
  for (int s = 0; s < 20; ++s) {
    int n = rng.uniform(1, 2);
    BundleModel m = BundleModel::trivial_rn(n);
    BundleOp d = BundleOp::of(m, random_diffop_of_order(rng, n, rng.uniform(1, 3), 2, 3));
    Poly psi = C(n, rng.uniform(1, 3)) + X(n, 0).pow(2) * R(rng.uniform(1, 2));
    auto g = gauge_transform(d, psi);
    REQUIRE(std::holds_alternative<GaugedOp>(g));
    const GaugedOp& go = std::get<GaugedOp>(g);
    const int k = d.order();
    CHECK(gauge_symbol_invariant(go, k));
    // One more commutator kills the gauged operator.
    std::vector<std::variant<Poly, TrigPoly>> fs(static_cast<std::size_t>(k + 1), X(n, 0));
    CHECK(gauged_ad(go, fs).poly().is_zero());
  }
  for (const auto& model : {kCircle, kMoebius}) {
    for (int s = 0; s < 10; ++s) {
      CircleOp c = random_circle_op(rng, 2);
      if (c.is_zero()) continue;
      BundleOp d = BundleOp::of(model, c);
      TrigPoly psi = T(R(4)) + TrigPoly::cos(R(1)) - TrigPoly::sin(R(2), R(2));
      const GaugedOp go = std::get<GaugedOp>(gauge_transform(d, psi));
      CHECK(gauge_symbol_invariant(go, d.order()));
    }
  }
}

TEST_CASE("globalize_iso") {
  FrameChoice f = FrameChoice::uniform(kMoebius);
  BundleOp img = globalize_iso(kMoebius, f, BundleOp::of(kMoebius, CircleOp::derivative()));
  CHECK(img == BundleOp::of(kCircle, CircleOp::derivative()));
  Rng rng(85);
  for (int s = 0; s < 30; ++s) {
    BundleOp d = BundleOp::of(kMoebius, random_circle_op(rng, 2));
    BundleOp e = BundleOp::of(kMoebius, random_circle_op(rng, 2));
    FrameChoice fr{{rng.uniform(0, 1) ? 1 : -1, rng.uniform(0, 1) ? 1 : -1}};
    CHECK(globalize_iso(kMoebius, fr, commutator(d, e)) ==
          commutator(globalize_iso(kMoebius, fr, d), globalize_iso(kMoebius, fr, e)));
    CHECK(globalize_iso(kMoebius, fr, d) == globalize_iso(kMoebius, fr.flipped(), d));
    CHECK(bundle_order(globalize_iso(kMoebius, fr, d)) == bundle_order(d));
  }
  BundleModel bad = kMoebius;
  bad.transition_signs = {1, 1};
  CHECK_THROWS_AS(globalize_iso(bad, f, BundleOp::of(bad, CircleOp::derivative())), PreconditionError);
  CHECK_THROWS_AS(globalize_iso(kMoebius, FrameChoice{{1}}, BundleOp::of(kMoebius, CircleOp::derivative())),
                  PreconditionError);
  CHECK(kMoebius.monodromy() == -1);
  CHECK(kCircle.monodromy() == 1);
}

TEST_CASE("bundle symbols and the Poisson bracket") {
  BundleOp d = BundleOp::of(kMoebius, CircleOp::term(TrigPoly::cos(R(1)), 2));
  BaseSymbol sym = symbol_bundle(d, 2);
  CHECK(std::get<TrigPoly>(sym.value) == TrigPoly::cos(R(1)));
  CHECK(sym.to_string() == "cos(t)*xi^2");
  CHECK(symbol_bundle(std::get<BundleOp>(gauge_transform(d, T(R(2)))), 2) == sym);
  CHECK_THROWS_AS(symbol_bundle(d, 1), PreconditionError);
  Rng rng(86);
  for (int s = 0; s < 30; ++s) {
    BundleOp a = BundleOp::of(kMoebius, random_circle_op(rng, 2));
    BundleOp b = BundleOp::of(kMoebius, random_circle_op(rng, 2));
    if (a.order() < 0 || b.order() < 0) continue;
    const int i = a.order(), j = b.order();
    CHECK(symbol_bundle(commutator(a, b), i + j - 1) ==
          poisson_bracket(symbol_bundle(a, i), symbol_bundle(b, j)));
    CHECK(std::get<TrigPoly>(symbol_bundle(compose(a, b), i + j).value) ==
          std::get<TrigPoly>(symbol_bundle(a, i).value) * std::get<TrigPoly>(symbol_bundle(b, j).value));
  }
}

TEST_CASE("deriv_cx") {
  FrameChoice f = FrameChoice::uniform(kMoebius);
  BundleOp x = BundleOp::of(kMoebius, CircleOp::derivative());
  CHECK(deriv_cx(x, f, BundleOp::of(kMoebius, CircleOp::multiplication(TrigPoly::cos(R(1))))) ==
        BundleOp::of(kMoebius, CircleOp::multiplication(TrigPoly::sin(R(1), R(-1)))));
  CHECK(deriv_cx(x, f, x).is_zero());
  CHECK_THROWS_AS(deriv_cx(BundleOp::of(kMoebius, CircleOp::identity()), f, x), PreconditionError);

  Rng rng(87);
  for (int s = 0; s < 10; ++s) {
    BundleOp xf = BundleOp::of(kMoebius, CircleOp::term(random_trig(rng, Parity::Periodic, 2, 2), 1));
    BundleOp d = BundleOp::of(kMoebius, random_circle_op(rng, 2));
    CHECK(deriv_cx(xf, f, d) == deriv_cx(xf, f.flipped(), d));
    auto rep = check_derivation_generic<BundleOp>(
        [&](const BundleOp& u) { return deriv_cx(xf, f, u); },
        [](const BundleOp& u, const BundleOp& v) { return commutator(u, v); },
        [](Rng& r) { return BundleOp::of(kMoebius, random_circle_op(r, 2)); }, 20, 900 + static_cast<std::uint64_t>(s),
        [](const BundleOp& u) { return u.to_string(); });
    CHECK(rep.passed);
  }
}

TEST_CASE("locality") {
  Rng rng(88);
  for (int s = 0; s < 20; ++s) {
    BundleOp d = BundleOp::of(kMoebius, random_circle_op(rng, 3));
    CHECK(locality_check(d, Section::of(kMoebius, random_section(rng, Parity::Antiperiodic))).passed);
    int n = rng.uniform(1, 2);
    BundleModel m = BundleModel::trivial_rn(n);
    CHECK(locality_check(BundleOp::of(m, random_diffop(rng, n, 3, 2, 3)), Section::of(m, random_poly(rng, n, 3, 4)))
              .passed);
  }
}

TEST_CASE("operators on the Moebius band and on the trivial bundle have the same bracket table") {
  std::vector<CircleOp> basis;
  for (int j = 0; j <= 2; ++j) {
    basis.push_back(CircleOp::term(T(R(1)), j));
    basis.push_back(CircleOp::term(TrigPoly::cos(R(1)), j));
    basis.push_back(CircleOp::term(TrigPoly::sin(R(1)), j));
  }
  FrameChoice f = FrameChoice::uniform(kMoebius);
  Rng rng(89);
  for (const auto& a : basis)
    for (const auto& b : basis) {
      BundleOp ma = BundleOp::of(kMoebius, a), mb = BundleOp::of(kMoebius, b);
      BundleOp ta = globalize_iso(kMoebius, f, ma), tb = globalize_iso(kMoebius, f, mb);
      CHECK(globalize_iso(kMoebius, f, commutator(ma, mb)) == commutator(ta, tb));
      // The bracket acts as the commutator of endomorphisms on both section spaces.
      Section am = Section::of(kMoebius, random_section(rng, Parity::Antiperiodic));
      Section pm = Section::of(kCircle, random_section(rng, Parity::Periodic));
      CHECK(bundle_apply(commutator(ma, mb), am).trig() ==
            bundle_apply(ma, bundle_apply(mb, am)).trig() - bundle_apply(mb, bundle_apply(ma, am)).trig());
      CHECK(bundle_apply(commutator(ta, tb), pm).trig() ==
            bundle_apply(ta, bundle_apply(tb, pm)).trig() - bundle_apply(tb, bundle_apply(ta, pm)).trig());
    }
}

TEST_CASE("circle operator printing") {
  CircleOp d = CircleOp::term(TrigPoly::cos(R(1)), 2) + CircleOp::identity();
  CHECK(d.to_string() == "cos(t)*d^2 + 1");
  CircleOp e = CircleOp::term(TrigPoly::cos(R(1)) + T(R(1)), 1) - CircleOp::derivative() * R(0);
  CHECK(e.to_string() == "(cos(t) + 1)*d");
  CHECK((CircleOp() - CircleOp::term(T(R(3, 2)), 3)).to_string() == "-3/2*d^3");
}
