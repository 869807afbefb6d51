#include "doctest.h"
#include "helpers.hpp"
#include "qpa/diffop.hpp"
#include "qpa/errors.hpp"
#include "qpa/random.hpp"
#include "qpa/symbols.hpp"

using namespace qpa;
using namespace testing_helpers;

TEST_CASE("poisson_bracket examples") {
  const int n = 1;
  CHECK(poisson_bracket(XI(n, 0), SX(n, 0)) == SC(n, 1));
  // {ξ₁², x₁} against the principal symbol of [∂₁², x₁] from DiffOp
  SymbolPoly via_ops = symbol_k(commutator(compose(D(n, 0), D(n, 0)), M(X(n, 0))), 1);
  CHECK(poisson_bracket(XI(n, 0) * XI(n, 0), SX(n, 0)) == via_ops);
  CHECK(via_ops == SC(n, 2) * XI(n, 0));
  SymbolPoly via_ops2 = symbol_k(commutator(compose(M(X(n, 0)), D(n, 0)), D(n, 0)), 1);
  CHECK(poisson_bracket(SX(n, 0) * XI(n, 0), XI(n, 0)) == via_ops2);
  CHECK(via_ops2 == -XI(n, 0));
  CHECK_THROWS_AS(poisson_bracket(XI(1, 0), XI(2, 0)), DimensionError);
}

TEST_CASE("deg_derivation examples") {
  CHECK(deg_derivation(XI(1, 0) * XI(1, 0)) == XI(1, 0) * XI(1, 0));
  CHECK(deg_derivation(XI(1, 0)).is_zero());
  CHECK(deg_derivation(SX(1, 0)) == -SX(1, 0));
}

TEST_CASE("vertical_lift examples") {
  const int n = 2;
  ClosedOneForm dx1({C(n, 1), Poly(n)});
  CHECK(vertical_lift(dx1, XI(n, 0) * XI(n, 0)) == SC(n, 2) * XI(n, 0));
  CHECK(vertical_lift(dx1, SX(n, 1)).is_zero());
  ClosedOneForm w = ClosedOneForm::exact(X(n, 0) * X(n, 1));
  CHECK(w == ClosedOneForm({X(n, 1), X(n, 0)}));
  SymbolPoly p = XI(n, 0) * XI(n, 1);
  // oracle: {P, x1 x2}
  CHECK(vertical_lift(w, p) == poisson_bracket(p, SymbolPoly::from_function(X(n, 0) * X(n, 1))));
  CHECK(vertical_lift(w, p) == SX(n, 1) * XI(n, 1) + SX(n, 0) * XI(n, 0));
}

TEST_CASE("non-closed forms are rejected") {
  CHECK_THROWS_AS(ClosedOneForm({X(2, 1), Poly(2)}), PreconditionError);
  CHECK_NOTHROW(ClosedOneForm({X(2, 1), X(2, 0)}));
}

TEST_CASE("potential of closed forms") {
  Rng rng(3);
  for (int s = 0; s < 40; ++s) {
    int n = rng.uniform(1, 3);
    Poly f = random_poly(rng, n, 4, 4);
    f -= Poly::constant(n, f.constant_term());
    CHECK(ClosedOneForm::exact(f).potential() == f);
  }
}

TEST_CASE("Poisson algebra identities on random symbols") {
  Rng rng(21);
  for (int s = 0; s < 60; ++s) {
    int n = rng.uniform(1, 2);
    auto f = random_symbol(rng, n, 2, 2, 3), g = random_symbol(rng, n, 2, 2, 3),
         h = random_symbol(rng, n, 2, 2, 3);
    // antisymmetry, Jacobi, Leibniz
    CHECK(poisson_bracket(f, g) == -poisson_bracket(g, f));
    CHECK((poisson_bracket(f, poisson_bracket(g, h)) + poisson_bracket(g, poisson_bracket(h, f)) +
           poisson_bracket(h, poisson_bracket(f, g)))
              .is_zero());
    CHECK(poisson_bracket(f, g * h) == poisson_bracket(f, g) * h + g * poisson_bracket(f, h));
    // Deg is a derivation of the bracket
    CHECK(deg_derivation(poisson_bracket(f, g)) ==
          poisson_bracket(deg_derivation(f), g) + poisson_bracket(f, deg_derivation(g)));
    // grading of brackets of homogeneous parts
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; j <= 2; ++j) {
        auto b = poisson_bracket(f.homogeneous(i), g.homogeneous(j));
        if (!b.is_zero()) CHECK(b == b.homogeneous(i + j - 1));
      }
    // vertical lift: derivation of both products, weight -1, equals {P, f}
    auto w = random_closed_form(rng, n, 2, 3);
    CHECK(vertical_lift(w, f * g) == vertical_lift(w, f) * g + f * vertical_lift(w, g));
    CHECK(vertical_lift(w, poisson_bracket(f, g)) ==
          poisson_bracket(vertical_lift(w, f), g) + poisson_bracket(f, vertical_lift(w, g)));
    for (int k = 0; k <= 2; ++k) {
      auto v = vertical_lift(w, f.homogeneous(k));
      if (!v.is_zero()) CHECK(v == v.homogeneous(k - 1));
    }
    CHECK(vertical_lift(w, f) == poisson_bracket(f, SymbolPoly::from_function(w.potential())));
  }
}

TEST_CASE("vector field bracket and symbols") {
  Rng rng(5);
  for (int s = 0; s < 30; ++s) {
    int n = rng.uniform(1, 2);
    auto x = random_field(rng, n, 2, 2), z = random_field(rng, n, 2, 2);
    auto f = random_poly(rng, n, 3, 3);
    CHECK(bracket(x, z).apply(f) == x.apply(z.apply(f)) - z.apply(x.apply(f)));
    // P_[X,Z] = {P_X, P_Z}
    CHECK(to_symbol(bracket(x, z)) == poisson_bracket(to_symbol(x), to_symbol(z)));
  }
}
