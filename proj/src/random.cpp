#include "qpa/random.hpp"

namespace qpa {

Rat Rng::small_rat() {
  int p = 0;
  while (p == 0) p = uniform(-5, 5);
  Rat r(p, uniform(1, 3));
  r.canonicalize();
  return r;
}

Rat Rng::small_rat_or_zero() { return uniform(0, 4) == 0 ? Rat(0) : small_rat(); }

namespace {

MultiIndex random_index(Rng& rng, int n, int max_total) {
  int total = rng.uniform(0, max_total);
  MultiIndex a(static_cast<std::size_t>(n));
  for (int k = 0; k < total; ++k) a[static_cast<std::size_t>(rng.uniform(0, n - 1))] += 1;
  return a;
}

}  // namespace

Poly random_poly(Rng& rng, int n, int max_degree, int max_terms) {
  Poly p(n);
  int terms = rng.uniform(1, max_terms);
  for (int t = 0; t < terms; ++t) p.add_term(random_index(rng, n, max_degree), rng.small_rat());
  return p;
}

SymbolPoly random_symbol(Rng& rng, int n, int max_x_degree, int max_xi_degree, int max_terms) {
  SymbolPoly s(n);
  int terms = rng.uniform(1, max_terms);
  for (int t = 0; t < terms; ++t)
    s += SymbolPoly::from_coefficient(Poly::monomial(random_index(rng, n, max_x_degree), rng.small_rat()),
                                      random_index(rng, n, max_xi_degree));
  return s;
}

SymbolPoly random_homogeneous_symbol(Rng& rng, int n, int max_x_degree, int k, int max_terms) {
  SymbolPoly s(n);
  auto xis = indices_of_degree(static_cast<std::size_t>(n), k);
  int terms = rng.uniform(1, max_terms);
  for (int t = 0; t < terms; ++t) {
    const auto& beta = xis[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(xis.size()) - 1))];
    s += SymbolPoly::from_coefficient(Poly::monomial(random_index(rng, n, max_x_degree), rng.small_rat()), beta);
  }
  return s;
}

DiffOp random_diffop(Rng& rng, int n, int max_order, int max_coeff_degree, int max_terms) {
  DiffOp d(n);
  int terms = rng.uniform(1, max_terms);
  for (int t = 0; t < terms; ++t)
    d.add_term(random_index(rng, n, max_order), random_poly(rng, n, max_coeff_degree, 2));
  return d;
}

DiffOp random_diffop_of_order(Rng& rng, int n, int order, int max_coeff_degree, int max_terms) {
  DiffOp d(n);
  while (d.order() != order) {
    d = order > 0 ? random_diffop(rng, n, order - 1, max_coeff_degree, max_terms) : DiffOp(n);
    auto tops = indices_of_degree(static_cast<std::size_t>(n), order);
    const auto& a = tops[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(tops.size()) - 1))];
    d.add_term(a, random_poly(rng, n, max_coeff_degree, 2));
  }
  return d;
}

VectorField random_field(Rng& rng, int n, int max_degree, int max_terms) {
  VectorField x(n);
  for (int i = 0; i < n; ++i)
    if (rng.uniform(0, 3) != 0) x[i] = random_poly(rng, n, max_degree, max_terms);
  return x;
}

ClosedOneForm random_closed_form(Rng& rng, int n, int max_degree, int max_terms) {
  return ClosedOneForm::exact(random_poly(rng, n, max_degree + 1, max_terms));
}

TrigPoly random_trig(Rng& rng, Parity parity, int max_mode, int max_terms) {
  TrigPoly t(parity);
  int terms = rng.uniform(1, max_terms);
  const int offset = parity == Parity::Periodic ? 0 : 1;
  for (int k = 0; k < terms; ++k) {
    // 2k = 2j + offset with j ≤ max_mode
    int m = 2 * rng.uniform(0, max_mode) + offset;
    if (rng.uniform(0, 1) == 0)
      t.add_cos(m, rng.small_rat());
    else
      t.add_sin(m, rng.small_rat());
  }
  return t;
}

}  // namespace qpa
