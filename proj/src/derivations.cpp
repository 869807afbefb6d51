#include "qpa/derivations.hpp"

#include <sstream>

#include "qpa/errors.hpp"
#include "qpa/quantize.hpp"

namespace qpa {

namespace {

void check_dim(int a, int b, const char* op) {
  if (a != b) throw DimensionError(std::string(op) + ": dimension mismatch");
}

}  // namespace

FirstOrderOp::FirstOrderOp(Poly f_, VectorField x_) : f(std::move(f_)), x(std::move(x_)) {
  check_dim(f.dim(), x.dim(), "FirstOrderOp");
}

FirstOrderOp FirstOrderOp::function(const Poly& f) { return {f, VectorField(f.dim())}; }

FirstOrderOp FirstOrderOp::field(const VectorField& x) { return {Poly(x.dim()), x}; }

FirstOrderOp FirstOrderOp::from_diffop(const DiffOp& d) {
  if (d.order() > 1) throw PreconditionError("operator is not of first order");
  const int n = d.dim();
  FirstOrderOp u{d.coeff(MultiIndex(static_cast<std::size_t>(n))), VectorField(n)};
  for (int i = 0; i < n; ++i)
    u.x[i] = d.coeff(MultiIndex::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(i)));
  return u;
}

DiffOp FirstOrderOp::to_diffop() const { return DiffOp::multiplication(f) + DiffOp::from_field(x); }

FirstOrderOp FirstOrderOp::operator+(const FirstOrderOp& o) const { return {f + o.f, x + o.x}; }

FirstOrderOp FirstOrderOp::operator-(const FirstOrderOp& o) const { return {f - o.f, x - o.x}; }

FirstOrderOp FirstOrderOp::operator*(const Rat& c) const { return {f * c, c * x}; }

FirstOrderOp FirstOrderOp::rounded() const {
  FirstOrderOp r{f.rounded(), x};
  for (int i = 0; i < x.dim(); ++i) r.x[i] = x[i].rounded();
  return r;
}

std::string FirstOrderOp::to_string() const { return to_diffop().to_string(); }

FirstOrderOp bracket(const FirstOrderOp& u, const FirstOrderOp& v) {
  check_dim(u.dim(), v.dim(), "bracket");
  return {u.x.apply(v.f) - v.x.apply(u.f), bracket(u.x, v.x)};
}

Poly divergence(const VectorField& x) {
  Poly d(x.dim());
  for (int i = 0; i < x.dim(); ++i) d += x[i].diff(i);
  return d;
}

Deriv1Params Deriv1Params::zero(int n) { return {VectorField(n), Rat(0), Rat(0), ClosedOneForm(n)}; }

FirstOrderOp deriv_d1(const Deriv1Params& p, const FirstOrderOp& u) {
  check_dim(p.y.dim(), u.dim(), "deriv_d1");
  check_dim(p.omega.dim(), u.dim(), "deriv_d1");
  // [Y, f+X] = [Y,X] + Y(f)
  FirstOrderOp r = bracket(FirstOrderOp::field(p.y), u);
  r.f += u.f * p.kappa + divergence(u.x) * p.lambda + p.omega(u.x);
  return r;
}

SymbolPoly deriv_s(const SymbolPoly& q, const Rat& kappa, const ClosedOneForm& w, const SymbolPoly& p) {
  check_dim(q.dim(), p.dim(), "deriv_s");
  check_dim(w.dim(), p.dim(), "deriv_s");
  return poisson_bracket(q, p) - kappa * deg_derivation(p) + vertical_lift(w, p);
}

DiffOp omega_bar(const ClosedOneForm& w, const DiffOp& d) {
  check_dim(w.dim(), d.dim(), "omega_bar");
  return commutator(d, DiffOp::multiplication(w.potential()));
}

DiffOp deriv_d(const DiffOp& delta, const ClosedOneForm& w, const DiffOp& d) {
  check_dim(delta.dim(), d.dim(), "deriv_d");
  return commutator(delta, d) + omega_bar(w, d);
}

AffineMap::AffineMap(Matrix m, std::vector<Rat> c) : m_(std::move(m)), c_(std::move(c)) {
  if (m_.size() != c_.size()) throw DimensionError("AffineMap: matrix/offset size mismatch");
  for (const auto& row : m_)
    if (row.size() != c_.size()) throw DimensionError("AffineMap: matrix is not square");
}

AffineMap AffineMap::identity(int n) {
  Matrix m(static_cast<std::size_t>(n), std::vector<Rat>(static_cast<std::size_t>(n), Rat(0)));
  for (std::size_t i = 0; i < m.size(); ++i) m[i][i] = 1;
  return {m, std::vector<Rat>(static_cast<std::size_t>(n), Rat(0))};
}

AffineMap AffineMap::translation(std::vector<Rat> c) {
  AffineMap a = identity(static_cast<int>(c.size()));
  a.c_ = std::move(c);
  return a;
}

Rat AffineMap::determinant() const {
  Matrix a = m_;
  const std::size_t n = a.size();
  Rat det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return Rat(0);
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      Rat f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
    }
  }
  return det;
}

AffineMap AffineMap::inverse() const {
  const std::size_t n = m_.size();
  Matrix a = m_;
  Matrix inv = identity(static_cast<int>(n)).m_;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw PreconditionError("affine map is not invertible");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Rat p = a[col][col];
    for (std::size_t k = 0; k < n; ++k) {
      a[col][k] /= p;
      inv[col][k] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rat f = a[r][col];
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[col][k];
        inv[r][k] -= f * inv[col][k];
      }
    }
  }
  std::vector<Rat> c(n, Rat(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) c[i] -= inv[i][k] * c_[k];
  return {inv, c};
}

AffineMap AffineMap::compose(const AffineMap& o) const {
  check_dim(dim(), o.dim(), "AffineMap::compose");
  const std::size_t n = c_.size();
  Matrix m(n, std::vector<Rat>(n, Rat(0)));
  std::vector<Rat> c = c_;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      c[i] += m_[i][k] * o.c_[k];
      for (std::size_t j = 0; j < n; ++j) m[i][j] += m_[i][k] * o.m_[k][j];
    }
  return {m, c};
}

std::vector<Poly> AffineMap::components() const {
  const int n = dim();
  std::vector<Poly> out;
  for (int i = 0; i < n; ++i) {
    Poly p = Poly::constant(n, c_[static_cast<std::size_t>(i)]);
    for (int k = 0; k < n; ++k)
      p += Poly::variable(n, k) * m_[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    out.push_back(std::move(p));
  }
  return out;
}

Poly AffineMap::pullback(const Poly& f) const {
  check_dim(f.dim(), dim(), "pullback");
  return f.substitute(components());
}

VectorField AffineMap::push_forward(const VectorField& x) const { return push_forward(x, inverse()); }

VectorField AffineMap::push_forward(const VectorField& x, const AffineMap& inv) const {
  check_dim(x.dim(), dim(), "push_forward");
  check_dim(inv.dim(), dim(), "push_forward");
  const int n = dim();
  VectorField r(n);
  for (int i = 0; i < n; ++i) {
    Poly comp(n);
    for (int k = 0; k < n; ++k) comp += x[k] * m_[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    r[i] = inv.pullback(comp);
  }
  return r;
}

Poly AffineMap::pullback_form_on(const ClosedOneForm& w, const VectorField& x) const {
  check_dim(w.dim(), dim(), "pullback_form_on");
  check_dim(x.dim(), dim(), "pullback_form_on");
  const int n = dim();
  Poly r(n);
  for (int i = 0; i < n; ++i) {
    Poly mx(n);
    for (int k = 0; k < n; ++k) mx += x[k] * m_[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    r += pullback(w[i]) * mx;
  }
  return r;
}

AffineMap AffineMap::rounded() const {
  AffineMap r = *this;
  for (auto& row : r.m_)
    for (auto& v : row) v = round_to_double(v);
  for (auto& v : r.c_) v = round_to_double(v);
  return r;
}

FirstOrderOp automorphism_d1(const AutoParams& a, const FirstOrderOp& u) {
  check_dim(a.phi.dim(), u.dim(), "automorphism_d1");
  if (a.k == 0) throw PreconditionError("automorphism requires K != 0");
  const AffineMap inv = a.phi.inverse();
  Poly g = u.f * a.k + divergence(u.x) * a.lambda + a.omega(u.x);
  return {inv.pullback(g), a.phi.push_forward(u.x)};
}

const char* to_string(Algebra a) {
  switch (a) {
    case Algebra::D1: return "D1";
    case Algebra::S: return "S";
    case Algebra::D: return "D";
  }
  return "?";
}

FirstOrderOp random_first_order(Rng& rng, int n) {
  return {random_poly(rng, n, 2, 3), random_field(rng, n, 2, 2)};
}

SymbolPoly random_sample_symbol(Rng& rng, int n) { return random_symbol(rng, n, 2, 3, 3); }

DiffOp random_sample_diffop(Rng& rng, int n) { return random_diffop(rng, n, 3, 2, 3); }

DerivationReport check_derivation(const std::function<FirstOrderOp(const FirstOrderOp&)>& c, int n,
                                  int samples, std::uint64_t seed) {
  if (samples <= 0) throw PreconditionError("samples must be positive");
  return check_derivation_generic<FirstOrderOp>(
      c, [](const FirstOrderOp& u, const FirstOrderOp& v) { return bracket(u, v); },
      [n](Rng& r) { return random_first_order(r, n); }, samples, seed,
      [](const FirstOrderOp& u) { return u.to_string(); });
}

DerivationReport check_derivation(const std::function<SymbolPoly(const SymbolPoly&)>& c, int n,
                                  int samples, std::uint64_t seed) {
  if (samples <= 0) throw PreconditionError("samples must be positive");
  return check_derivation_generic<SymbolPoly>(
      c, [](const SymbolPoly& u, const SymbolPoly& v) { return poisson_bracket(u, v); },
      [n](Rng& r) { return random_sample_symbol(r, n); }, samples, seed,
      [](const SymbolPoly& u) { return u.to_string(); });
}

DerivationReport check_derivation(const std::function<DiffOp(const DiffOp&)>& c, int n, int samples,
                                  std::uint64_t seed) {
  if (samples <= 0) throw PreconditionError("samples must be positive");
  return check_derivation_generic<DiffOp>(
      c, [](const DiffOp& u, const DiffOp& v) { return commutator(u, v); },
      [n](Rng& r) { return random_sample_diffop(r, n); }, samples, seed,
      [](const DiffOp& u) { return u.to_string(); });
}

DiffOp deg_via_sigma_aff(const DiffOp& d) { return q_affine(deg_derivation(sigma_aff(d))); }

Deriv1Params random_deriv1_params(Rng& rng, int n) {
  return {random_field(rng, n, 2, 3), rng.small_rat_or_zero(), rng.small_rat_or_zero(),
          random_closed_form(rng, n, 1, 2)};
}

AffineMap random_affine_map(Rng& rng, int n) {
  for (;;) {
    AffineMap::Matrix m(static_cast<std::size_t>(n));
    std::vector<Rat> c;
    for (auto& row : m) {
      for (int j = 0; j < n; ++j) row.push_back(rng.small_rat_or_zero());
      c.push_back(rng.small_rat_or_zero());
    }
    AffineMap a(m, c);
    if (a.invertible()) return a;
  }
}

}  // namespace qpa
