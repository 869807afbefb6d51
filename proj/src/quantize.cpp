#include "qpa/quantize.hpp"

#include <sstream>

#include "qpa/errors.hpp"
#include "qpa/symbols.hpp"

namespace qpa {

SymbolPoly sigma_aff(const DiffOp& d) {
  SymbolPoly s(d.dim());
  for (const auto& [alpha, f] : d.terms()) s += SymbolPoly::from_coefficient(f, alpha);
  return s;
}

DiffOp q_affine(const SymbolPoly& p) {
  DiffOp d(p.dim());
  for (const auto& [beta, f] : p.by_xi()) d.add_term(beta, f);
  return d;
}

HSeries::HSeries(int n, int order) : n_(n) {
  if (order < 0) throw PreconditionError("negative truncation order");
  c_.assign(static_cast<std::size_t>(order) + 1, SymbolPoly(n));
}

void HSeries::add(int k, const SymbolPoly& p) {
  if (k < 0) throw PreconditionError("negative hbar power");
  if (k > order()) return;
  c_[static_cast<std::size_t>(k)] += p;
}

HSeries& HSeries::operator+=(const HSeries& o) {
  if (o.n_ != n_ || o.order() != order()) throw DimensionError("HSeries shape mismatch");
  for (int k = 0; k <= order(); ++k) c_[static_cast<std::size_t>(k)] += o[k];
  return *this;
}

HSeries& HSeries::operator-=(const HSeries& o) {
  if (o.n_ != n_ || o.order() != order()) throw DimensionError("HSeries shape mismatch");
  for (int k = 0; k <= order(); ++k) c_[static_cast<std::size_t>(k)] -= o[k];
  return *this;
}

std::string HSeries::to_string() const {
  std::ostringstream os;
  os << c_[0].to_string();
  for (int k = 1; k <= order(); ++k) {
    os << " + hbar";
    if (k > 1) os << "^" << k;
    os << "*(" << c_[static_cast<std::size_t>(k)].to_string() << ")";
  }
  os << " + O(hbar";
  if (order() + 1 > 1) os << "^" << order() + 1;
  os << ")";
  return os.str();
}

HSeries star(const SymbolPoly& f, const SymbolPoly& g, int order) {
  if (f.dim() != g.dim()) throw DimensionError("star: dimension mismatch");
  HSeries out(f.dim(), order);
  const int n = f.dim();
  for (int k = 0; k <= order; ++k)
    for (const auto& alpha : indices_of_degree(static_cast<std::size_t>(n), k)) {
      // ∂_ξ^α F and ∂_x^α G through the raw 2n-variable polynomial.
      MultiIndex zero(static_cast<std::size_t>(n));
      Poly df = f.raw().diff(zero.concat(alpha));
      if (df.is_zero()) continue;
      Poly dg = g.raw().diff(alpha.concat(zero));
      if (dg.is_zero()) continue;
      out.add(k, SymbolPoly::from_raw(n, df * dg) * (Rat(1) / alpha.factorial()));
    }
  return out;
}

HSeries star_by_composition(const SymbolPoly& f, const SymbolPoly& g, int order) {
  if (f.dim() != g.dim()) throw DimensionError("star: dimension mismatch");
  HSeries out(f.dim(), order);
  for (int i = 0; i <= f.xi_degree(); ++i) {
    DiffOp qf = q_affine(f.homogeneous(i));
    if (qf.is_zero()) continue;
    for (int j = 0; j <= g.xi_degree(); ++j) {
      DiffOp qg = q_affine(g.homogeneous(j));
      if (qg.is_zero()) continue;
      // ℏ^{i+j} q(Fᵢ)∘q(Gⱼ); the ξ-degree-m part of its symbol comes back
      // through Q_ℏ⁻¹ with a factor ℏ^{-m}.
      SymbolPoly s = sigma_aff(compose(qf, qg));
      for (int m = 0; m <= s.xi_degree(); ++m) out.add(i + j - m, s.homogeneous(m));
    }
  }
  return out;
}

HSeries star(const HSeries& a, const HSeries& b) {
  if (a.dim() != b.dim() || a.order() != b.order()) throw DimensionError("star: series shape mismatch");
  const int order = a.order();
  HSeries out(a.dim(), order);
  for (int i = 0; i <= order; ++i)
    for (int j = 0; i + j <= order; ++j) {
      if (a[i].is_zero() || b[j].is_zero()) continue;
      HSeries p = star(a[i], b[j], order - i - j);
      for (int k = 0; k <= p.order(); ++k) out.add(i + j + k, p[k]);
    }
  return out;
}

HSeries as_series(const SymbolPoly& p, int order) {
  HSeries s(p.dim(), order);
  s.add(0, p);
  return s;
}

std::optional<DiffOp> find_equivariance_counterexample(const VectorField& x, int max_order,
                                                       int max_coeff_degree) {
  const int n = x.dim();
  const DiffOp qx = q_affine(to_symbol(x));
  const SymbolPoly px = to_symbol(x);
  for (int k = 0; k <= max_order; ++k)
    for (const auto& alpha : indices_of_degree(static_cast<std::size_t>(n), k))
      for (int c = 0; c <= max_coeff_degree; ++c)
        for (const auto& beta : indices_of_degree(static_cast<std::size_t>(n), c)) {
          DiffOp d = DiffOp::term(Poly::monomial(beta, Rat(1)), alpha);
          if (sigma_aff(commutator(qx, d)) != poisson_bracket(px, sigma_aff(d))) return d;
        }
  return std::nullopt;
}

}  // namespace qpa
