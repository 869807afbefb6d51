#include "qpa/diffop.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "qpa/errors.hpp"

namespace qpa {

namespace {

void check_dim(int a, int b, const char* op) {
  if (a != b) throw DimensionError(std::string(op) + ": dimension mismatch");
}

}  // namespace

DiffOp DiffOp::identity(int n) { return multiplication(Poly::constant(n, Rat(1))); }

DiffOp DiffOp::multiplication(const Poly& f) {
  return term(f, MultiIndex(static_cast<std::size_t>(f.dim())));
}

DiffOp DiffOp::partial(int n, int i) {
  if (i < 0 || i >= n) throw DimensionError("partial: index out of range");
  return term(Poly::constant(n, Rat(1)), MultiIndex::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(i)));
}

DiffOp DiffOp::term(const Poly& f, const MultiIndex& alpha) {
  DiffOp d(f.dim());
  d.add_term(alpha, f);
  return d;
}

DiffOp DiffOp::from_field(const VectorField& x) {
  DiffOp d(x.dim());
  for (int i = 0; i < x.dim(); ++i)
    d.add_term(MultiIndex::unit(static_cast<std::size_t>(x.dim()), static_cast<std::size_t>(i)), x[i]);
  return d;
}

int DiffOp::order() const {
  int k = kZeroOrder;
  for (const auto& [a, f] : terms_) k = std::max(k, a.total());
  return k;
}

int DiffOp::coeff_degree() const {
  int k = -1;
  for (const auto& [a, f] : terms_) k = std::max(k, f.degree());
  return k;
}

Poly DiffOp::coeff(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Poly(n_) : it->second;
}

void DiffOp::add_term(const MultiIndex& alpha, const Poly& f) {
  check_dim(static_cast<int>(alpha.size()), n_, "DiffOp::add_term");
  check_dim(f.dim(), n_, "DiffOp::add_term");
  if (f.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(alpha, f);
  if (!inserted) {
    it->second += f;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
  check_dim(n_, o.n_, "DiffOp add");
  for (const auto& [a, f] : o.terms_) add_term(a, f);
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
  check_dim(n_, o.n_, "DiffOp sub");
  for (const auto& [a, f] : o.terms_) add_term(a, -f);
  return *this;
}

DiffOp& DiffOp::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [a, f] : terms_) f *= c;
  return *this;
}

DiffOp DiffOp::operator-() const {
  DiffOp r(*this);
  r *= Rat(-1);
  return r;
}

Poly DiffOp::apply(const Poly& h) const {
  check_dim(h.dim(), n_, "DiffOp::apply");
  Poly r(n_);
  for (const auto& [a, f] : terms_) r += f * h.diff(a);
  return r;
}

DiffOp compose(const DiffOp& d, const DiffOp& e) {
  check_dim(d.dim(), e.dim(), "compose");
  DiffOp r(d.dim());
  for (const auto& [alpha, f] : d.terms())
    for (const auto& gamma : sub_indices(alpha)) {
      const Rat c = alpha.binomial(gamma);
      const MultiIndex rest = alpha - gamma;
      for (const auto& [beta, g] : e.terms()) {
        Poly dg = g.diff(rest);
        if (dg.is_zero()) continue;
        r.add_term(gamma + beta, c * (f * dg));
      }
    }
  return r;
}

DiffOp commutator(const DiffOp& d, const DiffOp& e) { return compose(d, e) - compose(e, d); }

SymbolPoly symbol_k(const DiffOp& d, int k) {
  if (k < 0) throw PreconditionError("symbol_k: negative order");
  if (d.order() > k)
    throw PreconditionError("symbol_k: operator order " + std::to_string(d.order()) +
                            " exceeds " + std::to_string(k));
  SymbolPoly s(d.dim());
  for (const auto& [a, f] : d.terms())
    if (a.total() == k) s += SymbolPoly::from_coefficient(f, a);
  return s;
}

SymbolPoly principal_symbol(const DiffOp& d) {
  if (d.is_zero()) return SymbolPoly(d.dim());
  return symbol_k(d, d.order());
}

std::vector<std::string> d_names(int n) {
  std::vector<std::string> v;
  for (int i = 1; i <= n; ++i) v.push_back("d" + std::to_string(i));
  return v;
}

std::string DiffOp::to_string() const {
  // Every (x-monomial, ∂-monomial) pair prints as its own normal-ordered term.
  std::vector<std::pair<MultiIndex, Rat>> flat;
  for (const auto& [a, f] : terms_)
    for (const auto& [b, c] : f.terms()) flat.emplace_back(a.concat(b), c);
  // Derivative exponents lead the key so terms group by derivative degree,
  // but the text keeps coefficients left of derivatives.
  std::sort(flat.begin(), flat.end(), [this](const auto& u, const auto& v) {
    auto du = u.first.slice(0, static_cast<std::size_t>(n_));
    auto dv = v.first.slice(0, static_cast<std::size_t>(n_));
    if (du != dv) return grlex_greater(du, dv);
    return grlex_greater(u.first.slice(static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)),
                         v.first.slice(static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)));
  });
  if (flat.empty()) return "0";
  auto names = x_names(n_);
  auto dn = d_names(n_);
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : flat) {
    MultiIndex alpha = key.slice(0, static_cast<std::size_t>(n_));
    MultiIndex xe = key.slice(static_cast<std::size_t>(n_), static_cast<std::size_t>(n_));
    std::string mono = format_terms({{xe.concat(alpha), abs(c)}}, [&] {
      auto v = names;
      v.insert(v.end(), dn.begin(), dn.end());
      return v;
    }());
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    os << mono;
  }
  return os.str();
}

}  // namespace qpa
