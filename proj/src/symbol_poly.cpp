#include "qpa/symbol_poly.hpp"

#include <algorithm>

#include "qpa/errors.hpp"

namespace qpa {

namespace {

void check_dim(int a, int b, const char* op) {
  if (a != b) throw DimensionError(std::string(op) + ": dimension mismatch");
}

void check_var(int n, int i) {
  if (i < 0 || i >= n) throw DimensionError("variable index out of range");
}

}  // namespace

SymbolPoly SymbolPoly::from_function(const Poly& f) {
  return from_coefficient(f, MultiIndex(static_cast<std::size_t>(f.dim())));
}

SymbolPoly SymbolPoly::from_coefficient(const Poly& f, const MultiIndex& beta) {
  check_dim(f.dim(), static_cast<int>(beta.size()), "from_coefficient");
  SymbolPoly s(f.dim());
  for (const auto& [a, c] : f.terms()) s.p_.add_term(a.concat(beta), c);
  return s;
}

SymbolPoly SymbolPoly::constant(int n, const Rat& c) {
  return from_function(Poly::constant(n, c));
}

SymbolPoly SymbolPoly::x(int n, int i) {
  check_var(n, i);
  return from_raw(n, Poly::variable(2 * n, i));
}

SymbolPoly SymbolPoly::xi(int n, int i) {
  check_var(n, i);
  return from_raw(n, Poly::variable(2 * n, n + i));
}

SymbolPoly SymbolPoly::from_raw(int n, Poly raw) {
  check_dim(raw.dim(), 2 * n, "from_raw");
  SymbolPoly s(n);
  s.p_ = std::move(raw);
  return s;
}

int SymbolPoly::xi_degree() const {
  int d = -1;
  for (const auto& [a, c] : p_.terms())
    d = std::max(d, a.slice(static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)).total());
  return d;
}

int SymbolPoly::x_degree() const {
  int d = -1;
  for (const auto& [a, c] : p_.terms()) d = std::max(d, a.slice(0, static_cast<std::size_t>(n_)).total());
  return d;
}

SymbolPoly SymbolPoly::homogeneous(int k) const {
  SymbolPoly s(n_);
  for (const auto& [a, c] : p_.terms())
    if (a.slice(static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)).total() == k)
      s.p_.add_term(a, c);
  return s;
}

std::map<MultiIndex, Poly> SymbolPoly::by_xi() const {
  std::map<MultiIndex, Poly> out;
  const auto n = static_cast<std::size_t>(n_);
  for (const auto& [a, c] : p_.terms()) {
    auto [it, _] = out.try_emplace(a.slice(n, n), Poly(n_));
    it->second.add_term(a.slice(0, n), c);
  }
  return out;
}

SymbolPoly& SymbolPoly::operator+=(const SymbolPoly& o) {
  check_dim(n_, o.n_, "add");
  p_ += o.p_;
  return *this;
}

SymbolPoly& SymbolPoly::operator-=(const SymbolPoly& o) {
  check_dim(n_, o.n_, "sub");
  p_ -= o.p_;
  return *this;
}

SymbolPoly& SymbolPoly::operator*=(const Rat& c) {
  p_ *= c;
  return *this;
}

SymbolPoly operator*(const SymbolPoly& a, const SymbolPoly& b) {
  check_dim(a.n_, b.n_, "mul");
  return SymbolPoly::from_raw(a.n_, a.p_ * b.p_);
}

SymbolPoly SymbolPoly::operator-() const { return from_raw(n_, -p_); }

SymbolPoly SymbolPoly::diff_x(int i) const {
  check_var(n_, i);
  return from_raw(n_, p_.diff(i));
}

SymbolPoly SymbolPoly::diff_xi(int i) const {
  check_var(n_, i);
  return from_raw(n_, p_.diff(n_ + i));
}

std::vector<std::string> symbol_names(int n) {
  auto v = x_names(n);
  for (int i = 1; i <= n; ++i) v.push_back("xi" + std::to_string(i));
  return v;
}

std::string SymbolPoly::to_string() const { return p_.to_string(symbol_names(n_)); }

}  // namespace qpa
