#pragma once

#include <map>
#include <string>

#include "qpa/poly.hpp"

namespace qpa {

/// Polynomial on T*ℝⁿ: exact coefficients over monomials x^α ξ^β.
///
/// Stored as a Poly in 2n variables ordered (x1..xn, ξ1..ξn).
class SymbolPoly {
 public:
  SymbolPoly() = default;
  explicit SymbolPoly(int n) : n_(n), p_(2 * n) {}

  /// Embeds a function of x (ξ-degree 0).
  static SymbolPoly from_function(const Poly& f);
  /// f(x) ξ^β
  static SymbolPoly from_coefficient(const Poly& f, const MultiIndex& xi_exponent);
  static SymbolPoly constant(int n, const Rat& c);
  static SymbolPoly x(int n, int i);
  static SymbolPoly xi(int n, int i);
  static SymbolPoly from_raw(int n, Poly raw);

  int dim() const { return n_; }
  const Poly& raw() const { return p_; }
  bool is_zero() const { return p_.is_zero(); }

  /// Highest ξ-degree among stored terms; -1 for zero.
  int xi_degree() const;
  /// Highest x-degree among stored terms; -1 for zero.
  int x_degree() const;
  /// ξ-homogeneous component of degree k.
  SymbolPoly homogeneous(int k) const;
  /// Groups terms by ξ-exponent: β ↦ coefficient function of x.
  std::map<MultiIndex, Poly> by_xi() const;

  SymbolPoly& operator+=(const SymbolPoly& o);
  SymbolPoly& operator-=(const SymbolPoly& o);
  SymbolPoly& operator*=(const Rat& c);
  friend SymbolPoly operator+(SymbolPoly a, const SymbolPoly& b) { return a += b; }
  friend SymbolPoly operator-(SymbolPoly a, const SymbolPoly& b) { return a -= b; }
  friend SymbolPoly operator*(const SymbolPoly& a, const SymbolPoly& b);
  friend SymbolPoly operator*(SymbolPoly a, const Rat& c) { return a *= c; }
  friend SymbolPoly operator*(const Rat& c, SymbolPoly a) { return a *= c; }
  SymbolPoly operator-() const;
  bool operator==(const SymbolPoly& o) const = default;

  SymbolPoly diff_x(int i) const;
  SymbolPoly diff_xi(int i) const;

  std::string to_string() const;

 private:
  int n_ = 0;
  Poly p_;
};

/// Names x1..xn, xi1..xin.
std::vector<std::string> symbol_names(int n);

}  // namespace qpa
