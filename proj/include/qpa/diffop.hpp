#pragma once

#include <climits>
#include <map>
#include <string>

#include "qpa/poly.hpp"
#include "qpa/symbol_poly.hpp"
#include "qpa/symbols.hpp"

namespace qpa {

/// Order of the zero operator.
inline constexpr int kZeroOrder = INT_MIN;

/// Linear differential operator Σ D^α(x) ∂^α on ℝⁿ in normal order
/// (coefficients left of derivatives). Keys are derivative multi-indices;
/// zero coefficients are never stored.
class DiffOp {
 public:
  using TermMap = std::map<MultiIndex, Poly>;

  DiffOp() = default;
  explicit DiffOp(int n) : n_(n) {}

  static DiffOp identity(int n);
  /// m_f
  static DiffOp multiplication(const Poly& f);
  static DiffOp partial(int n, int i);
  /// f ∂^α
  static DiffOp term(const Poly& f, const MultiIndex& alpha);
  static DiffOp from_field(const VectorField& x);

  int dim() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// max |α|; kZeroOrder for zero.
  int order() const;
  /// Largest coefficient degree; -1 for zero.
  int coeff_degree() const;
  Poly coeff(const MultiIndex& alpha) const;

  void add_term(const MultiIndex& alpha, const Poly& f);

  DiffOp& operator+=(const DiffOp& o);
  DiffOp& operator-=(const DiffOp& o);
  DiffOp& operator*=(const Rat& c);
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  friend DiffOp operator*(DiffOp a, const Rat& c) { return a *= c; }
  friend DiffOp operator*(const Rat& c, DiffOp a) { return a *= c; }
  DiffOp operator-() const;
  bool operator==(const DiffOp&) const = default;

  /// Σ D^α ∂^α h
  Poly apply(const Poly& h) const;

  std::string to_string() const;

 private:
  int n_ = 0;
  TermMap terms_;
};

/// Normal form of D∘E via
/// (f∂^α)∘(g∂^β) = Σ_{γ≤α} C(α,γ) f·∂^{α-γ}(g)·∂^{γ+β}.
DiffOp compose(const DiffOp& d, const DiffOp& e);

/// D∘E - E∘D
DiffOp commutator(const DiffOp& d, const DiffOp& e);

/// ξ-degree-k part Σ_{|α|=k} D^α ξ^α; requires order(D) ≤ k.
SymbolPoly symbol_k(const DiffOp& d, int k);

/// symbol_k(D, order D); zero for the zero operator.
SymbolPoly principal_symbol(const DiffOp& d);

/// Names d1..dn.
std::vector<std::string> d_names(int n);

}  // namespace qpa
