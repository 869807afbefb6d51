#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpa/diffop.hpp"
#include "qpa/symbol_poly.hpp"

namespace qpa {

/// Affine symbol map (normal ordering): f ∂^α ↦ f ξ^α.
SymbolPoly sigma_aff(const DiffOp& d);

/// Canonical quantization, the inverse of sigma_aff.
DiffOp q_affine(const SymbolPoly& p);

/// Truncated formal series Σ_{k≤N} ℏᵏ Pₖ with symbol coefficients.
class HSeries {
 public:
  HSeries(int n, int order);

  int dim() const { return n_; }
  int order() const { return static_cast<int>(c_.size()) - 1; }
  const SymbolPoly& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  SymbolPoly& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  const std::vector<SymbolPoly>& coefficients() const { return c_; }

  /// Adds ℏᵏ p; terms beyond the truncation order are dropped.
  void add(int k, const SymbolPoly& p);

  HSeries& operator+=(const HSeries& o);
  HSeries& operator-=(const HSeries& o);
  friend HSeries operator-(HSeries a, const HSeries& b) { return a -= b; }
  bool operator==(const HSeries&) const = default;

  /// "P0 + hbar*(P1) + hbar^2*(P2) + O(hbar^3)"
  std::string to_string() const;

 private:
  int n_;
  std::vector<SymbolPoly> c_;
};

/// F ∗ℏ G truncated at ℏᴺ, by the closed form
/// coefficient of ℏᵏ = Σ_{|α|=k} (1/α!) ∂_ξ^α F · ∂_x^α G.
HSeries star(const SymbolPoly& f, const SymbolPoly& g, int order);

/// F ∗ℏ G from its definition Q_ℏ⁻¹(Q_ℏF ∘ Q_ℏG), Q_ℏP = ℏᵏ q_affine(P)
/// on ξ-degree-k components, with the composition done in DiffOp.
HSeries star_by_composition(const SymbolPoly& f, const SymbolPoly& g, int order);

/// ℏ-bilinear extension of star to truncated series.
HSeries star(const HSeries& a, const HSeries& b);

/// Lifts a symbol to a series concentrated in ℏ⁰.
HSeries as_series(const SymbolPoly& p, int order);

/// Searches operators of order ≤ max_order with monomial coefficients of
/// degree ≤ max_coeff_degree for one violating
/// σ_aff([q_affine(P_X), D]) = {P_X, σ_aff(D)}. Returns the first such D.
std::optional<DiffOp> find_equivariance_counterexample(const VectorField& x, int max_order,
                                                       int max_coeff_degree);

}  // namespace qpa
