#pragma once

#include <vector>

#include "qpa/poly.hpp"
#include "qpa/symbol_poly.hpp"

namespace qpa {

/// Polynomial vector field X = Σ Xⁱ ∂ᵢ on ℝⁿ.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(int n);
  explicit VectorField(std::vector<Poly> components);

  static VectorField partial(int n, int i);

  int dim() const { return static_cast<int>(c_.size()); }
  const Poly& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  Poly& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  const std::vector<Poly>& components() const { return c_; }
  bool is_zero() const;
  /// Largest component degree; -1 for the zero field.
  int degree() const;

  /// X(f) = Σ Xⁱ ∂ᵢ f
  Poly apply(const Poly& f) const;

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(const Rat& c, const VectorField& v);
  /// f·X
  friend VectorField operator*(const Poly& f, const VectorField& v);
  VectorField operator-() const;
  bool operator==(const VectorField&) const = default;

  std::string to_string() const;

 private:
  std::vector<Poly> c_;
};

/// Lie bracket [X,Z] = X∘Z - Z∘X as derivations of functions.
VectorField bracket(const VectorField& x, const VectorField& z);

/// P_X = Σ Xⁱ ξᵢ
SymbolPoly to_symbol(const VectorField& x);

/// Closed 1-form ω = Σ ωᵢ dxⁱ with polynomial coefficients.
class ClosedOneForm {
 public:
  ClosedOneForm() = default;
  explicit ClosedOneForm(int n);
  /// Throws PreconditionError unless ∂ᵢωⱼ = ∂ⱼωᵢ.
  explicit ClosedOneForm(std::vector<Poly> components);

  /// df
  static ClosedOneForm exact(const Poly& f);
  /// ∂ᵢωⱼ = ∂ⱼωᵢ for all i, j.
  static bool is_closed(const std::vector<Poly>& components);

  int dim() const { return static_cast<int>(c_.size()); }
  const Poly& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  const std::vector<Poly>& components() const { return c_; }
  bool is_zero() const;

  /// ω(X) = Σ ωᵢ Xⁱ
  Poly operator()(const VectorField& x) const;

  /// f with df = ω and f(0) = 0, by radial integration of each monomial.
  Poly potential() const;

  ClosedOneForm operator+(const ClosedOneForm& o) const;
  ClosedOneForm operator*(const Rat& c) const;
  bool operator==(const ClosedOneForm&) const = default;

  std::string to_string() const;

 private:
  std::vector<Poly> c_;
};

/// {F,G} = Σᵢ ∂_{ξᵢ}F ∂_{xⁱ}G - ∂_{xⁱ}F ∂_{ξᵢ}G, so that {ξᵢ, xⁱ} = 1.
SymbolPoly poisson_bracket(const SymbolPoly& f, const SymbolPoly& g);

/// (i-1)Pᵢ on each ξ-homogeneous component Pᵢ.
SymbolPoly deg_derivation(const SymbolPoly& p);

/// ωᵛ(P) = Σᵢ ωᵢ ∂_{ξᵢ}P
SymbolPoly vertical_lift(const ClosedOneForm& w, const SymbolPoly& p);

}  // namespace qpa
