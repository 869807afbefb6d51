#pragma once

#include <functional>
#include <optional>
#include <string>

#include "qpa/diffop.hpp"
#include "qpa/random.hpp"
#include "qpa/symbol_poly.hpp"
#include "qpa/symbols.hpp"

namespace qpa {

/// f + X ∈ D¹ = A ⊕ X(ℝⁿ).
struct FirstOrderOp {
  Poly f;
  VectorField x;

  FirstOrderOp() = default;
  FirstOrderOp(Poly f_, VectorField x_);
  static FirstOrderOp function(const Poly& f);
  static FirstOrderOp field(const VectorField& x);
  static FirstOrderOp from_diffop(const DiffOp& d);

  int dim() const { return f.dim(); }
  DiffOp to_diffop() const;
  Poly apply(const Poly& h) const { return f * h + x.apply(h); }

  FirstOrderOp operator+(const FirstOrderOp& o) const;
  FirstOrderOp operator-(const FirstOrderOp& o) const;
  FirstOrderOp operator*(const Rat& c) const;
  bool operator==(const FirstOrderOp&) const = default;

  /// Coefficients rounded to double precision.
  FirstOrderOp rounded() const;
  std::string to_string() const;
};

/// [f+X, g+Z] = [X,Z] + X(g) - Z(f)
FirstOrderOp bracket(const FirstOrderOp& u, const FirstOrderOp& v);

/// div X = Σ ∂ᵢXⁱ (Lebesgue density on ℝⁿ).
Poly divergence(const VectorField& x);

/// Generator data (Y, κ, λ, ω) of a derivation of D¹.
struct Deriv1Params {
  VectorField y;
  Rat kappa;
  Rat lambda;
  ClosedOneForm omega;

  /// Zero field and zero form in n variables.
  static Deriv1Params zero(int n);
};

/// C(f+X) = [Y, f+X] + κf + λ div X + ω(X)
FirstOrderOp deriv_d1(const Deriv1Params& p, const FirstOrderOp& u);

/// C(P) = {Q,P} - κ Deg P + ωᵛ(P)
SymbolPoly deriv_s(const SymbolPoly& q, const Rat& kappa, const ClosedOneForm& w, const SymbolPoly& p);

/// Lowering derivation ω̄(D) = [D, m_f] with df = ω.
DiffOp omega_bar(const ClosedOneForm& w, const DiffOp& d);

/// C(D) = [Δ, D] + ω̄(D)
DiffOp deriv_d(const DiffOp& delta, const ClosedOneForm& w, const DiffOp& d);

/// Affine diffeomorphism x ↦ Mx + c with exact entries.
class AffineMap {
 public:
  using Matrix = std::vector<std::vector<Rat>>;

  AffineMap() = default;
  AffineMap(Matrix m, std::vector<Rat> c);
  static AffineMap identity(int n);
  static AffineMap translation(std::vector<Rat> c);

  int dim() const { return static_cast<int>(c_.size()); }
  const Matrix& linear() const { return m_; }
  const std::vector<Rat>& offset() const { return c_; }

  Rat determinant() const;
  bool invertible() const { return determinant() != 0; }
  /// Throws PreconditionError when singular.
  AffineMap inverse() const;
  /// (this ∘ o)(x) = this(o(x))
  AffineMap compose(const AffineMap& o) const;

  /// Component polynomials φⁱ(x).
  std::vector<Poly> components() const;
  /// f ∘ φ
  Poly pullback(const Poly& f) const;
  /// φ_*X = (Dφ·X) ∘ φ⁻¹
  VectorField push_forward(const VectorField& x) const;
  /// Same, with φ⁻¹ supplied by the caller.
  VectorField push_forward(const VectorField& x, const AffineMap& inverse) const;
  /// (φ*ω)(X) as a function: Σᵢ ωᵢ(φ(x)) (M X(x))ⁱ
  Poly pullback_form_on(const ClosedOneForm& w, const VectorField& x) const;

  AffineMap rounded() const;
  bool operator==(const AffineMap&) const = default;

 private:
  Matrix m_;
  std::vector<Rat> c_;
};

/// Automorphism data (φ, K, Λ, Ω) of D¹.
struct AutoParams {
  AffineMap phi;
  Rat k;
  Rat lambda;
  ClosedOneForm omega;
};

/// Φ(f+X) = φ_*X + (Kf + Λ div X + Ω(X)) ∘ φ⁻¹
FirstOrderOp automorphism_d1(const AutoParams& a, const FirstOrderOp& u);

enum class Algebra { D1, S, D };
const char* to_string(Algebra a);

/// Outcome of a Leibniz check C[u,v] = [Cu,v] + [u,Cv].
struct DerivationReport {
  bool passed = true;
  int samples = 0;
  std::string u, v, lhs, rhs;  ///< first counterexample, if any
};

/// Exact Leibniz verifier over an arbitrary bracket algebra.
template <class T>
DerivationReport check_derivation_generic(const std::function<T(const T&)>& c,
                                          const std::function<T(const T&, const T&)>& br,
                                          const std::function<T(Rng&)>& sample, int samples,
                                          std::uint64_t seed,
                                          const std::function<std::string(const T&)>& show) {
  DerivationReport rep;
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    T u = sample(rng), v = sample(rng);
    T lhs = c(br(u, v));
    T rhs = br(c(u), v) + br(u, c(v));
    ++rep.samples;
    if (!(lhs == rhs)) {
      rep.passed = false;
      rep.u = show(u);
      rep.v = show(v);
      rep.lhs = show(lhs);
      rep.rhs = show(rhs);
      return rep;
    }
  }
  return rep;
}

/// Random samplers used by check_derivation; n variables, desk-scale degrees.
FirstOrderOp random_first_order(Rng& rng, int n);
SymbolPoly random_sample_symbol(Rng& rng, int n);
DiffOp random_sample_diffop(Rng& rng, int n);

Deriv1Params random_deriv1_params(Rng& rng, int n);
/// Invertible affine map with small rational entries.
AffineMap random_affine_map(Rng& rng, int n);

DerivationReport check_derivation(const std::function<FirstOrderOp(const FirstOrderOp&)>& c, int n,
                                  int samples, std::uint64_t seed);
DerivationReport check_derivation(const std::function<SymbolPoly(const SymbolPoly&)>& c, int n,
                                  int samples, std::uint64_t seed);
DerivationReport check_derivation(const std::function<DiffOp(const DiffOp&)>& c, int n, int samples,
                                  std::uint64_t seed);

/// Deg transported to D through the affine symbol map; not a derivation.
DiffOp deg_via_sigma_aff(const DiffOp& d);

}  // namespace qpa
