#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qpa/derivations.hpp"

namespace qpa {

/// Exact: nilpotent generator, rational time, polynomial flow data.
/// Numeric: dense double-precision exponential and quadrature.
enum class Mode { Exact, Numeric };
const char* to_string(Mode m);
/// "exact" or "numeric"; throws PreconditionError otherwise.
Mode parse_mode(const std::string& s);

/// Y(x) = Ax + b.
class AffineField {
 public:
  using Matrix = AffineMap::Matrix;

  AffineField() = default;
  AffineField(Matrix a, std::vector<Rat> b);
  /// Throws PreconditionError unless every component has degree ≤ 1.
  static AffineField from_field(const VectorField& y);

  int dim() const { return static_cast<int>(b_.size()); }
  const Matrix& a() const { return a_; }
  const std::vector<Rat>& b() const { return b_; }
  bool nilpotent() const { return nilpotent_; }
  Rat trace() const;
  VectorField to_field() const;
  AffineField operator-() const;

 private:
  Matrix a_;
  std::vector<Rat> b_;
  bool nilpotent_ = true;
};

/// Exp(tY) as an affine map.
struct FlowMap {
  AffineField generator;
  Rat t;
  Mode mode = Mode::Exact;
  AffineMap map;
};

/// x ↦ e^{tA}x + (∫₀ᵗ e^{sA}ds) b. Exact mode requires A nilpotent.
FlowMap flow(const AffineField& y, const Rat& t, Mode mode);

/// Exact flow with symbolic time: n+1 variables, the last one is t.
std::vector<Poly> symbolic_flow(const AffineField& y);

/// Div φ = ln|det ∂ₓφ|, constant for affine maps. Exact mode needs det = 1.
Poly group_divergence(const AffineMap& phi, Mode mode);
Poly group_divergence(const FlowMap& phi);

/// Comparison of two sides of an identity.
struct CheckReport {
  bool passed = false;
  std::string lhs, rhs;
  double residual = 0.0;
  Mode mode = Mode::Exact;
};

/// Div(φ∘ψ) = ψ*(Div φ) + Div ψ
CheckReport div_cocycle_check(const FlowMap& phi, const FlowMap& psi);
/// Div Exp(tY) = ∫₀ᵗ div Y ∘ Exp(sY) ds
CheckReport div3_check(const AffineField& y, const Rat& t, Mode mode);
/// div(φ_*X) = (div X + d(Div φ)(X)) ∘ φ⁻¹
CheckReport pushpull_check(const FlowMap& phi, const VectorField& x);

/// K_t = e^{κt}
Rat k_factor(const Rat& kappa, const Rat& t, Mode mode);
/// Λ_t = λ(e^{κt}-1)/κ, and λt at κ = 0.
Rat lambda_factor(const Rat& kappa, const Rat& lambda, const Rat& t, Mode mode);

/// ∫ₐᵇ F(s) ds for a polynomial-valued F, by adaptive Gauss–Legendre with
/// absolute coefficient tolerance `tol`. Coefficients are double precision.
Poly integrate_numeric(const std::function<Poly(double)>& f, double a, double b, double tol = 1e-12);

/// Φ_t(u) for the one-parameter group generated by deriv_d1(p, ·).
/// Y must be affine; exact mode also needs Y nilpotent and κ = 0.
FirstOrderOp one_param_group(const Deriv1Params& p, const Rat& t, const FirstOrderOp& u, Mode mode);

/// Exact when Y is nilpotent affine and κ = 0, numeric otherwise.
Mode natural_mode(const Deriv1Params& p);

/// Largest |a(h)(x) - b(h)(x)| over h ∈ {1, xᵢ, xᵢxⱼ} and x ∈ {0, ±1, ±1/2}ⁿ.
double probe_distance(const FirstOrderOp& a, const FirstOrderOp& b);

struct GeneratorReport {
  bool passed = false;
  std::vector<double> steps, errors;
  /// Smallest measured order over h, h/2, h/4; negative if not measurable.
  double order = -1.0;
};

/// Central difference of Φ_t(u) at t = 0 against deriv_d1(p, u).
GeneratorReport generator_check(const Deriv1Params& p, const FirstOrderOp& u, const Rat& h, Mode mode);

/// Strictly triangular linear part up to a coordinate swap, random offset.
AffineField random_nilpotent_field(Rng& rng, int n);
/// Small random linear part and offset.
AffineField random_affine_field(Rng& rng, int n);

}  // namespace qpa
