#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "qpa/diffop.hpp"
#include "qpa/trig_poly.hpp"

namespace qpa {

/// Σ c_j(θ) (d/dθ)^j on S¹ with periodic coefficients.
class CircleOp {
 public:
  CircleOp() = default;

  static CircleOp identity();
  /// m_c; c must be periodic.
  static CircleOp multiplication(const TrigPoly& c);
  /// d/dθ
  static CircleOp derivative();
  /// c (d/dθ)^j
  static CircleOp term(const TrigPoly& c, int j);

  bool is_zero() const { return c_.empty(); }
  /// Highest j with c_j ≠ 0; kZeroOrder for zero.
  int order() const;
  /// c_j (zero when absent).
  TrigPoly coeff(int j) const;
  const std::vector<TrigPoly>& coeffs() const { return c_; }

  void add_term(int j, const TrigPoly& c);

  CircleOp& operator+=(const CircleOp& o);
  CircleOp& operator-=(const CircleOp& o);
  CircleOp& operator*=(const Rat& c);
  friend CircleOp operator+(CircleOp a, const CircleOp& b) { return a += b; }
  friend CircleOp operator-(CircleOp a, const CircleOp& b) { return a -= b; }
  friend CircleOp operator*(CircleOp a, const Rat& c) { return a *= c; }
  bool operator==(const CircleOp&) const = default;

  /// Works on sections of either parity; parity is preserved.
  TrigPoly apply(const TrigPoly& s) const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<TrigPoly> c_;
};

CircleOp compose(const CircleOp& d, const CircleOp& e);
CircleOp commutator(const CircleOp& d, const CircleOp& e);

enum class ModelKind { TrivialRn, TrivialS1, MoebiusS1 };

/// Rank-1 bundle given by charts and ±1 transition signs. On S¹ the two
/// arcs U₀ ∋ 0 and U₁ ∋ π overlap in two components; the product of the two
/// signs is the monodromy.
struct BundleModel {
  ModelKind kind = ModelKind::TrivialRn;
  int n = 1;
  std::vector<int> transition_signs;

  static BundleModel trivial_rn(int n);
  static BundleModel trivial_s1();
  static BundleModel moebius_s1();

  int charts() const { return kind == ModelKind::TrivialRn ? 1 : 2; }
  int monodromy() const;
  /// Parity of sections in the global representation.
  Parity section_parity() const;
  bool on_circle() const { return kind != ModelKind::TrivialRn; }
  /// Throws PreconditionError unless the signs are ±1 and agree with the kind.
  void validate() const;
  std::string name() const;
  bool operator==(const BundleModel&) const = default;
};

/// Section of a bundle: a polynomial on ℝⁿ or a trig polynomial on S¹.
struct Section {
  BundleModel model;
  std::variant<Poly, TrigPoly> value;

  static Section of(const BundleModel& m, const Poly& p);
  /// Parity must match the model.
  static Section of(const BundleModel& m, const TrigPoly& t);
  const Poly& poly() const { return std::get<Poly>(value); }
  const TrigPoly& trig() const { return std::get<TrigPoly>(value); }
  bool operator==(const Section&) const = default;
  std::string to_string() const;
};

/// Differential operator on a bundle model.
struct BundleOp {
  BundleModel model;
  std::variant<DiffOp, CircleOp> op;

  static BundleOp of(const BundleModel& m, const DiffOp& d);
  static BundleOp of(const BundleModel& m, const CircleOp& d);
  const DiffOp& diffop() const { return std::get<DiffOp>(op); }
  const CircleOp& circle() const { return std::get<CircleOp>(op); }

  bool is_zero() const;
  /// Representation order; kZeroOrder for zero.
  int order() const;
  BundleOp operator+(const BundleOp& o) const;
  BundleOp operator-(const BundleOp& o) const;
  bool operator==(const BundleOp&) const = default;
  std::string to_string() const;
};

BundleOp compose(const BundleOp& d, const BundleOp& e);
BundleOp commutator(const BundleOp& d, const BundleOp& e);
/// m_f as a bundle operator; f is a Poly on ℝⁿ or a periodic TrigPoly on S¹.
BundleOp multiplication(const BundleModel& m, const std::variant<Poly, TrigPoly>& f);

Section bundle_apply(const BundleOp& d, const Section& s);

/// Smallest k with every (k+1)-fold commutator [..[D, m_f₁].., m_f_{k+1}]
/// zero, for f in the probe set {xᵢ} on ℝⁿ or {cos θ, sin θ} on S¹.
int bundle_order(const BundleOp& d);

/// Per-chart choice of ±η_α.
struct FrameChoice {
  std::vector<int> signs;
  static FrameChoice uniform(const BundleModel& m, int sign = 1);
  FrameChoice flipped() const;
};

/// Local trivialization on chart α: conjugation by the constant frame sign.
BundleOp local_form(const BundleOp& d, const FrameChoice& f, int chart);

/// D(L) → D(M): glue the chart-wise identifications. The image lives on the
/// trivial bundle over the same base.
BundleOp globalize_iso(const BundleModel& model, const FrameChoice& f, const BundleOp& d);

/// Positivity certificate of a gauge function on a chart.
/// On ℝⁿ the chart is {xᵢ > 0 : i ∈ positive_vars}; on S¹ the whole circle.
struct GaugeChart {
  std::vector<int> positive_vars;
};

/// True if ψ is certified nowhere zero on the chart: a nonzero constant; on
/// ℝⁿ ±ψ with positive coefficients, even exponents off the chart variables
/// and a monomial in chart variables only; on S¹ a dominant constant mode.
bool certified_nonvanishing(const std::variant<Poly, TrigPoly>& psi, const GaugeChart& chart);

/// m_ψ ∘ D ∘ m_{ψ⁻¹} evaluated at apply level.
struct GaugedOp {
  BundleOp base;
  std::variant<Poly, TrigPoly> psi;

  /// On ℝⁿ requires ψ | s exactly; throws PreconditionError otherwise.
  /// On S¹ only ψ-scaled sections are supported, via apply_scaled.
  Section apply(const Section& s) const;
  /// Value on the section ψ·e.
  Section apply_scaled(const Section& e) const;
};

/// Gauge change by ψ. Constant ψ returns D itself; non-constant ψ needs a
/// positivity certificate on the chart and yields an apply-level operator.
std::variant<BundleOp, GaugedOp> gauge_transform(const BundleOp& d, const std::variant<Poly, TrigPoly>& psi,
                                                 const GaugeChart& chart = {});

/// Top coefficient at order k: a symbol on T*ℝⁿ or c_k ξᵏ on T*S¹.
struct BaseSymbol {
  int k = 0;
  std::variant<SymbolPoly, TrigPoly> value;
  bool operator==(const BaseSymbol&) const = default;
  std::string to_string() const;
};

/// Requires bundle_order(D) ≤ k.
BaseSymbol symbol_bundle(const BundleOp& d, int k);

/// Poisson bracket of base symbols: {aξⁱ, bξʲ} = (i a b' - j a' b) ξ^{i+j-1} on S¹.
BaseSymbol poisson_bracket(const BaseSymbol& p, const BaseSymbol& q);

/// 1 on the trivial models, cos(θ/2) on the Möbius band.
Section base_section(const BundleModel& m);

/// ad_{f_1}..ad_{f_k}(G)(ψe), ad_f(E) = [E, m_f], evaluated at apply level.
Section gauged_ad(const GaugedOp& g, const std::vector<std::variant<Poly, TrigPoly>>& fs, const Section& e);
/// Same with e = base_section.
Section gauged_ad(const GaugedOp& g, const std::vector<std::variant<Poly, TrigPoly>>& fs);

/// Checks σ_k of the gauged operator against σ_k(D) through
/// ad_{f_1}..ad_{f_k}(G)(ψe) = σ_k(D)(df_1,..,df_k)·ψe
/// for every k-tuple from the coordinate probes.
bool gauge_symbol_invariant(const GaugedOp& g, int k);

/// C_X(D) = [X, D_α] chart by chart. X is a vector field on ℝⁿ or c(θ)d/dθ.
BundleOp deriv_cx(const BundleOp& x, const FrameChoice& f, const BundleOp& d);

struct LocalityReport {
  bool passed = true;
  std::string detail;
};

/// Exact locality probes at θ = 0, π (or x = 0, e₁ on ℝⁿ): with
/// φ = ((1∓cos θ)/2)^{k+1}, D(φs) vanishes at the point and D((1-φ)s)
/// agrees with D(s) there.
LocalityReport locality_check(const BundleOp& d, const Section& s);

class Rng;
/// Random periodic coefficients c_j for j ≤ max_order.
CircleOp random_circle_op(Rng& rng, int max_order);

}  // namespace qpa
