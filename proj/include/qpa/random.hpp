#pragma once

#include <cstdint>
#include <random>

#include "qpa/diffop.hpp"
#include "qpa/poly.hpp"
#include "qpa/symbol_poly.hpp"
#include "qpa/symbols.hpp"
#include "qpa/trig_poly.hpp"

namespace qpa {

/// Seeded source of small random algebraic data for property checks.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  double uniform_real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }
  /// Nonzero p/q with |p| ≤ 5, 1 ≤ q ≤ 3.
  Rat small_rat();
  /// Possibly zero rational of the same size.
  Rat small_rat_or_zero();

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

Poly random_poly(Rng& rng, int n, int max_degree, int max_terms);
SymbolPoly random_symbol(Rng& rng, int n, int max_x_degree, int max_xi_degree, int max_terms);
/// Symbol homogeneous of ξ-degree k.
SymbolPoly random_homogeneous_symbol(Rng& rng, int n, int max_x_degree, int k, int max_terms);
DiffOp random_diffop(Rng& rng, int n, int max_order, int max_coeff_degree, int max_terms);
/// Operator whose top-order part is nonzero at exactly `order`.
DiffOp random_diffop_of_order(Rng& rng, int n, int order, int max_coeff_degree, int max_terms);
VectorField random_field(Rng& rng, int n, int max_degree, int max_terms);
/// df for a random f of degree ≤ max_degree + 1.
ClosedOneForm random_closed_form(Rng& rng, int n, int max_degree, int max_terms);
TrigPoly random_trig(Rng& rng, Parity parity, int max_mode, int max_terms);

}  // namespace qpa
