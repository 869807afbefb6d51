#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpa/diffop.hpp"
#include "qpa/symbol_poly.hpp"
#include "qpa/symbols.hpp"

namespace qpa {

struct DensityWeight {
  Rat lambda;
};

/// Projective vector fields on ℝⁿ: ∂ᵢ, xᵢ∂ⱼ, xᵢE with E = Σ xⱼ∂ⱼ.
/// n² + 2n fields, in that order.
std::vector<VectorField> sl_generators(int n);
/// The affine part: ∂ᵢ and xᵢ∂ⱼ.
std::vector<VectorField> affine_generators(int n);

/// Coordinates of v in the span of `basis`, if it lies there.
std::optional<std::vector<Rat>> span_coordinates(const std::vector<VectorField>& basis, const VectorField& v);
/// Rank of a family of vector fields.
int field_rank(const std::vector<VectorField>& fields);

/// L_X^λ = X + λ·m_{div X}
DiffOp density_lie_field(const VectorField& x, const DensityWeight& w);
/// [L_X^λ, D]
DiffOp density_lie_derivative(const VectorField& x, const DensityWeight& w, const DiffOp& d);
/// {Σ Xⁱξᵢ, F}
SymbolPoly classical_action(const VectorField& x, const SymbolPoly& f);

/// Div = Σᵢ ∂_{xⁱ}∂_{ξᵢ}
SymbolPoly divergence_operator(const SymbolPoly& p);

enum class SolveStatus { Unique, NonUnique, NoSolution, SliceTooSmall };
std::string to_string(SolveStatus s);

/// Quantization Q(P) = Σ_m Σ_j c_{m,j} q_affine(Divʲ P_m) over ξ-homogeneous
/// parts P_m, with c_{m,0} = 1. The symbol map is its inverse.
struct EquivariantSolution {
  int n = 1;
  int k = 0;
  DensityWeight weight;
  /// c[m][j] for 0 ≤ j ≤ m ≤ k.
  std::vector<std::vector<Rat>> c;
  SolveStatus status = SolveStatus::Unique;
  int unknowns = 0;
  int rank = 0;
  /// Coefficient x-degree bound of the test slice.
  int slice_degree = 0;

  /// All corrections zero: the affine symbol map.
  static EquivariantSolution affine(int n, int k, const DensityWeight& w);
  const Rat& coeff(int m, int j) const { return c[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)]; }
};

/// Solves for the corrections making the symbol map intertwine every
/// projective generator on the slice. slice_degree < 0 selects k + 2.
/// Requires 1 ≤ n ≤ 2 and 0 ≤ k ≤ 4.
EquivariantSolution solve_equivariant_symbol(int n, int k, const DensityWeight& w, int slice_degree = -1);

DiffOp quantize_sl(const EquivariantSolution& s, const SymbolPoly& p);
SymbolPoly sigma_sl(const EquivariantSolution& s, const DiffOp& d);

enum class GeneratorSet { Affine, Full };

struct IntertwiningReport {
  bool passed = true;
  int samples = 0;
  int checks = 0;
  /// First counterexample: generator, operator, σ(𝓛_X D), L_X σ(D).
  std::string generator, op, lhs, rhs;
};

/// Exact check of σ∘𝓛_X = L_X∘σ and of the normalization on random
/// operators of order ≤ k with coefficients in the slice.
IntertwiningReport verify_intertwining(const EquivariantSolution& s, int samples, std::uint64_t seed,
                                       GeneratorSet gens = GeneratorSet::Full);

}  // namespace qpa
