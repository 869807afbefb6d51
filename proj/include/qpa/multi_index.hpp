#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "qpa/rational.hpp"

namespace qpa {

/// Exponent vector α = (α¹,…,αⁿ) of non-negative integers.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t n) : e_(n, 0) {}
  MultiIndex(std::initializer_list<int> e) : e_(e) {}
  explicit MultiIndex(std::vector<int> e) : e_(std::move(e)) {}

  static MultiIndex unit(std::size_t n, std::size_t i) {
    MultiIndex m(n);
    m.e_[i] = 1;
    return m;
  }

  std::size_t size() const { return e_.size(); }
  int operator[](std::size_t i) const { return e_[i]; }
  int& operator[](std::size_t i) { return e_[i]; }
  const std::vector<int>& exponents() const { return e_; }

  int total() const {
    int s = 0;
    for (int v : e_) s += v;
    return s;
  }

  /// Componentwise γ ≤ α.
  bool dominates(const MultiIndex& g) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (g.e_[i] > e_[i]) return false;
    return true;
  }

  /// α! = Πᵢ αⁱ!
  Rat factorial() const;
  /// C(α,γ) = Πᵢ C(αⁱ,γⁱ)
  Rat binomial(const MultiIndex& g) const;

  MultiIndex operator+(const MultiIndex& o) const;
  MultiIndex operator-(const MultiIndex& o) const;

  /// Concatenation (α, β), as for (x, ξ) exponent pairs.
  MultiIndex concat(const MultiIndex& o) const;
  MultiIndex slice(std::size_t first, std::size_t count) const;

  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;

 private:
  std::vector<int> e_;
};

/// All γ ≤ α, in lexicographic order.
std::vector<MultiIndex> sub_indices(const MultiIndex& a);

/// All multi-indices in n variables with |α| = k.
std::vector<MultiIndex> indices_of_degree(std::size_t n, int k);

/// Graded-lex "greater first" order used for printing.
bool grlex_greater(const MultiIndex& a, const MultiIndex& b);

}  // namespace qpa
