#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "qpa/multi_index.hpp"
#include "qpa/rational.hpp"

namespace qpa {

/// Sparse polynomial in n variables with exact rational coefficients.
///
/// Zero coefficients are never stored, so two polynomials are equal iff
/// their term maps are equal. Variables are indexed from 0; they print as
/// x1..xn unless other names are supplied.
class Poly {
 public:
  using TermMap = std::map<MultiIndex, Rat>;

  Poly() = default;
  explicit Poly(int n) : n_(n) {}

  static Poly constant(int n, const Rat& c);
  static Poly variable(int n, int i);
  static Poly monomial(const MultiIndex& a, const Rat& c);

  int dim() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  /// Largest exponent of one variable; -1 for zero.
  int degree_in(int var) const;
  Rat coeff(const MultiIndex& a) const;
  /// Constant term.
  Rat constant_term() const;

  void add_term(const MultiIndex& a, const Rat& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rat& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rat& c) { return a *= c; }
  friend Poly operator*(const Rat& c, Poly a) { return a *= c; }
  Poly operator-() const;

  bool operator==(const Poly& o) const = default;

  Poly pow(unsigned k) const;
  /// ∂/∂x_var
  Poly diff(int var) const;
  /// ∂^α
  Poly diff(const MultiIndex& a) const;
  /// Antiderivative in `var` with zero constant of integration.
  Poly integrate(int var) const;

  Rat eval(std::span<const Rat> point) const;
  double eval(std::span<const double> point) const;

  /// p(images[0], ..., images[n-1]); all images share one dimension m,
  /// which becomes the dimension of the result.
  Poly substitute(const std::vector<Poly>& images) const;
  /// Replaces one variable by a constant; dimension unchanged.
  Poly eval_var(int var, const Rat& value) const;
  /// Reinterprets in `m` variables. Growing appends unused variables;
  /// shrinking requires the dropped variables to be absent.
  Poly resize(int m) const;

  /// Coefficients rounded to double precision.
  Poly rounded() const;
  /// Largest |coefficient| as a double; 0 for the zero polynomial.
  double max_abs_coeff() const;

  /// Exact division; returns false (and leaves q untouched) if `d` does not
  /// divide this polynomial.
  bool divide_exact(const Poly& d, Poly& q) const;

  std::string to_string() const;
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  int n_ = 0;
  TermMap terms_;
};

/// Names x1..xn.
std::vector<std::string> x_names(int n);

/// Shared pretty printer: `terms` as coefficient/exponent pairs, printed in
/// graded-lex order with the given variable names.
std::string format_terms(const std::vector<std::pair<MultiIndex, Rat>>& terms,
                         const std::vector<std::string>& names);

}  // namespace qpa
