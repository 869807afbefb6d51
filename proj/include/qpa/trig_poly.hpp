#pragma once

#include <map>
#include <string>
#include <utility>

#include "qpa/rational.hpp"

namespace qpa {

/// Integer modes (functions on S¹) or half-integer modes (sections of the
/// Möbius bundle, s(θ+2π) = -s(θ)).
enum class Parity { Periodic, Antiperiodic };

Parity operator*(Parity a, Parity b);
const char* to_string(Parity p);

/// Real trigonometric polynomial Σ a_k cos kθ + b_k sin kθ with exact
/// coefficients. Modes are stored as m = 2k ≥ 0, so m is even for Periodic
/// and odd for Antiperiodic data.
class TrigPoly {
 public:
  struct Mode {
    Rat cos;
    Rat sin;
    bool operator==(const Mode&) const = default;
  };
  using ModeMap = std::map<int, Mode>;

  TrigPoly() = default;
  explicit TrigPoly(Parity p) : parity_(p) {}

  static TrigPoly constant(const Rat& c);
  /// c·cos(kθ); k must be a non-negative integer or half-integer.
  static TrigPoly cos(const Rat& k, const Rat& c = Rat(1));
  static TrigPoly sin(const Rat& k, const Rat& c = Rat(1));

  Parity parity() const { return parity_; }
  const ModeMap& modes() const { return modes_; }
  bool is_zero() const { return modes_.empty(); }
  bool is_constant() const;
  /// Highest stored 2k; -1 for zero.
  int max_twice_mode() const;

  /// Adds c·cos(mθ/2) (m may be negative).
  void add_cos(int twice_mode, const Rat& c);
  /// Adds c·sin(mθ/2) (m may be negative; m = 0 contributes nothing).
  void add_sin(int twice_mode, const Rat& c);

  TrigPoly& operator+=(const TrigPoly& o);
  TrigPoly& operator-=(const TrigPoly& o);
  TrigPoly& operator*=(const Rat& c);
  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);
  friend TrigPoly operator*(TrigPoly a, const Rat& c) { return a *= c; }
  friend TrigPoly operator*(const Rat& c, TrigPoly a) { return a *= c; }
  TrigPoly operator-() const;
  /// Zero compares equal across parities.
  bool operator==(const TrigPoly& o) const {
    return modes_ == o.modes_ && (parity_ == o.parity_ || modes_.empty());
  }

  TrigPoly pow(unsigned k) const;
  /// d/dθ; parity preserved.
  TrigPoly diff() const;
  TrigPoly diff(int k) const;

  double eval(double theta) const;
  /// Exact values at θ = 0 and θ = π.
  Rat at_zero() const;
  Rat at_pi() const;

  std::string to_string() const;

 private:
  void check_mode(int twice_mode) const;
  void prune(int twice_mode);

  Parity parity_ = Parity::Periodic;
  ModeMap modes_;
};

/// Derivative of a periodic or antiperiodic trig polynomial.
inline TrigPoly trig_diff(const TrigPoly& a) { return a.diff(); }

}  // namespace qpa
