#pragma once

#include "qpa/diffop.hpp"
#include "qpa/poly.hpp"
#include "qpa/symbol_poly.hpp"

namespace testing_helpers {

using qpa::DiffOp;
using qpa::MultiIndex;
using qpa::Poly;
using qpa::Rat;
using qpa::SymbolPoly;

inline Poly X(int n, int i) { return Poly::variable(n, i); }
inline Poly C(int n, const Rat& c) { return Poly::constant(n, c); }
inline SymbolPoly SX(int n, int i) { return SymbolPoly::x(n, i); }
inline SymbolPoly XI(int n, int i) { return SymbolPoly::xi(n, i); }
inline SymbolPoly SC(int n, const Rat& c) { return SymbolPoly::constant(n, c); }
inline DiffOp D(int n, int i) { return DiffOp::partial(n, i); }
inline DiffOp M(const Poly& f) { return DiffOp::multiplication(f); }
inline DiffOp Id(int n) { return DiffOp::identity(n); }
inline Rat R(long p, long q = 1) {
  Rat r(p, q);
  r.canonicalize();
  return r;
}

}  // namespace testing_helpers
