#include "qpa/symbols.hpp"

#include <algorithm>
#include <sstream>

#include "qpa/errors.hpp"

namespace qpa {

namespace {

void check_dim(int a, int b, const char* op) {
  if (a != b) throw DimensionError(std::string(op) + ": dimension mismatch");
}

std::string list_string(const std::vector<Poly>& c) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? ", " : "") << c[i].to_string();
  os << "]";
  return os.str();
}

}  // namespace

VectorField::VectorField(int n) : c_(static_cast<std::size_t>(n), Poly(n)) {}

VectorField::VectorField(std::vector<Poly> components) : c_(std::move(components)) {
  for (const auto& p : c_) check_dim(p.dim(), dim(), "VectorField");
}

VectorField VectorField::partial(int n, int i) {
  VectorField v(n);
  v[i] = Poly::constant(n, Rat(1));
  return v;
}

bool VectorField::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Poly& p) { return p.is_zero(); });
}

int VectorField::degree() const {
  int d = -1;
  for (const auto& p : c_) d = std::max(d, p.degree());
  return d;
}

Poly VectorField::apply(const Poly& f) const {
  check_dim(f.dim(), dim(), "VectorField::apply");
  Poly r(dim());
  for (int i = 0; i < dim(); ++i)
    if (!c_[static_cast<std::size_t>(i)].is_zero()) r += c_[static_cast<std::size_t>(i)] * f.diff(i);
  return r;
}

VectorField& VectorField::operator+=(const VectorField& o) {
  check_dim(dim(), o.dim(), "VectorField add");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  check_dim(dim(), o.dim(), "VectorField sub");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

VectorField operator*(const Rat& c, const VectorField& v) {
  VectorField r = v;
  for (auto& p : r.c_) p *= c;
  return r;
}

VectorField operator*(const Poly& f, const VectorField& v) {
  VectorField r = v;
  for (auto& p : r.c_) p = f * p;
  return r;
}

VectorField VectorField::operator-() const { return Rat(-1) * *this; }

std::string VectorField::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < dim(); ++i) {
    const Poly& p = c_[static_cast<std::size_t>(i)];
    if (p.is_zero()) continue;
    os << (first ? "" : " + ") << "(" << p.to_string() << ")*d" << (i + 1);
    first = false;
  }
  return first ? "0" : os.str();
}

VectorField bracket(const VectorField& x, const VectorField& z) {
  check_dim(x.dim(), z.dim(), "bracket");
  VectorField r(x.dim());
  for (int i = 0; i < x.dim(); ++i) r[i] = x.apply(z[i]) - z.apply(x[i]);
  return r;
}

SymbolPoly to_symbol(const VectorField& x) {
  const int n = x.dim();
  SymbolPoly s(n);
  for (int i = 0; i < n; ++i)
    s += SymbolPoly::from_coefficient(x[i], MultiIndex::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(i)));
  return s;
}

ClosedOneForm::ClosedOneForm(int n) : c_(static_cast<std::size_t>(n), Poly(n)) {}

ClosedOneForm::ClosedOneForm(std::vector<Poly> components) : c_(std::move(components)) {
  for (const auto& p : c_) check_dim(p.dim(), dim(), "ClosedOneForm");
  if (!is_closed(c_)) throw PreconditionError("1-form is not closed: " + list_string(c_));
}

bool ClosedOneForm::is_closed(const std::vector<Poly>& c) {
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j)
      if (c[j].diff(static_cast<int>(i)) != c[i].diff(static_cast<int>(j))) return false;
  return true;
}

ClosedOneForm ClosedOneForm::exact(const Poly& f) {
  std::vector<Poly> c;
  for (int i = 0; i < f.dim(); ++i) c.push_back(f.diff(i));
  ClosedOneForm w;
  w.c_ = std::move(c);
  return w;
}

bool ClosedOneForm::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Poly& p) { return p.is_zero(); });
}

Poly ClosedOneForm::operator()(const VectorField& x) const {
  check_dim(x.dim(), dim(), "ClosedOneForm apply");
  Poly r(dim());
  for (int i = 0; i < dim(); ++i) r += c_[static_cast<std::size_t>(i)] * x[i];
  return r;
}

Poly ClosedOneForm::potential() const {
  // f(x) = ∫₀¹ Σᵢ xⁱ ωᵢ(tx) dt; a monomial c·x^α in ωᵢ contributes
  // c·x^α·xⁱ/(|α|+1).
  const int n = dim();
  Poly f(n);
  for (int i = 0; i < n; ++i)
    for (const auto& [a, c] : c_[static_cast<std::size_t>(i)].terms()) {
      MultiIndex b = a;
      b[static_cast<std::size_t>(i)] += 1;
      f.add_term(b, c / (a.total() + 1));
    }
  return f;
}

ClosedOneForm ClosedOneForm::operator+(const ClosedOneForm& o) const {
  check_dim(dim(), o.dim(), "ClosedOneForm add");
  ClosedOneForm w = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) w.c_[i] += o.c_[i];
  return w;
}

ClosedOneForm ClosedOneForm::operator*(const Rat& c) const {
  ClosedOneForm w = *this;
  for (auto& p : w.c_) p *= c;
  return w;
}

std::string ClosedOneForm::to_string() const { return list_string(c_); }

SymbolPoly poisson_bracket(const SymbolPoly& f, const SymbolPoly& g) {
  check_dim(f.dim(), g.dim(), "poisson_bracket");
  SymbolPoly r(f.dim());
  for (int i = 0; i < f.dim(); ++i) {
    r += f.diff_xi(i) * g.diff_x(i);
    r -= f.diff_x(i) * g.diff_xi(i);
  }
  return r;
}

SymbolPoly deg_derivation(const SymbolPoly& p) {
  const int n = p.dim();
  Poly out(2 * n);
  for (const auto& [a, c] : p.raw().terms()) {
    int i = a.slice(static_cast<std::size_t>(n), static_cast<std::size_t>(n)).total();
    out.add_term(a, c * (i - 1));
  }
  return SymbolPoly::from_raw(n, std::move(out));
}

SymbolPoly vertical_lift(const ClosedOneForm& w, const SymbolPoly& p) {
  check_dim(w.dim(), p.dim(), "vertical_lift");
  SymbolPoly r(p.dim());
  for (int i = 0; i < p.dim(); ++i) r += SymbolPoly::from_function(w[i]) * p.diff_xi(i);
  return r;
}

}  // namespace qpa
