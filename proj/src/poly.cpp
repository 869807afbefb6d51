#include "qpa/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qpa/errors.hpp"

namespace qpa {

namespace {

void check_dim(int a, int b, const char* op) {
  if (a != b)
    throw DimensionError(std::string(op) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
}

}  // namespace

Poly Poly::constant(int n, const Rat& c) {
  Poly p(n);
  p.add_term(MultiIndex(static_cast<std::size_t>(n)), c);
  return p;
}

Poly Poly::variable(int n, int i) {
  if (i < 0 || i >= n) throw DimensionError("variable index out of range");
  Poly p(n);
  p.add_term(MultiIndex::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(i)), Rat(1));
  return p;
}

Poly Poly::monomial(const MultiIndex& a, const Rat& c) {
  Poly p(static_cast<int>(a.size()));
  p.add_term(a, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.total() == 0);
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [a, c] : terms_) d = std::max(d, a.total());
  return d;
}

int Poly::degree_in(int var) const {
  int d = -1;
  for (const auto& [a, c] : terms_) d = std::max(d, a[static_cast<std::size_t>(var)]);
  return d;
}

Rat Poly::coeff(const MultiIndex& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? Rat(0) : it->second;
}

Rat Poly::constant_term() const { return coeff(MultiIndex(static_cast<std::size_t>(n_))); }

void Poly::add_term(const MultiIndex& a, const Rat& c) {
  check_dim(static_cast<int>(a.size()), n_, "add_term");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(a, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  check_dim(n_, o.n_, "add");
  for (const auto& [a, c] : o.terms_) add_term(a, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_dim(n_, o.n_, "sub");
  for (const auto& [a, c] : o.terms_) add_term(a, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  check_dim(a.n_, b.n_, "mul");
  Poly r(a.n_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
  return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [a, v] : terms_) v *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& [a, v] : r.terms_) v = -v;
  return r;
}

Poly Poly::pow(unsigned k) const {
  Poly r = constant(n_, Rat(1));
  Poly base = *this;
  while (k) {
    if (k & 1u) r *= base;
    k >>= 1u;
    if (k) base *= base;
  }
  return r;
}

Poly Poly::diff(int var) const {
  if (var < 0 || var >= n_) throw DimensionError("diff: variable index out of range");
  const auto v = static_cast<std::size_t>(var);
  Poly r(n_);
  for (const auto& [a, c] : terms_) {
    if (a[v] == 0) continue;
    MultiIndex b = a;
    b[v] -= 1;
    r.add_term(b, c * a[v]);
  }
  return r;
}

Poly Poly::diff(const MultiIndex& d) const {
  check_dim(static_cast<int>(d.size()), n_, "diff");
  Poly r(n_);
  for (const auto& [a, c] : terms_) {
    if (!a.dominates(d)) continue;
    Rat f = c;
    for (std::size_t i = 0; i < d.size(); ++i)
      for (int k = 0; k < d[i]; ++k) f *= a[i] - k;
    r.add_term(a - d, f);
  }
  return r;
}

Poly Poly::integrate(int var) const {
  if (var < 0 || var >= n_) throw DimensionError("integrate: variable index out of range");
  const auto v = static_cast<std::size_t>(var);
  Poly r(n_);
  for (const auto& [a, c] : terms_) {
    MultiIndex b = a;
    b[v] += 1;
    r.add_term(b, c / b[v]);
  }
  return r;
}

Rat Poly::eval(std::span<const Rat> x) const {
  check_dim(static_cast<int>(x.size()), n_, "eval");
  Rat s(0);
  for (const auto& [a, c] : terms_) {
    Rat t = c;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (int k = 0; k < a[i]; ++k) t *= x[i];
    s += t;
  }
  return s;
}

double Poly::eval(std::span<const double> x) const {
  check_dim(static_cast<int>(x.size()), n_, "eval");
  double s = 0.0;
  for (const auto& [a, c] : terms_) {
    double t = to_double(c);
    for (std::size_t i = 0; i < a.size(); ++i) t *= std::pow(x[i], a[i]);
    s += t;
  }
  return s;
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
  check_dim(static_cast<int>(images.size()), n_, "substitute");
  int m = images.empty() ? 0 : images.front().dim();
  for (const auto& im : images) check_dim(im.dim(), m, "substitute");
  // Cache powers of each image; exponents are small at desk scale.
  std::vector<std::vector<Poly>> powers(images.size());
  auto power = [&](std::size_t i, int k) -> const Poly& {
    auto& pw = powers[i];
    if (pw.empty()) pw.push_back(constant(m, Rat(1)));
    while (static_cast<int>(pw.size()) <= k) pw.push_back(pw.back() * images[i]);
    return pw[static_cast<std::size_t>(k)];
  };
  Poly r(m);
  for (const auto& [a, c] : terms_) {
    Poly t = constant(m, c);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i]) t *= power(i, a[i]);
    r += t;
  }
  return r;
}

Poly Poly::eval_var(int var, const Rat& value) const {
  if (var < 0 || var >= n_) throw DimensionError("eval_var: variable index out of range");
  const auto v = static_cast<std::size_t>(var);
  Poly r(n_);
  for (const auto& [a, c] : terms_) {
    Rat f = c;
    for (int k = 0; k < a[v]; ++k) f *= value;
    MultiIndex b = a;
    b[v] = 0;
    r.add_term(b, f);
  }
  return r;
}

Poly Poly::resize(int m) const {
  Poly r(m);
  for (const auto& [a, c] : terms_) {
    std::vector<int> e(static_cast<std::size_t>(m), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (static_cast<int>(i) < m)
        e[i] = a[i];
      else if (a[i] != 0)
        throw DimensionError("resize: dropped variable is present");
    }
    r.add_term(MultiIndex(std::move(e)), c);
  }
  return r;
}

Poly Poly::rounded() const {
  Poly r(n_);
  for (const auto& [a, c] : terms_) r.add_term(a, round_to_double(c));
  return r;
}

double Poly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [a, c] : terms_) m = std::max(m, std::abs(to_double(c)));
  return m;
}

bool Poly::divide_exact(const Poly& d, Poly& q) const {
  check_dim(n_, d.n_, "divide_exact");
  if (d.is_zero()) throw PreconditionError("division by the zero polynomial");
  // Multivariate division by leading terms in graded-lex order.
  auto lead = [](const Poly& p) {
    auto best = p.terms_.begin();
    for (auto it = p.terms_.begin(); it != p.terms_.end(); ++it)
      if (grlex_greater(it->first, best->first)) best = it;
    return *best;
  };
  const auto [ld, lc] = lead(d);
  Poly rem = *this;
  Poly quot(n_);
  while (!rem.is_zero()) {
    const auto [lr, rc] = lead(rem);
    if (!lr.dominates(ld)) return false;
    Poly t = monomial(lr - ld, rc / lc);
    quot += t;
    rem -= t * d;
  }
  q = std::move(quot);
  return true;
}

std::vector<std::string> x_names(int n) {
  std::vector<std::string> v;
  for (int i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

std::string format_terms(const std::vector<std::pair<MultiIndex, Rat>>& terms,
                         const std::vector<std::string>& names) {
  if (terms.empty()) return "0";
  auto sorted = terms;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return grlex_greater(a.first, b.first); });
  std::ostringstream os;
  bool first = true;
  for (const auto& [a, c] : sorted) {
    Rat mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> factors;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      factors.push_back(a[i] == 1 ? names[i] : names[i] + "^" + std::to_string(a[i]));
    }
    if (factors.empty()) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    for (std::size_t k = 0; k < factors.size(); ++k) os << (k ? "*" : "") << factors[k];
  }
  return os.str();
}

std::string Poly::to_string() const { return to_string(x_names(n_)); }

std::string Poly::to_string(const std::vector<std::string>& names) const {
  return format_terms({terms_.begin(), terms_.end()}, names);
}

}  // namespace qpa
