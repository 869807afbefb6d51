#include "qpa/rational.hpp"

#include <cctype>
#include <cmath>

#include "qpa/errors.hpp"
#include "qpa/multi_index.hpp"

namespace qpa {

Rat parse_rat(std::string_view text) {
  auto bad = [&] { return ParseError("malformed rational '" + std::string(text) + "'", 1, 1); };
  if (text.empty()) throw bad();
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') i = 1;
  std::size_t slash = text.find('/');
  auto digits = [&](std::size_t a, std::size_t b) {
    if (a >= b) return false;
    for (std::size_t k = a; k < b; ++k)
      if (!std::isdigit(static_cast<unsigned char>(text[k]))) return false;
    return true;
  };
  if (slash == std::string_view::npos) {
    if (!digits(i, text.size())) throw bad();
  } else if (!digits(i, slash) || !digits(slash + 1, text.size())) {
    throw bad();
  }
  std::string s(text[0] == '+' ? text.substr(1) : text);
  Rat r;
  if (r.set_str(s, 10) != 0 || r.get_den() == 0) throw bad();
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) { return r.get_str(); }

double to_double(const Rat& r) { return r.get_d(); }

Rat from_double(double v) {
  if (!std::isfinite(v)) throw PreconditionError("non-finite value in numeric mode");
  Rat r(v);
  r.canonicalize();
  return r;
}

Rat round_to_double(const Rat& r) { return from_double(r.get_d()); }

Rat factorial(int k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  return Rat(f);
}

Rat binomial(int n, int k) {
  if (k < 0 || k > n) return Rat(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rat(b);
}

// MultiIndex out-of-line pieces live here to keep the header light.

Rat MultiIndex::factorial() const {
  Rat f(1);
  for (int v : e_) f *= qpa::factorial(v);
  return f;
}

Rat MultiIndex::binomial(const MultiIndex& g) const {
  Rat b(1);
  for (std::size_t i = 0; i < e_.size(); ++i) b *= qpa::binomial(e_[i], g.e_[i]);
  return b;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  MultiIndex r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
  return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const {
  MultiIndex r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
  return r;
}

MultiIndex MultiIndex::concat(const MultiIndex& o) const {
  std::vector<int> e(e_);
  e.insert(e.end(), o.e_.begin(), o.e_.end());
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::slice(std::size_t first, std::size_t count) const {
  return MultiIndex(std::vector<int>(e_.begin() + static_cast<std::ptrdiff_t>(first),
                                     e_.begin() + static_cast<std::ptrdiff_t>(first + count)));
}

std::vector<MultiIndex> sub_indices(const MultiIndex& a) {
  std::vector<MultiIndex> out{MultiIndex(a.size())};
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::vector<MultiIndex> next;
    for (const auto& g : out)
      for (int v = 0; v <= a[i]; ++v) {
        MultiIndex h = g;
        h[i] = v;
        next.push_back(h);
      }
    out = std::move(next);
  }
  return out;
}

std::vector<MultiIndex> indices_of_degree(std::size_t n, int k) {
  std::vector<MultiIndex> out;
  if (n == 0) {
    if (k == 0) out.emplace_back(0);
    return out;
  }
  MultiIndex cur(n);
  // Recursive fill over the first n-1 slots; the last takes the remainder.
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == n) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[i] = v;
      self(self, i + 1, left - v);
    }
  };
  rec(rec, 0, k);
  return out;
}

bool grlex_greater(const MultiIndex& a, const MultiIndex& b) {
  int da = a.total(), db = b.total();
  if (da != db) return da > db;
  return a > b;
}

}  // namespace qpa
