#include "qpa/trig_poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

#include "qpa/errors.hpp"

namespace qpa {

Parity operator*(Parity a, Parity b) {
  return a == b ? Parity::Periodic : Parity::Antiperiodic;
}

const char* to_string(Parity p) { return p == Parity::Periodic ? "periodic" : "antiperiodic"; }

namespace {

int twice_of(const Rat& k) {
  Rat t = 2 * k;
  if (t.get_den() != 1) throw PreconditionError("trig mode must be an integer or half-integer");
  if (!t.get_num().fits_sint_p()) throw PreconditionError("trig mode too large");
  return static_cast<int>(t.get_num().get_si());
}

Parity parity_of(int twice_mode) {
  return (std::abs(twice_mode) % 2 == 0) ? Parity::Periodic : Parity::Antiperiodic;
}

}  // namespace

TrigPoly TrigPoly::constant(const Rat& c) {
  TrigPoly t(Parity::Periodic);
  t.add_cos(0, c);
  return t;
}

TrigPoly TrigPoly::cos(const Rat& k, const Rat& c) {
  int m = twice_of(k);
  TrigPoly t(parity_of(m));
  t.add_cos(m, c);
  return t;
}

TrigPoly TrigPoly::sin(const Rat& k, const Rat& c) {
  int m = twice_of(k);
  TrigPoly t(parity_of(m));
  t.add_sin(m, c);
  return t;
}

bool TrigPoly::is_constant() const {
  return modes_.empty() || (modes_.size() == 1 && modes_.begin()->first == 0);
}

int TrigPoly::max_twice_mode() const { return modes_.empty() ? -1 : modes_.rbegin()->first; }

void TrigPoly::check_mode(int m) const {
  if (parity_of(m) != parity_)
    throw ModeMixError(std::string("mode ") + std::to_string(m) + "/2 does not match " +
                       qpa::to_string(parity_) + " data");
}

void TrigPoly::prune(int m) {
  auto it = modes_.find(m);
  if (it != modes_.end() && it->second.cos == 0 && it->second.sin == 0) modes_.erase(it);
}

void TrigPoly::add_cos(int m, const Rat& c) {
  check_mode(m);
  if (c == 0) return;
  m = std::abs(m);
  modes_[m].cos += c;
  prune(m);
}

void TrigPoly::add_sin(int m, const Rat& c) {
  check_mode(m);
  if (c == 0 || m == 0) return;
  Rat v = m < 0 ? Rat(-c) : c;
  m = std::abs(m);
  modes_[m].sin += v;
  prune(m);
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) {
    Parity p = o.parity_;
    *this = o;
    parity_ = p;
    return *this;
  }
  if (parity_ != o.parity_) throw ModeMixError("cannot add periodic and antiperiodic data");
  for (const auto& [m, v] : o.modes_) {
    add_cos(m, v.cos);
    add_sin(m, v.sin);
  }
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& o) { return *this += -o; }

TrigPoly& TrigPoly::operator*=(const Rat& c) {
  if (c == 0) {
    modes_.clear();
    return *this;
  }
  for (auto& [m, v] : modes_) {
    v.cos *= c;
    v.sin *= c;
  }
  return *this;
}

TrigPoly TrigPoly::operator-() const {
  TrigPoly r(*this);
  r *= Rat(-1);
  return r;
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  TrigPoly r(a.parity_ * b.parity_);
  const Rat half(1, 2);
  for (const auto& [ma, va] : a.modes_)
    for (const auto& [mb, vb] : b.modes_) {
      const int s = ma + mb, d = ma - mb;
      // cos a cos b = ½[cos(a-b) + cos(a+b)], sin a sin b = ½[cos(a-b) - cos(a+b)]
      Rat cc = va.cos * vb.cos, ss = va.sin * vb.sin;
      r.add_cos(d, half * (cc + ss));
      r.add_cos(s, half * (cc - ss));
      // sin a cos b = ½[sin(a+b) + sin(a-b)], cos a sin b = ½[sin(a+b) - sin(a-b)]
      Rat sc = va.sin * vb.cos, cs = va.cos * vb.sin;
      r.add_sin(s, half * (sc + cs));
      r.add_sin(d, half * (sc - cs));
    }
  return r;
}

TrigPoly TrigPoly::pow(unsigned k) const {
  TrigPoly r = constant(Rat(1));
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

TrigPoly TrigPoly::diff() const {
  TrigPoly r(parity_);
  for (const auto& [m, v] : modes_) {
    Rat k(m, 2);
    k.canonicalize();
    r.add_cos(m, k * v.sin);
    r.add_sin(m, -k * v.cos);
  }
  return r;
}

TrigPoly TrigPoly::diff(int k) const {
  TrigPoly r = *this;
  for (int i = 0; i < k; ++i) r = r.diff();
  return r;
}

double TrigPoly::eval(double theta) const {
  double s = 0.0;
  for (const auto& [m, v] : modes_) {
    double a = 0.5 * m * theta;
    s += to_double(v.cos) * std::cos(a) + to_double(v.sin) * std::sin(a);
  }
  return s;
}

Rat TrigPoly::at_zero() const {
  Rat s(0);
  for (const auto& [m, v] : modes_) s += v.cos;
  return s;
}

Rat TrigPoly::at_pi() const {
  // cos(mπ/2) and sin(mπ/2) for integer m.
  Rat s(0);
  for (const auto& [m, v] : modes_) {
    switch (m % 4) {
      case 0: s += v.cos; break;
      case 1: s += v.sin; break;
      case 2: s -= v.cos; break;
      case 3: s -= v.sin; break;
    }
  }
  return s;
}

namespace {

std::string mode_arg(int m) {
  if (m == 2) return "t";
  Rat k(m, 2);
  k.canonicalize();
  return k.get_str() + "t";
}

}  // namespace

std::string TrigPoly::to_string() const {
  if (modes_.empty()) return "0";
  struct Term {
    Rat c;
    std::string f;
  };
  std::vector<Term> terms;
  for (auto it = modes_.rbegin(); it != modes_.rend(); ++it) {
    const auto& [m, v] = *it;
    if (m == 0) {
      terms.push_back({v.cos, ""});
      continue;
    }
    if (v.cos != 0) terms.push_back({v.cos, "cos(" + mode_arg(m) + ")"});
    if (v.sin != 0) terms.push_back({v.sin, "sin(" + mode_arg(m) + ")"});
  }
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms) {
    Rat mag = abs(t.c);
    if (first)
      os << (t.c < 0 ? "-" : "");
    else
      os << (t.c < 0 ? " - " : " + ");
    first = false;
    if (t.f.empty())
      os << mag.get_str();
    else if (mag == 1)
      os << t.f;
    else
      os << mag.get_str() << "*" << t.f;
  }
  return os.str();
}

}  // namespace qpa
