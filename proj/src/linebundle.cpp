#include "qpa/linebundle.hpp"

#include <sstream>

#include "qpa/errors.hpp"
#include "qpa/random.hpp"

namespace qpa {

namespace {

using Fn = std::variant<Poly, TrigPoly>;

void require_periodic(const TrigPoly& c) {
  if (c.parity() != Parity::Periodic && !c.is_zero())
    throw ModeMixError("operator coefficients must have integer modes");
}

std::string coeff_factor(const TrigPoly& c) {
  // Single-mode coefficients print bare, sums get parentheses.
  std::string s = c.to_string();
  std::size_t terms = 0;
  for (const auto& [m, v] : c.modes()) terms += (v.cos != 0) + (v.sin != 0);
  return terms > 1 ? "(" + s + ")" : s;
}

void require_same_model(const BundleModel& a, const BundleModel& b) {
  if (!(a == b)) throw PreconditionError("bundle model mismatch: " + a.name() + " vs " + b.name());
}

const Poly& as_poly(const Fn& f) {
  if (!std::holds_alternative<Poly>(f)) throw PreconditionError("expected a polynomial function on R^n");
  return std::get<Poly>(f);
}

const TrigPoly& as_trig(const Fn& f) {
  if (!std::holds_alternative<TrigPoly>(f)) throw PreconditionError("expected a trigonometric function on S^1");
  return std::get<TrigPoly>(f);
}

// Coordinate probes used for orders and symbols.
std::vector<Fn> coordinate_probes(const BundleModel& m) {
  std::vector<Fn> out;
  if (m.on_circle()) {
    out.emplace_back(TrigPoly::cos(Rat(1)));
    out.emplace_back(TrigPoly::sin(Rat(1)));
  } else {
    for (int i = 0; i < m.n; ++i) out.emplace_back(Poly::variable(m.n, i));
  }
  return out;
}

Section scale(const Fn& f, const Section& s) {
  if (s.model.on_circle()) return Section::of(s.model, as_trig(f) * s.trig());
  return Section::of(s.model, as_poly(f) * s.poly());
}

Section minus(const Section& a, const Section& b) {
  if (a.model.on_circle()) return Section::of(a.model, a.trig() - b.trig());
  return Section::of(a.model, a.poly() - b.poly());
}

}  // namespace

CircleOp CircleOp::identity() { return multiplication(TrigPoly::constant(Rat(1))); }

CircleOp CircleOp::multiplication(const TrigPoly& c) { return term(c, 0); }

CircleOp CircleOp::derivative() { return term(TrigPoly::constant(Rat(1)), 1); }

CircleOp CircleOp::term(const TrigPoly& c, int j) {
  CircleOp d;
  d.add_term(j, c);
  return d;
}

int CircleOp::order() const { return c_.empty() ? kZeroOrder : static_cast<int>(c_.size()) - 1; }

TrigPoly CircleOp::coeff(int j) const {
  if (j < 0 || j >= static_cast<int>(c_.size())) return TrigPoly();
  return c_[static_cast<std::size_t>(j)];
}

void CircleOp::add_term(int j, const TrigPoly& c) {
  if (j < 0) throw PreconditionError("negative derivative order");
  require_periodic(c);
  if (c.is_zero()) return;
  if (static_cast<int>(c_.size()) <= j) c_.resize(static_cast<std::size_t>(j) + 1);
  c_[static_cast<std::size_t>(j)] += c;
  trim();
}

void CircleOp::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

CircleOp& CircleOp::operator+=(const CircleOp& o) {
  for (std::size_t j = 0; j < o.c_.size(); ++j) add_term(static_cast<int>(j), o.c_[j]);
  return *this;
}

CircleOp& CircleOp::operator-=(const CircleOp& o) {
  for (std::size_t j = 0; j < o.c_.size(); ++j) add_term(static_cast<int>(j), -o.c_[j]);
  return *this;
}

CircleOp& CircleOp::operator*=(const Rat& c) {
  for (auto& v : c_) v *= c;
  trim();
  return *this;
}

TrigPoly CircleOp::apply(const TrigPoly& s) const {
  TrigPoly r(s.parity());
  TrigPoly ds = s;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    r += c_[j] * ds;
    ds = ds.diff();
  }
  return r;
}

std::string CircleOp::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t jj = c_.size(); jj-- > 0;) {
    const TrigPoly& c = c_[jj];
    if (c.is_zero()) continue;
    const int j = static_cast<int>(jj);
    std::string d = j == 0 ? "" : (j == 1 ? "d" : "d^" + std::to_string(j));
    std::string t;
    if (j == 0) {
      t = c.to_string();
    } else if (c.is_constant()) {
      const Rat v = c.at_zero();
      t = v == 1 ? d : v == -1 ? "-" + d : qpa::to_string(v) + "*" + d;
    } else {
      t = coeff_factor(c) + "*" + d;
    }
    if (first) {
      os << t;
    } else if (t[0] == '-') {
      os << " - " << t.substr(1);
    } else {
      os << " + " << t;
    }
    first = false;
  }
  return os.str();
}

CircleOp compose(const CircleOp& d, const CircleOp& e) {
  CircleOp r;
  for (std::size_t i = 0; i < d.coeffs().size(); ++i) {
    const TrigPoly& a = d.coeffs()[i];
    if (a.is_zero()) continue;
    for (std::size_t j = 0; j < e.coeffs().size(); ++j) {
      TrigPoly b = e.coeffs()[j];
      for (std::size_t l = 0; l <= i; ++l) {
        if (!b.is_zero())
          r.add_term(static_cast<int>(i - l + j), a * b * binomial(static_cast<int>(i), static_cast<int>(l)));
        b = b.diff();
      }
    }
  }
  return r;
}

CircleOp commutator(const CircleOp& d, const CircleOp& e) { return compose(d, e) - compose(e, d); }

BundleModel BundleModel::trivial_rn(int n) {
  if (n < 1) throw DimensionError("dimension must be positive");
  return {ModelKind::TrivialRn, n, {}};
}

BundleModel BundleModel::trivial_s1() { return {ModelKind::TrivialS1, 1, {1, 1}}; }

BundleModel BundleModel::moebius_s1() { return {ModelKind::MoebiusS1, 1, {1, -1}}; }

int BundleModel::monodromy() const {
  int m = 1;
  for (int s : transition_signs) m *= s;
  return m;
}

Parity BundleModel::section_parity() const {
  return kind == ModelKind::MoebiusS1 ? Parity::Antiperiodic : Parity::Periodic;
}

void BundleModel::validate() const {
  for (int s : transition_signs)
    if (s != 1 && s != -1) throw PreconditionError("transition signs must be +1 or -1");
  if (kind == ModelKind::TrivialRn) {
    if (!transition_signs.empty()) throw PreconditionError("R^n model has a single chart");
    if (n < 1) throw DimensionError("dimension must be positive");
    return;
  }
  if (transition_signs.size() != 2) throw PreconditionError("S^1 models use two overlap components");
  if (monodromy() != (kind == ModelKind::MoebiusS1 ? -1 : 1))
    throw PreconditionError("transition signs do not match the bundle (invalid cocycle)");
}

std::string BundleModel::name() const {
  switch (kind) {
    case ModelKind::TrivialRn: return "trivial R^" + std::to_string(n);
    case ModelKind::TrivialS1: return "trivial S^1";
    case ModelKind::MoebiusS1: return "moebius S^1";
  }
  return "?";
}

Section Section::of(const BundleModel& m, const Poly& p) {
  if (m.on_circle()) throw PreconditionError("polynomial section on a circle model");
  if (p.dim() != m.n) throw DimensionError("section dimension mismatch");
  return {m, p};
}

Section Section::of(const BundleModel& m, const TrigPoly& t) {
  if (!m.on_circle()) throw PreconditionError("trigonometric section on an R^n model");
  if (!t.is_zero() && t.parity() != m.section_parity())
    throw ModeMixError(std::string("section of ") + m.name() + " must have " +
                       (m.section_parity() == Parity::Periodic ? "integer" : "half-integer") + " modes");
  TrigPoly v = t.is_zero() ? TrigPoly(m.section_parity()) : t;
  return {m, v};
}

std::string Section::to_string() const {
  return std::holds_alternative<Poly>(value) ? poly().to_string() : trig().to_string();
}

BundleOp BundleOp::of(const BundleModel& m, const DiffOp& d) {
  if (m.on_circle()) throw PreconditionError("R^n operator on a circle model");
  if (d.dim() != m.n) throw DimensionError("operator dimension mismatch");
  return {m, d};
}

BundleOp BundleOp::of(const BundleModel& m, const CircleOp& d) {
  if (!m.on_circle()) throw PreconditionError("circle operator on an R^n model");
  return {m, d};
}

bool BundleOp::is_zero() const {
  return std::holds_alternative<DiffOp>(op) ? diffop().is_zero() : circle().is_zero();
}

int BundleOp::order() const {
  return std::holds_alternative<DiffOp>(op) ? diffop().order() : circle().order();
}

BundleOp BundleOp::operator+(const BundleOp& o) const {
  require_same_model(model, o.model);
  if (model.on_circle()) return {model, circle() + o.circle()};
  return {model, diffop() + o.diffop()};
}

BundleOp BundleOp::operator-(const BundleOp& o) const {
  require_same_model(model, o.model);
  if (model.on_circle()) return {model, circle() - o.circle()};
  return {model, diffop() - o.diffop()};
}

std::string BundleOp::to_string() const {
  return std::holds_alternative<DiffOp>(op) ? diffop().to_string() : circle().to_string();
}

BundleOp compose(const BundleOp& d, const BundleOp& e) {
  require_same_model(d.model, e.model);
  if (d.model.on_circle()) return {d.model, compose(d.circle(), e.circle())};
  return {d.model, compose(d.diffop(), e.diffop())};
}

BundleOp commutator(const BundleOp& d, const BundleOp& e) {
  require_same_model(d.model, e.model);
  if (d.model.on_circle()) return {d.model, commutator(d.circle(), e.circle())};
  return {d.model, commutator(d.diffop(), e.diffop())};
}

BundleOp multiplication(const BundleModel& m, const Fn& f) {
  if (m.on_circle()) return BundleOp::of(m, CircleOp::multiplication(as_trig(f)));
  return BundleOp::of(m, DiffOp::multiplication(as_poly(f)));
}

Section bundle_apply(const BundleOp& d, const Section& s) {
  require_same_model(d.model, s.model);
  if (d.model.on_circle()) return Section::of(s.model, d.circle().apply(s.trig()));
  return Section::of(s.model, d.diffop().apply(s.poly()));
}

int bundle_order(const BundleOp& d) {
  if (d.is_zero()) return kZeroOrder;
  const auto probes = coordinate_probes(d.model);
  std::vector<BundleOp> level{d};
  for (int k = 0;; ++k) {
    std::vector<BundleOp> next;
    for (const auto& e : level)
      for (const auto& f : probes) {
        BundleOp c = commutator(e, multiplication(d.model, f));
        if (c.is_zero()) continue;
        bool seen = false;
        for (const auto& o : next) seen = seen || o == c;
        if (!seen) next.push_back(std::move(c));
      }
    if (next.empty()) return k;
    level = std::move(next);
  }
}

FrameChoice FrameChoice::uniform(const BundleModel& m, int sign) {
  return {std::vector<int>(static_cast<std::size_t>(m.charts()), sign)};
}

FrameChoice FrameChoice::flipped() const {
  FrameChoice f = *this;
  for (int& s : f.signs) s = -s;
  return f;
}

BundleOp local_form(const BundleOp& d, const FrameChoice& f, int chart) {
  if (chart < 0 || chart >= static_cast<int>(f.signs.size())) throw PreconditionError("chart index out of range");
  const int s = f.signs[static_cast<std::size_t>(chart)];
  if (s != 1 && s != -1) throw PreconditionError("frame signs must be +1 or -1");
  Fn sigma, inv;
  if (d.model.on_circle()) {
    sigma = TrigPoly::constant(Rat(s));
    inv = TrigPoly::constant(Rat(1, 1) / s);
  } else {
    sigma = Poly::constant(d.model.n, Rat(s));
    inv = Poly::constant(d.model.n, Rat(1, 1) / s);
  }
  return compose(multiplication(d.model, sigma), compose(d, multiplication(d.model, inv)));
}

BundleOp globalize_iso(const BundleModel& model, const FrameChoice& f, const BundleOp& d) {
  model.validate();
  require_same_model(model, d.model);
  if (static_cast<int>(f.signs.size()) != model.charts()) throw PreconditionError("one frame sign per chart expected");
  BundleOp local = local_form(d, f, 0);
  for (int a = 1; a < model.charts(); ++a)
    if (!(local_form(d, f, a) == local)) throw Error("chart-wise identifications disagree on an overlap");
  if (!model.on_circle()) return local;
  return BundleOp::of(BundleModel::trivial_s1(), local.circle());
}

bool certified_nonvanishing(const Fn& psi, const GaugeChart& chart) {
  if (std::holds_alternative<TrigPoly>(psi)) {
    const TrigPoly& t = std::get<TrigPoly>(psi);
    if (t.is_zero() || t.parity() != Parity::Periodic) return false;
    Rat rest(0), c0(0);
    for (const auto& [m, v] : t.modes()) {
      if (m == 0)
        c0 = v.cos;
      else
        rest += abs(v.cos) + abs(v.sin);
    }
    return abs(c0) > rest;
  }
  const Poly& p = std::get<Poly>(psi);
  if (p.is_zero()) return false;
  if (p.is_constant()) return true;
  const int sign = sgn(p.terms().begin()->second);
  bool anchored = false;
  for (const auto& [a, c] : p.terms()) {
    if (sgn(c) != sign) return false;
    bool inside = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      bool pos = false;
      for (int v : chart.positive_vars) pos = pos || v == static_cast<int>(i);
      if (!pos) {
        inside = false;
        if (a[i] % 2) return false;
      }
    }
    anchored = anchored || inside;
  }
  return anchored;
}

Section GaugedOp::apply(const Section& s) const {
  require_same_model(base.model, s.model);
  if (base.model.on_circle())
    throw PreconditionError("non-constant gauges on S^1 act on psi-scaled sections only");
  Poly q;
  if (!s.poly().divide_exact(std::get<Poly>(psi), q))
    throw PreconditionError("section is not divisible by the gauge function");
  return Section::of(s.model, std::get<Poly>(psi) * base.diffop().apply(q));
}

Section GaugedOp::apply_scaled(const Section& e) const {
  Section img = bundle_apply(base, e);
  return scale(psi, img);
}

std::variant<BundleOp, GaugedOp> gauge_transform(const BundleOp& d, const Fn& psi, const GaugeChart& chart) {
  if (d.model.on_circle()) {
    require_periodic(as_trig(psi));
  } else if (as_poly(psi).dim() != d.model.n) {
    throw DimensionError("gauge function dimension mismatch");
  }
  const bool constant = std::holds_alternative<Poly>(psi) ? std::get<Poly>(psi).is_constant()
                                                           : std::get<TrigPoly>(psi).is_constant();
  if (constant) {
    const Rat c = std::holds_alternative<Poly>(psi) ? std::get<Poly>(psi).constant_term()
                                                     : std::get<TrigPoly>(psi).at_zero();
    if (c == 0) throw PreconditionError("gauge function vanishes");
    Fn inv = d.model.on_circle() ? Fn(TrigPoly::constant(1 / c)) : Fn(Poly::constant(d.model.n, 1 / c));
    return compose(multiplication(d.model, psi), compose(d, multiplication(d.model, inv)));
  }
  if (!certified_nonvanishing(psi, chart))
    throw PreconditionError("gauge function is not certified nonvanishing on the chart");
  return GaugedOp{d, psi};
}

std::string BaseSymbol::to_string() const {
  if (std::holds_alternative<SymbolPoly>(value)) return std::get<SymbolPoly>(value).to_string();
  const TrigPoly& c = std::get<TrigPoly>(value);
  if (c.is_zero()) return "0";
  if (k == 0) return c.to_string();
  const std::string xi = k == 1 ? "xi" : "xi^" + std::to_string(k);
  if (c.is_constant()) {
    const Rat v = c.at_zero();
    return v == 1 ? xi : v == -1 ? "-" + xi : qpa::to_string(v) + "*" + xi;
  }
  return coeff_factor(c) + "*" + xi;
}

BaseSymbol symbol_bundle(const BundleOp& d, int k) {
  if (k < 0) throw PreconditionError("symbol order must be non-negative");
  if (d.order() > k) throw PreconditionError("operator order exceeds requested symbol order");
  if (d.model.on_circle()) return {k, d.circle().coeff(k)};
  return {k, symbol_k(d.diffop(), k)};
}

BaseSymbol poisson_bracket(const BaseSymbol& p, const BaseSymbol& q) {
  const int k = p.k + q.k - 1;
  if (std::holds_alternative<SymbolPoly>(p.value))
    return {k, poisson_bracket(std::get<SymbolPoly>(p.value), std::get<SymbolPoly>(q.value))};
  const TrigPoly& a = std::get<TrigPoly>(p.value);
  const TrigPoly& b = std::get<TrigPoly>(q.value);
  TrigPoly r = a * b.diff() * Rat(p.k) - a.diff() * b * Rat(q.k);
  return {k, r};
}

Section gauged_ad(const GaugedOp& g, const std::vector<Fn>& fs) { return gauged_ad(g, fs, base_section(g.base.model)); }

Section gauged_ad(const GaugedOp& g, const std::vector<Fn>& fs, const Section& e) {
  const BundleModel& m = g.base.model;
  require_same_model(m, e.model);
  // ad_{f_1}..ad_{f_j}(G) on the section ψ·e.
  std::function<Section(std::size_t, const Section&)> rec = [&](std::size_t j, const Section& v) -> Section {
    if (j == 0) return m.on_circle() ? g.apply_scaled(v) : g.apply(scale(g.psi, v));
    const Fn& f = fs[j - 1];
    return minus(rec(j - 1, scale(f, v)), scale(f, rec(j - 1, v)));
  };
  return rec(fs.size(), e);
}

Section base_section(const BundleModel& m) {
  if (m.kind == ModelKind::MoebiusS1) return Section::of(m, TrigPoly::cos(Rat(1, 2)));
  if (m.on_circle()) return Section::of(m, TrigPoly::constant(Rat(1)));
  return Section::of(m, Poly::constant(m.n, Rat(1)));
}

bool gauge_symbol_invariant(const GaugedOp& g, int k) {
  const BundleModel& m = g.base.model;
  const auto probes = coordinate_probes(m);
  const BaseSymbol sym = symbol_bundle(g.base, k);
  const Section e = base_section(m);
  // Nondecreasing k-tuples of probe indices.
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  for (;;) {
    std::vector<Fn> fs;
    for (auto i : idx) fs.push_back(probes[i]);
    const Section lhs = gauged_ad(g, fs, e);
    Fn c;
    if (m.on_circle()) {
      TrigPoly t = std::get<TrigPoly>(sym.value) * factorial(k);
      for (const auto& f : fs) t = t * std::get<TrigPoly>(f).diff();
      c = t;
    } else {
      SymbolPoly s = std::get<SymbolPoly>(sym.value);
      for (auto i : idx) s = s.diff_xi(static_cast<int>(i));
      const auto parts = s.by_xi();
      auto it = parts.find(MultiIndex(static_cast<std::size_t>(m.n)));
      c = it == parts.end() ? Poly(m.n) : it->second;
    }
    if (!(lhs == scale(c, scale(g.psi, e)))) return false;
    int p = k - 1;
    while (p >= 0 && idx[static_cast<std::size_t>(p)] + 1 == probes.size()) --p;
    if (p < 0) break;
    const std::size_t v = idx[static_cast<std::size_t>(p)] + 1;
    for (int q = p; q < k; ++q) idx[static_cast<std::size_t>(q)] = v;
  }
  return true;
}

BundleOp deriv_cx(const BundleOp& x, const FrameChoice& f, const BundleOp& d) {
  if (x.model.on_circle() != d.model.on_circle() || x.model.n != d.model.n)
    throw PreconditionError("vector field and operator live on different bases");
  if (x.order() > 1) throw PreconditionError("C_X needs a vector field");
  const bool zero_part = x.model.on_circle() ? x.circle().coeff(0).is_zero()
                                             : x.diffop().coeff(MultiIndex(static_cast<std::size_t>(x.model.n))).is_zero();
  if (!zero_part) throw PreconditionError("C_X needs a vector field (no zero-order part)");
  if (static_cast<int>(f.signs.size()) != d.model.charts()) throw PreconditionError("one frame sign per chart expected");
  const BundleOp xf = d.model.on_circle() ? BundleOp::of(d.model, x.circle()) : BundleOp::of(d.model, x.diffop());
  BundleOp out = commutator(xf, local_form(d, f, 0));
  for (int a = 1; a < d.model.charts(); ++a)
    if (!(commutator(xf, local_form(d, f, a)) == out)) throw Error("chart-wise commutators disagree on an overlap");
  return out;
}

LocalityReport locality_check(const BundleOp& d, const Section& s) {
  require_same_model(d.model, s.model);
  LocalityReport rep;
  if (d.is_zero()) return rep;
  const unsigned k1 = static_cast<unsigned>(d.order() + 1);
  auto fail = [&](const std::string& where) {
    rep.passed = false;
    if (rep.detail.empty()) rep.detail = where;
  };
  if (d.model.on_circle()) {
    const TrigPoly one = TrigPoly::constant(Rat(1));
    const TrigPoly half_cos = TrigPoly::cos(Rat(1), Rat(1, 2));
    for (int at_pi = 0; at_pi < 2; ++at_pi) {
      // φ vanishes to order 2k+2 at the probe point and equals 1 at the antipode.
      const TrigPoly phi = (at_pi ? one * Rat(1, 2) + half_cos : one * Rat(1, 2) - half_cos).pow(k1);
      auto value = [&](const TrigPoly& t) { return at_pi ? t.at_pi() : t.at_zero(); };
      const TrigPoly far = d.circle().apply(phi * s.trig());
      const TrigPoly near = d.circle().apply((one - phi) * s.trig());
      const TrigPoly full = d.circle().apply(s.trig());
      if (value(far) != 0) fail(at_pi ? "D(phi s)(pi) != 0" : "D(phi s)(0) != 0");
      if (value(near) != value(full)) fail(at_pi ? "D((1-phi) s)(pi) != D(s)(pi)" : "D((1-phi) s)(0) != D(s)(0)");
    }
    return rep;
  }
  const int n = d.model.n;
  for (int e = 0; e < 2; ++e) {
    std::vector<Rat> p(static_cast<std::size_t>(n), Rat(0));
    if (e) p[0] = 1;
    Poly r2(n);
    for (int i = 0; i < n; ++i) {
      Poly xi = Poly::variable(n, i) - Poly::constant(n, p[static_cast<std::size_t>(i)]);
      r2 += xi * xi;
    }
    const Poly phi = r2.pow(k1);
    const Poly one = Poly::constant(n, Rat(1));
    const Rat far = d.diffop().apply(phi * s.poly()).eval(p);
    const Rat near = d.diffop().apply((one - phi) * s.poly()).eval(p);
    const Rat full = d.diffop().apply(s.poly()).eval(p);
    if (far != 0) fail("D(phi s) does not vanish at the probe point");
    if (near != full) fail("D((1-phi) s) differs from D(s) at the probe point");
  }
  return rep;
}

CircleOp random_circle_op(Rng& rng, int max_order) {
  CircleOp d;
  for (int j = 0; j <= max_order; ++j)
    if (rng.uniform(0, 2)) d.add_term(j, random_trig(rng, Parity::Periodic, 2, 2));
  return d;
}

}  // namespace qpa
