#include "qpa/parse.hpp"

#include <cctype>
#include <functional>
#include <optional>

#include "qpa/errors.hpp"

namespace qpa {

namespace {

struct Token {
  enum class Kind { Num, Ident, Sym, End };
  Kind kind = Kind::End;
  std::string text;
  Rat num;
  int line = 1, column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = col_;
      if (i_ >= s_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = s_[i_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Token::Kind::Num;
        std::string p = digits(), q = "1";
        if (i_ + 1 < s_.size() && s_[i_] == '/' && std::isdigit(static_cast<unsigned char>(s_[i_ + 1]))) {
          advance();
          q = digits();
        }
        t.text = p + "/" + q;
        mpq_class v(p + "/" + q);
        if (v.get_den() == 0) throw ParseError("zero denominator", t.line, t.column);
        v.canonicalize();
        t.num = v;
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        t.kind = Token::Kind::Ident;
        while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) t.text += advance();
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) t.text += advance();
      } else if (std::string("+-*^()[],").find(c) != std::string::npos) {
        t.kind = Token::Kind::Sym;
        t.text = std::string(1, advance());
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
      }
      out.push_back(t);
    }
  }

 private:
  char advance() {
    const char c = s_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip_space() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) advance();
  }
  std::string digits() {
    std::string d;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) d += advance();
    return d;
  }

  const std::string& s_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  Expr sum() {
    Expr e = unary();
    while (is_sym("+") || is_sym("-")) {
      Expr node = at(next().text == "+" ? Expr::Op::Add : Expr::Op::Sub, t_[p_ - 1]);
      node.args = {std::move(e), unary()};
      e = std::move(node);
    }
    return e;
  }

  Expr list() {
    expect("[");
    Expr e = at(Expr::Op::Add, peek());
    if (!is_sym("]")) {
      e.args.push_back(sum());
      while (is_sym(",")) {
        next();
        e.args.push_back(sum());
      }
    }
    expect("]");
    return e;
  }

  void finish() {
    if (peek().kind != Token::Kind::End) fail("unexpected '" + peek().text + "'");
  }

 private:
  static Expr at(Expr::Op op, const Token& t) {
    Expr e;
    e.op = op;
    e.line = t.line;
    e.column = t.column;
    return e;
  }
  const Token& peek() const { return t_[p_]; }
  const Token& next() { return t_[p_++]; }
  bool is_sym(const char* s) const { return peek().kind == Token::Kind::Sym && peek().text == s; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }
  void expect(const char* s) {
    if (!is_sym(s)) fail(std::string("expected '") + s + "'");
    next();
  }

  Expr unary() {
    if (is_sym("-")) {
      Expr e = at(Expr::Op::Neg, next());
      e.args = {unary()};
      return e;
    }
    return term();
  }

  Expr term() {
    Expr e = factor();
    while (is_sym("*")) {
      Expr node = at(Expr::Op::Mul, next());
      Expr rhs = is_sym("-") ? unary() : factor();
      node.args = {std::move(e), std::move(rhs)};
      e = std::move(node);
    }
    return e;
  }

  Expr factor() {
    Expr base = atom();
    if (!is_sym("^")) return base;
    Expr e = at(Expr::Op::Pow, next());
    if (peek().kind != Token::Kind::Num || peek().num.get_den() != 1) fail("expected a non-negative integer exponent");
    const Rat k = next().num;
    if (k > 64) fail("exponent too large");
    e.exponent = static_cast<int>(k.get_num().get_si());
    e.args = {std::move(base)};
    return e;
  }

  Expr atom() {
    const Token& tok = peek();
    if (tok.kind == Token::Kind::Num) {
      Expr e = at(Expr::Op::Num, next());
      e.value = tok.num;
      return e;
    }
    if (is_sym("(")) {
      next();
      Expr e = sum();
      expect(")");
      return e;
    }
    if (tok.kind != Token::Kind::Ident) fail(tok.kind == Token::Kind::End ? "unexpected end of input" : "unexpected '" + tok.text + "'");
    const std::string& id = tok.text;
    if (id == "cos" || id == "sin") {
      Expr e = at(id == "cos" ? Expr::Op::Cos : Expr::Op::Sin, next());
      expect("(");
      e.value = 1;
      if (peek().kind == Token::Kind::Num) e.value = next().num;
      if (peek().kind != Token::Kind::Ident || peek().text != "t") fail("expected 't'");
      next();
      expect(")");
      const Rat twice = e.value * 2;
      if (twice.get_den() != 1) throw ParseError("frequency must be an integer or half-integer", e.line, e.column);
      return e;
    }
    if (id == "d") return at(Expr::Op::CircleD, next());
    std::size_t k = 0;
    while (k < id.size() && std::isalpha(static_cast<unsigned char>(id[k]))) ++k;
    const std::string stem = id.substr(0, k), idx = id.substr(k);
    Expr::Op op;
    if (stem == "x")
      op = Expr::Op::X;
    else if (stem == "xi")
      op = Expr::Op::Xi;
    else if (stem == "d")
      op = Expr::Op::D;
    else
      fail("unknown identifier '" + id + "'");
    if (idx.empty() || idx.size() > 3 || std::stoi(idx) < 1) fail("identifier '" + id + "' needs an index >= 1");
    Expr e = at(op, next());
    e.index = std::stoi(idx) - 1;
    return e;
  }

  std::vector<Token> t_;
  std::size_t p_ = 0;
};

bool is_trig_kind(ExprKind k) { return k == ExprKind::Trig || k == ExprKind::CircleOp; }

// Value algebra for one target kind.
template <class T>
struct Alg {
  std::function<T(const Rat&)> num;
  std::function<T(const Expr&)> leaf;
  std::function<T(const T&, const T&)> mul;
};

template <class T>
T eval_as(const Expr& e, const Alg<T>& alg, const std::function<T(const Expr&)>& lower) {
  auto rec = [&](const Expr& s) { return eval_as<T>(s, alg, lower); };
  if (lower) {
    // Subtrees of a smaller kind are evaluated there first.
    if (e.op != Expr::Op::Num && e.op != Expr::Op::Neg && e.op != Expr::Op::Add && e.op != Expr::Op::Sub) {
      std::optional<T> low;
      try {
        low = lower(e);
      } catch (const ParseError&) {
        throw;
      } catch (const PreconditionError&) {
      }
      if (low) return *low;
    }
  }
  try {
    switch (e.op) {
      case Expr::Op::Num: return alg.num(e.value);
      case Expr::Op::Add: {
        T r = rec(e.args[0]);
        for (std::size_t i = 1; i < e.args.size(); ++i) r += rec(e.args[i]);
        return r;
      }
      case Expr::Op::Sub: {
        T r = rec(e.args[0]);
        r -= rec(e.args[1]);
        return r;
      }
      case Expr::Op::Neg: {
        T r = rec(e.args[0]);
        r *= Rat(-1);
        return r;
      }
      case Expr::Op::Mul: return alg.mul(rec(e.args[0]), rec(e.args[1]));
      case Expr::Op::Pow: {
        const T b = rec(e.args[0]);
        T r = alg.num(Rat(1));
        for (int i = 0; i < e.exponent; ++i) r = alg.mul(r, b);
        return r;
      }
      default: return alg.leaf(e);
    }
  } catch (const ModeMixError& m) {
    throw ParseError(std::string("MODE_MIX: ") + m.what(), e.line, e.column);
  }
}

[[noreturn]] void wrong_kind(const Expr& e, ExprKind k) {
  throw ParseError(std::string("token not allowed in a ") + to_string(k), e.line, e.column);
}

}  // namespace

Expr parse(const std::string& src) {
  Parser p(Lexer(src).run());
  Expr e = p.sum();
  p.finish();
  return e;
}

const char* to_string(ExprKind k) {
  switch (k) {
    case ExprKind::Poly: return "poly";
    case ExprKind::Symbol: return "symbol";
    case ExprKind::DiffOp: return "diffop";
    case ExprKind::Trig: return "trig";
    case ExprKind::CircleOp: return "circle_op";
  }
  return "?";
}

ExprKind join(ExprKind a, ExprKind b) {
  if (a == b) return a;
  if (a == ExprKind::Poly && !is_trig_kind(b)) return b;
  if (b == ExprKind::Poly && !is_trig_kind(a)) return a;
  if (is_trig_kind(a) && is_trig_kind(b)) return ExprKind::CircleOp;
  // A bare constant is both a Poly and a Trig.
  throw PreconditionError(std::string("cannot combine ") + to_string(a) + " and " + to_string(b));
}

namespace {

struct Usage {
  bool x = false, xi = false, d = false, trig = false, cd = false;
  int n = 0;
};

void collect(const Expr& e, Usage& u) {
  switch (e.op) {
    case Expr::Op::X: u.x = true; break;
    case Expr::Op::Xi: u.xi = true; break;
    case Expr::Op::D: u.d = true; break;
    case Expr::Op::Cos:
    case Expr::Op::Sin: u.trig = true; break;
    case Expr::Op::CircleD: u.cd = true; break;
    default: break;
  }
  if (e.op == Expr::Op::X || e.op == Expr::Op::Xi || e.op == Expr::Op::D) u.n = std::max(u.n, e.index + 1);
  for (const auto& a : e.args) collect(a, u);
}

const Expr* first_of(const Expr& e, std::initializer_list<Expr::Op> ops) {
  for (auto op : ops)
    if (e.op == op) return &e;
  for (const auto& a : e.args)
    if (const Expr* f = first_of(a, ops)) return f;
  return nullptr;
}

}  // namespace

ExprInfo infer(const Expr& e) {
  Usage u;
  collect(e, u);
  if ((u.x || u.xi || u.d) && (u.trig || u.cd)) {
    const Expr* f = first_of(e, {Expr::Op::Cos, Expr::Op::Sin, Expr::Op::CircleD});
    throw ParseError("trig terms cannot be mixed with x, xi or d<i>", f->line, f->column);
  }
  if (u.xi && u.d) {
    const Expr* f = first_of(e, {Expr::Op::D});
    throw ParseError("xi<i> and d<i> cannot be mixed", f->line, f->column);
  }
  ExprInfo info;
  info.n = u.n;
  if (u.cd)
    info.kind = ExprKind::CircleOp;
  else if (u.trig)
    info.kind = ExprKind::Trig;
  else if (u.d)
    info.kind = ExprKind::DiffOp;
  else if (u.xi)
    info.kind = ExprKind::Symbol;
  return info;
}

Value evaluate(const Expr& e, ExprKind kind, int n) {
  const ExprInfo info = infer(e);
  if (info.n > n) throw ParseError("variable index exceeds dimension " + std::to_string(n), e.line, e.column);
  if (info.kind != kind && info.kind != ExprKind::Poly && !(info.kind == ExprKind::Trig && kind == ExprKind::CircleOp))
    throw ParseError(std::string("expected a ") + to_string(kind) + ", got a " + to_string(info.kind), e.line, e.column);
  if (info.kind == ExprKind::Poly && kind == ExprKind::Trig && info.n > 0)
    throw ParseError("x<i> not allowed in a trig polynomial", e.line, e.column);
  if (info.kind == ExprKind::Poly && kind == ExprKind::CircleOp && info.n > 0)
    throw ParseError("x<i> not allowed in a circle operator", e.line, e.column);

  switch (kind) {
    case ExprKind::Poly: {
      Alg<Poly> a{[n](const Rat& c) { return Poly::constant(n, c); },
                  [n](const Expr& l) -> Poly {
                    if (l.op != Expr::Op::X) wrong_kind(l, ExprKind::Poly);
                    return Poly::variable(n, l.index);
                  },
                  [](const Poly& x, const Poly& y) { return x * y; }};
      return eval_as<Poly>(e, a, {});
    }
    case ExprKind::Symbol: {
      Alg<SymbolPoly> a{[n](const Rat& c) { return SymbolPoly::constant(n, c); },
                        [n](const Expr& l) -> SymbolPoly {
                          if (l.op == Expr::Op::X) return SymbolPoly::x(n, l.index);
                          if (l.op == Expr::Op::Xi) return SymbolPoly::xi(n, l.index);
                          wrong_kind(l, ExprKind::Symbol);
                        },
                        [](const SymbolPoly& x, const SymbolPoly& y) { return x * y; }};
      return eval_as<SymbolPoly>(e, a, {});
    }
    case ExprKind::DiffOp: {
      Alg<DiffOp> a{[n](const Rat& c) { return DiffOp::identity(n) * c; },
                    [n](const Expr& l) -> DiffOp {
                      if (l.op == Expr::Op::X) return DiffOp::multiplication(Poly::variable(n, l.index));
                      if (l.op == Expr::Op::D) return DiffOp::partial(n, l.index);
                      wrong_kind(l, ExprKind::DiffOp);
                    },
                    [](const DiffOp& x, const DiffOp& y) { return compose(x, y); }};
      return eval_as<DiffOp>(e, a, [n](const Expr& s) -> DiffOp {
        if (infer(s).kind != ExprKind::Poly) throw PreconditionError("");
        return DiffOp::multiplication(std::get<Poly>(evaluate(s, ExprKind::Poly, n)));
      });
    }
    case ExprKind::Trig: {
      Alg<TrigPoly> a{[](const Rat& c) { return TrigPoly::constant(c); },
                      [](const Expr& l) -> TrigPoly {
                        if (l.op == Expr::Op::Cos) return TrigPoly::cos(l.value);
                        if (l.op == Expr::Op::Sin) return TrigPoly::sin(l.value);
                        wrong_kind(l, ExprKind::Trig);
                      },
                      [](const TrigPoly& x, const TrigPoly& y) { return x * y; }};
      return eval_as<TrigPoly>(e, a, {});
    }
    case ExprKind::CircleOp: {
      Alg<CircleOp> a{[](const Rat& c) { return CircleOp::identity() * c; },
                      [](const Expr& l) -> CircleOp {
                        if (l.op == Expr::Op::CircleD) return CircleOp::derivative();
                        wrong_kind(l, ExprKind::CircleOp);
                      },
                      [](const CircleOp& x, const CircleOp& y) { return compose(x, y); }};
      return eval_as<CircleOp>(e, a, [&e](const Expr& s) -> CircleOp {
        if (infer(s).kind != ExprKind::Trig && infer(s).kind != ExprKind::Poly) throw PreconditionError("");
        const TrigPoly t = std::get<TrigPoly>(evaluate(s, ExprKind::Trig, 0));
        if (t.parity() == Parity::Antiperiodic && !t.is_zero())
          throw ParseError("MODE_MIX: operator coefficients must have integer modes", s.line, s.column);
        return CircleOp::multiplication(t);
      });
    }
  }
  throw ParseError("unknown kind", e.line, e.column);
}

Value parse_value(const std::string& src, int n) {
  const Expr e = parse(src);
  const ExprInfo info = infer(e);
  return evaluate(e, info.kind, n < 0 ? std::max(1, info.n) : n);
}

std::vector<Value> parse_values(const std::vector<std::string>& srcs, int n) {
  std::vector<Expr> es;
  ExprKind kind = ExprKind::Poly;
  int used = 0;
  bool first = true;
  for (const auto& s : srcs) {
    es.push_back(parse(s));
    const ExprInfo info = infer(es.back());
    // Bare constants go with whatever the others are.
    if (info.kind == ExprKind::Poly && info.n == 0 && !first) continue;
    if (first && info.kind == ExprKind::Poly && info.n == 0) continue;
    kind = first ? info.kind : join(kind, info.kind);
    first = false;
    used = std::max(used, info.n);
  }
  const int dim = n < 0 ? std::max(1, used) : n;
  std::vector<Value> out;
  for (const auto& e : es) out.push_back(evaluate(e, kind, is_trig_kind(kind) ? 0 : dim));
  return out;
}

Poly parse_poly(const std::string& src, int n) {
  const Expr e = parse(src);
  return std::get<Poly>(evaluate(e, ExprKind::Poly, n < 0 ? std::max(1, infer(e).n) : n));
}

SymbolPoly parse_symbol(const std::string& src, int n) {
  const Expr e = parse(src);
  return std::get<SymbolPoly>(evaluate(e, ExprKind::Symbol, n < 0 ? std::max(1, infer(e).n) : n));
}

DiffOp parse_diffop(const std::string& src, int n) {
  const Expr e = parse(src);
  return std::get<DiffOp>(evaluate(e, ExprKind::DiffOp, n < 0 ? std::max(1, infer(e).n) : n));
}

TrigPoly parse_trig(const std::string& src) { return std::get<TrigPoly>(evaluate(parse(src), ExprKind::Trig, 0)); }

CircleOp parse_circle_op(const std::string& src) {
  return std::get<CircleOp>(evaluate(parse(src), ExprKind::CircleOp, 0));
}

VectorField parse_field(const std::string& src, int n) {
  const DiffOp d = parse_diffop(src, n);
  if (d.order() > 1) throw PreconditionError("vector field expected, got an operator of order " + std::to_string(d.order()));
  if (!d.coeff(MultiIndex(static_cast<std::size_t>(d.dim()))).is_zero())
    throw PreconditionError("vector field expected, got a zero-order part");
  VectorField x(d.dim());
  for (int i = 0; i < d.dim(); ++i)
    x[i] = d.coeff(MultiIndex::unit(static_cast<std::size_t>(d.dim()), static_cast<std::size_t>(i)));
  return x;
}

std::vector<Poly> parse_poly_list(const std::string& src, int n) {
  Parser p(Lexer(src).run());
  const Expr list = p.list();
  p.finish();
  int used = 0;
  for (const auto& c : list.args) {
    const ExprInfo info = infer(c);
    if (info.kind != ExprKind::Poly) throw ParseError("list entries must be polynomials", c.line, c.column);
    used = std::max(used, info.n);
  }
  const int dim = n < 0 ? std::max<int>(static_cast<int>(list.args.size()), std::max(1, used)) : n;
  std::vector<Poly> out;
  for (const auto& c : list.args) out.push_back(std::get<Poly>(evaluate(c, ExprKind::Poly, dim)));
  return out;
}

ClosedOneForm parse_form(const std::string& src, int n) {
  std::vector<Poly> comps = parse_poly_list(src, n);
  const int dim = comps.empty() ? 0 : comps.front().dim();
  if (static_cast<int>(comps.size()) != dim)
    throw PreconditionError("form needs " + std::to_string(dim) + " components, got " + std::to_string(comps.size()));
  return ClosedOneForm(comps);
}

ExprKind kind_of(const Value& v) { return static_cast<ExprKind>(v.index()); }

int dim_of(const Value& v) {
  return std::visit(
      [](const auto& x) -> int {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, TrigPoly> || std::is_same_v<T, CircleOp>)
          return 0;
        else
          return x.dim();
      },
      v);
}

std::string print(const Value& v) {
  return std::visit([](const auto& x) { return x.to_string(); }, v);
}

}  // namespace qpa
