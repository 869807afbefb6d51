#include "qpa/flows.hpp"

#include <algorithm>
#include <cmath>
#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "qpa/errors.hpp"

namespace qpa {

namespace {

using Matrix = AffineMap::Matrix;

void check_dim(int a, int b, const char* op) {
  if (a != b) throw DimensionError(std::string(op) + ": dimension mismatch");
}

Matrix zero_matrix(std::size_t n) { return Matrix(n, std::vector<Rat>(n, Rat(0))); }

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix r = zero_matrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

std::vector<Rat> mat_vec(const Matrix& a, const std::vector<Rat>& v) {
  std::vector<Rat> r(v.size(), Rat(0));
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t k = 0; k < v.size(); ++k) r[i] += a[i][k] * v[k];
  return r;
}

bool is_zero_matrix(const Matrix& a) {
  for (const auto& row : a)
    for (const auto& v : row)
      if (v != 0) return false;
  return true;
}

// A^0, ..., A^{n-1}.
std::vector<Matrix> powers(const Matrix& a) {
  const std::size_t n = a.size();
  std::vector<Matrix> p;
  Matrix cur = AffineMap::identity(static_cast<int>(n)).linear();
  for (std::size_t k = 0; k < n; ++k) {
    p.push_back(cur);
    cur = mat_mul(cur, a);
  }
  return p;
}

template <int N>
Poly gauss_rule(const std::function<Poly(double)>& f, double a, double b, int n) {
  using Rule = boost::math::quadrature::gauss<double, N>;
  const double half = (b - a) / 2, mid = (a + b) / 2;
  Poly sum(n);
  const auto& xs = Rule::abscissa();
  const auto& ws = Rule::weights();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Rat w = from_double(ws[i] * half);
    sum += f(mid + half * xs[i]) * w;
    if (xs[i] != 0.0) sum += f(mid - half * xs[i]) * w;
  }
  return sum.rounded();
}

Poly adaptive(const std::function<Poly(double)>& f, double a, double b, double tol, int n, int depth) {
  Poly coarse = gauss_rule<10>(f, a, b, n);
  Poly fine = gauss_rule<20>(f, a, b, n);
  const double scale = std::max(1.0, fine.max_abs_coeff());
  if ((fine - coarse).max_abs_coeff() <= tol * scale || depth >= 30) return fine;
  const double m = (a + b) / 2;
  return (adaptive(f, a, m, tol / 2, n, depth + 1) + adaptive(f, m, b, tol / 2, n, depth + 1)).rounded();
}

CheckReport compare(const Poly& lhs, const Poly& rhs, Mode mode) {
  CheckReport r;
  r.mode = mode;
  r.lhs = lhs.to_string();
  r.rhs = rhs.to_string();
  r.residual = (lhs - rhs).max_abs_coeff();
  r.passed = mode == Mode::Exact ? lhs == rhs : r.residual < 1e-9;
  return r;
}

std::vector<std::vector<Rat>> probe_points(int n) {
  static const Rat values[] = {Rat(0), Rat(1), Rat(-1), Rat(1, 2), Rat(-1, 2)};
  std::vector<std::vector<Rat>> pts{{}};
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<Rat>> next;
    for (const auto& p : pts)
      for (const auto& v : values) {
        auto q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    pts = std::move(next);
  }
  return pts;
}

}  // namespace

const char* to_string(Mode m) { return m == Mode::Exact ? "exact" : "numeric"; }

Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::Exact;
  if (s == "numeric") return Mode::Numeric;
  throw PreconditionError("unknown mode '" + s + "' (expected exact or numeric)");
}

AffineField::AffineField(Matrix a, std::vector<Rat> b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.size() != b_.size()) throw DimensionError("AffineField: matrix/offset size mismatch");
  for (const auto& row : a_)
    if (row.size() != b_.size()) throw DimensionError("AffineField: matrix is not square");
  Matrix p = a_;
  for (std::size_t k = 1; k < a_.size(); ++k) p = mat_mul(p, a_);
  nilpotent_ = is_zero_matrix(p);
}

AffineField AffineField::from_field(const VectorField& y) {
  const int n = y.dim();
  Matrix a = zero_matrix(static_cast<std::size_t>(n));
  std::vector<Rat> b(static_cast<std::size_t>(n), Rat(0));
  for (int i = 0; i < n; ++i) {
    if (y[i].degree() > 1) throw PreconditionError("vector field is not affine");
    const auto ui = static_cast<std::size_t>(i);
    b[ui] = y[i].constant_term();
    for (int k = 0; k < n; ++k)
      a[ui][static_cast<std::size_t>(k)] =
          y[i].coeff(MultiIndex::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(k)));
  }
  return {a, b};
}

Rat AffineField::trace() const {
  Rat s(0);
  for (std::size_t i = 0; i < a_.size(); ++i) s += a_[i][i];
  return s;
}

VectorField AffineField::to_field() const { return VectorField(AffineMap(a_, b_).components()); }

AffineField AffineField::operator-() const {
  AffineField r = *this;
  for (auto& row : r.a_)
    for (auto& v : row) v = -v;
  for (auto& v : r.b_) v = -v;
  return r;
}

FlowMap flow(const AffineField& y, const Rat& t, Mode mode) {
  const std::size_t n = static_cast<std::size_t>(y.dim());
  if (mode == Mode::Exact) {
    if (!y.nilpotent()) throw PreconditionError("exact flow requires a nilpotent linear part");
    Matrix m = zero_matrix(n);
    std::vector<Rat> c(n, Rat(0));
    Rat tk(1);
    const auto pw = powers(y.a());
    for (std::size_t k = 0; k < n; ++k) {
      const Rat ck = tk / factorial(static_cast<int>(k));
      const Rat dk = tk * t / factorial(static_cast<int>(k) + 1);
      const auto ab = mat_vec(pw[k], y.b());
      for (std::size_t i = 0; i < n; ++i) {
        c[i] += dk * ab[i];
        for (std::size_t j = 0; j < n; ++j) m[i][j] += ck * pw[k][i][j];
      }
      tk *= t;
    }
    return {y, t, mode, AffineMap(m, c)};
  }
  const double td = to_double(t);
  Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    aug(ii, static_cast<Eigen::Index>(n)) = to_double(y.b()[i]) * td;
    for (std::size_t j = 0; j < n; ++j) aug(ii, static_cast<Eigen::Index>(j)) = to_double(y.a()[i][j]) * td;
  }
  const Eigen::MatrixXd e = aug.exp();
  Matrix m = zero_matrix(n);
  std::vector<Rat> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    c[i] = from_double(e(ii, static_cast<Eigen::Index>(n)));
    for (std::size_t j = 0; j < n; ++j) m[i][j] = from_double(e(ii, static_cast<Eigen::Index>(j)));
  }
  return {y, t, mode, AffineMap(m, c)};
}

std::vector<Poly> symbolic_flow(const AffineField& y) {
  if (!y.nilpotent()) throw PreconditionError("exact flow requires a nilpotent linear part");
  const int n = y.dim();
  const Poly t = Poly::variable(n + 1, n);
  const auto pw = powers(y.a());
  std::vector<Poly> comps(static_cast<std::size_t>(n), Poly(n + 1));
  for (int k = 0; k < n; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    const Poly ck = t.pow(static_cast<unsigned>(k)) * (Rat(1) / factorial(k));
    const Poly dk = t.pow(static_cast<unsigned>(k + 1)) * (Rat(1) / factorial(k + 1));
    const auto ab = mat_vec(pw[uk], y.b());
    for (int i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      Poly lin(n + 1);
      for (int j = 0; j < n; ++j) lin += Poly::variable(n + 1, j) * pw[uk][ui][static_cast<std::size_t>(j)];
      comps[ui] += ck * lin + dk * ab[ui];
    }
  }
  return comps;
}

Poly group_divergence(const AffineMap& phi, Mode mode) {
  const Rat det = phi.determinant();
  if (det == 0) throw PreconditionError("degenerate Jacobian");
  if (mode == Mode::Exact) {
    if (abs(det) != 1) throw PreconditionError("group divergence is not rational (det = " + to_string(det) + ")");
    return Poly(phi.dim());
  }
  return Poly::constant(phi.dim(), from_double(std::log(std::abs(to_double(det)))));
}

Poly group_divergence(const FlowMap& phi) { return group_divergence(phi.map, phi.mode); }

CheckReport div_cocycle_check(const FlowMap& phi, const FlowMap& psi) {
  check_dim(phi.map.dim(), psi.map.dim(), "div_cocycle_check");
  const Mode mode = phi.mode == Mode::Exact && psi.mode == Mode::Exact ? Mode::Exact : Mode::Numeric;
  const Poly lhs = group_divergence(phi.map.compose(psi.map), mode);
  const Poly rhs = psi.map.pullback(group_divergence(phi.map, mode)) + group_divergence(psi.map, mode);
  return compare(lhs, rhs, mode);
}

CheckReport div3_check(const AffineField& y, const Rat& t, Mode mode) {
  const int n = y.dim();
  const Poly lhs = group_divergence(flow(y, t, mode));
  const Poly div = divergence(y.to_field());
  Poly rhs(n);
  if (mode == Mode::Exact) {
    Poly integrand = div.substitute(symbolic_flow(y));
    rhs = integrand.integrate(n).eval_var(n, t).resize(n);
  } else {
    rhs = integrate_numeric([&](double s) { return flow(y, from_double(s), mode).map.pullback(div).rounded(); }, 0.0,
                            to_double(t));
  }
  return compare(lhs, rhs, mode);
}

CheckReport pushpull_check(const FlowMap& phi, const VectorField& x) {
  check_dim(phi.map.dim(), x.dim(), "pushpull_check");
  const AffineMap inv = phi.map.inverse();
  const Poly lhs = divergence(phi.map.push_forward(x, inv));
  const Poly rhs = inv.pullback(divergence(x) + ClosedOneForm::exact(group_divergence(phi))(x));
  return compare(phi.mode == Mode::Exact ? lhs : lhs.rounded(), phi.mode == Mode::Exact ? rhs : rhs.rounded(),
                 phi.mode);
}

Rat k_factor(const Rat& kappa, const Rat& t, Mode mode) {
  if (kappa == 0) return Rat(1);
  if (mode == Mode::Exact) throw PreconditionError("exact mode requires kappa = 0");
  return from_double(std::exp(to_double(kappa) * to_double(t)));
}

Rat lambda_factor(const Rat& kappa, const Rat& lambda, const Rat& t, Mode mode) {
  if (kappa == 0) return lambda * t;
  if (mode == Mode::Exact) throw PreconditionError("exact mode requires kappa = 0");
  const double k = to_double(kappa);
  return from_double(to_double(lambda) * std::expm1(k * to_double(t)) / k);
}

Poly integrate_numeric(const std::function<Poly(double)>& f, double a, double b, double tol) {
  const int n = f(a).dim();
  if (a == b) return Poly(n);
  return adaptive(f, a, b, tol, n, 0);
}

FirstOrderOp one_param_group(const Deriv1Params& p, const Rat& t, const FirstOrderOp& u, Mode mode) {
  const int n = u.dim();
  check_dim(p.y.dim(), n, "one_param_group");
  check_dim(p.omega.dim(), n, "one_param_group");
  const AffineField y = AffineField::from_field(p.y);
  if (mode == Mode::Exact && (!y.nilpotent() || p.kappa != 0))
    throw PreconditionError("exact mode requires a nilpotent affine Y and kappa = 0");
  if (t == 0) return u;

  // φ_t = Exp(-tY) and φ_t⁻¹ = Exp(tY).
  const AffineMap fwd = flow(-y, t, mode).map;
  const AffineMap back = flow(y, t, mode).map;
  const VectorField xt = fwd.push_forward(u.x, back);

  Poly h = u.f * k_factor(p.kappa, t, mode) + divergence(u.x) * lambda_factor(p.kappa, p.lambda, t, mode);
  // div Y is constant for affine Y, so the inner λ integral vanishes.
  if (!p.omega.is_zero()) {
    if (mode == Mode::Exact) {
      const auto comps = symbolic_flow(-y);
      Poly integrand(n + 1);
      for (int i = 0; i < n; ++i) {
        Poly mx(n + 1);
        for (int k = 0; k < n; ++k) mx += comps[static_cast<std::size_t>(i)].diff(k) * u.x[k].resize(n + 1);
        integrand += p.omega[i].substitute(comps) * mx;
      }
      h += integrand.integrate(n).eval_var(n, t).resize(n);
    } else {
      const double td = to_double(t), kd = to_double(p.kappa);
      h += integrate_numeric(
          [&](double s) {
            const AffineMap phis = flow(-y, from_double(s), mode).map;
            return (phis.pullback_form_on(p.omega, u.x) * from_double(std::exp(kd * (td - s)))).rounded();
          },
          0.0, td);
    }
  }
  FirstOrderOp r{back.pullback(h), xt};
  return mode == Mode::Exact ? r : r.rounded();
}

Mode natural_mode(const Deriv1Params& p) {
  try {
    const AffineField y = AffineField::from_field(p.y);
    return y.nilpotent() && p.kappa == 0 ? Mode::Exact : Mode::Numeric;
  } catch (const PreconditionError&) {
    return Mode::Numeric;
  }
}

double probe_distance(const FirstOrderOp& a, const FirstOrderOp& b) {
  check_dim(a.dim(), b.dim(), "probe_distance");
  const int n = a.dim();
  const FirstOrderOp d = a - b;
  std::vector<Poly> probes{Poly::constant(n, Rat(1))};
  for (int i = 0; i < n; ++i) {
    probes.push_back(Poly::variable(n, i));
    for (int j = i; j < n; ++j) probes.push_back(Poly::variable(n, i) * Poly::variable(n, j));
  }
  const auto pts = probe_points(n);
  double worst = 0.0;
  for (const auto& h : probes) {
    const Poly img = d.apply(h);
    if (img.is_zero()) continue;
    for (const auto& x : pts) worst = std::max(worst, std::abs(to_double(img.eval(x))));
  }
  return worst;
}

GeneratorReport generator_check(const Deriv1Params& p, const FirstOrderOp& u, const Rat& h, Mode mode) {
  if (h <= 0) throw PreconditionError("step must be positive");
  const FirstOrderOp target = deriv_d1(p, u);
  GeneratorReport rep;
  Rat step = h;
  for (int k = 0; k < 3; ++k) {
    const FirstOrderOp dq = (one_param_group(p, step, u, mode) - one_param_group(p, -step, u, mode)) *
                            (Rat(1) / (2 * step));
    rep.steps.push_back(to_double(step));
    rep.errors.push_back(probe_distance(dq, target));
    step /= 2;
  }
  const double floor = 1e-10;
  if (*std::max_element(rep.errors.begin(), rep.errors.end()) <= floor) {
    rep.passed = true;
    return rep;
  }
  double order = 1e300;
  for (std::size_t k = 0; k + 1 < rep.errors.size(); ++k) {
    if (rep.errors[k + 1] <= floor) continue;
    order = std::min(order, std::log2(rep.errors[k] / rep.errors[k + 1]));
  }
  rep.order = order;
  rep.passed = order >= 1.9;
  return rep;
}

AffineField random_nilpotent_field(Rng& rng, int n) {
  AffineField::Matrix a(static_cast<std::size_t>(n), std::vector<Rat>(static_cast<std::size_t>(n), Rat(0)));
  std::vector<Rat> b;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = rng.small_rat_or_zero();
    b.push_back(rng.small_rat_or_zero());
  }
  // Conjugate by a permutation so the nilpotent part is not always upper triangular.
  if (n > 1 && rng.uniform(0, 1)) {
    std::swap(a[0], a[1]);
    for (auto& row : a) std::swap(row[0], row[1]);
    std::swap(b[0], b[1]);
  }
  return {a, b};
}

AffineField random_affine_field(Rng& rng, int n) {
  AffineField::Matrix a(static_cast<std::size_t>(n));
  std::vector<Rat> b;
  for (auto& row : a) {
    for (int j = 0; j < n; ++j) row.push_back(rng.small_rat_or_zero() / 4);
    b.push_back(rng.small_rat_or_zero());
  }
  return {a, b};
}

}  // namespace qpa
