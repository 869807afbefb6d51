#include "qpa/equivariance.hpp"

#include <map>

#include "qpa/derivations.hpp"
#include "qpa/errors.hpp"
#include "qpa/quantize.hpp"
#include "qpa/random.hpp"

namespace qpa {

namespace {

struct LinearSolution {
  int rank = 0;
  bool consistent = true;
  std::vector<Rat> x;  // free variables set to zero
};

// Row reduction of A x = b over ℚ.
LinearSolution solve_linear(std::vector<std::vector<Rat>> a, std::vector<Rat> b, int unknowns) {
  LinearSolution s;
  const std::size_t rows = a.size(), cols = static_cast<std::size_t>(unknowns);
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    const Rat inv = 1 / a[r][c];
    for (auto& v : a[r]) v *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rat f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  s.rank = static_cast<int>(r);
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) s.consistent = false;
  s.x.assign(cols, Rat(0));
  for (std::size_t i = 0; i < r; ++i) s.x[pivot_col[i]] = b[i];
  return s;
}

// Flattens fields to coefficient vectors over a shared monomial list.
std::vector<std::vector<Rat>> field_matrix(const std::vector<VectorField>& fields,
                                           std::map<std::pair<int, MultiIndex>, std::size_t>& keys) {
  for (const auto& f : fields)
    for (int i = 0; i < f.dim(); ++i)
      for (const auto& [a, c] : f[i].terms()) keys.emplace(std::make_pair(i, a), 0);
  std::size_t idx = 0;
  for (auto& [k, v] : keys) v = idx++;
  std::vector<std::vector<Rat>> cols;
  for (const auto& f : fields) {
    std::vector<Rat> col(keys.size(), Rat(0));
    for (int i = 0; i < f.dim(); ++i)
      for (const auto& [a, c] : f[i].terms()) col[keys.at({i, a})] = c;
    cols.push_back(std::move(col));
  }
  return cols;
}

void check_generators_dim(int n) {
  if (n < 1) throw PreconditionError("dimension must be positive");
}

SymbolPoly div_power(SymbolPoly p, int j) {
  for (int i = 0; i < j; ++i) p = divergence_operator(p);
  return p;
}

}  // namespace

std::vector<VectorField> affine_generators(int n) {
  check_generators_dim(n);
  std::vector<VectorField> g;
  for (int i = 0; i < n; ++i) g.push_back(VectorField::partial(n, i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.push_back(Poly::variable(n, i) * VectorField::partial(n, j));
  return g;
}

std::vector<VectorField> sl_generators(int n) {
  std::vector<VectorField> g = affine_generators(n);
  VectorField euler(n);
  for (int j = 0; j < n; ++j) euler[j] = Poly::variable(n, j);
  for (int i = 0; i < n; ++i) g.push_back(Poly::variable(n, i) * euler);
  return g;
}

std::optional<std::vector<Rat>> span_coordinates(const std::vector<VectorField>& basis, const VectorField& v) {
  std::vector<VectorField> all = basis;
  all.push_back(v);
  std::map<std::pair<int, MultiIndex>, std::size_t> keys;
  auto cols = field_matrix(all, keys);
  const std::size_t m = keys.size();
  std::vector<std::vector<Rat>> a(m, std::vector<Rat>(basis.size(), Rat(0)));
  std::vector<Rat> b(m, Rat(0));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < basis.size(); ++c) a[r][c] = cols[c][r];
    b[r] = cols.back()[r];
  }
  LinearSolution s = solve_linear(std::move(a), std::move(b), static_cast<int>(basis.size()));
  if (!s.consistent) return std::nullopt;
  return s.x;
}

int field_rank(const std::vector<VectorField>& fields) {
  std::map<std::pair<int, MultiIndex>, std::size_t> keys;
  auto cols = field_matrix(fields, keys);
  std::vector<std::vector<Rat>> a(keys.size(), std::vector<Rat>(fields.size(), Rat(0)));
  for (std::size_t r = 0; r < keys.size(); ++r)
    for (std::size_t c = 0; c < fields.size(); ++c) a[r][c] = cols[c][r];
  return solve_linear(std::move(a), std::vector<Rat>(keys.size(), Rat(0)), static_cast<int>(fields.size())).rank;
}

DiffOp density_lie_field(const VectorField& x, const DensityWeight& w) {
  return DiffOp::from_field(x) + DiffOp::multiplication(divergence(x) * w.lambda);
}

DiffOp density_lie_derivative(const VectorField& x, const DensityWeight& w, const DiffOp& d) {
  return commutator(density_lie_field(x, w), d);
}

SymbolPoly classical_action(const VectorField& x, const SymbolPoly& f) {
  return poisson_bracket(to_symbol(x), f);
}

SymbolPoly divergence_operator(const SymbolPoly& p) {
  SymbolPoly r(p.dim());
  for (int i = 0; i < p.dim(); ++i) r += p.diff_xi(i).diff_x(i);
  return r;
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Unique: return "UNIQUE";
    case SolveStatus::NonUnique: return "NON_UNIQUE";
    case SolveStatus::NoSolution: return "NO_SOLUTION";
    case SolveStatus::SliceTooSmall: return "SLICE_TOO_SMALL";
  }
  return "?";
}

EquivariantSolution EquivariantSolution::affine(int n, int k, const DensityWeight& w) {
  EquivariantSolution s;
  s.n = n;
  s.k = k;
  s.weight = w;
  s.slice_degree = k + 2;
  for (int m = 0; m <= k; ++m) {
    s.c.emplace_back(static_cast<std::size_t>(m + 1), Rat(0));
    s.c.back()[0] = 1;
  }
  return s;
}

EquivariantSolution solve_equivariant_symbol(int n, int k, const DensityWeight& w, int slice_degree) {
  if (n < 1 || n > 2) throw PreconditionError("equivariant solver needs 1 <= n <= 2");
  if (k < 0 || k > 4) throw PreconditionError("equivariant solver needs 0 <= k <= 4");
  EquivariantSolution s = EquivariantSolution::affine(n, k, w);
  s.slice_degree = slice_degree < 0 ? k + 2 : slice_degree;
  const auto gens = sl_generators(n);
  bool consistent = true;
  for (int m = 1; m <= k; ++m) {
    // Rows: one per (generator, slice monomial, output monomial); columns j = 0..m.
    std::vector<std::vector<Rat>> a;
    std::vector<Rat> b;
    for (const auto& xi : indices_of_degree(static_cast<std::size_t>(n), m))
      for (int d = 0; d <= s.slice_degree; ++d)
        for (const auto& alpha : indices_of_degree(static_cast<std::size_t>(n), d)) {
          const SymbolPoly p = SymbolPoly::from_coefficient(Poly::monomial(alpha, Rat(1)), xi);
          for (const auto& x : gens) {
            const SymbolPoly lp = classical_action(x, p);
            std::map<MultiIndex, std::vector<Rat>> rows;
            for (int j = 0; j <= m; ++j) {
              const DiffOp r = q_affine(div_power(lp, j)) - density_lie_derivative(x, w, q_affine(div_power(p, j)));
              const SymbolPoly rs = sigma_aff(r);
              for (const auto& [mono, c] : rs.raw().terms()) {
                auto& row = rows[mono];
                if (row.empty()) row.assign(static_cast<std::size_t>(m + 1), Rat(0));
                row[static_cast<std::size_t>(j)] = c;
              }
            }
            for (auto& [mono, row] : rows) {
              b.push_back(-row[0]);
              a.emplace_back(row.begin() + 1, row.end());
            }
          }
        }
    LinearSolution ls = solve_linear(std::move(a), std::move(b), m);
    s.unknowns += m;
    s.rank += ls.rank;
    consistent = consistent && ls.consistent;
    for (int j = 1; j <= m; ++j) s.c[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] = ls.x[static_cast<std::size_t>(j - 1)];
  }
  if (!consistent)
    s.status = SolveStatus::NoSolution;
  else if (s.rank < s.unknowns)
    s.status = s.slice_degree < k ? SolveStatus::SliceTooSmall : SolveStatus::NonUnique;
  else
    s.status = SolveStatus::Unique;
  return s;
}

DiffOp quantize_sl(const EquivariantSolution& s, const SymbolPoly& p) {
  if (p.dim() != s.n) throw DimensionError("quantize_sl: dimension mismatch");
  if (p.xi_degree() > s.k) throw PreconditionError("symbol degree exceeds the solved order");
  DiffOp d(s.n);
  for (int m = 0; m <= p.xi_degree(); ++m) {
    const SymbolPoly pm = p.homogeneous(m);
    SymbolPoly acc(s.n);
    for (int j = 0; j <= m; ++j) acc += div_power(pm, j) * s.coeff(m, j);
    d += q_affine(acc);
  }
  return d;
}

SymbolPoly sigma_sl(const EquivariantSolution& s, const DiffOp& d) {
  if (d.dim() != s.n) throw DimensionError("sigma_sl: dimension mismatch");
  if (d.order() > s.k) throw PreconditionError("operator order exceeds the solved order");
  const SymbolPoly a = sigma_aff(d);
  const int top = a.xi_degree();
  std::vector<SymbolPoly> parts(static_cast<std::size_t>(std::max(top, 0) + 1), SymbolPoly(s.n));
  for (int m = top; m >= 0; --m) {
    SymbolPoly pm = a.homogeneous(m);
    for (int mm = m + 1; mm <= top; ++mm)
      pm -= div_power(parts[static_cast<std::size_t>(mm)], mm - m) * s.coeff(mm, mm - m);
    parts[static_cast<std::size_t>(m)] = pm;
  }
  SymbolPoly r(s.n);
  for (const auto& p : parts) r += p;
  return r;
}

IntertwiningReport verify_intertwining(const EquivariantSolution& s, int samples, std::uint64_t seed,
                                       GeneratorSet gens) {
  if (samples <= 0) throw PreconditionError("samples must be positive");
  IntertwiningReport rep;
  const auto fields = gens == GeneratorSet::Full ? sl_generators(s.n) : affine_generators(s.n);
  Rng rng(seed);
  auto fail = [&](const std::string& g, const DiffOp& d, const std::string& l, const std::string& r) {
    rep.passed = false;
    rep.generator = g;
    rep.op = d.to_string();
    rep.lhs = l;
    rep.rhs = r;
  };
  for (int i = 0; i < samples && rep.passed; ++i) {
    DiffOp d = q_affine(random_symbol(rng, s.n, s.slice_degree, s.k, 4));
    if (d.is_zero()) d = DiffOp::identity(s.n);
    ++rep.samples;
    const SymbolPoly sd = sigma_sl(s, d);
    ++rep.checks;
    const SymbolPoly top = principal_symbol(d);
    if (sd.xi_degree() != d.order() || sd.homogeneous(d.order()) != top) {
      fail("normalization", d, sd.to_string(), top.to_string());
      break;
    }
    for (const auto& x : fields) {
      ++rep.checks;
      const SymbolPoly lhs = sigma_sl(s, density_lie_derivative(x, s.weight, d));
      const SymbolPoly rhs = classical_action(x, sd);
      if (lhs != rhs) {
        fail(x.to_string(), d, lhs.to_string(), rhs.to_string());
        break;
      }
    }
  }
  return rep;
}

}  // namespace qpa
