#include "qslice/phi.hpp"

#include "qslice/errors.hpp"
#include "qslice/linalg.hpp"

namespace qslice {

ChainShape chain_shape(int i, int j, int jp, int d) {
  const int h1 = j - i - 1;
  if (jp >= j) return {d, h1, 1 - d};
  return {d + j - jp, h1, 1 + jp - j - d};
}

namespace {

template <class T>
struct ChainSolution {
  std::vector<T> x, y;
};

// Solves  X_h + Y_h = P1_h  and  alpha_h Z_h = beta_h Z_{h-1} + P2_h  where
// Z_{h0-1} = X_{h0}, Z_h = Y_h + X_{h+1} (h < h1), Z_{h1} = Y_{h1}.
// Writing Z_h = rho_h X_{h0} + sigma_h, the sum of the first family gives
// X_{h0} (1 + sum rho) = sum P1 - sum sigma.
template <class T>
ChainSolution<T> solve_chain(const std::vector<T>& p1, const std::vector<T>& p2, const std::vector<Rational>& alpha,
                             const std::vector<Rational>& beta) {
  const std::size_t m = p1.size();
  std::vector<Rational> rho(m);
  std::vector<T> sigma(m, p1[0] * Rational(0));
  Rational rho_prev(1);
  T sigma_prev = p1[0] * Rational(0);
  Rational denom(1);
  T rhs = p1[0] * Rational(0);
  for (std::size_t q = 0; q < m; ++q) {
    if (alpha[q].is_zero()) throw Error(Errc::NonUniqueSolution, "zero chain coefficient");
    const Rational inv = Rational(1) / alpha[q];
    rho[q] = beta[q] * rho_prev * inv;
    sigma[q] = (sigma_prev * beta[q] + p2[q]) * inv;
    rho_prev = rho[q];
    sigma_prev = sigma[q];
    denom += rho[q];
    rhs = rhs + p1[q] - sigma[q];
  }
  if (denom.is_zero()) throw Error(Errc::NonUniqueSolution, "chain system is singular");
  ChainSolution<T> sol;
  sol.x.push_back(rhs * (Rational(1) / denom));
  for (std::size_t q = 0; q < m; ++q) {
    sol.y.push_back(p1[q] - sol.x[q]);
    if (q + 1 < m) sol.x.push_back(sol.x[0] * rho[q] + sigma[q] - sol.y[q]);
  }
  return sol;
}

ChainSolution<Matrix> solve_chain_generic(const std::vector<Matrix>& p1, const std::vector<Matrix>& p2,
                                          const std::vector<Rational>& alpha, const std::vector<Rational>& beta) {
  const std::size_t m = p1.size();
  AffineSystem sys;
  const auto shape = std::make_pair(p1[0].rows(), p1[0].cols());
  sys.unknown_shapes.assign(2 * m, shape);
  auto X = [](std::size_t q) { return q; };
  auto Y = [m](std::size_t q) { return m + q; };
  for (std::size_t q = 0; q < m; ++q) sys.equations.push_back({{{X(q), Rational(1)}, {Y(q), Rational(1)}}, p1[q]});
  for (std::size_t q = 0; q < m; ++q) {
    AffineEquation eq;
    eq.rhs = p2[q];
    eq.terms.push_back({Y(q), alpha[q]});
    if (q + 1 < m) eq.terms.push_back({X(q + 1), alpha[q]});
    eq.terms.push_back({X(q), -beta[q]});
    if (q > 0) eq.terms.push_back({Y(q - 1), -beta[q]});
    sys.equations.push_back(std::move(eq));
  }
  const auto sol = solve_affine(sys);
  ChainSolution<Matrix> out;
  for (std::size_t q = 0; q < m; ++q) {
    out.x.push_back(sol[X(q)]);
    out.y.push_back(sol[Y(q)]);
  }
  return out;
}

void place(Matrix& target, const Slot& row, const Slot& col, const Matrix& m) {
  if (row.dim == 0 || col.dim == 0) return;
  target.set_block(row.offset, col.offset, m);
}

void fill_fixed_blocks(const ADHMData& z, TildeData& t) {
  const TildeLayout& lay = t.layout;
  const int n = lay.n();
  for (int i = 0; i <= n - 2; ++i) {
    Matrix& A = t.Atil[static_cast<std::size_t>(i)];
    Matrix& B = t.Btil[static_cast<std::size_t>(i)];
    if (i >= 1) {
      place(A, lay.v_slot(i + 1), lay.v_slot(i), z.a(i));
      place(B, lay.v_slot(i), lay.v_slot(i + 1), z.b(i));
    }
    for (int jp = i + 1; jp <= n - 1; ++jp) place(A, lay.v_slot(i + 1), lay.d_slot(i, jp, 1), composite_gamma(z, jp, i + 1));
    for (int j = i + 1; j <= n - 1; ++j) place(B, lay.d_slot(i, j, j - i), lay.v_slot(i + 1), composite_delta(z, i + 1, j));
    for (const Slot& s : lay.slots(i + 1)) {
      if (s.is_v) continue;
      const Matrix id = Matrix::identity(s.dim);
      place(A, s, lay.d_slot(i, s.j, s.k + 1), id);
      place(B, lay.d_slot(i, s.j, s.k), s, id);
    }
  }
}

Matrix block_of(const Matrix& m, const Slot& row, const Slot& col) { return m.block(row.offset, col.offset, row.dim, col.dim); }

void solve_level(TildeData& t, int i, Solver solver) {
  const TildeLayout& lay = t.layout;
  const int n = lay.n();
  const auto ui = static_cast<std::size_t>(i);
  const Matrix L = t.Btil[ui + 1] * t.Atil[ui + 1];
  const SL2Triple tr = sl2_of_level(lay, i);
  Matrix x_full(lay.size(i), lay.size(i));
  x_full.set_block(lay.d_prime_offset(i), lay.d_prime_offset(i), tr.x);
  for (int d = 1; d <= n - 2 - i; ++d) {
    // Deg-d unknowns are still zero, so these are the constants of the chains.
    const Matrix M = t.Atil[ui] * t.Btil[ui];
    const Matrix N = t.Btil[ui] * t.Atil[ui] - x_full;
    for (int j = i + 2; j <= n - 1; ++j)
      for (int jp = i + 2; jp <= n - 1; ++jp) {
        if (lay.d_dim(j) == 0 || lay.d_dim(jp) == 0) continue;
        const ChainShape cs = chain_shape(i, j, jp, d);
        if (cs.empty()) continue;
        std::vector<Matrix> p1, p2;
        std::vector<Rational> alpha, beta;
        for (int h = cs.h0; h <= cs.h1; ++h) {
          const int hp = h + cs.k;
          const Slot& r = lay.d_slot(i + 1, j, h);
          const Slot& c = lay.d_slot(i + 1, jp, hp);
          p1.push_back(block_of(L, r, c) - block_of(M, r, c));
          const Rational a(hp * (jp - i - hp));
          const Rational b(h * (j - i - h));
          p2.push_back(block_of(N, lay.d_slot(i, j, h), lay.d_slot(i, jp, hp)) * b -
                       block_of(N, lay.d_slot(i, j, h + 1), lay.d_slot(i, jp, hp + 1)) * a);
          alpha.push_back(a);
          beta.push_back(b);
        }
        const auto sol =
            solver == Solver::Chain ? solve_chain<Matrix>(p1, p2, alpha, beta) : solve_chain_generic(p1, p2, alpha, beta);
        for (int h = cs.h0; h <= cs.h1; ++h) {
          const auto q = static_cast<std::size_t>(h - cs.h0);
          t.set_t(i, j, h, jp, h + cs.k, sol.x[q]);
          t.set_s(i, j, h + 1, jp, h + cs.k, sol.y[q]);
        }
      }
  }
}

}  // namespace

TildeData phi(const ADHMData& z, Solver solver) {
  if (!check_admissible(z)) throw Error(Errc::NotAdmissible, "phi needs admissible data");
  TildeData t = TildeData::zero(TildeLayout(z.dims));
  fill_fixed_blocks(z, t);
  for (int i = z.n() - 3; i >= 0; --i) solve_level(t, i, solver);
  return t;
}

Rational CoeffTable::lambda_at(const BlockIndex& k) const {
  auto it = lambda.find(k);
  return it == lambda.end() ? Rational(0) : it->second;
}

Rational CoeffTable::mu_at(const BlockIndex& k) const {
  auto it = mu.find(k);
  return it == mu.end() ? Rational(0) : it->second;
}

CoeffTable coefficient_tables(int n) {
  if (n < 2) throw Error(Errc::InvalidArgument, "n must be at least 2");
  CoeffTable tab;
  tab.n = n;
  auto lookup = [](const std::map<BlockIndex, Rational>& m, const BlockIndex& k) -> const Rational& {
    auto it = m.find(k);
    if (it == m.end()) throw Error(Errc::InvalidArgument, "coefficient recursion references a missing entry");
    return it->second;
  };
  for (int i = n - 3; i >= 0; --i)
    for (int d = 1; d <= n - 2 - i; ++d)
      for (int j = i + 2; j <= n - 1; ++j)
        for (int jp = i + 2; jp <= n - 1; ++jp) {
          const ChainShape cs = chain_shape(i, j, jp, d);
          if (cs.empty()) continue;
          std::vector<Rational> nu, zero, alpha, beta;
          for (int h = cs.h0; h <= cs.h1; ++h) {
            const int hp = h + cs.k;
            const bool top = h == j - i - 1;
            Rational v(0);
            if (hp == 1 && top) v = 1;
            if (!top) v += lookup(tab.lambda, {i + 1, j, h, jp, hp});
            if (hp > 1) v += lookup(tab.mu, {i + 1, j, h, jp, hp - 1});
            nu.push_back(v);
            zero.emplace_back(0);
            alpha.emplace_back(hp * (jp - i - hp));
            beta.emplace_back(h * (j - i - h));
          }
          const auto sol = solve_chain<Rational>(nu, zero, alpha, beta);
          for (int h = cs.h0; h <= cs.h1; ++h) {
            const auto q = static_cast<std::size_t>(h - cs.h0);
            tab.lambda[{i, j, h, jp, h + cs.k}] = sol.x[q];
            tab.mu[{i, j, h + 1, jp, h + cs.k}] = sol.y[q];
          }
        }
  return tab;
}

PositivityReport check_positivity(const CoeffTable& tab) {
  PositivityReport rep;
  const int n = tab.n;
  auto require = [&](bool positive, const std::string& what) {
    ++rep.checked;
    if (!positive && rep.ok) {
      rep.ok = false;
      rep.first_violation = what;
    }
  };
  auto name = [](const char* sym, const BlockIndex& k) {
    return std::string(sym) + "(i=" + std::to_string(k[0]) + ",j=" + std::to_string(k[1]) + ",h=" + std::to_string(k[2]) +
           ",jp=" + std::to_string(k[3]) + ",hp=" + std::to_string(k[4]) + ")";
  };
  for (int i = 0; i <= n - 2; ++i)
    for (int j = i + 1; j <= n - 1; ++j)
      for (int jp = i + 2; jp <= n - 1; ++jp) {
        for (int h = 1; h <= j - i - 1; ++h) {
          if (deg_grad(BlockKind::T, j, h, jp, 1).deg > 0) {
            const BlockIndex k{i, j, h, jp, 1};
            require(tab.lambda_at(k).sign() > 0, name("lambda", k));
          }
          for (int hp = 2; hp <= jp - i - 1; ++hp) {
            if (deg_grad(BlockKind::T, j, h, jp, hp).deg <= 0) continue;
            const BlockIndex k{i, j, h, jp, hp};
            require((tab.lambda_at(k) + tab.mu_at({i, j, h, jp, hp - 1})).sign() > 0, name("lambda+mu", k));
          }
        }
        for (int hp = 1; hp <= jp - i - 1; ++hp) {
          if (deg_grad(BlockKind::S, j, j - i, jp, hp).deg <= 0) continue;
          const BlockIndex k{i, j, j - i, jp, hp};
          require(tab.mu_at(k).sign() > 0, name("mu", k));
        }
      }
  return rep;
}

ADHMData rectangle_probe(int n, int j, int jp, int r) {
  if (j == jp || r < 1 || r > std::min(j, jp) || j + jp - r > n - 1)
    throw Error(Errc::InvalidArgument, "rectangle probe out of range");
  const int P = jp - r, Q = j - r;
  auto vertex = [&](int p, int q) { return jp - p + q; };
  // index[p][q] is the coordinate of e_{p,q} inside its vertex space.
  std::vector<std::vector<int>> index(static_cast<std::size_t>(P + 1), std::vector<int>(static_cast<std::size_t>(Q + 1)));
  std::vector<int> v(static_cast<std::size_t>(n - 1), 0), d(static_cast<std::size_t>(n - 1), 0);
  for (int p = 0; p <= P; ++p)
    for (int q = 0; q <= Q; ++q) index[p][q] = v[static_cast<std::size_t>(vertex(p, q) - 1)]++;
  d[static_cast<std::size_t>(j - 1)] = 1;
  d[static_cast<std::size_t>(jp - 1)] = 1;
  ADHMData z = ADHMData::zero({n, d, v});
  for (int p = 0; p <= P; ++p)
    for (int q = 0; q <= Q; ++q) {
      const int at = vertex(p, q);
      const auto col = static_cast<std::size_t>(index[p][q]);
      if (p < P) z.b(at - 1)(static_cast<std::size_t>(index[p + 1][q]), col) = Rational(1);
      if (q < Q) z.a(at)(static_cast<std::size_t>(index[p][q + 1]), col) = Rational(1);
    }
  z.g(jp)(static_cast<std::size_t>(index[0][0]), 0) = Rational(1);
  z.dl(j)(0, static_cast<std::size_t>(index[P][Q])) = Rational(1);
  return z;
}

PositivityReport check_coefficient_probes(const CoeffTable& tab) {
  PositivityReport rep;
  const int n = tab.n;
  std::map<std::array<int, 3>, TildeData> cache;
  auto probe = [&](int j, int jp, int r) -> const TildeData* {
    if (j == jp || r < 1 || r > std::min(j, jp) || j + jp - r > n - 1) return nullptr;
    auto it = cache.find({j, jp, r});
    if (it == cache.end()) it = cache.emplace(std::array<int, 3>{j, jp, r}, phi(rectangle_probe(n, j, jp, r))).first;
    return &it->second;
  };
  auto compare = [&](const char* sym, const BlockIndex& k, const Rational& c, const Matrix& got) {
    ++rep.checked;
    if (got == Matrix{{c}} || !rep.ok) return;
    rep.ok = false;
    rep.first_violation = std::string(sym) + " block (i=" + std::to_string(k[0]) + ",j=" + std::to_string(k[1]) +
                          ",h=" + std::to_string(k[2]) + ",jp=" + std::to_string(k[3]) + ",hp=" + std::to_string(k[4]) +
                          ") is " + got(0, 0).to_string() + ", expected " + c.to_string();
  };
  for (const auto& [k, c] : tab.lambda)
    if (const TildeData* t = probe(k[1], k[3], k[1] + k[4] - k[2])) compare("t", k, c, t->t(k[0], k[1], k[2], k[3], k[4]));
  for (const auto& [k, c] : tab.mu)
    if (const TildeData* t = probe(k[1], k[3], k[1] + k[4] - k[2] + 1)) compare("s", k, c, t->s(k[0], k[1], k[2], k[3], k[4]));
  return rep;
}

}  // namespace qslice
