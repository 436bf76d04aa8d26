#include "qslice/adhm.hpp"

#include "qslice/errors.hpp"
#include "qslice/linalg.hpp"

#include <algorithm>

namespace qslice {

namespace {

std::size_t dim_v(const DimData& dd, int i) { return static_cast<std::size_t>(dd.v_at(i)); }
std::size_t dim_d(const DimData& dd, int i) { return static_cast<std::size_t>(dd.d_at(i)); }

void require_shape(const Matrix& m, std::size_t r, std::size_t c, const char* what, int i) {
  if (m.rows() != r || m.cols() != c)
    throw Error(Errc::ShapeMismatch, std::string(what) + "_" + std::to_string(i) + " must be " + std::to_string(r) +
                                         "x" + std::to_string(c));
}

void require_admissible(const ADHMData& z) {
  if (!check_admissible(z)) throw Error(Errc::NotAdmissible, "data violates the ADHM relations");
}

}  // namespace

ADHMData ADHMData::zero(const DimData& dims) {
  dims.validate();
  if (!dims.nonnegative()) throw Error(Errc::NegativeEntry, "dimensions must be nonnegative");
  ADHMData z;
  z.dims = dims;
  for (int i = 1; i <= dims.n - 2; ++i) {
    z.A.emplace_back(dim_v(dims, i + 1), dim_v(dims, i));
    z.B.emplace_back(dim_v(dims, i), dim_v(dims, i + 1));
  }
  for (int i = 1; i <= dims.n - 1; ++i) {
    z.gamma.emplace_back(dim_v(dims, i), dim_d(dims, i));
    z.delta.emplace_back(dim_d(dims, i), dim_v(dims, i));
  }
  return z;
}

void ADHMData::validate() const {
  dims.validate();
  if (!dims.nonnegative()) throw Error(Errc::NegativeEntry, "dimensions must be nonnegative");
  const auto n = static_cast<std::size_t>(dims.n);
  if (A.size() != n - 2 || B.size() != n - 2 || gamma.size() != n - 1 || delta.size() != n - 1)
    throw Error(Errc::ShapeMismatch, "wrong number of maps for n = " + std::to_string(dims.n));
  for (int i = 1; i <= dims.n - 2; ++i) {
    require_shape(a(i), dim_v(dims, i + 1), dim_v(dims, i), "A", i);
    require_shape(b(i), dim_v(dims, i), dim_v(dims, i + 1), "B", i);
  }
  for (int i = 1; i <= dims.n - 1; ++i) {
    require_shape(g(i), dim_v(dims, i), dim_d(dims, i), "gamma", i);
    require_shape(dl(i), dim_d(dims, i), dim_v(dims, i), "delta", i);
  }
}

Matrix adhm_defect(const ADHMData& z, int i) {
  const int n = z.n();
  Matrix m = z.g(i) * z.dl(i);
  if (i >= 2) m += z.a(i - 1) * z.b(i - 1);
  if (i <= n - 2) m -= z.b(i) * z.a(i);
  return m;
}

bool check_admissible(const ADHMData& z) {
  z.validate();
  for (int i = 1; i <= z.n() - 1; ++i)
    if (!adhm_defect(z, i).is_zero()) return false;
  return true;
}

Matrix composite_gamma(const ADHMData& z, int j, int i) {
  if (i > j || i < 1 || j > z.n() - 1) throw Error(Errc::InvalidArgument, "composite_gamma needs 1 <= i <= j <= n-1");
  Matrix m = z.g(j);
  for (int k = j - 1; k >= i; --k) m = z.b(k) * m;
  return m;
}

Matrix composite_delta(const ADHMData& z, int j, int i) {
  if (j > i || j < 1 || i > z.n() - 1) throw Error(Errc::InvalidArgument, "composite_delta needs 1 <= j <= i <= n-1");
  Matrix m = z.dl(i);
  for (int k = i - 1; k >= j; --k) m = m * z.a(k);
  return m;
}

bool check_stable_criterion(const ADHMData& z) {
  require_admissible(z);
  const int n = z.n();
  for (int i = 1; i <= n - 1; ++i) {
    std::vector<Matrix> cols;
    if (i >= 2) cols.push_back(z.a(i - 1));
    for (int j = i; j <= n - 1; ++j) cols.push_back(composite_gamma(z, j, i));
    const Matrix all = hconcat(cols, dim_v(z.dims, i));
    if (rank(all) != dim_v(z.dims, i)) return false;
  }
  return true;
}

bool check_stable_definition(const ADHMData& z) {
  require_admissible(z);
  const int n = z.n();
  std::vector<Matrix> span(static_cast<std::size_t>(n));  // span[i] spans U_i
  std::vector<std::size_t> dims(static_cast<std::size_t>(n), 0);
  for (int i = 1; i <= n - 1; ++i) {
    span[i] = column_basis(z.g(i));
    dims[i] = span[i].cols();
  }
  auto grow = [&](int i, const Matrix& images) {
    Matrix joined = column_basis(hconcat(std::vector<Matrix>{span[i], images}, dim_v(z.dims, i)));
    const bool changed = joined.cols() > dims[i];
    span[i] = std::move(joined);
    dims[i] = span[i].cols();
    return changed;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 1; i <= n - 2; ++i) {
      changed |= grow(i + 1, z.a(i) * span[i]);
      changed |= grow(i, z.b(i) * span[i + 1]);
    }
  }
  for (int i = 1; i <= n - 1; ++i)
    if (dims[i] != dim_v(z.dims, i)) return false;
  return true;
}

GLVElement GLVElement::identity(const DimData& dims) {
  GLVElement e;
  for (int i = 1; i <= dims.n - 1; ++i) e.g.push_back(Matrix::identity(dim_v(dims, i)));
  return e;
}

GLVElement GLVElement::random(Rng& rng, const DimData& dims) {
  GLVElement e;
  for (int i = 1; i <= dims.n - 1; ++i) e.g.push_back(random_invertible(rng, dim_v(dims, i)));
  return e;
}

GLVElement compose(const GLVElement& lhs, const GLVElement& rhs) {
  if (lhs.g.size() != rhs.g.size()) throw Error(Errc::ShapeMismatch, "group elements of different rank");
  GLVElement r;
  for (std::size_t k = 0; k < lhs.g.size(); ++k) r.g.push_back(lhs.g[k] * rhs.g[k]);
  return r;
}

ADHMData act(const GLVElement& g, const ADHMData& z) {
  z.validate();
  const int n = z.n();
  if (g.g.size() != static_cast<std::size_t>(n - 1)) throw Error(Errc::ShapeMismatch, "group element rank");
  std::vector<Matrix> inv;
  for (int i = 1; i <= n - 1; ++i) {
    if (g.at(i).rows() != dim_v(z.dims, i) || !g.at(i).is_square())
      throw Error(Errc::ShapeMismatch, "g_" + std::to_string(i) + " has the wrong size");
    inv.push_back(inverse(g.at(i)));
  }
  auto ginv = [&](int i) -> const Matrix& { return inv[static_cast<std::size_t>(i - 1)]; };
  ADHMData r = z;
  for (int i = 1; i <= n - 2; ++i) {
    r.a(i) = g.at(i + 1) * z.a(i) * ginv(i);
    r.b(i) = g.at(i) * z.b(i) * ginv(i + 1);
  }
  for (int i = 1; i <= n - 1; ++i) {
    r.g(i) = g.at(i) * z.g(i);
    r.dl(i) = z.dl(i) * ginv(i);
  }
  return r;
}

std::vector<std::array<int, 3>> signature_indices(int n) {
  std::vector<std::array<int, 3>> out;
  for (int i = 1; i <= n - 1; ++i)
    for (int j = 1; j <= n - 1; ++j)
      for (int l = 1; l <= std::min(i, j); ++l) out.push_back({i, j, l});
  return out;
}

std::vector<Matrix> invariant_signature(const ADHMData& z) {
  require_admissible(z);
  std::vector<Matrix> out;
  for (const auto& [i, j, l] : signature_indices(z.n())) out.push_back(composite_delta(z, l, j) * composite_gamma(z, i, l));
  return out;
}

ADHMData gen_lagrangian(const DimData& dims, std::uint64_t seed, int retries) {
  ADHMData z = ADHMData::zero(dims);
  const int n = dims.n;
  // With B = 0 only A_{i-1} and gamma_i reach V_i.
  for (int i = 1; i <= n - 1; ++i)
    if (dims.v_at(i) > dims.v_at(i - 1) + dims.d_at(i))
      throw Error(Errc::Unsatisfiable, "v_" + std::to_string(i) + " exceeds v_{i-1} + d_i, unreachable with B = 0");
  for (int attempt = 0; attempt < retries; ++attempt) {
    Rng rng(seed, static_cast<std::uint64_t>(attempt));
    for (int i = 1; i <= n - 2; ++i) z.a(i) = rng.matrix(dim_v(dims, i + 1), dim_v(dims, i));
    for (int i = 1; i <= n - 1; ++i) z.g(i) = rng.matrix(dim_v(dims, i), dim_d(dims, i));
    if (check_stable_criterion(z)) return z;
  }
  throw Error(Errc::Unsatisfiable, "no stable draw in " + std::to_string(retries) + " attempts");
}

namespace {

ADHMData draw_general(const DimData& dims, Rng& rng, int rank_budget) {
  ADHMData z = ADHMData::zero(dims);
  const int n = dims.n;
  // rank B_{i-1} + rank B_i <= d_i keeps every forced defect factorable.
  std::vector<int> r(static_cast<std::size_t>(n), 0);
  for (int i = 1; i <= n - 2; ++i) {
    int cap = std::min({rank_budget, dims.d_at(i) - r[i - 1], dims.d_at(i + 1), dims.v_at(i), dims.v_at(i + 1)});
    cap = std::max(cap, 0);
    r[i] = rng.uniform(0, 3) == 0 ? static_cast<int>(rng.uniform(0, cap)) : cap;
  }
  for (int i = 1; i <= n - 2; ++i) {
    z.a(i) = rng.matrix(dim_v(dims, i + 1), dim_v(dims, i));
    const auto ri = static_cast<std::size_t>(r[i]);
    z.b(i) = rng.matrix(dim_v(dims, i), ri) * rng.matrix(ri, dim_v(dims, i + 1));
  }
  for (int i = 1; i <= n - 1; ++i) {
    Matrix c = Matrix::zero(dim_v(dims, i), dim_v(dims, i));
    if (i <= n - 2) c += z.b(i) * z.a(i);
    if (i >= 2) c -= z.a(i - 1) * z.b(i - 1);
    const std::size_t di = dim_d(dims, i);
    RankFactors f = rank_factorize(c, di);
    const std::size_t k = rank(c);
    // Free columns of gamma beyond the forced rank are random; the matching
    // rows of delta stay zero so gamma * delta is unchanged.
    Matrix gam = f.left;
    gam.set_block(0, k, rng.matrix(dim_v(dims, i), di - k));
    Matrix del = f.right;
    const Matrix mix = random_invertible(rng, di);
    z.g(i) = gam * mix;
    z.dl(i) = inverse(mix) * del;
  }
  return z;
}

}  // namespace

ADHMData gen_general(const DimData& dims, std::uint64_t seed, const GeneralOptions& opts) {
  dims.validate();
  if (!dims.nonnegative()) throw Error(Errc::NegativeEntry, "dimensions must be nonnegative");
  const int attempts = opts.require_stable ? opts.retries : 1;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    Rng rng(seed, 0x100u + static_cast<std::uint64_t>(attempt));
    ADHMData z = draw_general(dims, rng, opts.rank_budget);
    if (!check_admissible(z)) throw Error(Errc::Unsatisfiable, "internal: generated data is not admissible");
    if (!opts.require_stable || check_stable_criterion(z)) return z;
  }
  throw Error(Errc::Unsatisfiable, "no stable draw in " + std::to_string(opts.retries) + " attempts");
}

}  // namespace qslice
