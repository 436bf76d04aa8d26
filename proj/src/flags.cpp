#include "qslice/flags.hpp"

#include "qslice/errors.hpp"
#include "qslice/linalg.hpp"
#include "qslice/random.hpp"

#include <numeric>

namespace qslice {

namespace {

Matrix empty_basis(int N) { return Matrix(static_cast<std::size_t>(N), 0); }

// Standard basis vectors completing the columns of f, chosen by pivots of [f | I].
Matrix complement(const Matrix& f) {
  const std::size_t N = f.rows();
  const Matrix aug = hconcat(std::vector<Matrix>{f, Matrix::identity(N)}, N);
  std::vector<std::size_t> picked;
  for (std::size_t c : row_reduce(aug).pivot_cols)
    if (c >= f.cols()) picked.push_back(c - f.cols());
  std::vector<std::size_t> all(N);
  std::iota(all.begin(), all.end(), 0);
  return Matrix::identity(N).select(all, picked);
}

// The rows of [f | c]^{-1} that read off the c coordinates.
Matrix quotient_map(const Matrix& f, const Matrix& c) {
  const std::size_t N = f.rows();
  const Matrix inv = inverse(hconcat(std::vector<Matrix>{f, c}, N));
  return inv.block(f.cols(), 0, c.cols(), N);
}

// Q_i = A_{i-1} ... A_1 gamma_1.
Matrix flag_composite(const ADHMData& z, int i) {
  Matrix q = z.g(1);
  for (int k = 1; k < i; ++k) q = z.a(k) * q;
  return q;
}

void check_flag_framing(const ADHMData& z) {
  for (int i = 2; i <= z.n() - 1; ++i)
    if (z.dims.d_at(i) != 0) throw Error(Errc::WrongFraming, "flag case needs d = (N, 0, ..., 0)");
  if (!check_admissible(z)) throw Error(Errc::NotAdmissible, "flag data must be admissible");
  if (!check_stable_criterion(z)) throw Error(Errc::NotStable, "flag data must be stable");
}

}  // namespace

void PartialFlag::validate() const {
  if (N < 0 || a.empty() || bases.size() != a.size()) throw Error(Errc::InvalidFlag, "flag needs one basis per step");
  int dim = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] < 0) throw Error(Errc::InvalidFlag, "negative step");
    dim += a[k];
    const Matrix& b = bases[k];
    if (b.rows() != static_cast<std::size_t>(N) || b.cols() != static_cast<std::size_t>(dim) ||
        rank(b) != static_cast<std::size_t>(dim))
      throw Error(Errc::InvalidFlag, "F_" + std::to_string(k + 1) + " does not have dimension " + std::to_string(dim));
    if (k > 0 && !span_contains(b, bases[k - 1]))
      throw Error(Errc::InvalidFlag, "F_" + std::to_string(k) + " is not contained in F_" + std::to_string(k + 1));
  }
  if (dim != N) throw Error(Errc::InvalidFlag, "last step must be all of D");
}

bool PartialFlag::same_as(const PartialFlag& other) const {
  if (N != other.N || a != other.a || bases.size() != other.bases.size()) return false;
  for (std::size_t k = 0; k < bases.size(); ++k)
    if (!same_column_span(bases[k], other.bases[k])) return false;
  return true;
}

void FlagPair::validate() const {
  flag.validate();
  const auto N = static_cast<std::size_t>(flag.N);
  if (u.rows() != N || u.cols() != N) throw Error(Errc::InvalidFlag, "u must be N x N");
  for (std::size_t k = 0; k < flag.bases.size(); ++k) {
    const Matrix image = u * flag.bases[k];
    const bool ok = k == 0 ? image.is_zero() : span_contains(flag.bases[k - 1], image);
    if (!ok) throw Error(Errc::InvalidFlag, "u does not map F_" + std::to_string(k + 1) + " into F_" + std::to_string(k));
  }
}

FlagPair flag_of_data(const ADHMData& z) {
  check_flag_framing(z);
  const int n = z.n();
  const int N = z.dims.d_at(1);
  FlagPair p;
  p.u = z.dl(1) * z.g(1);
  p.flag.N = N;
  p.flag.a = a_of(z.dims);
  for (int i = 1; i <= n - 1; ++i) p.flag.bases.push_back(kernel_matrix(flag_composite(z, i)));
  p.flag.bases.push_back(Matrix::identity(static_cast<std::size_t>(N)));
  p.validate();
  return p;
}

ADHMData data_of_flag(const FlagPair& p) {
  p.validate();
  const int n = p.flag.n();
  if (n < 2) throw Error(Errc::InvalidFlag, "flag needs at least two steps");
  const int N = p.flag.N;
  DimData dd;
  dd.n = n;
  dd.d.assign(static_cast<std::size_t>(n - 1), 0);
  dd.d[0] = N;
  std::vector<Matrix> P, C;
  for (int i = 1; i <= n - 1; ++i) {
    const Matrix& f = p.flag.bases[static_cast<std::size_t>(i - 1)];
    C.push_back(complement(f));
    P.push_back(quotient_map(f, C.back()));
    dd.v.push_back(N - static_cast<int>(f.cols()));
  }
  auto Pi = [&](int i) -> const Matrix& { return P[static_cast<std::size_t>(i - 1)]; };
  auto Ci = [&](int i) -> const Matrix& { return C[static_cast<std::size_t>(i - 1)]; };
  ADHMData z = ADHMData::zero(dd);
  z.g(1) = Pi(1);
  z.dl(1) = p.u * Ci(1);
  for (int i = 1; i <= n - 2; ++i) {
    z.a(i) = Pi(i + 1) * Ci(i);
    z.b(i) = Pi(i) * p.u * Ci(i + 1);
  }
  return z;
}

FlagPair gen_flag_pair(const std::vector<int>& a, std::uint64_t seed) {
  if (a.empty()) throw Error(Errc::InvalidArgument, "a must be nonempty");
  for (int x : a)
    if (x < 0) throw Error(Errc::NegativeEntry, "a has a negative entry");
  const int N = std::accumulate(a.begin(), a.end(), 0);
  const auto uN = static_cast<std::size_t>(N);
  Rng rng(seed, 0x200);
  const Matrix basis = random_invertible(rng, uN);
  // Coordinate block of index r in the coordinate flag.
  std::vector<std::size_t> block(uN);
  for (std::size_t k = 0, pos = 0; k < a.size(); ++k)
    for (int c = 0; c < a[k]; ++c) block[pos++] = k;
  Matrix u0(uN, uN);
  for (std::size_t r = 0; r < uN; ++r)
    for (std::size_t c = 0; c < uN; ++c)
      if (block[r] < block[c]) u0(r, c) = Rational(rng.uniform(-3, 3));
  FlagPair p;
  p.u = basis * u0 * inverse(basis);
  p.flag.N = N;
  p.flag.a = a;
  std::vector<std::size_t> rows(uN);
  std::iota(rows.begin(), rows.end(), 0);
  std::vector<std::size_t> cols;
  for (std::size_t k = 0, pos = 0; k < a.size(); ++k) {
    for (int c = 0; c < a[k]; ++c) cols.push_back(pos++);
    p.flag.bases.push_back(cols.empty() ? empty_basis(N) : basis.select(rows, cols));
  }
  return p;
}

GLVElement flag_roundtrip_gauge(const ADHMData& z) {
  const FlagPair p = flag_of_data(z);
  GLVElement g;
  for (int i = 1; i <= z.n() - 1; ++i)
    g.g.push_back(flag_composite(z, i) * complement(p.flag.bases[static_cast<std::size_t>(i - 1)]));
  return g;
}

}  // namespace qslice
