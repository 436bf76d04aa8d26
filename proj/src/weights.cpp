#include "qslice/weights.hpp"

#include "qslice/errors.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace qslice {

void DimData::validate() const {
  if (n < 2) throw Error(Errc::ShapeMismatch, "n must be at least 2");
  const auto len = static_cast<std::size_t>(n - 1);
  if (d.size() != len || v.size() != len)
    throw Error(Errc::ShapeMismatch, "d and v must have length n-1 = " + std::to_string(n - 1));
}

bool DimData::nonnegative() const {
  return std::all_of(d.begin(), d.end(), [](int x) { return x >= 0; }) &&
         std::all_of(v.begin(), v.end(), [](int x) { return x >= 0; });
}

int DimData::framing_total() const {
  int s = 0;
  for (int i = 1; i <= n - 1; ++i) s += i * d_at(i);
  return s;
}

namespace {

std::string join(const std::vector<int>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

}  // namespace

std::string DimData::key() const { return "n=" + std::to_string(n) + "|d=" + join(d) + "|v=" + join(v); }

std::vector<std::vector<int>> cartan_matrix(int n) {
  const int r = n - 1;
  std::vector<std::vector<int>> c(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(r), 0));
  for (int i = 0; i < r; ++i) {
    c[i][i] = 2;
    if (i + 1 < r) c[i][i + 1] = c[i + 1][i] = -1;
  }
  return c;
}

std::vector<int> a_of(const DimData& dd) {
  dd.validate();
  const int n = dd.n;
  std::vector<int> a(static_cast<std::size_t>(n));
  // a_i = d_i + ... + d_{n-1} - v_i + v_{i-1}, with v_0 = v_n = 0.
  for (int i = 1; i <= n; ++i) {
    int tail = 0;
    for (int j = i; j <= n - 1; ++j) tail += dd.d_at(j);
    a[static_cast<std::size_t>(i - 1)] = tail - dd.v_at(i) + dd.v_at(i - 1);
  }
  return a;
}

std::vector<int> v_of(const std::vector<int>& d, const std::vector<int>& a) {
  const int n = static_cast<int>(d.size()) + 1;
  if (a.size() != static_cast<std::size_t>(n)) throw Error(Errc::ShapeMismatch, "a must have length n");
  int weighted = 0;
  for (int j = 1; j <= n - 1; ++j) weighted += j * d[static_cast<std::size_t>(j - 1)];
  if (std::accumulate(a.begin(), a.end(), 0) != weighted)
    throw Error(Errc::SumMismatch, "sum of a differs from sum of i*d_i");
  // v_i = a_n + ... + a_{i+1} - sum_{j>i} (j-i) d_j.
  std::vector<int> v(static_cast<std::size_t>(n - 1));
  for (int i = 1; i <= n - 1; ++i) {
    int s = 0;
    for (int k = i + 1; k <= n; ++k) s += a[static_cast<std::size_t>(k - 1)];
    for (int j = i + 1; j <= n - 1; ++j) s -= (j - i) * d[static_cast<std::size_t>(j - 1)];
    v[static_cast<std::size_t>(i - 1)] = s;
  }
  return v;
}

Partition lambda_of(const std::vector<int>& a) {
  for (int x : a)
    if (x < 0) throw Error(Errc::NegativeEntry, "a has a negative entry");
  std::vector<int> alpha(a);
  std::sort(alpha.begin(), alpha.end(), std::greater<>());
  std::vector<int> parts;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    const int next = k + 1 < alpha.size() ? alpha[k + 1] : 0;
    for (int c = 0; c < alpha[k] - next; ++c) parts.push_back(static_cast<int>(k + 1));
  }
  return Partition(std::move(parts));
}

Partition x_type(const std::vector<int>& d) {
  std::vector<int> parts;
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (d[j] < 0) throw Error(Errc::NegativeEntry, "d has a negative entry");
    for (int c = 0; c < d[j]; ++c) parts.push_back(static_cast<int>(j + 1));
  }
  return Partition(std::move(parts));
}

DominantForm dominant_form(const DimData& dd) {
  const auto a = a_of(dd);
  DominantForm f;
  f.perm.resize(a.size());
  std::iota(f.perm.begin(), f.perm.end(), 0);
  std::stable_sort(f.perm.begin(), f.perm.end(), [&](int x, int y) { return a[x] > a[y]; });
  std::vector<int> sorted(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) sorted[k] = a[static_cast<std::size_t>(f.perm[k])];
  f.v_prime = v_of(dd.d, sorted);
  return f;
}

bool quiver_nonempty(const DimData& dd) {
  if (std::any_of(dd.d.begin(), dd.d.end(), [](int x) { return x < 0; })) return false;
  const auto f = dominant_form(dd);
  return std::all_of(f.v_prime.begin(), f.v_prime.end(), [](int x) { return x >= 0; });
}

bool slice_nonempty(const std::vector<int>& d, const std::vector<int>& a) {
  if (std::any_of(a.begin(), a.end(), [](int x) { return x < 0; })) return false;
  if (std::any_of(d.begin(), d.end(), [](int x) { return x < 0; })) return false;
  std::vector<int> sorted(a);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  int top = 0;
  for (std::size_t k = 1; k <= sorted.size(); ++k) {
    top += sorted[k - 1];
    int bound = 0;
    for (std::size_t j = 1; j <= d.size(); ++j) bound += static_cast<int>(std::min(j, k)) * d[j - 1];
    if (bound < top) return false;
  }
  return true;
}

long quiver_dim(const DimData& dd) {
  if (!quiver_nonempty(dd)) throw Error(Errc::EmptyVariety, "quiver variety " + dd.key() + " is empty");
  const auto c = cartan_matrix(dd.n);
  long s = 0;
  for (int i = 0; i < dd.n - 1; ++i) {
    s += 2L * dd.v[i] * dd.d[i];
    for (int j = 0; j < dd.n - 1; ++j) s -= static_cast<long>(dd.v[i]) * c[i][j] * dd.v[j];
  }
  return s;
}

std::size_t centralizer_dim_of_type(const Partition& lambda) {
  static std::mutex mutex;
  static std::map<Partition, std::size_t> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(lambda); it != cache.end()) return it->second;
  }
  const std::size_t dim = centralizer_dim(standard_nilpotent(lambda));
  std::lock_guard lock(mutex);
  cache.emplace(lambda, dim);
  return dim;
}

long slice_dim(const std::vector<int>& d, const std::vector<int>& a) {
  if (!slice_nonempty(d, a)) throw Error(Errc::EmptyVariety, "slice is empty");
  return static_cast<long>(centralizer_dim_of_type(x_type(d))) -
         static_cast<long>(centralizer_dim_of_type(lambda_of(a)));
}

}  // namespace qslice
