#pragma once

#include "qslice/linalg.hpp"

#include <string>
#include <vector>

namespace qslice {

/// Dimension vectors on the vertices 1..n-1 (stored 0-based). Entries may be
/// negative; only the quiver-side constructions require them nonnegative.
struct DimData {
  int n = 2;
  std::vector<int> d;
  std::vector<int> v;

  int d_at(int i) const { return d.at(static_cast<std::size_t>(i - 1)); }
  int v_at(int i) const { return (i < 1 || i > n - 1) ? 0 : v.at(static_cast<std::size_t>(i - 1)); }
  /// Throws ShapeMismatch unless n >= 2 and both vectors have length n-1.
  void validate() const;
  bool nonnegative() const;
  /// N = sum_i i * d_i.
  int framing_total() const;
  std::string key() const;

  friend bool operator==(const DimData&, const DimData&) = default;
};

/// Cartan matrix of type A_{n-1}.
std::vector<std::vector<int>> cartan_matrix(int n);

std::vector<int> a_of(const DimData& dd);
/// Inverse of a_of; throws SumMismatch unless sum(a) = sum i*d_i.
std::vector<int> v_of(const std::vector<int>& d, const std::vector<int>& a);
/// 1^{alpha_1-alpha_2} 2^{alpha_2-alpha_3} ... n^{alpha_n} for alpha = sorted a.
Partition lambda_of(const std::vector<int>& a);
/// The type 1^{d_1} 2^{d_2} ... (n-1)^{d_{n-1}} of the nilpotent x.
Partition x_type(const std::vector<int>& d);

struct DominantForm {
  std::vector<int> v_prime;
  /// a'[k] = a[perm[k]] for the stable weakly decreasing sort a' of a.
  std::vector<int> perm;
};
DominantForm dominant_form(const DimData& dd);

bool quiver_nonempty(const DimData& dd);
bool slice_nonempty(const std::vector<int>& d, const std::vector<int>& a);
/// 2 v.d - v^T C v; throws EmptyVariety when the quiver variety is empty.
long quiver_dim(const DimData& dd);
/// dim Z(x) - dim Z(u_a); throws EmptyVariety when the slice is empty.
long slice_dim(const std::vector<int>& d, const std::vector<int>& a);

/// Centralizer dimension by commutant solve, memoized per partition.
std::size_t centralizer_dim_of_type(const Partition& lambda);

}  // namespace qslice
