#pragma once

#include "qslice/matrix.hpp"
#include "qslice/random.hpp"
#include "qslice/weights.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace qslice {

/// Representation of the framed double quiver of type A_{n-1}:
///   A_i : V_i -> V_{i+1},  B_i : V_{i+1} -> V_i   (1 <= i <= n-2)
///   gamma_i : D_i -> V_i,  delta_i : V_i -> D_i   (1 <= i <= n-1)
/// The vectors are stored 0-based; use the accessors for 1-based indices.
struct ADHMData {
  DimData dims;
  std::vector<Matrix> A, B, gamma, delta;

  static ADHMData zero(const DimData& dims);

  int n() const noexcept { return dims.n; }
  const Matrix& a(int i) const { return A.at(static_cast<std::size_t>(i - 1)); }
  const Matrix& b(int i) const { return B.at(static_cast<std::size_t>(i - 1)); }
  const Matrix& g(int i) const { return gamma.at(static_cast<std::size_t>(i - 1)); }
  const Matrix& dl(int i) const { return delta.at(static_cast<std::size_t>(i - 1)); }
  Matrix& a(int i) { return A.at(static_cast<std::size_t>(i - 1)); }
  Matrix& b(int i) { return B.at(static_cast<std::size_t>(i - 1)); }
  Matrix& g(int i) { return gamma.at(static_cast<std::size_t>(i - 1)); }
  Matrix& dl(int i) { return delta.at(static_cast<std::size_t>(i - 1)); }

  /// Throws ShapeMismatch unless every map has the shape dictated by dims.
  void validate() const;

  friend bool operator==(const ADHMData&, const ADHMData&) = default;
};

/// gamma_i delta_i + A_{i-1} B_{i-1} - B_i A_i on V_i, with absent terms read
/// as zero. The data is admissible iff every defect vanishes.
Matrix adhm_defect(const ADHMData& z, int i);
bool check_admissible(const ADHMData& z);

/// B_i ... B_{j-1} gamma_j : D_j -> V_i for i <= j.
Matrix composite_gamma(const ADHMData& z, int j, int i);
/// delta_i A_{i-1} ... A_j : V_j -> D_i for j <= i.
Matrix composite_delta(const ADHMData& z, int j, int i);

/// rank [A_{i-1} | gamma_{i->i} | ... | gamma_{n-1->i}] = v_i for all i.
bool check_stable_criterion(const ADHMData& z);
/// Smallest A,B-invariant collection containing Im gamma is all of V.
bool check_stable_definition(const ADHMData& z);

struct GLVElement {
  std::vector<Matrix> g;  // g[i-1] acts on V_i

  static GLVElement identity(const DimData& dims);
  static GLVElement random(Rng& rng, const DimData& dims);
  const Matrix& at(int i) const { return g.at(static_cast<std::size_t>(i - 1)); }
};
GLVElement compose(const GLVElement& lhs, const GLVElement& rhs);
/// (g_{i+1} A_i g_i^-1, g_i B_i g_{i+1}^-1, g_i gamma_i, delta_i g_i^-1).
ADHMData act(const GLVElement& g, const ADHMData& z);

/// (i, j, l) with l <= min(i, j), lexicographic.
std::vector<std::array<int, 3>> signature_indices(int n);
/// delta_{l->j} gamma_{i->l} over signature_indices(n).
std::vector<Matrix> invariant_signature(const ADHMData& z);

inline constexpr int kDefaultRetries = 64;

/// Random A, gamma with B = delta = 0, redrawn until stable.
ADHMData gen_lagrangian(const DimData& dims, std::uint64_t seed, int retries = kDefaultRetries);

struct GeneralOptions {
  int rank_budget = 2;
  bool require_stable = false;
  int retries = kDefaultRetries;
};
/// Random A and low-rank B; gamma_i delta_i is the exact rank factorization of
/// the forced defect B_i A_i - A_{i-1} B_{i-1}.
ADHMData gen_general(const DimData& dims, std::uint64_t seed, const GeneralOptions& opts = {});

}  // namespace qslice
