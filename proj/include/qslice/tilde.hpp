#pragma once

#include "qslice/adhm.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qslice {

/// Summand of a tilde space: the V slot or a copy D_j^{(k)} of D_j.
struct Slot {
  bool is_v = false;
  int j = 0;
  int k = 0;
  std::size_t offset = 0;
  std::size_t dim = 0;
};

/// Level i (0 <= i <= n-1) is V_i followed by D_j^{(k)} for j = i+1..n-1 and
/// k = 1..j-i, j-major. Level 0 has a zero-dimensional V slot, so it is the
/// big framing space of total dimension N = sum_j j d_j. D'_i is the
/// contiguous tail of level i after the V slot. Empty slots are kept.
class TildeLayout {
 public:
  TildeLayout() = default;
  explicit TildeLayout(const DimData& dims);

  const DimData& dims() const noexcept { return dims_; }
  int n() const noexcept { return dims_.n; }
  std::size_t size(int level) const { return sizes_.at(static_cast<std::size_t>(level)); }
  std::size_t framing_total() const { return size(0); }
  const std::vector<Slot>& slots(int level) const { return slots_.at(static_cast<std::size_t>(level)); }
  const Slot& v_slot(int level) const { return slots(level).front(); }
  /// Throws InvalidArgument unless i+1 <= j <= n-1 and 1 <= k <= j-i.
  const Slot& d_slot(int level, int j, int k) const;
  bool has_d_slot(int level, int j, int k) const noexcept {
    return level >= 0 && level <= n() - 1 && j >= level + 1 && j <= n() - 1 && k >= 1 && k <= j - level;
  }
  /// Coordinates of D'_i inside level i.
  std::size_t d_prime_offset(int level) const { return v_slot(level).dim; }
  std::size_t d_prime_size(int level) const { return size(level) - d_prime_offset(level); }
  std::size_t d_dim(int j) const { return static_cast<std::size_t>(dims_.d_at(j)); }

 private:
  DimData dims_;
  std::vector<std::size_t> sizes_;
  std::vector<std::vector<Slot>> slots_;
};

inline TildeLayout tilde_dims(const DimData& dims) { return TildeLayout(dims); }

/// Maps Atil[i] : level i -> level i+1 and Btil[i] : level i+1 -> level i for
/// i = 0..n-2. Atil[0] and Btil[0] play the roles of the framing maps of
/// the tilde quiver.
struct TildeData {
  TildeLayout layout;
  std::vector<Matrix> Atil, Btil;

  static TildeData zero(const TildeLayout& layout);

  /// t^{jp,hp}_{i,j,h}: slot (jp,hp) of level i to slot (j,h) of level i+1.
  Matrix t(int i, int j, int h, int jp, int hp) const;
  /// s^{jp,hp}_{i,j,h}: slot (jp,hp) of level i+1 to slot (j,h) of level i.
  Matrix s(int i, int j, int h, int jp, int hp) const;
  void set_t(int i, int j, int h, int jp, int hp, const Matrix& m);
  void set_s(int i, int j, int h, int jp, int hp, const Matrix& m);
  /// Generic block of Atil[i] / Btil[i] between two slots.
  Matrix a_block(int i, const Slot& row, const Slot& col) const;
  Matrix b_block(int i, const Slot& row, const Slot& col) const;

  void validate() const;
  friend bool operator==(const TildeData& x, const TildeData& y) { return x.Atil == y.Atil && x.Btil == y.Btil; }
};

enum class BlockKind { T, S };
struct DegGrad {
  int deg;
  int grad;
};
DegGrad deg_grad(BlockKind kind, int j, int h, int jp, int hp);

struct SL2Triple {
  int level = 0;
  Matrix x, y, h;
};
/// x_i lowers D_j^{(h)} to D_j^{(h-1)} by the identity; y_i raises
/// D_j^{(h)} to D_j^{(h+1)} by h(j-i-h) times the identity.
SL2Triple sl2_of_level(const TildeLayout& layout, int level);

/// The tilde data read as an ordinary representation with framing
/// (N, 0, ..., 0): gamma_1 = Atil[0], delta_1 = Btil[0].
ADHMData as_flag_data(const TildeData& t);

struct TransversalReport {
  bool block_rules = true;
  bool commutators = true;
  bool tilde_adhm = true;
  std::string first_violation;

  bool ok() const noexcept { return block_rules && commutators && tilde_adhm; }
};
/// Zero and identity block rules at every level, the level commutators
/// [pi B_i A_i - x_i, y_i] = 0, and the tilde ADHM chain.
TransversalReport check_transversal(const TildeData& t);

/// rank Atil[i] = dim of level i+1 for all i; throws NotTransversal.
bool tilde_stability(const TildeData& t);
/// u = Btil[0] Atil[0] on the level-0 space; throws NotTransversal.
Matrix slice_point(const TildeData& t);

struct SlicePointReport {
  Matrix u;
  bool nilpotent = false;
  bool in_slice = false;  // [u - x_0, y_0] = 0
  std::optional<Partition> jordan;
};
SlicePointReport inspect_slice_point(const TildeData& t);

/// g_i on V_i and the identity on D'_i; level 0 gets the identity.
std::vector<Matrix> embed_group(const GLVElement& g, const TildeLayout& layout);
/// (g_{i+1} Atil_i g_i^-1, g_i Btil_i g_{i+1}^-1).
TildeData act_tilde(const std::vector<Matrix>& g, const TildeData& t);

/// Coordinates of D_i^{l,(h)} inside level i.
std::vector<std::size_t> filtration_indices(const TildeLayout& layout, int level, int l, int h);
/// Restricted Atil blocks D_i^{l,(h)} -> D_{i+1}^{l-1,(h)} (l >= 1) and
/// pi_{D^-_i} Btil_i restricted to D'_{i+1} are square and invertible.
/// Only shapes are validated, so a broken identity block reads as false.
bool filtration_check(const TildeData& t);

/// (A, B, gamma, delta) read off the V and D_i^{(1)} blocks; throws NotTransversal.
ADHMData phi_inverse(const TildeData& t);

}  // namespace qslice
