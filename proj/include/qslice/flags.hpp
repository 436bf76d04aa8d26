#pragma once

#include "qslice/adhm.hpp"

namespace qslice {

/// F_1 in ... in F_n = D inside D = Q^N. bases[i-1] is an N x dim F_i matrix
/// with independent columns; dim F_i - dim F_{i-1} = a_i (F_0 = 0).
struct PartialFlag {
  int N = 0;
  std::vector<int> a;
  std::vector<Matrix> bases;

  int n() const noexcept { return static_cast<int>(a.size()); }
  /// Throws InvalidFlag on a wrong dimension or a failed containment.
  void validate() const;
  /// Same type and the same subspaces, bases may differ.
  bool same_as(const PartialFlag& other) const;
};

/// u(F_i) in F_{i-1}, so u is nilpotent.
struct FlagPair {
  Matrix u;
  PartialFlag flag;

  void validate() const;
};

/// u = delta_1 gamma_1 and F_i = ker A_{i-1} ... A_1 gamma_1, F_n = D.
/// Throws WrongFraming unless d = (N, 0, ..., 0), NotAdmissible, NotStable.
FlagPair flag_of_data(const ADHMData& z);

/// V_i = D / F_i through a fixed complement C_i of F_i spanned by standard
/// basis vectors. P_i : D -> V_i kills F_i with P_i C_i = Id. Then
/// gamma_1 = P_1, A_i = P_{i+1} C_i, B_i = P_i u C_{i+1}, delta_1 = u C_1.
/// Throws InvalidFlag.
ADHMData data_of_flag(const FlagPair& p);

/// Random flag of type a (a random basis change applied to the coordinate
/// flag) and a random strictly block upper triangular u conjugated back.
FlagPair gen_flag_pair(const std::vector<int>& a, std::uint64_t seed);

/// g with g . data_of_flag(flag_of_data(z)) = z; g_i = Q_i C_i where
/// Q_i = A_{i-1} ... A_1 gamma_1 and C_i is the complement used above.
GLVElement flag_roundtrip_gauge(const ADHMData& z);

}  // namespace qslice
