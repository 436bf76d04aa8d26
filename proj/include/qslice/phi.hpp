#pragma once

#include "qslice/tilde.hpp"

#include <array>
#include <map>

namespace qslice {

enum class Solver {
  Chain,    // closed-form elimination along each (j, j') chain
  Generic,  // the same equations handed to solve_affine
};

/// The unique transversal datum with a_i = A_i, b_i = B_i,
/// t^{jp,1}_{i,V} = gamma_{jp->i+1} and s^V_{i,j,j-i} = delta_{i+1->j}.
/// Levels are solved from n-3 down to 0, each by increasing deg.
/// Throws NotAdmissible, and NonUniqueSolution if a chain is singular.
TildeData phi(const ADHMData& z, Solver solver = Solver::Chain);

/// Index (i, j, h, jp, hp) of a t or s block.
using BlockIndex = std::array<int, 5>;

/// Coefficients of the leading monomial delta_{r->j} gamma_{jp->r} in the
/// deg > 0 blocks: r = j + hp - h for t blocks and j + hp - h + 1 for s blocks.
struct CoeffTable {
  int n = 2;
  std::map<BlockIndex, Rational> lambda;  // t blocks
  std::map<BlockIndex, Rational> mu;      // s blocks

  Rational lambda_at(const BlockIndex& k) const;
  Rational mu_at(const BlockIndex& k) const;
};
CoeffTable coefficient_tables(int n);

struct PositivityReport {
  bool ok = true;
  std::size_t checked = 0;
  std::string first_violation;
};
/// lambda^{jp,1} > 0, lambda^{jp,hp} + mu^{jp,hp-1} > 0 for hp > 1, and
/// mu^{jp,hp}_{i,j,j-i} > 0, over every index with deg > 0.
PositivityReport check_positivity(const CoeffTable& table);

/// Sparse probe for the monomial delta_{r->j} gamma_{jp->r} (j != jp):
/// the grid module e_{p,q}, 0 <= p <= jp-r, 0 <= q <= j-r, at vertex jp-p+q,
/// with B stepping p and A stepping q. gamma_jp hits e_{0,0} and delta_j
/// reads e_{jp-r,j-r}; every other path product from D_jp to D_j vanishes.
/// Needs 1 <= r <= min(j, jp) and j + jp - r <= n-1.
ADHMData rectangle_probe(int n, int j, int jp, int r);

/// On each probe the deg > 0 block of phi equals its table coefficient.
PositivityReport check_coefficient_probes(const CoeffTable& table);

/// The (j, j') chain at level i and degree d: unknown t blocks X_h at
/// (i, j, h, jp, h+k) and s blocks Y_h at (i, j, h+1, jp, h+k), h0 <= h <= h1.
struct ChainShape {
  int h0, h1, k;
  bool empty() const noexcept { return h0 > h1; }
};
ChainShape chain_shape(int i, int j, int jp, int d);

}  // namespace qslice
