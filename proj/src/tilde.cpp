#include "qslice/tilde.hpp"

#include "qslice/errors.hpp"
#include "qslice/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace qslice {

TildeLayout::TildeLayout(const DimData& dims) : dims_(dims) {
  dims.validate();
  if (!dims.nonnegative()) throw Error(Errc::NegativeEntry, "dimensions must be nonnegative");
  const int n = dims.n;
  for (int level = 0; level <= n - 1; ++level) {
    std::vector<Slot> slots;
    std::size_t offset = 0;
    const auto vdim = static_cast<std::size_t>(dims.v_at(level));
    slots.push_back({true, 0, 0, offset, vdim});
    offset += vdim;
    for (int j = level + 1; j <= n - 1; ++j)
      for (int k = 1; k <= j - level; ++k) {
        slots.push_back({false, j, k, offset, d_dim(j)});
        offset += d_dim(j);
      }
    sizes_.push_back(offset);
    slots_.push_back(std::move(slots));
  }
}

const Slot& TildeLayout::d_slot(int level, int j, int k) const {
  if (!has_d_slot(level, j, k))
    throw Error(Errc::InvalidArgument, "no slot D_" + std::to_string(j) + "^(" + std::to_string(k) + ") at level " +
                                           std::to_string(level));
  // Slots of level i: V, then for j' = i+1..j-1 a run of j'-i slots.
  std::size_t index = 1;
  for (int jp = level + 1; jp < j; ++jp) index += static_cast<std::size_t>(jp - level);
  return slots(level)[index + static_cast<std::size_t>(k - 1)];
}

TildeData TildeData::zero(const TildeLayout& layout) {
  TildeData t;
  t.layout = layout;
  for (int i = 0; i <= layout.n() - 2; ++i) {
    t.Atil.emplace_back(layout.size(i + 1), layout.size(i));
    t.Btil.emplace_back(layout.size(i), layout.size(i + 1));
  }
  return t;
}

Matrix TildeData::a_block(int i, const Slot& row, const Slot& col) const {
  return Atil.at(static_cast<std::size_t>(i)).block(row.offset, col.offset, row.dim, col.dim);
}

Matrix TildeData::b_block(int i, const Slot& row, const Slot& col) const {
  return Btil.at(static_cast<std::size_t>(i)).block(row.offset, col.offset, row.dim, col.dim);
}

Matrix TildeData::t(int i, int j, int h, int jp, int hp) const {
  return a_block(i, layout.d_slot(i + 1, j, h), layout.d_slot(i, jp, hp));
}

Matrix TildeData::s(int i, int j, int h, int jp, int hp) const {
  return b_block(i, layout.d_slot(i, j, h), layout.d_slot(i + 1, jp, hp));
}

void TildeData::set_t(int i, int j, int h, int jp, int hp, const Matrix& m) {
  const Slot& r = layout.d_slot(i + 1, j, h);
  const Slot& c = layout.d_slot(i, jp, hp);
  Atil.at(static_cast<std::size_t>(i)).set_block(r.offset, c.offset, m);
}

void TildeData::set_s(int i, int j, int h, int jp, int hp, const Matrix& m) {
  const Slot& r = layout.d_slot(i, j, h);
  const Slot& c = layout.d_slot(i + 1, jp, hp);
  Btil.at(static_cast<std::size_t>(i)).set_block(r.offset, c.offset, m);
}

void TildeData::validate() const {
  const int n = layout.n();
  if (Atil.size() != static_cast<std::size_t>(n - 1) || Btil.size() != static_cast<std::size_t>(n - 1))
    throw Error(Errc::ShapeMismatch, "tilde data needs n-1 maps in each direction");
  for (int i = 0; i <= n - 2; ++i) {
    const Matrix& a = Atil[static_cast<std::size_t>(i)];
    const Matrix& b = Btil[static_cast<std::size_t>(i)];
    if (a.rows() != layout.size(i + 1) || a.cols() != layout.size(i) || b.rows() != layout.size(i) ||
        b.cols() != layout.size(i + 1))
      throw Error(Errc::ShapeMismatch, "tilde map at level " + std::to_string(i) + " has the wrong shape");
  }
}

DegGrad deg_grad(BlockKind kind, int j, int h, int jp, int hp) {
  if (kind == BlockKind::T) return {std::min(h - hp + 1, h - hp + 1 + jp - j), 2 * h - 2 * hp + 2 + jp - j};
  return {std::min(h - hp, h - hp + jp - j), 2 * h - 2 * hp + jp - j};
}

SL2Triple sl2_of_level(const TildeLayout& layout, int level) {
  const std::size_t base = layout.d_prime_offset(level);
  const std::size_t size = layout.d_prime_size(level);
  SL2Triple tr{level, Matrix(size, size), Matrix(size, size), Matrix()};
  for (const Slot& sl : layout.slots(level)) {
    if (sl.is_v) continue;
    const int j = sl.j;
    const int h = sl.k;
    if (h >= 2) {
      const Slot& lower = layout.d_slot(level, j, h - 1);
      tr.x.set_block(lower.offset - base, sl.offset - base, Matrix::identity(sl.dim));
    }
    if (h <= j - level - 1) {
      const Slot& upper = layout.d_slot(level, j, h + 1);
      tr.y.set_block(upper.offset - base, sl.offset - base, Matrix::scalar(sl.dim, Rational(h * (j - level - h))));
    }
  }
  tr.h = commutator(tr.x, tr.y);
  return tr;
}

ADHMData as_flag_data(const TildeData& t) {
  const TildeLayout& lay = t.layout;
  const int n = lay.n();
  DimData dd;
  dd.n = n;
  dd.d.assign(static_cast<std::size_t>(n - 1), 0);
  dd.d[0] = static_cast<int>(lay.framing_total());
  for (int i = 1; i <= n - 1; ++i) dd.v.push_back(static_cast<int>(lay.size(i)));
  ADHMData z = ADHMData::zero(dd);
  for (int i = 1; i <= n - 2; ++i) {
    z.a(i) = t.Atil[static_cast<std::size_t>(i)];
    z.b(i) = t.Btil[static_cast<std::size_t>(i)];
  }
  z.g(1) = t.Atil[0];
  z.dl(1) = t.Btil[0];
  return z;
}

namespace {

std::string slot_name(const Slot& s) {
  if (s.is_v) return "V";
  return "D" + std::to_string(s.j) + "^" + std::to_string(s.k);
}

struct RuleChecker {
  const TildeData& t;
  TransversalReport& report;

  void fail(int i, char map, const Slot& row, const Slot& col, const char* why) {
    if (!report.block_rules) return;
    report.block_rules = false;
    report.first_violation = std::string(1, map) + "til_" + std::to_string(i) + " block " + slot_name(row) + " <- " +
                             slot_name(col) + ": " + why;
  }

  void expect(int i, char map, const Slot& row, const Slot& col, const Matrix& blk, bool identity) {
    if (row.dim == 0 || col.dim == 0) return;
    if (identity) {
      if (!(blk == Matrix::identity(row.dim))) fail(i, map, row, col, "expected the identity");
    } else if (!blk.is_zero()) {
      fail(i, map, row, col, "expected zero");
    }
  }

  void level(int i) {
    const TildeLayout& lay = t.layout;
    for (const Slot& row : lay.slots(i + 1))
      for (const Slot& col : lay.slots(i)) {
        if (row.is_v && col.is_v) continue;
        const Matrix blk = t.a_block(i, row, col);
        if (!row.is_v && col.is_v) {
          expect(i, 'A', row, col, blk, false);
        } else if (row.is_v) {
          if (col.k != 1) expect(i, 'A', row, col, blk, false);
        } else {
          const int deg = deg_grad(BlockKind::T, row.j, row.k, col.j, col.k).deg;
          if (deg < 0) expect(i, 'A', row, col, blk, false);
          else if (deg == 0) expect(i, 'A', row, col, blk, col.j == row.j && col.k == row.k + 1);
        }
      }
    for (const Slot& row : lay.slots(i))
      for (const Slot& col : lay.slots(i + 1)) {
        if (row.is_v && col.is_v) continue;
        const Matrix blk = t.b_block(i, row, col);
        if (!row.is_v && col.is_v) {
          if (row.k != row.j - i) expect(i, 'B', row, col, blk, false);
        } else if (row.is_v) {
          expect(i, 'B', row, col, blk, false);
        } else {
          const int deg = deg_grad(BlockKind::S, row.j, row.k, col.j, col.k).deg;
          if (deg < 0) expect(i, 'B', row, col, blk, false);
          else if (deg == 0) expect(i, 'B', row, col, blk, col.j == row.j && col.k == row.k);
        }
      }
  }
};

Matrix level_n(const TildeData& t, int i) {
  const TildeLayout& lay = t.layout;
  const Matrix ba = t.Btil[static_cast<std::size_t>(i)] * t.Atil[static_cast<std::size_t>(i)];
  const std::size_t off = lay.d_prime_offset(i);
  const std::size_t sz = lay.d_prime_size(i);
  return ba.block(off, off, sz, sz) - sl2_of_level(lay, i).x;
}

void require_transversal(const TildeData& t) {
  const auto rep = check_transversal(t);
  if (!rep.ok()) throw Error(Errc::NotTransversal, rep.first_violation);
}

}  // namespace

TransversalReport check_transversal(const TildeData& t) {
  t.validate();
  TransversalReport report;
  RuleChecker rules{t, report};
  const int n = t.layout.n();
  for (int i = 0; i <= n - 2; ++i) rules.level(i);
  for (int i = 0; i <= n - 2 && report.commutators; ++i) {
    const SL2Triple tr = sl2_of_level(t.layout, i);
    if (!commutator(level_n(t, i), tr.y).is_zero()) {
      report.commutators = false;
      if (report.first_violation.empty())
        report.first_violation = "commutator [pi B A - x, y] is nonzero at level " + std::to_string(i);
    }
  }
  if (!check_admissible(as_flag_data(t))) {
    report.tilde_adhm = false;
    if (report.first_violation.empty()) report.first_violation = "tilde ADHM relations fail";
  }
  return report;
}

bool tilde_stability(const TildeData& t) {
  require_transversal(t);
  for (int i = 0; i <= t.layout.n() - 2; ++i)
    if (rank(t.Atil[static_cast<std::size_t>(i)]) != t.layout.size(i + 1)) return false;
  return true;
}

Matrix slice_point(const TildeData& t) {
  require_transversal(t);
  return t.Btil[0] * t.Atil[0];
}

SlicePointReport inspect_slice_point(const TildeData& t) {
  SlicePointReport r;
  r.u = slice_point(t);
  const SL2Triple tr = sl2_of_level(t.layout, 0);
  r.nilpotent = is_nilpotent(r.u);
  r.in_slice = commutator(r.u - tr.x, tr.y).is_zero();
  if (r.nilpotent) r.jordan = jordan_type(r.u);
  return r;
}

std::vector<Matrix> embed_group(const GLVElement& g, const TildeLayout& layout) {
  const int n = layout.n();
  if (g.g.size() != static_cast<std::size_t>(n - 1)) throw Error(Errc::ShapeMismatch, "group element rank");
  std::vector<Matrix> out{Matrix::identity(layout.size(0))};
  for (int i = 1; i <= n - 1; ++i) {
    const Matrix& gi = g.at(i);
    if (!gi.is_square() || gi.rows() != layout.v_slot(i).dim)
      throw Error(Errc::ShapeMismatch, "g_" + std::to_string(i) + " has the wrong size");
    out.push_back(direct_sum(gi, Matrix::identity(layout.d_prime_size(i))));
  }
  return out;
}

TildeData act_tilde(const std::vector<Matrix>& g, const TildeData& t) {
  t.validate();
  const int n = t.layout.n();
  if (g.size() != static_cast<std::size_t>(n)) throw Error(Errc::ShapeMismatch, "tilde group element rank");
  std::vector<Matrix> inv;
  for (const auto& gi : g) inv.push_back(inverse(gi));
  TildeData r = t;
  for (std::size_t i = 0; i + 1 < static_cast<std::size_t>(n); ++i) {
    r.Atil[i] = g[i + 1] * t.Atil[i] * inv[i];
    r.Btil[i] = g[i] * t.Btil[i] * inv[i + 1];
  }
  return r;
}

std::vector<std::size_t> filtration_indices(const TildeLayout& layout, int level, int l, int h) {
  std::vector<std::size_t> idx;
  const int n = layout.n();
  for (int hpp = 0; hpp <= h; ++hpp)
    for (int j = level + 1 + l + hpp; j <= n - 1; ++j) {
      const Slot& s = layout.d_slot(level, j, j - level - hpp);
      for (std::size_t c = 0; c < s.dim; ++c) idx.push_back(s.offset + c);
    }
  std::sort(idx.begin(), idx.end());
  return idx;
}

bool filtration_check(const TildeData& t) {
  t.validate();
  const TildeLayout& lay = t.layout;
  const int n = lay.n();
  for (int i = 0; i <= n - 3; ++i)
    for (int l = 1; l <= n - 2 - i; ++l)
      for (int h = 0; h <= n - 2 - i - l; ++h) {
        const auto cols = filtration_indices(lay, i, l, h);
        const auto rows = filtration_indices(lay, i + 1, l - 1, h);
        if (rows.size() != cols.size()) return false;
        if (!is_invertible(t.Atil[static_cast<std::size_t>(i)].select(rows, cols))) return false;
      }
  for (int i = 0; i <= n - 2; ++i) {
    // D^-_i (level i) and D'_{i+1} carry the same labels (j, k), k <= j-i-1.
    std::vector<std::size_t> rows, cols;
    for (const Slot& s : lay.slots(i + 1)) {
      if (s.is_v) continue;
      const Slot& minus = lay.d_slot(i, s.j, s.k);
      for (std::size_t c = 0; c < s.dim; ++c) {
        rows.push_back(minus.offset + c);
        cols.push_back(s.offset + c);
      }
    }
    if (!is_invertible(t.Btil[static_cast<std::size_t>(i)].select(rows, cols))) return false;
  }
  return true;
}

ADHMData phi_inverse(const TildeData& t) {
  require_transversal(t);
  const TildeLayout& lay = t.layout;
  ADHMData z = ADHMData::zero(lay.dims());
  const int n = lay.n();
  for (int i = 1; i <= n - 2; ++i) {
    z.a(i) = t.a_block(i, lay.v_slot(i + 1), lay.v_slot(i));
    z.b(i) = t.b_block(i, lay.v_slot(i), lay.v_slot(i + 1));
  }
  for (int i = 1; i <= n - 1; ++i) {
    z.g(i) = t.a_block(i - 1, lay.v_slot(i), lay.d_slot(i - 1, i, 1));
    z.dl(i) = t.b_block(i - 1, lay.d_slot(i - 1, i, 1), lay.v_slot(i));
  }
  return z;
}

}  // namespace qslice
