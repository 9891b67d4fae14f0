#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tdembed/errors.hpp"

// Latin squares, transversals, MOLS, transversal designs and the loop
// operation, independent of any geometry.

namespace tdembed {

struct LatinSquare {
  int n = 0;
  std::vector<std::vector<int>> cells;  // cells[row][col] in 0..n-1
};

struct LatinViolation {
  std::string what;  // "row" or "column"
  int index = -1;    // offending row/column
  int symbol = -1;   // duplicated symbol
};

inline std::optional<LatinViolation> validate_latin_square(const LatinSquare& ls) {
  if (ls.n < 3) fail(Errc::SideTooSmall, "Latin squares here have side >= 3");
  if (static_cast<int>(ls.cells.size()) != ls.n) fail(Errc::FormatError, "row count != n");
  for (const auto& row : ls.cells) {
    if (static_cast<int>(row.size()) != ls.n) fail(Errc::FormatError, "column count != n");
    for (int v : row)
      if (v < 0 || v >= ls.n) fail(Errc::FormatError, "symbol out of range");
  }
  for (int i = 0; i < ls.n; ++i) {
    std::vector<char> seen(ls.n, 0);
    for (int j = 0; j < ls.n; ++j) {
      int v = ls.cells[i][j];
      if (seen[v]) return LatinViolation{"row", i, v};
      seen[v] = 1;
    }
  }
  for (int j = 0; j < ls.n; ++j) {
    std::vector<char> seen(ls.n, 0);
    for (int i = 0; i < ls.n; ++i) {
      int v = ls.cells[i][j];
      if (seen[v]) return LatinViolation{"column", j, v};
      seen[v] = 1;
    }
  }
  return std::nullopt;
}

struct Transversal {
  std::vector<int> sigma;  // column chosen in each row
};

inline bool transversal_valid(const LatinSquare& ls, const Transversal& t) {
  if (static_cast<int>(t.sigma.size()) != ls.n) return false;
  std::vector<char> col_used(ls.n, 0), sym_used(ls.n, 0);
  for (int i = 0; i < ls.n; ++i) {
    int j = t.sigma[i];
    if (j < 0 || j >= ls.n || col_used[j]) return false;
    col_used[j] = 1;
    int s = ls.cells[i][j];
    if (sym_used[s]) return false;
    sym_used[s] = 1;
  }
  return true;
}

// Exhaustive row-major backtracking; deterministic lexicographic output.
inline std::vector<Transversal> find_transversals(const LatinSquare& ls,
                                                  std::optional<size_t> limit = std::nullopt) {
  if (validate_latin_square(ls)) fail(Errc::FormatError, "find_transversals needs a Latin square");
  std::vector<Transversal> out;
  std::vector<int> sigma(ls.n, -1);
  std::vector<char> col_used(ls.n, 0), sym_used(ls.n, 0);
  auto rec = [&](auto&& self, int row) -> bool {
    if (limit && out.size() >= *limit) return true;
    if (row == ls.n) {
      out.push_back(Transversal{sigma});
      return limit && out.size() >= *limit;
    }
    for (int j = 0; j < ls.n; ++j) {
      if (col_used[j]) continue;
      int s = ls.cells[row][j];
      if (sym_used[s]) continue;
      col_used[j] = sym_used[s] = 1;
      sigma[row] = j;
      bool stop = self(self, row + 1);
      col_used[j] = sym_used[s] = 0;
      sigma[row] = -1;
      if (stop) return true;
    }
    return false;
  };
  rec(rec, 0);
  return out;
}

struct OrthoResult {
  bool ok = false;
  // two cells carrying the same ordered symbol pair, when not orthogonal
  std::pair<int, int> cell1{-1, -1}, cell2{-1, -1};
};

inline OrthoResult check_orthogonal(const LatinSquare& a, const LatinSquare& b) {
  if (a.n != b.n) fail(Errc::SideMismatch, "orthogonality needs equal sides");
  std::vector<int> seen(static_cast<size_t>(a.n) * a.n, -1);
  for (int i = 0; i < a.n; ++i) {
    for (int j = 0; j < a.n; ++j) {
      int code = a.cells[i][j] * a.n + b.cells[i][j];
      if (seen[code] >= 0) {
        OrthoResult r;
        r.ok = false;
        r.cell1 = {seen[code] / a.n, seen[code] % a.n};
        r.cell2 = {i, j};
        return r;
      }
      seen[code] = i * a.n + j;
    }
  }
  OrthoResult r;
  r.ok = true;
  return r;
}

// TD(k,n): points 0..kn-1 with part p occupying [p*n, (p+1)*n), n^2 blocks of
// size k, optional distinguished block partition T.
struct TransversalDesign {
  int k = 0, n = 0;
  std::vector<std::vector<int>> blocks;                 // each sorted ascending
  std::optional<std::vector<std::vector<int>>> T;       // n disjoint blocks

  int points() const { return k * n; }
  int part_of(int pt) const { return pt / n; }
};

struct TdViolation {
  std::string what;
  int a = -1, b = -1;  // offending pair or index data
};

namespace detail {
inline std::vector<int> sorted_block(std::vector<int> b) {
  std::sort(b.begin(), b.end());
  return b;
}
}  // namespace detail

// Exhaustive pair scan: every pair of distinct points lies in exactly one
// part or exactly one block, never both. Pair coverage is checked before
// block-shape bookkeeping so a bad extension always yields a pair witness.
inline std::optional<TdViolation> validate_td(const TransversalDesign& td) {
  if (td.n < 3) return TdViolation{"order must be >= 3", td.n, -1};
  if (td.k < 3) return TdViolation{"block size must be >= 3", td.k, -1};
  const int np = td.points();
  for (const auto& blk : td.blocks)
    for (int p : blk)
      if (p < 0 || p >= np) return TdViolation{"block point out of range", p, -1};

  std::vector<uint8_t> cover(static_cast<size_t>(np) * np, 0);
  for (const auto& blk : td.blocks) {
    for (size_t x = 0; x < blk.size(); ++x) {
      for (size_t y = x + 1; y < blk.size(); ++y) {
        int a = std::min(blk[x], blk[y]), b = std::max(blk[x], blk[y]);
        if (a == b) return TdViolation{"block repeats a point", a, b};
        if (cover[static_cast<size_t>(a) * np + b] < 255) ++cover[static_cast<size_t>(a) * np + b];
      }
    }
  }
  for (int a = 0; a < np; ++a) {
    for (int b = a + 1; b < np; ++b) {
      bool same_part = td.part_of(a) == td.part_of(b);
      uint8_t c = cover[static_cast<size_t>(a) * np + b];
      if (same_part && c != 0) return TdViolation{"pair inside a part also covered by a block", a, b};
      if (!same_part && c == 0) return TdViolation{"cross-part pair covered by no block", a, b};
      if (!same_part && c > 1) return TdViolation{"cross-part pair covered twice", a, b};
    }
  }
  if (static_cast<int>(td.blocks.size()) != td.n * td.n)
    return TdViolation{"block count != n^2", static_cast<int>(td.blocks.size()), td.n * td.n};
  for (const auto& blk : td.blocks) {
    if (static_cast<int>(blk.size()) != td.k)
      return TdViolation{"block size != k", static_cast<int>(blk.size()), td.k};
    std::vector<char> parts_hit(td.k, 0);
    for (int p : blk) {
      if (parts_hit[td.part_of(p)]) return TdViolation{"block meets a part twice", p, -1};
      parts_hit[td.part_of(p)] = 1;
    }
  }
  if (td.T) {
    if (static_cast<int>(td.T->size()) != td.n) return TdViolation{"T must have n blocks", -1, -1};
    std::map<std::vector<int>, int> block_set;
    for (const auto& blk : td.blocks) block_set[detail::sorted_block(blk)] = 1;
    std::vector<char> used(np, 0);
    for (const auto& blk : *td.T) {
      if (!block_set.count(detail::sorted_block(blk))) return TdViolation{"T block not a block", -1, -1};
      for (int p : blk) {
        if (used[p]) return TdViolation{"T blocks overlap", p, -1};
        used[p] = 1;
      }
    }
    for (int p = 0; p < np; ++p)
      if (!used[p]) return TdViolation{"T misses a point", p, -1};
  }
  return std::nullopt;
}

inline TransversalDesign latin_to_td(const LatinSquare& ls,
                                     const std::optional<Transversal>& t = std::nullopt) {
  if (auto v = validate_latin_square(ls)) fail(Errc::FormatError, "not a Latin square");
  TransversalDesign td;
  td.k = 3;
  td.n = ls.n;
  for (int i = 0; i < ls.n; ++i)
    for (int j = 0; j < ls.n; ++j) td.blocks.push_back({i, ls.n + j, 2 * ls.n + ls.cells[i][j]});
  if (t) {
    if (!transversal_valid(ls, *t)) fail(Errc::FormatError, "invalid transversal");
    std::vector<std::vector<int>> tb;
    for (int i = 0; i < ls.n; ++i)
      tb.push_back({i, ls.n + t->sigma[i], 2 * ls.n + ls.cells[i][t->sigma[i]]});
    td.T = std::move(tb);
  }
  return td;
}

inline LatinSquare td_to_latin(const TransversalDesign& td) {
  if (td.k != 3) fail(Errc::NotBlockSize3, "td_to_latin needs k = 3");
  LatinSquare ls;
  ls.n = td.n;
  ls.cells.assign(td.n, std::vector<int>(td.n, -1));
  for (const auto& blk : td.blocks) {
    int row = -1, col = -1, sym = -1;
    for (int p : blk) {
      int part = td.part_of(p);
      if (part == 0) row = p;
      else if (part == 1) col = p - td.n;
      else sym = p - 2 * td.n;
    }
    if (row < 0 || col < 0 || sym < 0) fail(Errc::FormatError, "block misses a part");
    ls.cells[row][col] = sym;
  }
  for (const auto& r : ls.cells)
    for (int v : r)
      if (v < 0) fail(Errc::FormatError, "blocks do not cover all cells");
  return ls;
}

struct MolsSet {
  std::vector<LatinSquare> squares;
};

inline TransversalDesign mols_to_td(const MolsSet& ms) {
  if (ms.squares.empty()) fail(Errc::FormatError, "empty MOLS set");
  int n = ms.squares[0].n;
  for (size_t a = 0; a < ms.squares.size(); ++a) {
    if (ms.squares[a].n != n) fail(Errc::SideMismatch, "MOLS sides differ");
    if (validate_latin_square(ms.squares[a])) fail(Errc::FormatError, "MOLS entry not Latin");
    for (size_t b = a + 1; b < ms.squares.size(); ++b) {
      if (!check_orthogonal(ms.squares[a], ms.squares[b]).ok)
        fail(Errc::NotOrthogonal,
             "squares " + std::to_string(a) + " and " + std::to_string(b) + " collide");
    }
  }
  TransversalDesign td;
  td.k = static_cast<int>(ms.squares.size()) + 2;
  td.n = n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<int> blk = {i, n + j};
      for (size_t s = 0; s < ms.squares.size(); ++s)
        blk.push_back(static_cast<int>(2 + s) * n + ms.squares[s].cells[i][j]);
      td.blocks.push_back(std::move(blk));
    }
  }
  return td;
}

// inverse of mols_to_td: one square per part beyond rows and columns
inline MolsSet td_to_mols(const TransversalDesign& td) {
  if (td.k < 3) fail(Errc::FormatError, "td_to_mols needs k >= 3");
  MolsSet ms;
  for (int s = 2; s < td.k; ++s) {
    LatinSquare ls;
    ls.n = td.n;
    ls.cells.assign(td.n, std::vector<int>(td.n, -1));
    ms.squares.push_back(std::move(ls));
  }
  for (const auto& blk : td.blocks) {
    int row = -1, col = -1;
    for (int p : blk) {
      if (td.part_of(p) == 0) row = p;
      if (td.part_of(p) == 1) col = p - td.n;
    }
    if (row < 0 || col < 0) fail(Errc::FormatError, "block misses rows/columns part");
    for (int p : blk) {
      int part = td.part_of(p);
      if (part >= 2) ms.squares[part - 2].cells[row][col] = p - part * td.n;
    }
  }
  for (const auto& sq : ms.squares)
    for (const auto& r : sq.cells)
      for (int v : r)
        if (v < 0) fail(Errc::FormatError, "blocks do not determine all cells");
  return ms;
}

struct LoopTable {
  int n = 0;
  int identity = -1;                    // index within part P1
  std::vector<std::vector<int>> table;  // table[x][y] = x (.) y, P1-local indices
  bool latin = false;
  bool two_sided_identity = false;
  bool associative = false;
  bool abelian = false;
};

namespace detail {
// block index by contained pair, built per call; TDs are small here
inline std::vector<int> pair_to_block(const TransversalDesign& td) {
  int np = td.points();
  std::vector<int> m(static_cast<size_t>(np) * np, -1);
  for (size_t b = 0; b < td.blocks.size(); ++b) {
    const auto& blk = td.blocks[b];
    for (size_t x = 0; x < blk.size(); ++x)
      for (size_t y = 0; y < blk.size(); ++y)
        if (x != y) m[static_cast<size_t>(blk[x]) * np + blk[y]] = static_cast<int>(b);
  }
  return m;
}
}  // namespace detail

// The geometric loop on P1: fix 1_1 in P1 and 1_2 in P2, set
// 1_3 = 1_1 1_2 `cap` P3, then X (.) Y = X'Y' `cap` P1 with X' = 1_2 X `cap` P3
// and Y' = 1_3 Y `cap` P2. Defaults pick the first point of P1 and of P2.
inline LoopTable loop_operation(const TransversalDesign& td, int one1 = -1, int one2 = -1) {
  if (td.k < 3) fail(Errc::FormatError, "loop needs k >= 3");
  if (one1 < 0) one1 = 0;
  if (one2 < 0) one2 = td.n;
  if (td.part_of(one1) != 0 || td.part_of(one2) != 1)
    fail(Errc::FormatError, "base points must lie in P1 and P2");
  auto pair_blk = detail::pair_to_block(td);
  int np = td.points();
  auto block_point_in_part = [&](int a, int b, int part) -> int {
    int bi = pair_blk[static_cast<size_t>(a) * np + b];
    if (bi < 0) fail(Errc::FormatError, "pair not covered by a block");
    for (int p : td.blocks[bi])
      if (td.part_of(p) == part) return p;
    fail(Errc::FormatError, "block misses a part");
  };
  int one3 = block_point_in_part(one1, one2, 2);

  LoopTable lt;
  lt.n = td.n;
  lt.identity = one1;  // P1-local == global for part 0
  lt.table.assign(td.n, std::vector<int>(td.n, -1));
  for (int x = 0; x < td.n; ++x) {
    int xp = block_point_in_part(one2, x, 2);  // X' = 1_2 X `cap` P3
    for (int y = 0; y < td.n; ++y) {
      int yp = block_point_in_part(one3, y, 1);  // Y' = 1_3 Y `cap` P2
      lt.table[x][y] = block_point_in_part(xp, yp, 0);
    }
  }

  lt.latin = true;
  for (int x = 0; x < td.n && lt.latin; ++x) {
    std::vector<char> row_seen(td.n, 0), col_seen(td.n, 0);
    for (int y = 0; y < td.n; ++y) {
      if (row_seen[lt.table[x][y]] || col_seen[lt.table[y][x]]) {
        lt.latin = false;
        break;
      }
      row_seen[lt.table[x][y]] = 1;
      col_seen[lt.table[y][x]] = 1;
    }
  }
  lt.two_sided_identity = true;
  for (int x = 0; x < td.n; ++x)
    if (lt.table[lt.identity][x] != x || lt.table[x][lt.identity] != x) {
      lt.two_sided_identity = false;
      break;
    }
  lt.associative = true;
  for (int x = 0; x < td.n && lt.associative; ++x)
    for (int y = 0; y < td.n && lt.associative; ++y)
      for (int z = 0; z < td.n; ++z)
        if (lt.table[lt.table[x][y]][z] != lt.table[x][lt.table[y][z]]) {
          lt.associative = false;
          break;
        }
  lt.abelian = true;
  for (int x = 0; x < td.n && lt.abelian; ++x)
    for (int y = x + 1; y < td.n; ++y)
      if (lt.table[x][y] != lt.table[y][x]) {
        lt.abelian = false;
        break;
      }
  return lt;
}

}  // namespace tdembed
