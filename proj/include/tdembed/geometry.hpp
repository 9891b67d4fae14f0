#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tdembed/scalar.hpp"

// Right-projective geometry over a skew field. Side conventions are fixed
// globally and every routine states which side its scalars act on:
//   * point coordinates form a right vector space ([x] = [x*lambda]);
//   * hyperplane functionals carry left coefficients (sum alpha_i * x_i = 0).
// Over noncommutative D the two echelon directions are NOT interchangeable;
// see rank_and_solve for the standard trap.

namespace tdembed {

enum class CoeffSide { Left, Right };

using Row = std::vector<Scalar>;
using Matrix = std::vector<Row>;

struct EchelonForm {
  Matrix rows;                // reduced form, unit pivots, zero rows dropped
  std::vector<size_t> pivots; // pivot column per surviving row
};

// Reduced echelon form of a row set under row combinations whose scalars act
// on `side` of the rows. Right: r -> r*l and r_i -> r_i - r_j*l (preserves the
// right row span). Left is the mirror.
inline EchelonForm echelonize(Matrix rows, CoeffSide side) {
  EchelonForm out;
  if (rows.empty()) return out;
  size_t ncols = rows[0].size();
  for (const Row& r : rows)
    if (r.size() != ncols) fail(Errc::DegenerateInput, "ragged matrix");
  size_t r = 0;
  for (size_t c = 0; c < ncols && r < rows.size(); ++c) {
    size_t sel = rows.size();
    for (size_t i = r; i < rows.size(); ++i) {
      if (!s_is_zero(rows[i][c])) {
        sel = i;
        break;
      }
    }
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[r]);
    Scalar lam = s_inv(rows[r][c]);
    for (size_t j = 0; j < ncols; ++j)
      rows[r][j] = side == CoeffSide::Right ? s_mul(rows[r][j], lam) : s_mul(lam, rows[r][j]);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || s_is_zero(rows[i][c])) continue;
      Scalar v = rows[i][c];
      for (size_t j = 0; j < ncols; ++j) {
        Scalar t = side == CoeffSide::Right ? s_mul(rows[r][j], v) : s_mul(v, rows[r][j]);
        rows[i][j] = s_sub(rows[i][j], t);
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  out.rows = std::move(rows);
  return out;
}

struct RankSolve {
  size_t rank = 0;
  Matrix nullspace;  // basis rows of the stated-side nullspace
};

// side == Right: solve sum_c A[r][c] * x_c = 0 (unknowns are right-vector
// coordinates); rank is the left row rank. side == Left: solve
// sum_c alpha_c * A[r][c] = 0 (unknown functionals with left coefficients);
// rank is the right row rank. Over a skew field the two ranks can differ:
// rows (1,i),(j,k) over the rational quaternions have left row rank 2 and
// empty right nullspace, yet (j,k) = (1,i)*j is a right multiple of (1,i).
inline RankSolve rank_and_solve(const Matrix& rows, CoeffSide side) {
  if (rows.empty()) return {};
  size_t ncols = rows[0].size();
  DescPtr d = rows[0][0].desc;
  CoeffSide ech_side = side == CoeffSide::Right ? CoeffSide::Left : CoeffSide::Right;
  EchelonForm ef = echelonize(rows, ech_side);
  RankSolve rs;
  rs.rank = ef.pivots.size();
  std::vector<char> is_pivot(ncols, 0);
  for (size_t c : ef.pivots) is_pivot[c] = 1;
  for (size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    Row v(ncols, s_zero(d));
    v[f] = s_one(d);
    // Right solutions: x_{p_r} = -A'[r][f]; left solutions mirror with the
    // same entries because the pivot is 1.
    for (size_t r = 0; r < ef.rows.size(); ++r) v[ef.pivots[r]] = s_neg(ef.rows[r][f]);
    rs.nullspace.push_back(std::move(v));
  }
  return rs;
}

namespace detail {
inline void check_rows_desc(const Row& coords, const DescPtr& d) {
  for (const Scalar& s : coords)
    if (!same_desc(s.desc, d)) fail(Errc::DescriptorMismatch, "mixed descriptors in coordinates");
}
}  // namespace detail

// Point of P^d(D) in homogeneous coordinates; canonical form scales on the
// right so that the last nonzero coordinate is 1.
class HomPoint {
 public:
  HomPoint(DescPtr desc, Row coords) : desc_(std::move(desc)), coords_(std::move(coords)) {
    if (coords_.size() < 2) fail(Errc::DegenerateInput, "point needs >= 2 coordinates");
    detail::check_rows_desc(coords_, desc_);
    int last = -1;
    for (size_t i = 0; i < coords_.size(); ++i)
      if (!s_is_zero(coords_[i])) last = static_cast<int>(i);
    if (last < 0) fail(Errc::DegenerateInput, "zero vector is not a projective point");
    Scalar lam = s_inv(coords_[last]);
    for (auto& c : coords_) c = s_mul(c, lam);
  }

  const Row& coords() const { return coords_; }
  const DescPtr& desc() const { return desc_; }
  size_t dim() const { return coords_.size() - 1; }

  std::string key() const {
    std::string out;
    for (const Scalar& c : coords_) out += s_key(c) + ";";
    return out;
  }

  friend bool operator==(const HomPoint& a, const HomPoint& b) {
    return same_desc(a.desc_, b.desc_) && a.coords_ == b.coords_;
  }
  friend bool operator!=(const HomPoint& a, const HomPoint& b) { return !(a == b); }

 private:
  DescPtr desc_;
  Row coords_;
};

// Hyperplane sum alpha_i x_i = 0; canonical form scales on the left so that
// the first nonzero coefficient is 1.
class Hyperplane {
 public:
  Hyperplane(DescPtr desc, Row coeffs) : desc_(std::move(desc)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() < 2) fail(Errc::DegenerateInput, "hyperplane needs >= 2 coefficients");
    detail::check_rows_desc(coeffs_, desc_);
    int first = -1;
    for (size_t i = 0; i < coeffs_.size() && first < 0; ++i)
      if (!s_is_zero(coeffs_[i])) first = static_cast<int>(i);
    if (first < 0) fail(Errc::DegenerateInput, "zero functional is not a hyperplane");
    Scalar lam = s_inv(coeffs_[first]);
    for (auto& c : coeffs_) c = s_mul(lam, c);
  }

  const Row& coeffs() const { return coeffs_; }
  const DescPtr& desc() const { return desc_; }
  size_t dim() const { return coeffs_.size() - 1; }

  // left-applied evaluation sum alpha_i * x_i
  Scalar eval(const Row& coords) const {
    if (coords.size() != coeffs_.size()) fail(Errc::DescriptorMismatch, "dimension mismatch");
    Scalar acc = s_zero(desc_);
    for (size_t i = 0; i < coords.size(); ++i) acc = s_add(acc, s_mul(coeffs_[i], coords[i]));
    return acc;
  }

  std::string key() const {
    std::string out;
    for (const Scalar& c : coeffs_) out += s_key(c) + ";";
    return out;
  }

  friend bool operator==(const Hyperplane& a, const Hyperplane& b) {
    return same_desc(a.desc_, b.desc_) && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const Hyperplane& a, const Hyperplane& b) { return !(a == b); }

 private:
  DescPtr desc_;
  Row coeffs_;
};

inline bool incident(const HomPoint& p, const Hyperplane& h) {
  if (!same_desc(p.desc(), h.desc())) fail(Errc::DescriptorMismatch, "point vs hyperplane field");
  return s_is_zero(h.eval(p.coords()));
}

// A flat stored as a right-span basis in reduced echelon form (canonical, so
// flats compare by payload). Projective dimension = basis size - 1; the empty
// flat has dimension -1.
class Flat {
 public:
  Flat(DescPtr desc, size_t ambient_coords, Matrix vectors)
      : desc_(std::move(desc)), ambient_(ambient_coords) {
    for (auto& v : vectors) detail::check_rows_desc(v, desc_);
    EchelonForm ef = echelonize(std::move(vectors), CoeffSide::Right);
    basis_ = std::move(ef.rows);
  }

  const Matrix& basis() const { return basis_; }
  const DescPtr& desc() const { return desc_; }
  size_t ambient_coords() const { return ambient_; }
  int proj_dim() const { return static_cast<int>(basis_.size()) - 1; }
  bool empty() const { return basis_.empty(); }

  bool contains_vector(Row v) const {
    // reduce against the unit-pivot basis with right coefficients
    for (const Row& b : basis_) {
      size_t piv = 0;
      while (piv < b.size() && s_is_zero(b[piv])) ++piv;
      if (piv == b.size()) continue;
      if (s_is_zero(v[piv])) continue;
      Scalar f = v[piv];
      for (size_t j = 0; j < v.size(); ++j) v[j] = s_sub(v[j], s_mul(b[j], f));
    }
    for (const Scalar& x : v)
      if (!s_is_zero(x)) return false;
    return true;
  }

  bool contains(const HomPoint& p) const { return contains_vector(p.coords()); }

  std::string key() const {
    std::string out;
    for (const Row& r : basis_) {
      for (const Scalar& c : r) out += s_key(c) + ";";
      out += "|";
    }
    return out;
  }

  friend bool operator==(const Flat& a, const Flat& b) {
    return same_desc(a.desc_, b.desc_) && a.key() == b.key();
  }

 private:
  DescPtr desc_;
  size_t ambient_ = 0;
  Matrix basis_;
};

inline Flat span_flat(const std::vector<HomPoint>& points) {
  if (points.empty()) fail(Errc::DegenerateInput, "span of no points");
  Matrix rows;
  rows.reserve(points.size());
  for (const HomPoint& p : points) {
    if (!same_desc(p.desc(), points[0].desc()))
      fail(Errc::DescriptorMismatch, "span over mixed descriptors");
    rows.push_back(p.coords());
  }
  return Flat(points[0].desc(), points[0].coords().size(), std::move(rows));
}

inline Flat intersect_hyperplanes(const std::vector<Hyperplane>& hs) {
  if (hs.size() < 2) fail(Errc::DegenerateInput, "need >= 2 hyperplanes to intersect");
  Matrix rows;
  for (const Hyperplane& h : hs) {
    if (!same_desc(h.desc(), hs[0].desc()))
      fail(Errc::DescriptorMismatch, "intersection over mixed descriptors");
    rows.push_back(h.coeffs());
  }
  RankSolve rs = rank_and_solve(rows, CoeffSide::Right);
  return Flat(hs[0].desc(), hs[0].coeffs().size(), std::move(rs.nullspace));
}

// hyperplanes through a flat: left nullspace of the basis rows
inline std::vector<Hyperplane> hyperplanes_through(const Flat& f) {
  RankSolve rs = rank_and_solve(f.basis(), CoeffSide::Left);
  std::vector<Hyperplane> out;
  for (auto& row : rs.nullspace) out.emplace_back(f.desc(), row);
  return out;
}

inline Flat line_through(const HomPoint& p, const HomPoint& q) {
  if (p == q) fail(Errc::DegenerateInput, "line through a repeated point");
  Flat f = span_flat({p, q});
  return f;
}

inline bool flat_in_hyperplane(const Flat& f, const Hyperplane& h) {
  for (const Row& b : f.basis())
    if (!s_is_zero(h.eval(b))) return false;
  return !f.empty();
}

// unique point of line `cap` h; fails with LineInHyperplane when the line lies
// inside h (the embedding definition's exclusion)
inline HomPoint third_intersection(const Flat& line, const Hyperplane& h) {
  if (line.proj_dim() != 1) fail(Errc::DegenerateInput, "third_intersection needs a line");
  const Row& b1 = line.basis()[0];
  const Row& b2 = line.basis()[1];
  Scalar A = h.eval(b1);
  Scalar B = h.eval(b2);
  if (s_is_zero(A) && s_is_zero(B)) fail(Errc::LineInHyperplane, "line contained in hyperplane");
  if (s_is_zero(A)) return HomPoint(line.desc(), b1);
  // solve A*lambda + B*mu = 0 with right-acting lambda, mu; take mu = 1
  Scalar lambda = s_neg(s_mul(s_inv(A), B));
  Row v(b1.size(), s_zero(line.desc()));
  for (size_t i = 0; i < v.size(); ++i) v[i] = s_add(s_mul(b1[i], lambda), b2[i]);
  return HomPoint(line.desc(), std::move(v));
}

// projection of p from `center` onto `target`
inline HomPoint project_from(const HomPoint& center, const HomPoint& p, const Hyperplane& target) {
  if (center == p) fail(Errc::DegenerateInput, "projection center equals the point");
  if (incident(center, target)) fail(Errc::DegenerateInput, "projection center lies on target");
  return third_intersection(line_through(center, p), target);
}

}  // namespace tdembed
