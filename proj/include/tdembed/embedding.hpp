#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tdembed/design.hpp"
#include "tdembed/geometry.hpp"
#include "tdembed/groups.hpp"

// Embeddings of TD(k,n) into P^d(D): the coordinatized constructions from
// groups, the verification of the embedding axioms, group extraction,
// transversal points, the stabilizer subfield D_G, and the MOLS extension.

namespace tdembed {

enum class FrameKind { ConcurrentCanonical, TriangleCanonical, Other };

struct EmbeddedTd {
  DescPtr desc;
  int d = 0;
  TransversalDesign td;
  std::vector<HomPoint> points;            // indexed by design point id
  std::vector<Hyperplane> part_hyperplanes;
  std::vector<Flat> block_lines;           // aligned with td.blocks
  int class_flat_dim = -2;                 // projective dim of the part-hyperplane intersection
  bool proper = false;
  std::optional<HomPoint> infinity;
  FrameKind frame = FrameKind::Other;
  GroupTag source_tag = GroupTag::Multiplicative;

  std::map<std::string, int> point_index() const {
    std::map<std::string, int> m;
    for (size_t i = 0; i < points.size(); ++i) m[points[i].key()] = static_cast<int>(i);
    return m;
  }
};

namespace detail {

inline Hyperplane unit_hyperplane(const DescPtr& d, size_t ncoords, size_t pos) {
  Row r(ncoords, s_zero(d));
  r[pos] = s_one(d);
  return Hyperplane(d, std::move(r));
}

inline std::vector<Hyperplane> concurrent_frame(const DescPtr& desc, int d) {
  size_t nc = d + 1;
  Row h2(nc, s_zero(desc));
  h2[d - 1] = s_one(desc);
  h2[d] = s_int(desc, -1);
  return {unit_hyperplane(desc, nc, d - 1), Hyperplane(desc, h2), unit_hyperplane(desc, nc, d)};
}

inline std::vector<Hyperplane> triangle_frame(const DescPtr& desc, int d) {
  size_t nc = d + 1;
  return {unit_hyperplane(desc, nc, 0), unit_hyperplane(desc, nc, 1),
          unit_hyperplane(desc, nc, 2)};
}

inline FrameKind detect_frame(const EmbeddedTd& e) {
  if (e.part_hyperplanes.size() < 3) return FrameKind::Other;
  std::vector<Hyperplane> first(e.part_hyperplanes.begin(), e.part_hyperplanes.begin() + 3);
  auto conc = concurrent_frame(e.desc, e.d);
  if (first[0] == conc[0] && first[1] == conc[1] && first[2] == conc[2])
    return FrameKind::ConcurrentCanonical;
  if (e.d >= 2) {
    auto tri = triangle_frame(e.desc, e.d);
    if (first[0] == tri[0] && first[1] == tri[1] && first[2] == tri[2])
      return FrameKind::TriangleCanonical;
  }
  return FrameKind::Other;
}

inline int recompute_class_dim(const EmbeddedTd& e) {
  return intersect_hyperplanes(e.part_hyperplanes).proj_dim();
}

inline bool recompute_proper(const EmbeddedTd& e) {
  Matrix rows;
  for (const HomPoint& p : e.points) rows.push_back(p.coords());
  return echelonize(std::move(rows), CoeffSide::Right).pivots.size() == static_cast<size_t>(e.d + 1);
}

// blocks as collinear triples through the three constructed parts
inline void build_blocks_geometrically(EmbeddedTd& e) {
  int n = e.td.n;
  auto idx = e.point_index();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Flat line = line_through(e.points[i], e.points[n + j]);
      HomPoint third = third_intersection(line, e.part_hyperplanes[2]);
      auto it = idx.find(third.key());
      if (it == idx.end() || e.td.part_of(it->second) != 2)
        fail(Errc::SingularSystem, "construction left a block without a third point");
      e.td.blocks.push_back({i, n + j, it->second});
      e.block_lines.push_back(std::move(line));
    }
  }
}

}  // namespace detail

// Proposition-style construction on the concurrent frame x_d = 0,
// x_d = x_{d+1}, x_{d+1} = 0 from an additive subgroup G of D^{d-1}:
// parts {[gamma,0,1]}, {[gamma,1,1]}, {[-gamma,1,0]}.
inline EmbeddedTd construct_additive(GeneratedGroup g) {
  if (g.tag != GroupTag::Additive) fail(Errc::FormatError, "construct_additive needs an additive group");
  if (characteristic(*g.desc) == 0)
    fail(Errc::CharZeroConcurrentImpossible,
         "concurrent-frame embeddings need prime characteristic; over " + g.desc->name +
             " the three hyperplanes would intersect in a (d-3)-flat");
  require_certified(g);
  int n = static_cast<int>(g.order());
  if (n < 3) fail(Errc::GroupTooSmall, "need |G| >= 3");
  int d = static_cast<int>(g.vec_len) + 1;

  EmbeddedTd e;
  e.desc = g.desc;
  e.d = d;
  e.td.k = 3;
  e.td.n = n;
  e.frame = FrameKind::ConcurrentCanonical;
  e.source_tag = GroupTag::Additive;
  e.part_hyperplanes = detail::concurrent_frame(g.desc, d);

  Scalar zero = s_zero(g.desc), one = s_one(g.desc);
  for (const auto& el : g.elements) {
    Row r(el.vec.begin(), el.vec.end());
    r.push_back(zero);
    r.push_back(one);
    e.points.emplace_back(g.desc, std::move(r));
  }
  for (const auto& el : g.elements) {
    Row r(el.vec.begin(), el.vec.end());
    r.push_back(one);
    r.push_back(one);
    e.points.emplace_back(g.desc, std::move(r));
  }
  for (const auto& el : g.elements) {
    Row r;
    for (const Scalar& s : el.vec) r.push_back(s_neg(s));
    r.push_back(one);
    r.push_back(zero);
    e.points.emplace_back(g.desc, std::move(r));
  }
  detail::build_blocks_geometrically(e);
  e.class_flat_dim = detail::recompute_class_dim(e);
  e.proper = detail::recompute_proper(e);
  if (auto v = validate_td(e.td))
    fail(Errc::SingularSystem, "additive construction failed validate_td: " + v->what);
  return e;
}

namespace detail {

// shared triangle-frame builder: parts {[0,gamma,1,x]}, {[gamma,0,1,x]},
// {[-1,gamma,0,x]} on x_1 = x_2 = x_3 = 0
inline EmbeddedTd construct_triangle(const DescPtr& desc, int d,
                                     const std::vector<GroupElement>& elems, GroupTag tag) {
  int n = static_cast<int>(elems.size());
  EmbeddedTd e;
  e.desc = desc;
  e.d = d;
  e.td.k = 3;
  e.td.n = n;
  e.frame = FrameKind::TriangleCanonical;
  e.source_tag = tag;
  e.part_hyperplanes = triangle_frame(desc, d);

  Scalar zero = s_zero(desc), one = s_one(desc);
  auto with_tail = [&](std::vector<Scalar> head, const std::vector<Scalar>& tail) {
    for (const Scalar& s : tail) head.push_back(s);
    for (size_t i = head.size(); i < static_cast<size_t>(d + 1); ++i) head.push_back(zero);
    return head;
  };
  for (const auto& el : elems)
    e.points.emplace_back(desc, with_tail({zero, el.gamma, one}, el.vec));
  for (const auto& el : elems)
    e.points.emplace_back(desc, with_tail({el.gamma, zero, one}, el.vec));
  for (const auto& el : elems)
    e.points.emplace_back(desc, with_tail({s_int(desc, -1), el.gamma, zero}, el.vec));
  build_blocks_geometrically(e);
  e.class_flat_dim = recompute_class_dim(e);
  e.proper = recompute_proper(e);
  if (auto v = validate_td(e.td))
    fail(Errc::SingularSystem, "triangle construction failed validate_td: " + v->what);
  return e;
}

}  // namespace detail

// Triangle-frame construction from a multiplicative subgroup of D^*; for
// d > 2 this is the semidirect construction with zero translation parts.
inline EmbeddedTd construct_multiplicative(GeneratedGroup g, int d = 2) {
  if (g.tag != GroupTag::Multiplicative)
    fail(Errc::FormatError, "construct_multiplicative needs a multiplicative group");
  require_certified(g);
  if (g.order() < 3) fail(Errc::GroupTooSmall, "need |G| >= 3");
  if (d < 2) fail(Errc::DimensionTooSmall, "need d >= 2");
  std::vector<GroupElement> elems;
  std::vector<Scalar> tail(static_cast<size_t>(d - 2), s_zero(g.desc));
  for (const auto& el : g.elements) elems.push_back(semidirect_element(el.gamma, tail));
  EmbeddedTd e = detail::construct_triangle(g.desc, d, elems, GroupTag::Multiplicative);
  return e;
}

// Triangle-frame construction from a subgroup of D^* x| D^{d-2}; the block
// law realizes X (.) Y = [0, alpha beta, 1, x beta + y].
inline EmbeddedTd construct_semidirect(GeneratedGroup g, int d) {
  if (g.tag != GroupTag::Semidirect)
    fail(Errc::FormatError, "construct_semidirect needs a semidirect group");
  if (d < 3) fail(Errc::DimensionTooSmall, "the semidirect construction needs d >= 3");
  if (g.vec_len != static_cast<size_t>(d - 2))
    fail(Errc::FormatError, "translation length must be d-2");
  require_certified(g);
  if (g.order() < 3) fail(Errc::GroupTooSmall, "need |G| >= 3");
  return detail::construct_triangle(g.desc, d, g.elements, GroupTag::Semidirect);
}

// ------------------------------------------------------------ verification

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> violations;
  int class_flat_dim = -2;
  bool proper = false;

  void flag(std::string v) {
    ok = false;
    violations.push_back(std::move(v));
  }
};

inline VerifyReport verify_embedding(const EmbeddedTd& e) {
  VerifyReport r;
  const int k = e.td.k, n = e.td.n;
  if (static_cast<int>(e.points.size()) != k * n) {
    r.flag("point map size != kn");
    return r;
  }
  if (static_cast<int>(e.part_hyperplanes.size()) != k) {
    r.flag("one hyperplane per part required");
    return r;
  }
  auto idx = e.point_index();
  if (idx.size() != e.points.size()) r.flag("point map is not injective");

  for (int p = 0; p < k * n; ++p)
    if (!incident(e.points[p], e.part_hyperplanes[e.td.part_of(p)])) {
      r.flag("point " + std::to_string(p) + " off its part hyperplane");
      break;
    }
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (e.part_hyperplanes[a] == e.part_hyperplanes[b]) r.flag("part hyperplanes repeat");

  // no design point on two part hyperplanes
  for (int p = 0; p < k * n && r.ok; ++p)
    for (int h = 0; h < k; ++h)
      if (h != e.td.part_of(p) && incident(e.points[p], e.part_hyperplanes[h])) {
        r.flag("point " + std::to_string(p) + " lies on a foreign part hyperplane");
        break;
      }

  if (e.block_lines.size() != e.td.blocks.size()) {
    r.flag("block line list out of step with blocks");
    return r;
  }
  std::map<std::string, int> line_keys;
  for (size_t b = 0; b < e.td.blocks.size(); ++b) {
    std::vector<HomPoint> pts;
    for (int p : e.td.blocks[b]) pts.push_back(e.points[p]);
    Flat span = span_flat(pts);
    if (span.proj_dim() != 1) {
      r.flag("block " + std::to_string(b) + " is not collinear");
      continue;
    }
    if (!(span == e.block_lines[b])) r.flag("stored line differs from block span");
    auto [it, fresh] = line_keys.emplace(span.key(), static_cast<int>(b));
    if (!fresh) r.flag("blocks " + std::to_string(it->second) + " and " + std::to_string(b) +
                       " share a line");
    for (const Hyperplane& h : e.part_hyperplanes)
      if (flat_in_hyperplane(span, h)) r.flag("block line inside a part hyperplane");
  }

  if (auto v = validate_td(e.td)) r.flag("TD violation: " + v->what);

  if (e.infinity) {
    if (!e.td.T) {
      r.flag("transversal point present without a distinguished partition T");
    } else {
      for (const Hyperplane& h : e.part_hyperplanes)
        if (incident(*e.infinity, h)) r.flag("transversal point lies on a part hyperplane");
      // the distinguished lines are concurrent at infinity
      std::map<std::vector<int>, int> block_of;
      for (size_t b = 0; b < e.td.blocks.size(); ++b)
        block_of[detail::sorted_block(e.td.blocks[b])] = static_cast<int>(b);
      for (const auto& tb : *e.td.T) {
        auto it = block_of.find(detail::sorted_block(tb));
        if (it == block_of.end()) {
          r.flag("T block missing from block list");
          continue;
        }
        if (!e.block_lines[it->second].contains(*e.infinity))
          r.flag("a distinguished block line misses the transversal point");
      }
    }
  }

  r.class_flat_dim = detail::recompute_class_dim(e);
  r.proper = detail::recompute_proper(e);
  if (r.class_flat_dim != e.class_flat_dim) r.flag("stored classification is stale");
  if (r.proper != e.proper) r.flag("stored properness is stale");
  return r;
}

// ------------------------------------------------------------ extraction

struct ExtractionRecord {
  FrameKind frame = FrameKind::Other;
  int base1 = -1, base2 = -1;
  GroupTag pattern = GroupTag::Multiplicative;
};

// Read the group off the canonical coordinate patterns. On the concurrent
// frame the choice of base point translates the pattern (the group is
// unchanged); on the triangle frame the raw pattern set must certify. The
// returned Cayley structure is asserted isomorphic to the combinatorial loop.
inline std::pair<GeneratedGroup, ExtractionRecord> extract_group(const EmbeddedTd& e,
                                                                 int base1 = -1, int base2 = -1) {
  FrameKind frame = detail::detect_frame(e);
  if (frame == FrameKind::Other)
    fail(Errc::NonStandardFrame,
         "extraction needs the canonical frame; supply a frame-change record first");
  int n = e.td.n;
  if (base1 < 0) base1 = 0;
  if (base2 < 0) base2 = n;
  if (e.td.part_of(base1) != 0 || e.td.part_of(base2) != 1)
    fail(Errc::FormatError, "base points must lie in P1 and P2");

  GeneratedGroup g;
  g.desc = e.desc;
  ExtractionRecord rec;
  rec.frame = frame;
  rec.base1 = base1;
  rec.base2 = base2;

  if (frame == FrameKind::ConcurrentCanonical) {
    // P1 points are [gamma, 0, 1]; translate by the base choices so that the
    // base point reads as the zero vector
    size_t m = static_cast<size_t>(e.d) - 1;
    auto read_vec = [&](int pt, int part) {
      const Row& c = e.points[pt].coords();
      if (part == 0 && (!s_is_zero(c[m]) || c[m + 1] != s_one(e.desc)))
        fail(Errc::NonStandardFrame, "P1 point off the [gamma,0,1] pattern");
      if (part == 1 && (c[m] != s_one(e.desc) || c[m + 1] != s_one(e.desc)))
        fail(Errc::NonStandardFrame, "P2 point off the [gamma,1,1] pattern");
      std::vector<Scalar> v(c.begin(), c.begin() + m);
      return v;
    };
    std::vector<Scalar> gamma1 = read_vec(base1, 0);
    std::vector<Scalar> gamma2 = read_vec(base2, 1);
    g.tag = GroupTag::Additive;
    g.vec_len = m;
    std::map<std::string, int> gset;
    for (int p = 0; p < n; ++p) {
      std::vector<Scalar> v = read_vec(p, 0);
      for (size_t i = 0; i < m; ++i) v[i] = s_sub(v[i], gamma1[i]);
      gset[element_key(additive_element(v))] = 1;
      g.elements.push_back(additive_element(std::move(v)));
    }
    // translating the base points to the canonical frame sends P2 patterns to
    // gamma - gamma2 and P3 patterns to gamma_raw + gamma2 - gamma1; both must
    // land back in G
    for (int p = n; p < 2 * n; ++p) {
      std::vector<Scalar> v = read_vec(p, 1);
      for (size_t i = 0; i < m; ++i) v[i] = s_sub(v[i], gamma2[i]);
      if (!gset.count(element_key(additive_element(v))))
        fail(Errc::NonStandardFrame, "P2 pattern disagrees with P1 pattern");
    }
    for (int p = 2 * n; p < 3 * n; ++p) {
      const Row& c = e.points[p].coords();
      if (c[m] != s_one(e.desc) || !s_is_zero(c[m + 1]))
        fail(Errc::NonStandardFrame, "P3 point off the [-gamma,1,0] pattern");
      std::vector<Scalar> v;
      for (size_t i = 0; i < m; ++i)
        v.push_back(s_add(s_sub(gamma2[i], gamma1[i]), s_neg(c[i])));
      if (!gset.count(element_key(additive_element(v))))
        fail(Errc::NonStandardFrame, "P3 pattern disagrees with P1 pattern");
    }
    rec.pattern = GroupTag::Additive;
  } else {
    // P1 points are [0, gamma, 1, x] up to the right scaling that the
    // canonical form applies; restore the x3 = 1 gauge before reading
    std::vector<GroupElement> elems;
    bool all_translations_zero = true;
    for (int p = 0; p < n; ++p) {
      const Row& c = e.points[p].coords();
      if (!s_is_zero(c[0]) || s_is_zero(c[2]))
        fail(Errc::NonStandardFrame, "P1 point off the [0,gamma,1,x] pattern");
      Scalar lam = s_inv(c[2]);
      Scalar gamma = s_mul(c[1], lam);
      std::vector<Scalar> x;
      for (size_t i = 3; i < c.size(); ++i) x.push_back(s_mul(c[i], lam));
      for (const Scalar& s : x)
        if (!s_is_zero(s)) all_translations_zero = false;
      if (s_is_zero(gamma)) fail(Errc::NonStandardFrame, "P1 gamma vanished");
      elems.push_back(semidirect_element(gamma, std::move(x)));
    }
    if (all_translations_zero) {
      g.tag = GroupTag::Multiplicative;
      g.vec_len = 0;
      for (auto& el : elems) g.elements.push_back(multiplicative_element(el.gamma));
      rec.pattern = GroupTag::Multiplicative;
    } else {
      g.tag = GroupTag::Semidirect;
      g.vec_len = static_cast<size_t>(e.d) - 2;
      g.elements = std::move(elems);
      rec.pattern = GroupTag::Semidirect;
    }
  }
  g.generator_note = "extracted from embedding";
  Certificate c = certify(g);
  if (!c.ok)
    fail(Errc::NonStandardFrame, "coordinate pattern does not close into a group: " + c.violation);

  // the combinatorial loop must agree with the extracted Cayley structure
  LoopTable loop = loop_operation(e.td, base1, base2);
  if (!loop.latin || !loop.two_sided_identity)
    fail(Errc::SingularSystem, "loop on P1 is not a loop");
  auto gt = cayley_table(g);
  bool iso = false;
  if (loop.table == gt && loop.identity == g.identity_index) {
    iso = true;  // constructions index P1 in group order
  } else {
    iso = tables_isomorphic(loop.table, loop.identity, gt, g.identity_index);
  }
  if (!iso) fail(Errc::SingularSystem, "extracted group is not isomorphic to the loop");
  return {std::move(g), rec};
}

// ------------------------------------------------------------ D_G machinery

// D_G = {a in D : G a <= G}; for finite additive G this is a subfield with
// p^t elements and p^t <= |G| for nontrivial G.
struct StabilizerSubfield {
  DescPtr desc;
  std::vector<Scalar> elements;  // in field enumeration order
  uint32_t p = 0;
  uint32_t t = 0;  // |D_G| = p^t
  size_t size() const { return elements.size(); }
};

inline StabilizerSubfield stabilizer_subfield(const GeneratedGroup& g) {
  if (g.tag != GroupTag::Additive) fail(Errc::FormatError, "D_G is defined for additive groups");
  if (field_size(*g.desc) == 0)
    fail(Errc::UnsupportedSize, "D_G scan needs a finite field descriptor");
  std::map<std::string, int> keys;
  for (const auto& e : g.elements) keys[element_key(e)] = 1;
  StabilizerSubfield out;
  out.desc = g.desc;
  out.p = characteristic(*g.desc);
  for (const Scalar& a : field_elements(g.desc)) {
    bool stabilizes = true;
    for (const auto& e : g.elements) {
      std::vector<Scalar> scaled;
      for (const Scalar& s : e.vec) scaled.push_back(s_mul(s, a));
      if (!keys.count(element_key(additive_element(std::move(scaled))))) {
        stabilizes = false;
        break;
      }
    }
    if (stabilizes) out.elements.push_back(a);
  }
  // subfield sanity: closed under +, *, inversion; contains 0 and 1
  std::map<std::string, int> sk;
  for (const Scalar& a : out.elements) sk[s_key(a)] = 1;
  if (!sk.count(s_key(s_zero(g.desc))) || !sk.count(s_key(s_one(g.desc))))
    fail(Errc::SingularSystem, "stabilizer misses 0 or 1");
  for (const Scalar& a : out.elements) {
    for (const Scalar& b : out.elements) {
      if (!sk.count(s_key(s_add(a, b))) || !sk.count(s_key(s_mul(a, b))))
        fail(Errc::SingularSystem, "stabilizer not closed");
    }
    if (!s_is_zero(a) && !sk.count(s_key(s_inv(a))))
      fail(Errc::SingularSystem, "stabilizer not inverse-closed");
  }
  size_t sz = out.elements.size(), tt = 0;
  while (sz > 1) {
    if (sz % out.p != 0) fail(Errc::SingularSystem, "|D_G| is not a power of p");
    sz /= out.p;
    ++tt;
  }
  out.t = static_cast<uint32_t>(tt);
  if (g.order() > 1 && out.elements.size() > g.order())
    fail(Errc::SingularSystem, "|D_G| exceeds |G|");
  return out;
}

// ------------------------------------------------------------ transversal points

namespace detail {

// blocks cut out by the pencil of lines through q, one through each point of
// P1; nullopt when some line leaves the design
inline std::optional<std::vector<int>> transversal_blocks(const EmbeddedTd& e, const HomPoint& q) {
  auto idx = e.point_index();
  std::map<std::vector<int>, int> block_of;
  for (size_t b = 0; b < e.td.blocks.size(); ++b)
    block_of[sorted_block(e.td.blocks[b])] = static_cast<int>(b);
  int n = e.td.n, k = e.td.k;
  std::vector<int> blocks;
  std::vector<char> used(e.points.size(), 0);
  for (int p1 = 0; p1 < n; ++p1) {
    Flat line = line_through(q, e.points[p1]);
    std::vector<int> ids = {p1};
    for (int part = 1; part < k; ++part) {
      HomPoint hit = third_intersection(line, e.part_hyperplanes[part]);
      auto it = idx.find(hit.key());
      if (it == idx.end() || e.td.part_of(it->second) != part) return std::nullopt;
      ids.push_back(it->second);
    }
    auto bit = block_of.find(sorted_block(ids));
    if (bit == block_of.end()) return std::nullopt;
    for (int p : e.td.blocks[bit->second]) {
      if (used[p]) return std::nullopt;  // lines must sweep disjoint blocks
      used[p] = 1;
    }
    blocks.push_back(bit->second);
  }
  return blocks;
}

}  // namespace detail

// purely geometric test from the theorem's converse direction: project P1
// from q across the other parts and demand existing, pairwise disjoint blocks
inline bool is_transversal_point(const EmbeddedTd& e, const HomPoint& q) {
  for (const Hyperplane& h : e.part_hyperplanes)
    if (incident(q, h))
      fail(Errc::PointOnPartHyperplane, "candidate lies on a part hyperplane");
  return detail::transversal_blocks(e, q).has_value();
}

// attach a transversal point: records infinity plus the distinguished
// partition T swept out by the pencil through it
inline EmbeddedTd with_transversal_point(const EmbeddedTd& e, const HomPoint& q) {
  auto blocks = detail::transversal_blocks(e, q);
  if (!blocks) fail(Errc::FormatError, "not a transversal point of this embedding");
  EmbeddedTd out = e;
  std::vector<std::vector<int>> T;
  for (int b : *blocks) T.push_back(e.td.blocks[b]);
  out.td.T = std::move(T);
  out.infinity = q;
  return out;
}

struct TransversalPointSet {
  bool finite = false;
  std::vector<HomPoint> points;  // all transversal points when finite
  size_t expected_count = 0;     // |G| * (|D_G| - 2)
  std::string description;
  std::function<bool(const HomPoint&)> member;
};

// Theorem-backed fast path on the concurrent frame: the transversal points
// are exactly {[gamma, a, 1] : gamma in G, a in D_G \ {0,1}}; empty iff
// |D_G| = 2.
inline TransversalPointSet transversal_points(const EmbeddedTd& e) {
  if (e.class_flat_dim != e.d - 2)
    fail(Errc::WrongClassification,
         "transversal points live on the (d-2) classification; use the improper check instead");
  auto [g, rec] = extract_group(e);
  if (g.tag != GroupTag::Additive)
    fail(Errc::WrongClassification, "transversal-point formula needs the additive pattern");
  auto gshared = std::make_shared<GeneratedGroup>(std::move(g));

  TransversalPointSet out;
  out.description = "{[gamma,a,1] : gamma in G, a in D_G \\ {0,1}}";
  DescPtr desc = e.desc;
  int d = e.d;
  out.member = [gshared, desc, d](const HomPoint& q) {
    const Row& c = q.coords();
    if (c.size() != static_cast<size_t>(d + 1)) return false;
    if (c[d] != s_one(desc)) return false;  // canonical [gamma, a, 1]
    Scalar a = c[d - 1];
    if (s_is_zero(a) || a == s_one(desc)) return false;
    std::vector<Scalar> gamma(c.begin(), c.begin() + (d - 1));
    std::map<std::string, int> keys;
    for (const auto& el : gshared->elements) keys[element_key(el)] = 1;
    if (!keys.count(element_key(additive_element(gamma)))) return false;
    for (const auto& el : gshared->elements) {
      std::vector<Scalar> scaled;
      for (const Scalar& s : el.vec) scaled.push_back(s_mul(s, a));
      if (!keys.count(element_key(additive_element(std::move(scaled))))) return false;
    }
    return true;
  };

  if (field_size(*e.desc) > 0) {
    StabilizerSubfield dg = stabilizer_subfield(*gshared);
    out.finite = true;
    out.expected_count = gshared->order() * (dg.size() - 2);
    Scalar one = s_one(e.desc);
    for (const auto& el : gshared->elements) {
      for (const Scalar& a : dg.elements) {
        if (s_is_zero(a) || a == one) continue;
        Row r(el.vec.begin(), el.vec.end());
        r.push_back(a);
        r.push_back(one);
        out.points.emplace_back(e.desc, std::move(r));
      }
    }
  }
  return out;
}

// ------------------------------------------------------------ improper transversal

struct ImproperTransversalReport {
  bool d2_impossible = false;      // in the plane no such embedding exists
  bool infinity_is_transversal = false;
  bool contained = false;          // V and infinity inside x1 + x2 - x3 = 0
  std::string detail;
};

// On the (d-3) classification a transversal point forces the whole embedding
// (and the point) into the hyperplane x1 + x2 - x3 = 0 of the canonical frame.
inline ImproperTransversalReport check_improper_transversal(const EmbeddedTd& e,
                                                            const HomPoint& infinity) {
  if (e.class_flat_dim != e.d - 3)
    fail(Errc::WrongClassification, "this check applies to the (d-3) classification");
  if (detail::detect_frame(e) != FrameKind::TriangleCanonical)
    fail(Errc::NotInCanonicalFrame, "expected the canonical triangle frame");
  ImproperTransversalReport r;
  if (e.d == 2) {
    r.d2_impossible = true;
    r.detail = "a planar TD on nonconcurrent lines admits no transversal point";
    return r;
  }
  r.infinity_is_transversal = is_transversal_point(e, infinity);
  Row w(static_cast<size_t>(e.d + 1), s_zero(e.desc));
  w[0] = s_one(e.desc);
  w[1] = s_one(e.desc);
  w[2] = s_int(e.desc, -1);
  Hyperplane container(e.desc, std::move(w));
  r.contained = incident(infinity, container);
  for (const HomPoint& p : e.points)
    if (!incident(p, container)) r.contained = false;
  r.detail = r.contained ? "design and transversal point lie in x1+x2-x3=0"
                         : "containment in x1+x2-x3=0 fails";
  return r;
}

// ------------------------------------------------------------ Thm-5 extension

struct ExtendOutcome {
  std::optional<EmbeddedTd> extended;
  std::optional<TdViolation> violation;
};

// Append one part per scalar a: hyperplane x_d = a x_{d+1} with pattern points
// {[gamma, a, 1]}. Blocks are extended by their geometric intersection with
// the new hyperplane; for a outside D_G some line misses the pattern and the
// pair scan reports the gap.
inline ExtendOutcome attempt_extend(const EmbeddedTd& e, const std::vector<Scalar>& scalars) {
  if (detail::detect_frame(e) != FrameKind::ConcurrentCanonical)
    fail(Errc::NotInCanonicalFrame, "extension works on the canonical concurrent frame");
  auto [g, rec] = extract_group(e);
  EmbeddedTd out = e;
  Scalar one = s_one(e.desc);
  int n = e.td.n;
  for (const Scalar& a : scalars) {
    if (s_is_zero(a) || a == one) fail(Errc::FormatError, "extension scalars must avoid 0 and 1");
    int new_part = out.td.k;
    // pattern points [gamma, a, 1]
    std::map<std::string, int> fresh_ids;
    for (const auto& el : g.elements) {
      Row r(el.vec.begin(), el.vec.end());
      r.push_back(a);
      r.push_back(one);
      HomPoint pt(e.desc, std::move(r));
      fresh_ids[pt.key()] = static_cast<int>(out.points.size());
      out.points.push_back(std::move(pt));
    }
    Row h(static_cast<size_t>(e.d + 1), s_zero(e.desc));
    h[e.d - 1] = one;
    h[e.d] = s_neg(a);
    Hyperplane new_h(e.desc, std::move(h));
    for (size_t b = 0; b < out.td.blocks.size(); ++b) {
      HomPoint hit = third_intersection(out.block_lines[b], new_h);
      auto it = fresh_ids.find(hit.key());
      if (it != fresh_ids.end()) out.td.blocks[b].push_back(it->second);
    }
    out.part_hyperplanes.push_back(std::move(new_h));
    out.td.k = new_part + 1;
  }
  out.td.T.reset();
  out.infinity.reset();
  ExtendOutcome outcome;
  if (auto v = validate_td(out.td)) {
    outcome.violation = v;
    return outcome;
  }
  (void)n;
  out.class_flat_dim = detail::recompute_class_dim(out);
  out.proper = detail::recompute_proper(out);
  outcome.extended = std::move(out);
  return outcome;
}

// Thm-5 maximal extension to k = |D_G| + 1 via every a in D_G \ {0,1}
inline EmbeddedTd extend_to_max_td(const EmbeddedTd& e) {
  auto [g, rec] = extract_group(e);
  StabilizerSubfield dg = stabilizer_subfield(g);
  if (dg.size() == 2) fail(Errc::NothingToExtend, "|D_G| = 2 admits no extension beyond k = 3");
  std::vector<Scalar> scalars;
  Scalar one = s_one(e.desc);
  for (const Scalar& a : dg.elements)
    if (!s_is_zero(a) && a != one) scalars.push_back(a);
  ExtendOutcome out = attempt_extend(e, scalars);
  if (!out.extended)
    fail(Errc::SingularSystem, "extension over D_G must validate: " + out.violation->what);
  return *std::move(out.extended);
}

// ------------------------------------------------------------ classification

struct Classification {
  int flat_dim = -2;
  uint32_t characteristic = 0;
  int n = 0;
  bool is_d_minus_2 = false;
  bool n_char_power = false;  // meaningful on the (d-2) classification
  bool loop_abelian = false;
  bool loop_associative = false;
  bool proper = false;
  std::vector<std::string> notes;
};

inline Classification classify(const EmbeddedTd& e) {
  Classification c;
  c.flat_dim = e.class_flat_dim;
  c.characteristic = tdembed::characteristic(*e.desc);
  c.n = e.td.n;
  c.proper = e.proper;
  LoopTable loop = loop_operation(e.td);
  c.loop_abelian = loop.abelian;
  c.loop_associative = loop.associative;
  c.is_d_minus_2 = e.class_flat_dim == e.d - 2;
  if (c.is_d_minus_2) {
    if (c.characteristic == 0)
      fail(Errc::SingularSystem, "a (d-2) classification over characteristic 0 is impossible");
    int n = c.n;
    c.n_char_power = true;
    while (n > 1) {
      if (n % static_cast<int>(c.characteristic) != 0) {
        c.n_char_power = false;
        break;
      }
      n /= static_cast<int>(c.characteristic);
    }
    c.notes.push_back("hyperplanes meet in a (d-2)-flat: char p with n a power of p");
  } else if (e.class_flat_dim == e.d - 3) {
    if (e.d == 2)
      c.notes.push_back("nonconcurrent triangle: pairwise intersections are distinct points");
    if (!c.loop_abelian)
      c.notes.push_back(
          "loop is nonabelian: no embedding of this TD on a (d-2)-flat frame exists over any "
          "skew field");
    else
      c.notes.push_back(
          "loop is abelian: if the TD also embeds on a (d-2)-flat frame, this embedding cannot "
          "be proper");
  }
  return c;
}

}  // namespace tdembed
