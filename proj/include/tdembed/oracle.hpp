#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tdembed/embedding.hpp"

// Brute-force ground truth over small PG(d,q): full point/hyperplane
// enumeration, exhaustive transversal-point scans, and exhaustive searches
// for TD(3,n) configurations on a fixed frame. Used to validate the
// theorem-backed fast paths.

namespace tdembed {

struct PGSpace {
  DescPtr desc;
  uint64_t q = 0;
  int d = 0;
  std::vector<HomPoint> points;
  std::vector<Hyperplane> hyperplanes;
  std::vector<std::vector<char>> incidence;  // [hyperplane][point]
  std::map<std::string, int> point_index;

  int index_of(const HomPoint& p) const {
    auto it = point_index.find(p.key());
    return it == point_index.end() ? -1 : it->second;
  }
};

inline DescPtr pg_descriptor(uint64_t q) {
  switch (q) {
    case 2: return descriptor_from_name("Fp:2");
    case 3: return descriptor_from_name("Fp:3");
    case 4: return descriptor_from_name("Fq:4:x^2+x+1");
    case 5: return descriptor_from_name("Fp:5");
    case 7: return descriptor_from_name("Fp:7");
    case 8: return descriptor_from_name("Fq:8:x^3+x+1");
    case 9: return descriptor_from_name("Fq:9:x^2+1");
    default:
      fail(Errc::UnsupportedSize, "q must be one of 2,3,4,5,7,8,9");
  }
}

// canonical points (last nonzero = 1) and hyperplanes (first nonzero = 1),
// enumerated directly in their normal forms
inline PGSpace enumerate_pg(uint64_t q, int d) {
  if (d != 2 && d != 3) fail(Errc::UnsupportedSize, "d must be 2 or 3");
  PGSpace space;
  space.desc = pg_descriptor(q);
  space.q = q;
  space.d = d;
  std::vector<Scalar> elems = field_elements(space.desc);
  size_t nc = static_cast<size_t>(d) + 1;

  auto enumerate_prefixed = [&](size_t unit_pos, bool unit_first, auto&& emit) {
    // vectors with 1 at unit_pos and free entries before (points) or after
    // (hyperplanes) it
    size_t free_count = unit_first ? nc - unit_pos - 1 : unit_pos;
    std::vector<size_t> digits(free_count, 0);
    while (true) {
      Row r(nc, s_zero(space.desc));
      r[unit_pos] = s_one(space.desc);
      for (size_t i = 0; i < free_count; ++i)
        r[unit_first ? unit_pos + 1 + i : i] = elems[digits[i]];
      emit(std::move(r));
      size_t i = 0;
      for (; i < free_count; ++i) {
        if (++digits[i] < elems.size()) break;
        digits[i] = 0;
      }
      if (i == free_count) break;
    }
  };

  for (size_t pos = 0; pos < nc; ++pos)
    enumerate_prefixed(pos, false,
                       [&](Row r) { space.points.emplace_back(space.desc, std::move(r)); });
  for (size_t pos = nc; pos-- > 0;)
    enumerate_prefixed(pos, true,
                       [&](Row r) { space.hyperplanes.emplace_back(space.desc, std::move(r)); });

  for (size_t i = 0; i < space.points.size(); ++i)
    space.point_index[space.points[i].key()] = static_cast<int>(i);
  space.incidence.assign(space.hyperplanes.size(), std::vector<char>(space.points.size(), 0));
  for (size_t h = 0; h < space.hyperplanes.size(); ++h)
    for (size_t p = 0; p < space.points.size(); ++p)
      space.incidence[h][p] = incident(space.points[p], space.hyperplanes[h]) ? 1 : 0;
  return space;
}

// exhaustive Thm-4 oracle: every point of PG(d,q) off the part hyperplanes,
// tested geometrically
inline std::vector<HomPoint> brute_transversal_points(const PGSpace& space, const EmbeddedTd& e) {
  if (!same_desc(space.desc, e.desc) || space.d != e.d)
    fail(Errc::DescriptorMismatch, "embedding does not live in this space");
  std::vector<HomPoint> out;
  for (const HomPoint& q : space.points) {
    bool on_part = false;
    for (const Hyperplane& h : e.part_hyperplanes)
      if (incident(q, h)) {
        on_part = true;
        break;
      }
    if (on_part) continue;
    if (is_transversal_point(e, q)) out.push_back(q);
  }
  return out;
}

enum class FrameShape { Concurrent, Triangle };

struct FoundConfig {
  std::vector<int> part_points[3];  // indices into the space, per part
  TransversalDesign td;
  LoopTable loop;
  std::string canonical_key;
  bool loop_elementary_abelian = false;
  bool loop_cyclic = false;
};

struct FrameSearchResult {
  FrameShape frame;
  uint64_t q = 0;
  int n = 0;
  std::vector<FoundConfig> configs;  // deduplicated, sorted by canonical key
  size_t raw_hits = 0;               // before frame-scaling dedup
};

namespace detail {

inline bool loop_elementary_abelian(const LoopTable& lt) {
  if (!lt.associative || !lt.abelian) return false;
  int n = lt.n;
  if (n < 2) return true;
  int p = 2;
  while (n % p != 0) ++p;
  for (int x = 0; x < lt.n; ++x) {
    int cur = lt.identity;
    for (int s = 0; s < p; ++s) cur = lt.table[cur][x];
    if (cur != lt.identity) return false;
  }
  return true;
}

inline bool loop_cyclic(const LoopTable& lt) {
  if (!lt.associative) return false;
  for (int g = 0; g < lt.n; ++g) {
    std::set<int> orbit;
    int cur = lt.identity;
    for (int s = 0; s < lt.n; ++s) {
      cur = lt.table[cur][g];
      orbit.insert(cur);
    }
    if (static_cast<int>(orbit.size()) == lt.n) return true;
  }
  return false;
}

inline uint64_t binom(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  uint64_t r = 1;
  for (uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// frame-preserving scalings, as point maps on coordinate vectors
inline std::vector<std::vector<Scalar>> frame_scalings(const DescPtr& d, FrameShape shape) {
  std::vector<Scalar> units;
  for (const Scalar& a : field_elements(d))
    if (!s_is_zero(a)) units.push_back(a);
  std::vector<std::vector<Scalar>> maps;  // diagonal entries (x, y, z scale)
  if (shape == FrameShape::Concurrent) {
    // [x, y, z] -> [x c, y, z]
    for (const Scalar& c : units) maps.push_back({c, s_one(d), s_one(d)});
  } else {
    // [x, y, z] -> [x a, y b, z]
    for (const Scalar& a : units)
      for (const Scalar& b : units) maps.push_back({a, b, s_one(d)});
  }
  return maps;
}

}  // namespace detail

// Exhaustive search for TD(3,n) point configurations on the canonical
// concurrent or triangle frame of PG(2,q). Every found configuration is
// validated, its loop extracted, and configurations equivalent under the
// frame-preserving coordinate scalings are deduplicated by the
// lexicographically least image.
inline FrameSearchResult search_td_on_frame(const PGSpace& space, FrameShape shape, int n) {
  if (space.d != 2) fail(Errc::UnsupportedSize, "frame search is planar");
  if (n < 3) fail(Errc::UnsupportedSize, "TD order must be >= 3");
  const DescPtr& desc = space.desc;
  std::vector<Hyperplane> frame = shape == FrameShape::Concurrent
                                      ? detail::concurrent_frame(desc, 2)
                                      : detail::triangle_frame(desc, 2);

  // candidate points per frame line: on it, off the other two
  std::vector<std::vector<int>> cand(3);
  for (size_t pi = 0; pi < space.points.size(); ++pi) {
    for (int h = 0; h < 3; ++h) {
      if (!incident(space.points[pi], frame[h])) continue;
      bool foreign = false;
      for (int h2 = 0; h2 < 3; ++h2)
        if (h2 != h && incident(space.points[pi], frame[h2])) foreign = true;
      if (!foreign) cand[h].push_back(static_cast<int>(pi));
    }
  }

  uint64_t budget = detail::binom(cand[0].size(), n) * detail::binom(cand[1].size(), n);
  if (budget > 200000) fail(Errc::SearchSpaceTooLarge, "subset budget exceeded");

  FrameSearchResult result;
  result.frame = shape;
  result.q = space.q;
  result.n = n;

  std::map<std::string, int> cand3_pos;
  for (size_t i = 0; i < cand[2].size(); ++i)
    cand3_pos[space.points[cand[2][i]].key()] = cand[2][i];

  auto scalings = detail::frame_scalings(desc, shape);
  std::map<std::string, FoundConfig> dedup;

  std::vector<int> s1(n), s2(n);
  auto for_subsets = [&](const std::vector<int>& pool, std::vector<int>& pick, auto&& body) {
    if (static_cast<int>(pool.size()) < n) return;
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    while (true) {
      for (int i = 0; i < n; ++i) pick[i] = pool[idx[i]];
      body();
      int i = n - 1;
      while (i >= 0 && idx[i] == static_cast<int>(pool.size()) - n + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
  };

  for_subsets(cand[0], s1, [&]() {
    for_subsets(cand[1], s2, [&]() {
      // close the configuration through the third frame line
      std::set<int> thirds;
      std::vector<std::vector<int>> third_of(n, std::vector<int>(n, -1));
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          HomPoint t = third_intersection(
              line_through(space.points[s1[i]], space.points[s2[j]]), frame[2]);
          auto it = cand3_pos.find(t.key());
          if (it == cand3_pos.end()) return;  // leaves the candidate set
          third_of[i][j] = it->second;
          thirds.insert(it->second);
        }
      }
      if (static_cast<int>(thirds.size()) != n) return;
      std::vector<int> s3(thirds.begin(), thirds.end());
      ++result.raw_hits;

      std::map<int, int> local;  // space point -> design point id
      FoundConfig cfg;
      for (int i = 0; i < n; ++i) {
        cfg.part_points[0].push_back(s1[i]);
        local[s1[i]] = i;
      }
      for (int j = 0; j < n; ++j) {
        cfg.part_points[1].push_back(s2[j]);
        local[s2[j]] = n + j;
      }
      for (int t = 0; t < n; ++t) {
        cfg.part_points[2].push_back(s3[t]);
        local[s3[t]] = 2 * n + t;
      }
      cfg.td.k = 3;
      cfg.td.n = n;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          cfg.td.blocks.push_back({i, n + j, local[third_of[i][j]]});
      if (validate_td(cfg.td))
        fail(Errc::SingularSystem, "frame search produced an invalid TD");
      cfg.loop = loop_operation(cfg.td);
      cfg.loop_elementary_abelian = detail::loop_elementary_abelian(cfg.loop);
      cfg.loop_cyclic = detail::loop_cyclic(cfg.loop);

      // canonical key: lexicographically least sorted key set over the
      // frame-preserving scalings
      std::string best;
      for (const auto& diag : scalings) {
        std::vector<std::string> keys;
        for (int part = 0; part < 3; ++part) {
          for (int pi : cfg.part_points[part]) {
            Row r = space.points[pi].coords();
            for (size_t c = 0; c < 3; ++c) r[c] = s_mul(r[c], diag[c]);
            keys.push_back(HomPoint(desc, std::move(r)).key());
          }
        }
        std::sort(keys.begin(), keys.end());
        std::string joined;
        for (const auto& k : keys) joined += k + "#";
        if (best.empty() || joined < best) best = joined;
      }
      cfg.canonical_key = best;
      dedup.emplace(best, std::move(cfg));
    });
  });

  for (auto& [key, cfg] : dedup) result.configs.push_back(std::move(cfg));
  return result;
}

}  // namespace tdembed
