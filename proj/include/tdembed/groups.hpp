#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tdembed/scalar.hpp"

// Finite groups living inside a skew field: additive subgroups of D^{d-1},
// multiplicative subgroups of D^*, and subgroups of the semidirect product
// D^* x| D^{d-2} with (alpha,x)(beta,y) = (alpha beta, x beta + y).

namespace tdembed {

enum class GroupTag { Additive, Multiplicative, Semidirect };

inline const char* group_tag_name(GroupTag t) {
  switch (t) {
    case GroupTag::Additive: return "additive";
    case GroupTag::Multiplicative: return "multiplicative";
    case GroupTag::Semidirect: return "semidirect";
  }
  return "?";
}

struct GroupElement {
  GroupTag tag;
  Scalar gamma;             // Multiplicative / Semidirect; ignored for Additive
  std::vector<Scalar> vec;  // Additive components, or the Semidirect translation
};

inline GroupElement additive_element(std::vector<Scalar> v) {
  if (v.empty()) fail(Errc::FormatError, "additive element needs components");
  return GroupElement{GroupTag::Additive, s_zero(v[0].desc), std::move(v)};
}

inline GroupElement multiplicative_element(Scalar g) {
  if (s_is_zero(g)) fail(Errc::FormatError, "multiplicative element must be nonzero");
  return GroupElement{GroupTag::Multiplicative, std::move(g), {}};
}

inline GroupElement semidirect_element(Scalar g, std::vector<Scalar> x) {
  if (s_is_zero(g)) fail(Errc::FormatError, "semidirect gamma must be nonzero");
  return GroupElement{GroupTag::Semidirect, std::move(g), std::move(x)};
}

inline std::string element_key(const GroupElement& e) {
  std::string out = e.tag == GroupTag::Additive ? "a" : s_key(e.gamma);
  for (const Scalar& s : e.vec) out += "|" + s_key(s);
  return out;
}

inline GroupElement group_op(const GroupElement& a, const GroupElement& b) {
  if (a.tag != b.tag) fail(Errc::DescriptorMismatch, "mixed group element tags");
  switch (a.tag) {
    case GroupTag::Additive: {
      std::vector<Scalar> v;
      for (size_t i = 0; i < a.vec.size(); ++i) v.push_back(s_add(a.vec[i], b.vec[i]));
      return additive_element(std::move(v));
    }
    case GroupTag::Multiplicative:
      return multiplicative_element(s_mul(a.gamma, b.gamma));
    case GroupTag::Semidirect: {
      // (alpha, x)(beta, y) = (alpha beta, x beta + y)
      std::vector<Scalar> v;
      for (size_t i = 0; i < a.vec.size(); ++i)
        v.push_back(s_add(s_mul(a.vec[i], b.gamma), b.vec[i]));
      return semidirect_element(s_mul(a.gamma, b.gamma), std::move(v));
    }
  }
  fail(Errc::FormatError, "unreachable");
}

inline GroupElement group_inverse(const GroupElement& a) {
  switch (a.tag) {
    case GroupTag::Additive: {
      std::vector<Scalar> v;
      for (const Scalar& s : a.vec) v.push_back(s_neg(s));
      return additive_element(std::move(v));
    }
    case GroupTag::Multiplicative:
      return multiplicative_element(s_inv(a.gamma));
    case GroupTag::Semidirect: {
      // (alpha, x)^{-1} = (alpha^{-1}, -x alpha^{-1})
      Scalar gi = s_inv(a.gamma);
      std::vector<Scalar> v;
      for (const Scalar& s : a.vec) v.push_back(s_neg(s_mul(s, gi)));
      return semidirect_element(std::move(gi), std::move(v));
    }
  }
  fail(Errc::FormatError, "unreachable");
}

inline GroupElement group_identity(GroupTag tag, const DescPtr& d, size_t vec_len) {
  switch (tag) {
    case GroupTag::Additive:
      return additive_element(std::vector<Scalar>(vec_len, s_zero(d)));
    case GroupTag::Multiplicative:
      return multiplicative_element(s_one(d));
    case GroupTag::Semidirect:
      return semidirect_element(s_one(d), std::vector<Scalar>(vec_len, s_zero(d)));
  }
  fail(Errc::FormatError, "unreachable");
}

struct GeneratedGroup {
  GroupTag tag = GroupTag::Multiplicative;
  DescPtr desc;
  size_t vec_len = 0;  // component count: d-1 for additive, d-2 for semidirect, 0 otherwise
  std::vector<GroupElement> elements;
  std::string generator_note;

  // populated by certify()
  bool certified = false;
  int identity_index = -1;
  std::vector<int> inverse_index;
  bool abelian = false;

  size_t order() const { return elements.size(); }

  std::map<std::string, int> index() const {
    std::map<std::string, int> m;
    for (size_t i = 0; i < elements.size(); ++i) m[element_key(elements[i])] = static_cast<int>(i);
    return m;
  }
};

struct Certificate {
  bool ok = false;
  size_t order = 0;
  bool abelian = false;
  std::string violation;  // empty when ok
};

// Closure / identity / inverse verification over all n^2 products, stamping
// the group on success. Violations come back as values, not exceptions.
inline Certificate certify(GeneratedGroup& g) {
  Certificate cert;
  cert.order = g.order();
  if (g.elements.empty()) {
    cert.violation = "empty element list";
    return cert;
  }
  auto idx = g.index();
  if (idx.size() != g.elements.size()) {
    cert.violation = "duplicate elements";
    return cert;
  }
  GroupElement id = group_identity(g.tag, g.desc, g.vec_len);
  auto it = idx.find(element_key(id));
  if (it == idx.end()) {
    cert.violation = "identity missing";
    return cert;
  }
  g.identity_index = it->second;
  g.inverse_index.assign(g.elements.size(), -1);
  bool abelian = true;
  for (size_t i = 0; i < g.elements.size(); ++i) {
    GroupElement inv = group_inverse(g.elements[i]);
    auto iv = idx.find(element_key(inv));
    if (iv == idx.end()) {
      cert.violation = "inverse missing for element " + std::to_string(i);
      return cert;
    }
    g.inverse_index[i] = iv->second;
    for (size_t j = 0; j < g.elements.size(); ++j) {
      GroupElement prod = group_op(g.elements[i], g.elements[j]);
      auto ip = idx.find(element_key(prod));
      if (ip == idx.end()) {
        cert.violation =
            "closure fails at (" + std::to_string(i) + "," + std::to_string(j) + ")";
        return cert;
      }
      if (abelian && i < j) {
        GroupElement flip = group_op(g.elements[j], g.elements[i]);
        if (element_key(prod) != element_key(flip)) abelian = false;
      }
    }
  }
  g.abelian = abelian;
  g.certified = true;
  cert.ok = true;
  cert.abelian = abelian;
  return cert;
}

inline GeneratedGroup& require_certified(GeneratedGroup& g) {
  if (!g.certified) {
    Certificate c = certify(g);
    if (!c.ok) fail(Errc::FormatError, "group does not certify: " + c.violation);
  }
  return g;
}

// ------------------------------------------------------------ constructions

// F_p-span of generator vectors inside D^{ambient}; only characteristic p > 0
// admits nontrivial finite additive subgroups.
inline GeneratedGroup additive_group(const DescPtr& d, size_t ambient,
                                     const std::vector<std::vector<Scalar>>& generators) {
  bool nontrivial = false;
  for (const auto& g : generators) {
    if (g.size() != ambient) fail(Errc::FormatError, "generator length != ambient dimension");
    for (const Scalar& s : g)
      if (!s_is_zero(s)) nontrivial = true;
  }
  if (characteristic(*d) == 0 && nontrivial)
    fail(Errc::CharZeroNoFiniteAdditiveSubgroup,
         "no nontrivial finite additive subgroup in characteristic 0 (" + d->name + ")");
  GeneratedGroup g;
  g.tag = GroupTag::Additive;
  g.desc = d;
  g.vec_len = ambient;
  g.generator_note = "additive span of " + std::to_string(generators.size()) + " generators";
  std::vector<GroupElement> list = {group_identity(GroupTag::Additive, d, ambient)};
  std::map<std::string, int> seen = {{element_key(list[0]), 0}};
  for (size_t head = 0; head < list.size(); ++head) {
    for (const auto& gen : generators) {
      GroupElement next = group_op(list[head], additive_element(gen));
      auto key = element_key(next);
      if (!seen.count(key)) {
        seen[key] = static_cast<int>(list.size());
        list.push_back(std::move(next));
      }
    }
    if (list.size() > 100000) fail(Errc::NotFinite, "additive closure exceeded bound");
  }
  g.elements = std::move(list);
  require_certified(g);
  return g;
}

inline GeneratedGroup multiplicative_closure(const DescPtr& d, const std::vector<Scalar>& gens,
                                             size_t bound = 10000) {
  GeneratedGroup g;
  g.tag = GroupTag::Multiplicative;
  g.desc = d;
  g.generator_note = "multiplicative closure of " + std::to_string(gens.size()) + " generators";
  std::vector<GroupElement> list = {group_identity(GroupTag::Multiplicative, d, 0)};
  std::map<std::string, int> seen = {{element_key(list[0]), 0}};
  for (size_t head = 0; head < list.size(); ++head) {
    for (const Scalar& gen : gens) {
      for (bool left : {false, true}) {
        GroupElement next = left ? group_op(multiplicative_element(gen), list[head])
                                 : group_op(list[head], multiplicative_element(gen));
        auto key = element_key(next);
        if (!seen.count(key)) {
          seen[key] = static_cast<int>(list.size());
          list.push_back(std::move(next));
        }
      }
    }
    if (list.size() > bound) fail(Errc::NotFinite, "multiplicative closure exceeded bound");
  }
  g.elements = std::move(list);
  require_certified(g);
  return g;
}

// cyclic subgroup of D^* x| D^{d-2} generated by (gamma, x); when gamma is a
// primitive n-th root of unity the translation parts are the geometric sums
// x (gamma^{j-1} + ... + 1), which vanish at j = n.
inline GeneratedGroup semidirect_cyclic(const Scalar& gamma, const std::vector<Scalar>& x,
                                        size_t bound = 10000) {
  GeneratedGroup g;
  g.tag = GroupTag::Semidirect;
  g.desc = gamma.desc;
  g.vec_len = x.size();
  g.generator_note = "cyclic semidirect group";
  GroupElement id = group_identity(GroupTag::Semidirect, gamma.desc, x.size());
  GroupElement gen = semidirect_element(gamma, x);
  std::vector<GroupElement> list = {id};
  GroupElement cur = gen;
  while (element_key(cur) != element_key(id)) {
    list.push_back(cur);
    cur = group_op(cur, gen);
    if (list.size() > bound) fail(Errc::NotFinite, "semidirect generation exceeded bound");
  }
  g.elements = std::move(list);
  require_certified(g);
  return g;
}

// ------------------------------------------------------------ catalog

namespace detail {

inline GeneratedGroup finish_multiplicative(const DescPtr& d, std::vector<Scalar> elems,
                                            std::string note) {
  GeneratedGroup g;
  g.tag = GroupTag::Multiplicative;
  g.desc = d;
  g.generator_note = std::move(note);
  for (Scalar& s : elems) g.elements.push_back(multiplicative_element(std::move(s)));
  Certificate c = certify(g);
  if (!c.ok) fail(Errc::SingularSystem, "catalog group failed certification: " + c.violation);
  return g;
}

// the 24 Hurwitz units over a quaternion descriptor with any base
inline std::vector<Scalar> hurwitz_units(const DescPtr& H) {
  std::vector<Scalar> out;
  for (int axis = 0; axis < 4; ++axis) {
    for (int sgn : {1, -1}) {
      Rat c[4] = {Rat(0), Rat(0), Rat(0), Rat(0)};
      c[axis] = Rat(sgn);
      out.push_back(s_quat(H, c[0], c[1], c[2], c[3]));
    }
  }
  for (int mask = 0; mask < 16; ++mask) {
    Rat c[4];
    for (int t = 0; t < 4; ++t) c[t] = (mask >> t) & 1 ? Rat(-1, 2) : Rat(1, 2);
    out.push_back(s_quat(H, c[0], c[1], c[2], c[3]));
  }
  return out;
}

inline std::vector<std::array<int, 4>> even_permutations4() {
  std::array<int, 4> p = {0, 1, 2, 3};
  std::vector<std::array<int, 4>> out;
  std::vector<int> v(p.begin(), p.end());
  do {
    int inv = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        if (v[a] > v[b]) ++inv;
    if (inv % 2 == 0) out.push_back({v[0], v[1], v[2], v[3]});
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

}  // namespace detail

inline std::vector<std::string> catalog_names() {
  return {"cyclic:<n>", "Q8", "Dstar:<n>", "Tstar", "Ostar", "Istar", "G792"};
}

// Named presets of the multiplicative catalog. Every preset is certified
// before it is returned.
inline GeneratedGroup catalog(const std::string& name) {
  auto starts = [&](const std::string& pre) { return name.rfind(pre, 0) == 0; };

  if (starts("cyclic:")) {
    uint32_t n = 0;
    try {
      n = static_cast<uint32_t>(std::stoul(name.substr(7)));
    } catch (const std::exception&) {
      fail(Errc::UnknownPreset, name);
    }
    if (n < 1) fail(Errc::UnknownPreset, name);
    DescPtr d = make_cyclotomic(n);
    std::vector<Scalar> elems;
    Scalar z = nf_generator(d);
    Scalar cur = s_one(d);
    for (uint32_t k = 0; k < n; ++k) {
      elems.push_back(cur);
      cur = s_mul(cur, z);
    }
    return detail::finish_multiplicative(d, std::move(elems), "powers of zeta_" + std::to_string(n));
  }

  if (name == "Q8") {
    DescPtr H = descriptor_from_name("H:Q");
    std::vector<Scalar> elems;
    for (int axis = 0; axis < 4; ++axis) {
      for (int sgn : {1, -1}) {
        Rat c[4] = {Rat(0), Rat(0), Rat(0), Rat(0)};
        c[axis] = Rat(sgn);
        elems.push_back(s_quat(H, c[0], c[1], c[2], c[3]));
      }
    }
    return detail::finish_multiplicative(H, std::move(elems), "quaternion group of order 8");
  }

  if (starts("Dstar:")) {
    uint32_t n = 0;
    try {
      n = static_cast<uint32_t>(std::stoul(name.substr(6)));
    } catch (const std::exception&) {
      fail(Errc::UnknownPreset, name);
    }
    if (n < 2 || n > 12) fail(Errc::UnknownPreset, "Dstar:<n> is shipped for 2 <= n <= 12");
    // {zeta^k, zeta^k j} inside the complex-pair quaternions over Q(zeta_{2n})
    DescPtr d = make_quaternion_pair(2 * n);
    size_t deg = d->base->nf_degree();
    std::vector<Scalar> elems;
    Scalar z = nf_generator(d->base);
    Scalar cur = s_one(d->base);
    for (uint32_t k = 0; k < 2 * n; ++k) {
      elems.push_back(s_components(d, {cur.nf, nfops::zero(deg)}));
      elems.push_back(s_components(d, {nfops::zero(deg), cur.nf}));
      cur = s_mul(cur, z);
    }
    return detail::finish_multiplicative(d, std::move(elems),
                                         "binary dihedral group of order " + std::to_string(4 * n));
  }

  if (name == "Tstar") {
    DescPtr H = descriptor_from_name("H:Q");
    return detail::finish_multiplicative(H, detail::hurwitz_units(H),
                                         "binary tetrahedral group (Hurwitz units)");
  }

  if (name == "Ostar") {
    DescPtr H = descriptor_from_name("H:Q(sqrt2)");
    std::vector<Scalar> elems = detail::hurwitz_units(H);
    // (+-a +- b)/sqrt(2) over distinct a,b in {1,i,j,k}; 1/sqrt2 = sqrt2/2
    std::vector<Rat> half_sqrt2 = {Rat(0), Rat(1, 2)};
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) {
        for (int sa : {1, -1}) {
          for (int sb : {1, -1}) {
            std::vector<std::vector<Rat>> comp(4, std::vector<Rat>{Rat(0), Rat(0)});
            comp[a] = {Rat(0), Rat(sa, 2)};
            comp[b] = {Rat(0), Rat(sb, 2)};
            elems.push_back(s_components(H, comp));
          }
        }
      }
    }
    return detail::finish_multiplicative(H, std::move(elems), "binary octahedral group");
  }

  if (name == "Istar") {
    DescPtr H = descriptor_from_name("H:Q(sqrt5)");
    std::vector<Scalar> elems = detail::hurwitz_units(H);
    // (+-pi2 +- phi^{-1} pi3 +- phi pi4)/2 over even permutations of {1,i,j,k};
    // phi = (1+sqrt5)/2, so phi/2 = (1,1)/4 and phi^{-1}/2 = (-1,1)/4
    std::vector<Rat> half = {Rat(1, 2), Rat(0)};
    std::vector<Rat> phi_half = {Rat(1, 4), Rat(1, 4)};
    std::vector<Rat> phiinv_half = {Rat(-1, 4), Rat(1, 4)};
    for (const auto& perm : detail::even_permutations4()) {
      for (int s2 : {1, -1}) {
        for (int s3 : {1, -1}) {
          for (int s4 : {1, -1}) {
            std::vector<std::vector<Rat>> comp(4, std::vector<Rat>{Rat(0), Rat(0)});
            comp[perm[1]] = {half[0] * s2, half[1] * s2};
            comp[perm[2]] = {phiinv_half[0] * s3, phiinv_half[1] * s3};
            comp[perm[3]] = {phi_half[0] * s4, phi_half[1] * s4};
            elems.push_back(s_components(H, comp));
          }
        }
      }
    }
    return detail::finish_multiplicative(H, std::move(elems), "binary icosahedral group");
  }

  if (name == "G792") {
    // a = zeta^3, b inside Lam's cyclic algebra; relations a^7 = b^9 = 1,
    // b a b^{-1} = a^2, order 63
    DescPtr L = make_lam36();
    size_t deg = L->base->nf_degree();
    Scalar a = s_components(L, {s_pow(nf_generator(L->base), 3).nf, nfops::zero(deg),
                                nfops::zero(deg)});
    Scalar b = s_components(L, {nfops::zero(deg), nfops::from_int(deg, 1), nfops::zero(deg)});
    GeneratedGroup g = multiplicative_closure(L, {a, b}, 200);
    g.generator_note = "Amitsur group G_{7,9,2} in Lam36";
    return g;
  }

  fail(Errc::UnknownPreset, name);
}

// ------------------------------------------------------------ lemma checks

struct LemmaReport {
  bool trivial_exempt = false;   // |G| = 1: the element-sum lemma does not apply
  bool sum_zero = false;         // sum of all elements vanishes
  bool order_nonzero = false;    // |G| * 1 != 0 in D
  bool no_order_p = true;        // no element of multiplicative order p = char D
  bool order_p_applicable = false;
};

inline LemmaReport lemma_checks(const GeneratedGroup& g) {
  if (g.tag != GroupTag::Multiplicative)
    fail(Errc::FormatError, "lemma checks apply to multiplicative groups");
  LemmaReport r;
  if (g.order() == 1) {
    r.trivial_exempt = true;
    r.sum_zero = false;
  } else {
    Scalar sum = s_zero(g.desc);
    for (const auto& e : g.elements) sum = s_add(sum, e.gamma);
    r.sum_zero = s_is_zero(sum);
  }
  Scalar order_elt = s_int(g.desc, static_cast<long long>(g.order()));
  r.order_nonzero = !s_is_zero(order_elt);
  uint32_t p = characteristic(*g.desc);
  if (p > 0) {
    r.order_p_applicable = true;
    Scalar one = s_one(g.desc);
    for (const auto& e : g.elements) {
      if (e.gamma == one) continue;
      if (s_pow(e.gamma, p) == one) {
        r.no_order_p = false;
        break;
      }
    }
  }
  return r;
}

// ------------------------------------------------------------ Cayley tables

inline std::vector<std::vector<int>> cayley_table(const GeneratedGroup& g) {
  auto idx = g.index();
  size_t n = g.order();
  std::vector<std::vector<int>> t(n, std::vector<int>(n, -1));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      t[i][j] = idx.at(element_key(group_op(g.elements[i], g.elements[j])));
  return t;
}

namespace detail {

inline std::vector<int> table_orders(const std::vector<std::vector<int>>& t, int id) {
  int n = static_cast<int>(t.size());
  std::vector<int> ord(n, 0);
  for (int x = 0; x < n; ++x) {
    int cur = x, k = 1;
    while (cur != id) {
      cur = t[cur][x];
      ++k;
      if (k > n + 1) fail(Errc::FormatError, "not a group table");
    }
    ord[x] = k;
  }
  return ord;
}

}  // namespace detail

// Backtracking Cayley-table isomorphism: find a bijection f with
// f(xy) = f(x) f(y). Generators are chosen greedily; images are pruned by
// element order. Intended for desk-scale tables.
inline bool tables_isomorphic(const std::vector<std::vector<int>>& t1, int id1,
                              const std::vector<std::vector<int>>& t2, int id2) {
  int n = static_cast<int>(t1.size());
  if (static_cast<int>(t2.size()) != n) return false;
  if (n == 0) return true;
  auto ord1 = detail::table_orders(t1, id1);
  auto ord2 = detail::table_orders(t2, id2);
  {
    auto s1 = ord1, s2 = ord2;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) return false;
  }
  // greedy generating sequence for t1
  std::vector<int> gens;
  {
    std::vector<char> reached(n, 0);
    reached[id1] = 1;
    int count = 1;
    while (count < n) {
      int pick = -1;
      for (int x = 0; x < n; ++x)
        if (!reached[x]) {
          pick = x;
          break;
        }
      gens.push_back(pick);
      // close under the new generator set
      bool grew = true;
      reached[pick] = 1;
      ++count;
      while (grew) {
        grew = false;
        for (int x = 0; x < n; ++x) {
          if (!reached[x]) continue;
          for (int gidx : gens) {
            int y = t1[x][gidx];
            if (!reached[y]) {
              reached[y] = 1;
              ++count;
              grew = true;
            }
          }
        }
      }
    }
  }

  std::vector<int> f(n, -1), used(n, 0);
  f[id1] = id2;
  used[id2] = 1;

  // extend the partial map through products of mapped elements; returns the
  // list of newly assigned sources, or nullopt on conflict
  auto propagate = [&](std::vector<int>& assigned) -> bool {
    bool grew = true;
    while (grew) {
      grew = false;
      for (int x = 0; x < n; ++x) {
        if (f[x] < 0) continue;
        for (int y = 0; y < n; ++y) {
          if (f[y] < 0) continue;
          int z = t1[x][y];
          int fz = t2[f[x]][f[y]];
          if (f[z] < 0) {
            if (used[fz]) return false;
            f[z] = fz;
            used[fz] = 1;
            assigned.push_back(z);
            grew = true;
          } else if (f[z] != fz) {
            return false;
          }
        }
      }
    }
    return true;
  };

  auto rec = [&](auto&& self, size_t gi) -> bool {
    // find first unmapped generator
    while (gi < gens.size() && f[gens[gi]] >= 0) ++gi;
    if (gi == gens.size()) {
      for (int x = 0; x < n; ++x)
        if (f[x] < 0) return false;
      return true;
    }
    int src = gens[gi];
    for (int img = 0; img < n; ++img) {
      if (used[img] || ord2[img] != ord1[src]) continue;
      std::vector<int> assigned;
      f[src] = img;
      used[img] = 1;
      assigned.push_back(src);
      if (propagate(assigned) && self(self, gi + 1)) return true;
      for (int a : assigned) {
        used[f[a]] = 0;
        f[a] = -1;
      }
    }
    return false;
  };
  return rec(rec, 0);
}

// ------------------------------------------------------------ equivalence

struct EquivWitness {
  bool found = false;
  std::string description;
};

namespace detail {

inline std::vector<std::string> key_set(const std::vector<GroupElement>& elems) {
  std::vector<std::string> keys;
  keys.reserve(elems.size());
  for (const auto& e : elems) keys.push_back(element_key(e));
  std::sort(keys.begin(), keys.end());
  return keys;
}

// all invertible m x m matrices over a finite field, m <= 2
inline std::vector<std::vector<std::vector<Scalar>>> small_gl(const DescPtr& d, size_t m) {
  std::vector<Scalar> elems = field_elements(d);
  std::vector<std::vector<std::vector<Scalar>>> out;
  if (m == 1) {
    for (const Scalar& a : elems)
      if (!s_is_zero(a)) out.push_back({{a}});
    return out;
  }
  if (m == 2) {
    for (const Scalar& a : elems)
      for (const Scalar& b : elems)
        for (const Scalar& c : elems)
          for (const Scalar& e : elems) {
            Scalar det = s_sub(s_mul(a, e), s_mul(b, c));
            if (!s_is_zero(det)) out.push_back({{a, b}, {c, e}});
          }
    return out;
  }
  fail(Errc::SearchSpaceTooLarge, "GL enumeration limited to ambient dimension <= 2");
}

inline std::vector<Scalar> mat_vec(const std::vector<std::vector<Scalar>>& T,
                                   const std::vector<Scalar>& v) {
  std::vector<Scalar> out;
  for (const auto& row : T) {
    Scalar acc = s_zero(v[0].desc);
    for (size_t i = 0; i < v.size(); ++i) acc = s_add(acc, s_mul(row[i], v[i]));
    out.push_back(acc);
  }
  return out;
}

}  // namespace detail

// Exhaustive witness search over a finite field for the coordinate-change
// equivalences: additive G1 = T G2 a, multiplicative conjugacy G1 = a^{-1} G2 a,
// semidirect G1 = (a,v) phi_T(G2) (a,v)^{-1}.
inline EquivWitness group_equivalence(const GeneratedGroup& g1, const GeneratedGroup& g2,
                                      GroupTag mode) {
  if (!same_desc(g1.desc, g2.desc)) fail(Errc::DescriptorMismatch, "different fields");
  if (field_size(*g1.desc) == 0)
    fail(Errc::SearchSpaceTooLarge, "equivalence search is finite-field only");
  EquivWitness w;
  if (g1.order() != g2.order()) return w;
  auto want = detail::key_set(g1.elements);
  std::vector<Scalar> field = field_elements(g1.desc);

  if (mode == GroupTag::Additive) {
    if (g1.vec_len != g2.vec_len) return w;
    for (const auto& T : detail::small_gl(g1.desc, g1.vec_len)) {
      for (const Scalar& a : field) {
        if (s_is_zero(a)) continue;
        std::vector<GroupElement> mapped;
        for (const auto& e : g2.elements) {
          std::vector<Scalar> v = detail::mat_vec(T, e.vec);
          for (Scalar& s : v) s = s_mul(s, a);
          mapped.push_back(additive_element(std::move(v)));
        }
        if (detail::key_set(mapped) == want) {
          w.found = true;
          w.description = "additive witness (T, a) with a = " + s_key(a);
          return w;
        }
      }
    }
    return w;
  }

  if (mode == GroupTag::Multiplicative) {
    for (const Scalar& a : field) {
      if (s_is_zero(a)) continue;
      Scalar ai = s_inv(a);
      std::vector<GroupElement> mapped;
      for (const auto& e : g2.elements)
        mapped.push_back(multiplicative_element(s_mul(s_mul(ai, e.gamma), a)));
      if (detail::key_set(mapped) == want) {
        w.found = true;
        w.description = "conjugacy witness a = " + s_key(a);
        return w;
      }
    }
    return w;
  }

  // semidirect: conjugation by (a, v) after applying phi_T to translations
  if (g1.vec_len != g2.vec_len) return w;
  if (g1.vec_len > 1) fail(Errc::SearchSpaceTooLarge, "semidirect search shipped for d = 3");
  std::vector<std::vector<std::vector<Scalar>>> ts;
  if (g1.vec_len == 0) {
    ts.push_back({});
  } else {
    ts = detail::small_gl(g1.desc, 1);
  }
  for (const auto& T : ts) {
    for (const Scalar& a : field) {
      if (s_is_zero(a)) continue;
      std::vector<std::vector<Scalar>> vs;
      if (g1.vec_len == 0) {
        vs.push_back({});
      } else {
        for (const Scalar& v0 : field) vs.push_back({v0});
      }
      for (const auto& v : vs) {
        GroupElement conj = semidirect_element(a, v);
        GroupElement conj_inv = group_inverse(conj);
        std::vector<GroupElement> mapped;
        for (const auto& e : g2.elements) {
          std::vector<Scalar> tx = g1.vec_len == 0 ? std::vector<Scalar>{}
                                                   : detail::mat_vec(T, e.vec);
          GroupElement phi = semidirect_element(e.gamma, tx);
          mapped.push_back(group_op(group_op(conj, phi), conj_inv));
        }
        if (detail::key_set(mapped) == want) {
          w.found = true;
          w.description = "semidirect witness (a, v) with a = " + s_key(a);
          return w;
        }
      }
    }
  }
  return w;
}

}  // namespace tdembed
