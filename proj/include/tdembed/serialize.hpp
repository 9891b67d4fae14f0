#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "tdembed/oracle.hpp"

// JSON formats for every public structure. Key order is fixed (ordered_json)
// and element orders are deterministic, so identical inputs serialize to
// identical bytes.

namespace tdembed {

using Json = nlohmann::ordered_json;

// ------------------------------------------------------------ scalars

namespace detail {

// base-field component: bare rational string over Q, coefficient array over
// a proper number field
inline Json nf_component_to_json(const FieldDescriptor& base, const std::vector<Rat>& v) {
  if (base.nf_degree() == 1) return rat_str(v[0]);
  Json arr = Json::array();
  for (const Rat& x : v) arr.push_back(rat_str(x));
  return arr;
}

inline Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) return rat_parse(j.get<std::string>());
  fail(Errc::FormatError, "expected a rational");
}

inline std::vector<Rat> nf_component_from_json(const FieldDescriptor& base, const Json& j) {
  std::vector<Rat> v(base.nf_degree(), Rat(0));
  if (base.nf_degree() == 1) {
    v[0] = rat_from_json(j);
    return v;
  }
  if (!j.is_array()) fail(Errc::FormatError, "expected a coefficient array");
  if (j.size() > v.size()) fail(Errc::FormatError, "too many coefficients");
  for (size_t i = 0; i < j.size(); ++i) v[i] = rat_from_json(j[i]);
  return v;
}

}  // namespace detail

inline Json scalar_to_json(const Scalar& s) {
  switch (s.desc->kind) {
    case FieldKind::PrimeField:
      return s.fin[0];
    case FieldKind::ExtField: {
      Json arr = Json::array();
      for (uint32_t c : s.fin) arr.push_back(c);
      return arr;
    }
    case FieldKind::Rationals:
    case FieldKind::NumberField:
      return detail::nf_component_to_json(*s.desc, s.nf);
    default: {
      Json arr = Json::array();
      for (const auto& comp : s.comp) arr.push_back(detail::nf_component_to_json(*s.desc->base, comp));
      return arr;
    }
  }
}

inline Scalar scalar_from_json(const DescPtr& d, const Json& j) {
  switch (d->kind) {
    case FieldKind::PrimeField: {
      if (!j.is_number_integer()) fail(Errc::FormatError, "prime-field element must be an integer");
      long long v = j.get<long long>();
      return s_int(d, v);
    }
    case FieldKind::ExtField: {
      if (j.is_number_integer()) return s_int(d, j.get<long long>());  // constant shorthand
      if (!j.is_array()) fail(Errc::FormatError, "extension-field element must be an array");
      std::vector<uint32_t> c;
      for (const auto& x : j) {
        if (!x.is_number_integer()) fail(Errc::FormatError, "coefficients must be integers");
        long long v = x.get<long long>();
        long long r = v % static_cast<long long>(d->p);
        if (r < 0) r += d->p;
        c.push_back(static_cast<uint32_t>(r));
      }
      if (c.size() > static_cast<size_t>(fp_deg(d->modulus)))
        fail(Errc::FormatError, "too many coefficients");
      return s_fin(d, c);
    }
    case FieldKind::Rationals:
      return s_rat(d, detail::rat_from_json(j));
    case FieldKind::NumberField:
      return s_nf(d, detail::nf_component_from_json(*d, j));
    default: {
      size_t want = d->kind == FieldKind::Quaternion ? 4 : d->kind == FieldKind::QuaternionPair ? 2 : 3;
      if (!j.is_array() || j.size() != want)
        fail(Errc::FormatError, "component element needs " + std::to_string(want) + " entries");
      std::vector<std::vector<Rat>> comps;
      for (const auto& x : j) comps.push_back(detail::nf_component_from_json(*d->base, x));
      return s_components(d, std::move(comps));
    }
  }
}

// ------------------------------------------------------------ designs

inline Json latin_to_json(const LatinSquare& ls) {
  Json j;
  j["n"] = ls.n;
  j["cells"] = ls.cells;
  return j;
}

inline LatinSquare latin_from_json(const Json& j) {
  LatinSquare ls;
  if (!j.contains("n") || !j.contains("cells")) fail(Errc::FormatError, "latin square needs n and cells");
  ls.n = j.at("n").get<int>();
  ls.cells = j.at("cells").get<std::vector<std::vector<int>>>();
  if (auto v = validate_latin_square(ls))
    fail(Errc::FormatError, "not a Latin square: duplicate in " + v->what + " " + std::to_string(v->index));
  return ls;
}

inline Json transversal_to_json(const Transversal& t) {
  Json j;
  j["sigma"] = t.sigma;
  return j;
}

inline Transversal transversal_from_json(const Json& j) {
  if (!j.contains("sigma")) fail(Errc::FormatError, "transversal needs sigma");
  return Transversal{j.at("sigma").get<std::vector<int>>()};
}

inline Json td_to_json(const TransversalDesign& td) {
  Json j;
  j["k"] = td.k;
  j["n"] = td.n;
  Json parts = Json::array();
  for (int p = 0; p < td.k; ++p) {
    Json part = Json::array();
    for (int i = 0; i < td.n; ++i) part.push_back(p * td.n + i);
    parts.push_back(std::move(part));
  }
  j["parts"] = std::move(parts);
  j["blocks"] = td.blocks;
  if (td.T) j["T"] = *td.T;
  return j;
}

inline TransversalDesign td_from_json(const Json& j) {
  TransversalDesign td;
  if (!j.contains("k") || !j.contains("n") || !j.contains("blocks"))
    fail(Errc::FormatError, "TD needs k, n, blocks");
  td.k = j.at("k").get<int>();
  td.n = j.at("n").get<int>();
  td.blocks = j.at("blocks").get<std::vector<std::vector<int>>>();
  if (j.contains("parts")) {
    // points are numbered so that part p is [p n, (p+1) n)
    auto parts = j.at("parts").get<std::vector<std::vector<int>>>();
    if (static_cast<int>(parts.size()) != td.k) fail(Errc::FormatError, "part count != k");
    for (int p = 0; p < td.k; ++p) {
      if (static_cast<int>(parts[p].size()) != td.n) fail(Errc::FormatError, "part size != n");
      for (int i = 0; i < td.n; ++i)
        if (parts[p][i] != p * td.n + i)
          fail(Errc::FormatError, "parts must list the contiguous point ranges");
    }
  }
  if (j.contains("T")) td.T = j.at("T").get<std::vector<std::vector<int>>>();
  return td;
}

inline Json mols_to_json(const MolsSet& ms) {
  Json arr = Json::array();
  for (const auto& sq : ms.squares) arr.push_back(latin_to_json(sq));
  return arr;
}

inline MolsSet mols_from_json(const Json& j) {
  if (!j.is_array()) fail(Errc::FormatError, "MOLS set must be an array of squares");
  MolsSet ms;
  for (const auto& sq : j) ms.squares.push_back(latin_from_json(sq));
  return ms;
}

// ------------------------------------------------------------ groups

inline Json group_to_json(const GeneratedGroup& g) {
  Json j;
  j["kind"] = group_tag_name(g.tag);
  j["descriptor"] = g.desc->name;
  j["ambient"] = g.vec_len;
  j["order"] = g.order();
  j["abelian"] = g.abelian;
  j["note"] = g.generator_note;
  Json elems = Json::array();
  for (const auto& e : g.elements) {
    switch (g.tag) {
      case GroupTag::Additive: {
        Json v = Json::array();
        for (const Scalar& s : e.vec) v.push_back(scalar_to_json(s));
        elems.push_back(std::move(v));
        break;
      }
      case GroupTag::Multiplicative:
        elems.push_back(scalar_to_json(e.gamma));
        break;
      case GroupTag::Semidirect: {
        Json v;
        v["gamma"] = scalar_to_json(e.gamma);
        Json xs = Json::array();
        for (const Scalar& s : e.vec) xs.push_back(scalar_to_json(s));
        v["x"] = std::move(xs);
        elems.push_back(std::move(v));
        break;
      }
    }
  }
  j["elements"] = std::move(elems);
  return j;
}

inline GeneratedGroup group_from_json(const Json& j) {
  if (!j.contains("kind") || !j.contains("descriptor"))
    fail(Errc::FormatError, "group needs kind and descriptor");
  std::string kind = j.at("kind").get<std::string>();
  DescPtr d = descriptor_from_name(j.at("descriptor").get<std::string>());
  GroupTag tag;
  if (kind == "additive") tag = GroupTag::Additive;
  else if (kind == "multiplicative") tag = GroupTag::Multiplicative;
  else if (kind == "semidirect") tag = GroupTag::Semidirect;
  else fail(Errc::FormatError, "unknown group kind '" + kind + "'");
  size_t ambient = j.value("ambient", tag == GroupTag::Multiplicative ? size_t{0} : size_t{1});

  auto parse_elem = [&](const Json& e) -> GroupElement {
    switch (tag) {
      case GroupTag::Additive: {
        std::vector<Scalar> v;
        for (const auto& x : e) v.push_back(scalar_from_json(d, x));
        if (v.size() != ambient) fail(Errc::FormatError, "additive element length != ambient");
        return additive_element(std::move(v));
      }
      case GroupTag::Multiplicative:
        return multiplicative_element(scalar_from_json(d, e));
      case GroupTag::Semidirect: {
        if (!e.contains("gamma") || !e.contains("x"))
          fail(Errc::FormatError, "semidirect element needs gamma and x");
        std::vector<Scalar> v;
        for (const auto& x : e.at("x")) v.push_back(scalar_from_json(d, x));
        if (v.size() != ambient) fail(Errc::FormatError, "translation length != ambient");
        return semidirect_element(scalar_from_json(d, e.at("gamma")), std::move(v));
      }
    }
    fail(Errc::FormatError, "unreachable");
  };

  if (j.contains("elements")) {
    GeneratedGroup g;
    g.tag = tag;
    g.desc = d;
    g.vec_len = ambient;
    for (const auto& e : j.at("elements")) g.elements.push_back(parse_elem(e));
    g.generator_note = j.value("note", std::string("from file"));
    Certificate c = certify(g);
    if (!c.ok) fail(Errc::FormatError, "group file does not certify: " + c.violation);
    return g;
  }
  if (j.contains("generators")) {
    std::vector<GroupElement> gens;
    for (const auto& e : j.at("generators")) gens.push_back(parse_elem(e));
    switch (tag) {
      case GroupTag::Additive: {
        std::vector<std::vector<Scalar>> vecs;
        for (const auto& e : gens) vecs.push_back(e.vec);
        return additive_group(d, ambient, vecs);
      }
      case GroupTag::Multiplicative: {
        std::vector<Scalar> vals;
        for (const auto& e : gens) vals.push_back(e.gamma);
        return multiplicative_closure(d, vals);
      }
      case GroupTag::Semidirect: {
        if (gens.size() != 1)
          fail(Errc::FormatError, "semidirect generation from files is single-generator");
        return semidirect_cyclic(gens[0].gamma, gens[0].vec);
      }
    }
  }
  fail(Errc::FormatError, "group needs elements or generators");
}

// ------------------------------------------------------------ embeddings

inline const char* frame_name(FrameKind f) {
  switch (f) {
    case FrameKind::ConcurrentCanonical: return "concurrent";
    case FrameKind::TriangleCanonical: return "triangle";
    case FrameKind::Other: return "other";
  }
  return "?";
}

inline Json embedded_to_json(const EmbeddedTd& e) {
  Json j;
  j["descriptor"] = e.desc->name;
  j["d"] = e.d;
  j["k"] = e.td.k;
  j["n"] = e.td.n;
  j["type"] = group_tag_name(e.source_tag);
  Json pts = Json::array();
  for (size_t i = 0; i < e.points.size(); ++i) {
    Json p;
    p["id"] = i;
    Json coords = Json::array();
    for (const Scalar& c : e.points[i].coords()) coords.push_back(scalar_to_json(c));
    p["coords"] = std::move(coords);
    pts.push_back(std::move(p));
  }
  j["points"] = std::move(pts);
  Json hs = Json::array();
  for (const Hyperplane& h : e.part_hyperplanes) {
    Json coeffs = Json::array();
    for (const Scalar& c : h.coeffs()) coeffs.push_back(scalar_to_json(c));
    hs.push_back(std::move(coeffs));
  }
  j["part_hyperplanes"] = std::move(hs);
  j["blocks"] = e.td.blocks;
  if (e.td.T) j["T"] = *e.td.T;
  if (e.infinity) {
    Json coords = Json::array();
    for (const Scalar& c : e.infinity->coords()) coords.push_back(scalar_to_json(c));
    j["infinity"] = std::move(coords);
  }
  return j;
}

inline EmbeddedTd embedded_from_json(const Json& j) {
  for (const char* key : {"descriptor", "d", "k", "n", "points", "part_hyperplanes", "blocks"})
    if (!j.contains(key)) fail(Errc::FormatError, std::string("embedding needs ") + key);
  EmbeddedTd e;
  e.desc = descriptor_from_name(j.at("descriptor").get<std::string>());
  e.d = j.at("d").get<int>();
  e.td.k = j.at("k").get<int>();
  e.td.n = j.at("n").get<int>();
  size_t np = static_cast<size_t>(e.td.k) * e.td.n;
  std::vector<std::optional<HomPoint>> slots(np);
  for (const auto& p : j.at("points")) {
    size_t id = p.at("id").get<size_t>();
    if (id >= np) fail(Errc::FormatError, "point id out of range");
    Row coords;
    for (const auto& c : p.at("coords")) coords.push_back(scalar_from_json(e.desc, c));
    if (coords.size() != static_cast<size_t>(e.d + 1))
      fail(Errc::FormatError, "coordinate length != d+1");
    if (slots[id]) fail(Errc::FormatError, "duplicate point id");
    slots[id] = HomPoint(e.desc, std::move(coords));
  }
  for (size_t i = 0; i < np; ++i) {
    if (!slots[i]) fail(Errc::FormatError, "missing point id " + std::to_string(i));
    e.points.push_back(std::move(*slots[i]));
  }
  for (const auto& h : j.at("part_hyperplanes")) {
    Row coeffs;
    for (const auto& c : h) coeffs.push_back(scalar_from_json(e.desc, c));
    if (coeffs.size() != static_cast<size_t>(e.d + 1))
      fail(Errc::FormatError, "hyperplane length != d+1");
    e.part_hyperplanes.emplace_back(e.desc, std::move(coeffs));
  }
  e.td.blocks = j.at("blocks").get<std::vector<std::vector<int>>>();
  if (j.contains("T")) e.td.T = j.at("T").get<std::vector<std::vector<int>>>();
  if (j.contains("infinity")) {
    Row coords;
    for (const auto& c : j.at("infinity")) coords.push_back(scalar_from_json(e.desc, c));
    e.infinity = HomPoint(e.desc, std::move(coords));
  }
  std::string type = j.value("type", std::string("multiplicative"));
  e.source_tag = type == "additive"      ? GroupTag::Additive
                 : type == "semidirect"  ? GroupTag::Semidirect
                                         : GroupTag::Multiplicative;
  for (const auto& blk : e.td.blocks) {
    std::vector<HomPoint> pts;
    for (int p : blk) {
      if (p < 0 || static_cast<size_t>(p) >= np) fail(Errc::FormatError, "block id out of range");
      pts.push_back(e.points[p]);
    }
    e.block_lines.push_back(span_flat(pts));
  }
  if (e.part_hyperplanes.size() >= 2)
    e.class_flat_dim = detail::recompute_class_dim(e);
  e.proper = detail::recompute_proper(e);
  e.frame = detail::detect_frame(e);
  return e;
}

// ------------------------------------------------------------ reports

inline Json verify_report_to_json(const VerifyReport& r) {
  Json j;
  j["ok"] = r.ok;
  j["violations"] = r.violations;
  j["class_flat_dim"] = r.class_flat_dim;
  j["proper"] = r.proper;
  return j;
}

inline Json loop_to_json(const LoopTable& lt) {
  Json j;
  j["n"] = lt.n;
  j["identity"] = lt.identity;
  j["latin"] = lt.latin;
  j["two_sided_identity"] = lt.two_sided_identity;
  j["associative"] = lt.associative;
  j["abelian"] = lt.abelian;
  j["table"] = lt.table;
  return j;
}

inline Json frame_search_to_json(const FrameSearchResult& r, const PGSpace& space) {
  Json j;
  j["q"] = r.q;
  j["frame"] = r.frame == FrameShape::Concurrent ? "concurrent" : "triangle";
  j["n"] = r.n;
  j["count"] = r.configs.size();
  Json configs = Json::array();
  for (const auto& cfg : r.configs) {
    Json c;
    for (int part = 0; part < 3; ++part) {
      Json pts = Json::array();
      for (int pi : cfg.part_points[part]) {
        Json coords = Json::array();
        for (const Scalar& s : space.points[pi].coords()) coords.push_back(scalar_to_json(s));
        pts.push_back(std::move(coords));
      }
      c["part" + std::to_string(part + 1)] = std::move(pts);
    }
    c["loop_associative"] = cfg.loop.associative;
    c["loop_abelian"] = cfg.loop.abelian;
    c["loop_elementary_abelian"] = cfg.loop_elementary_abelian;
    c["loop_cyclic"] = cfg.loop_cyclic;
    configs.push_back(std::move(c));
  }
  j["configs"] = std::move(configs);
  return j;
}

inline std::string dump_stable(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace tdembed
