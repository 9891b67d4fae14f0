#include "catch_amalgamated.hpp"

#include "tdembed/serialize.hpp"

using namespace tdembed;

namespace {

LatinSquare cyclic_square(int n) {
  LatinSquare ls;
  ls.n = n;
  ls.cells.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ls.cells[i][j] = (i + j) % n;
  return ls;
}

}  // namespace

TEST_CASE("scalar encodings round-trip across every kind") {
  for (const char* name : {"Fp:5", "Fq:9:x^2+1", "Q", "Q(sqrt2)", "Q(zeta:5)", "H:Q",
                           "H:Q(sqrt5)", "Hpair:Q(zeta:6)", "Lam36"}) {
    CAPTURE(name);
    auto d = descriptor_from_name(name);
    std::vector<Scalar> samples = {s_zero(d), s_one(d), s_int(d, -7)};
    if (d->kind == FieldKind::ExtField) samples.push_back(s_fin(d, {1, 2}));
    if (d->kind == FieldKind::Rationals) samples.push_back(s_rat(d, Rat(-22, 7)));
    if (d->kind == FieldKind::NumberField) samples.push_back(nf_generator(d));
    if (d->kind == FieldKind::Quaternion)
      samples.push_back(s_quat(d, Rat(1, 2), Rat(-1, 2), Rat(1, 2), Rat(1, 2)));
    if (d->kind == FieldKind::QuaternionPair || d->kind == FieldKind::CyclicAlgebra) {
      Scalar g = s_int(d, 3);
      g.comp[1] = nfops::from_int(d->base->nf_degree(), 5);
      samples.push_back(g);
    }
    for (const Scalar& s : samples) {
      Json j = scalar_to_json(s);
      CHECK(scalar_from_json(d, j) == s);
    }
  }
}

TEST_CASE("rational scalars accept integers and strings") {
  auto Q = make_rationals();
  CHECK(scalar_from_json(Q, Json(5)) == s_int(Q, 5));
  CHECK(scalar_from_json(Q, Json("5")) == s_int(Q, 5));
  CHECK(scalar_from_json(Q, Json("-3/6")) == s_rat(Q, Rat(-1, 2)));
  CHECK_THROWS_AS(scalar_from_json(Q, Json("1/0")), Error);
}

TEST_CASE("design structures round-trip") {
  LatinSquare z5 = cyclic_square(5);
  CHECK(latin_from_json(latin_to_json(z5)).cells == z5.cells);

  auto ts = find_transversals(z5, 1);
  REQUIRE(!ts.empty());
  CHECK(transversal_from_json(transversal_to_json(ts[0])).sigma == ts[0].sigma);

  TransversalDesign td = latin_to_td(z5, ts[0]);
  Json j = td_to_json(td);
  TransversalDesign back = td_from_json(j);
  CHECK(back.k == td.k);
  CHECK(back.blocks == td.blocks);
  REQUIRE(back.T.has_value());
  CHECK(*back.T == *td.T);
  CHECK(td_to_latin(back).cells == z5.cells);

  // malformed parts are rejected
  Json badparts = j;
  badparts["parts"][0][0] = 7;
  CHECK_THROWS_AS(td_from_json(badparts), Error);

  MolsSet ms{{cyclic_square(4), cyclic_square(4)}};
  ms.squares[1].cells.clear();
  for (int i = 0; i < 4; ++i) {
    ms.squares[1].cells.push_back({});
    for (int j2 = 0; j2 < 4; ++j2) ms.squares[1].cells[i].push_back((i + 3 * j2) % 4);
  }
  Json mj = mols_to_json(ms);
  CHECK(mols_from_json(mj).squares[1].cells == ms.squares[1].cells);
}

TEST_CASE("groups round-trip, including generator files") {
  GeneratedGroup q8 = catalog("Q8");
  Json j = group_to_json(q8);
  GeneratedGroup back = group_from_json(j);
  CHECK(back.order() == 8);
  CHECK(back.certified);
  CHECK_FALSE(back.abelian);

  Json gen;
  gen["kind"] = "additive";
  gen["descriptor"] = "Fq:9:x^2+1";
  gen["ambient"] = 1;
  gen["generators"] = Json::array({Json::array({1})});
  GeneratedGroup add = group_from_json(gen);
  CHECK(add.order() == 3);

  Json sd;
  sd["kind"] = "semidirect";
  sd["descriptor"] = "Q(zeta:5)";
  sd["ambient"] = 1;
  Json g0;
  g0["gamma"] = Json::array({"0", "1", "0", "0"});
  g0["x"] = Json::array({Json::array({"1", "0", "0", "0"})});
  sd["generators"] = Json::array({g0});
  GeneratedGroup sg = group_from_json(sd);
  CHECK(sg.order() == 5);

  Json broken = j;
  broken["elements"].erase(1);
  CHECK_THROWS_AS(group_from_json(broken), Error);
}

TEST_CASE("embeddings round-trip with verification intact") {
  auto F5 = descriptor_from_name("Fp:5");
  GeneratedGroup g = additive_group(F5, 1, {{s_one(F5)}});
  EmbeddedTd e = with_transversal_point(construct_additive(g),
                                        HomPoint(F5, {s_zero(F5), s_int(F5, 2), s_one(F5)}));
  Json j = embedded_to_json(e);
  EmbeddedTd back = embedded_from_json(j);
  CHECK(back.td.n == 5);
  CHECK(back.frame == FrameKind::ConcurrentCanonical);
  CHECK(back.class_flat_dim == 0);
  REQUIRE(back.infinity.has_value());
  CHECK(verify_embedding(back).ok);
  auto [gb, rec] = extract_group(back);
  CHECK(gb.order() == 5);

  GeneratedGroup q8 = catalog("Q8");
  EmbeddedTd qe = construct_multiplicative(q8, 2);
  EmbeddedTd qback = embedded_from_json(embedded_to_json(qe));
  CHECK(verify_embedding(qback).ok);
  auto [gq, recq] = extract_group(qback);
  CHECK(tables_isomorphic(cayley_table(gq), gq.identity_index, cayley_table(q8),
                          q8.identity_index));
}

TEST_CASE("serialization is byte-stable") {
  auto build = [] {
    GeneratedGroup q8 = catalog("Q8");
    return embedded_to_json(construct_multiplicative(q8, 2));
  };
  CHECK(dump_stable(build()) == dump_stable(build()));

  auto build_group = [] { return group_to_json(catalog("Istar")); };
  CHECK(dump_stable(build_group()) == dump_stable(build_group()));
}

TEST_CASE("malformed embeddings are rejected with format errors") {
  auto F5 = descriptor_from_name("Fp:5");
  GeneratedGroup g = additive_group(F5, 1, {{s_one(F5)}});
  Json j = embedded_to_json(construct_additive(g));

  Json missing = j;
  missing.erase("blocks");
  CHECK_THROWS_AS(embedded_from_json(missing), Error);

  Json badid = j;
  badid["points"][0]["id"] = 99;
  CHECK_THROWS_AS(embedded_from_json(badid), Error);

  Json badcoords = j;
  badcoords["points"][0]["coords"] = Json::array({1, 2});
  CHECK_THROWS_AS(embedded_from_json(badcoords), Error);

  // tampering that parses but breaks the geometry is caught by verify
  Json moved = j;
  moved["points"][0]["coords"] = Json::array({1, 0, 1});
  EmbeddedTd tampered = embedded_from_json(moved);
  CHECK_FALSE(verify_embedding(tampered).ok);
}
