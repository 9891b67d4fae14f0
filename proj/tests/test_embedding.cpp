#include "catch_amalgamated.hpp"

#include <set>

#include "tdembed/embedding.hpp"

using namespace tdembed;

namespace {

GeneratedGroup full_additive(const DescPtr& d) {
  std::vector<std::vector<Scalar>> gens;
  if (d->kind == FieldKind::PrimeField) {
    gens.push_back({s_one(d)});
  } else {
    size_t s = static_cast<size_t>(fp_deg(d->modulus));
    for (size_t i = 0; i < s; ++i) {
      std::vector<uint32_t> c(s, 0);
      c[i] = 1;
      gens.push_back({s_fin(d, c)});
    }
  }
  return additive_group(d, 1, gens);
}

GeneratedGroup prime_additive(const DescPtr& d) { return additive_group(d, 1, {{s_one(d)}}); }

HomPoint pt(const DescPtr& d, std::vector<long long> v) {
  Row row;
  for (long long x : v) row.push_back(s_int(d, x));
  return HomPoint(d, std::move(row));
}

}  // namespace

TEST_CASE("additive construction over F_5 reproduces the concurrent picture") {
  auto F5 = descriptor_from_name("Fp:5");
  EmbeddedTd e = construct_additive(prime_additive(F5));
  CHECK(e.points.size() == 15);
  CHECK(e.td.blocks.size() == 25);
  CHECK(e.class_flat_dim == 0);  // d-2 for d=2
  CHECK(e.proper);

  VerifyReport r = verify_embedding(e);
  CHECK(r.ok);

  // the three lines are concurrent at [1,0,0]
  Flat center = intersect_hyperplanes(e.part_hyperplanes);
  CHECK(center.contains(pt(F5, {1, 0, 0})));

  Classification c = classify(e);
  CHECK(c.characteristic == 5);
  CHECK(c.is_d_minus_2);
  CHECK(c.n_char_power);
  CHECK(c.loop_abelian);
  CHECK(c.loop_associative);
}

TEST_CASE("additive construction over F_9 gives TD(3,9)") {
  auto F9 = descriptor_from_name("Fq:9:x^2+1");
  EmbeddedTd e = construct_additive(full_additive(F9));
  CHECK(e.td.n == 9);
  CHECK(e.points.size() == 27);
  CHECK(verify_embedding(e).ok);
  Classification c = classify(e);
  CHECK(c.characteristic == 3);
  CHECK(c.n_char_power);  // 9 = 3^2
}

TEST_CASE("additive construction in P^3 with a small group is improper") {
  auto F3 = descriptor_from_name("Fp:3");
  GeneratedGroup g = additive_group(F3, 2, {{s_one(F3), s_zero(F3)}});
  CHECK(g.order() == 3);
  EmbeddedTd e = construct_additive(g);
  CHECK(e.d == 3);
  CHECK(e.class_flat_dim == 1);  // d-2
  CHECK(verify_embedding(e).ok);
  CHECK_FALSE(e.proper);  // the group spans only one of the two leading coordinates
}

TEST_CASE("characteristic zero rejects the concurrent construction") {
  auto Q = make_rationals();
  GeneratedGroup fake;
  fake.tag = GroupTag::Additive;
  fake.desc = Q;
  fake.vec_len = 1;
  fake.elements.push_back(additive_element({s_zero(Q)}));
  fake.elements.push_back(additive_element({s_one(Q)}));
  CHECK_THROWS_MATCHES(construct_additive(fake), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("CharZeroConcurrentImpossible")));
}

TEST_CASE("Q8 embeds as a 24-point TD(3,8) on the triangle") {
  EmbeddedTd e = construct_multiplicative(catalog("Q8"), 2);
  CHECK(e.points.size() == 24);
  CHECK(e.td.n == 8);
  CHECK(e.class_flat_dim == -1);  // d-3 for d=2: empty intersection
  CHECK(verify_embedding(e).ok);
  CHECK(e.proper);

  LoopTable loop = loop_operation(e.td);
  CHECK(loop.associative);
  CHECK_FALSE(loop.abelian);

  Classification c = classify(e);
  CHECK(c.characteristic == 0);
  bool has_cor2_note = false;
  for (const auto& note : c.notes)
    if (note.find("nonabelian") != std::string::npos) has_cor2_note = true;
  CHECK(has_cor2_note);
}

TEST_CASE("cyclic subgroup of a field embeds on the triangle") {
  EmbeddedTd e = construct_multiplicative(catalog("cyclic:3"), 2);
  CHECK(e.points.size() == 9);
  CHECK(verify_embedding(e).ok);
  CHECK(e.proper);
  CHECK_THROWS_AS(construct_multiplicative(catalog("cyclic:2"), 2), Error);  // |G| < 3
}

TEST_CASE("the binary icosahedral group gives TD(3,120)") {
  EmbeddedTd e = construct_multiplicative(catalog("Istar"), 2);
  CHECK(e.td.n == 120);
  CHECK(e.points.size() == 360);
  CHECK(e.td.blocks.size() == 14400);
  CHECK(verify_embedding(e).ok);
  LoopTable loop = loop_operation(e.td);
  CHECK(loop.associative);
  CHECK_FALSE(loop.abelian);
}

TEST_CASE("semidirect cyclic example in P^3 over Q(zeta5)") {
  auto Z5 = make_cyclotomic(5);
  GeneratedGroup g = semidirect_cyclic(nf_generator(Z5), {s_one(Z5)});
  EmbeddedTd e = construct_semidirect(g, 3);
  CHECK(e.points.size() == 15);
  CHECK(e.class_flat_dim == 0);  // d-3 for d=3
  CHECK(verify_embedding(e).ok);

  // The translation parts are geometric sums, so x = (gamma - 1)(zeta - 1)^{-1}
  // ties the coordinates linearly: the image lies in the hyperplane
  // x1 + x2 - x3 + (1 - zeta) x4 = 0 and the embedding is improper.
  CHECK_FALSE(e.proper);
  Scalar zeta = nf_generator(Z5);
  Hyperplane w(Z5, {s_one(Z5), s_one(Z5), s_int(Z5, -1), s_sub(s_one(Z5), zeta)});
  for (const HomPoint& p : e.points) CHECK(incident(p, w));

  // sampled candidate transversal points, built from group-orbit values, all fail
  std::vector<Scalar> pool = {s_one(Z5), s_int(Z5, -1)};
  for (const auto& el : g.elements) {
    pool.push_back(el.gamma);
    pool.push_back(el.vec[0]);
  }
  std::vector<Scalar> full_pool = pool;
  full_pool.push_back(s_zero(Z5));
  int candidates = 0, hits = 0;
  for (const Scalar& a : pool) {
    for (const Scalar& b : pool) {
      for (const Scalar& c : full_pool) {
        if (s_is_zero(a) || s_is_zero(b)) continue;
        HomPoint q(Z5, {s_one(Z5), a, b, c});
        bool on_frame = false;
        for (const Hyperplane& h : e.part_hyperplanes)
          if (incident(q, h)) on_frame = true;
        if (on_frame) continue;
        ++candidates;
        if (is_transversal_point(e, q)) ++hits;
      }
    }
  }
  CHECK(candidates > 100);
  CHECK(hits == 0);

  CHECK_THROWS_AS(construct_semidirect(g, 2), Error);  // DimensionTooSmall
}

TEST_CASE("a genuinely proper semidirect example needs characteristic p") {
  // G = {(s, x) : s = +-1, x in F_3} inside F_9^* x| F_9 is a nonabelian
  // order-6 group whose gamma- and translation-parts vary independently,
  // so no hyperplane contains the image.
  auto F9 = descriptor_from_name("Fq:9:x^2+1");
  GeneratedGroup g;
  g.tag = GroupTag::Semidirect;
  g.desc = F9;
  g.vec_len = 1;
  for (long long s : {1, -1})
    for (long long x : {0, 1, 2}) g.elements.push_back(semidirect_element(s_int(F9, s), {s_int(F9, x)}));
  Certificate cert = certify(g);
  REQUIRE(cert.ok);
  CHECK_FALSE(cert.abelian);
  EmbeddedTd e = construct_semidirect(g, 3);
  CHECK(verify_embedding(e).ok);
  CHECK(e.proper);
  CHECK(e.class_flat_dim == 0);

  // Still no transversal point: the gamma-part subgroup is nontrivial, so
  // candidates over the orbit-value pool all fail the geometric test.
  std::vector<Scalar> pool;
  for (const Scalar& v : field_elements(F9)) pool.push_back(v);
  int candidates = 0, hits = 0;
  for (const Scalar& a : pool) {
    if (s_is_zero(a)) continue;
    for (const Scalar& b : pool) {
      if (s_is_zero(b)) continue;
      for (long long c : {0, 1, 2}) {
        HomPoint q(F9, {s_one(F9), a, b, s_int(F9, c)});
        ++candidates;
        if (is_transversal_point(e, q)) ++hits;
      }
    }
  }
  CHECK(candidates == 192);
  CHECK(hits == 0);
}

TEST_CASE("pure translations give the improper embedding inside x1+x2-x3=0") {
  auto F9 = descriptor_from_name("Fq:9:x^2+1");
  GeneratedGroup g = semidirect_cyclic(s_one(F9), {s_one(F9)});
  REQUIRE(g.order() == 3);
  EmbeddedTd e = construct_semidirect(g, 3);
  CHECK(e.class_flat_dim == 0);
  CHECK(verify_embedding(e).ok);
  CHECK_FALSE(e.proper);

  Hyperplane w(F9, {s_one(F9), s_one(F9), s_int(F9, -1), s_zero(F9)});
  for (const HomPoint& p : e.points) CHECK(incident(p, w));

  // transversal points [1,1,2,c] with c in the prime subfield
  int found = 0;
  for (long long c = 0; c < 3; ++c) {
    HomPoint q(F9, {s_one(F9), s_one(F9), s_int(F9, 2), s_int(F9, c)});
    if (is_transversal_point(e, q)) ++found;
  }
  CHECK(found == 3);
  // c outside the prime subfield fails
  HomPoint bad(F9, {s_one(F9), s_one(F9), s_int(F9, 2), s_fin(F9, {0, 1})});
  CHECK_FALSE(is_transversal_point(e, bad));

  ImproperTransversalReport rep =
      check_improper_transversal(e, HomPoint(F9, {s_one(F9), s_one(F9), s_int(F9, 2), s_zero(F9)}));
  CHECK(rep.infinity_is_transversal);
  CHECK(rep.contained);
  CHECK_FALSE(rep.d2_impossible);
}

TEST_CASE("planar triangle embeddings admit no transversal point") {
  EmbeddedTd e = construct_multiplicative(catalog("Q8"), 2);
  HomPoint claim(e.desc, {s_one(e.desc), s_one(e.desc), s_one(e.desc)});
  ImproperTransversalReport rep = check_improper_transversal(e, claim);
  CHECK(rep.d2_impossible);
}

TEST_CASE("multiplicative and semidirect constructions agree on zero translations") {
  auto Z5 = make_cyclotomic(5);
  GeneratedGroup mult = catalog("cyclic:5");
  EmbeddedTd a = construct_multiplicative(mult, 3);
  // the same group as a semidirect group with zero translations
  GeneratedGroup sd;
  sd.tag = GroupTag::Semidirect;
  sd.desc = mult.desc;
  sd.vec_len = 1;
  for (const auto& el : mult.elements)
    sd.elements.push_back(semidirect_element(el.gamma, {s_zero(mult.desc)}));
  EmbeddedTd b = construct_semidirect(sd, 3);
  REQUIRE(a.points.size() == b.points.size());
  for (size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i] == b.points[i]);
  (void)Z5;
}

TEST_CASE("verification flags tampering") {
  auto F5 = descriptor_from_name("Fp:5");
  EmbeddedTd e = construct_additive(prime_additive(F5));
  // move one point off its block line (but keep it on its part hyperplane)
  EmbeddedTd bad = e;
  bad.points[0] = pt(F5, {3, 0, 1});
  bad.points[3] = pt(F5, {0, 0, 1});  // swap two P1 points: blocks now miscollinear
  VerifyReport r = verify_embedding(bad);
  CHECK_FALSE(r.ok);
  bool collinearity = false;
  for (const auto& v : r.violations)
    if (v.find("collinear") != std::string::npos || v.find("line") != std::string::npos)
      collinearity = true;
  CHECK(collinearity);
}

TEST_CASE("attaching the F_5 transversal point [0,2,1]") {
  auto F5 = descriptor_from_name("Fp:5");
  EmbeddedTd e = construct_additive(prime_additive(F5));
  HomPoint inf = pt(F5, {0, 2, 1});
  CHECK(is_transversal_point(e, inf));
  EmbeddedTd with_inf = with_transversal_point(e, inf);
  REQUIRE(with_inf.td.T.has_value());
  CHECK(with_inf.td.T->size() == 5);
  VerifyReport r = verify_embedding(with_inf);
  CHECK(r.ok);

  // a design point is on a part hyperplane: precondition violation
  CHECK_THROWS_MATCHES(is_transversal_point(e, pt(F5, {0, 1, 1})), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("PointOnPartHyperplane")));
  // moving the claimed point breaks concurrency
  EmbeddedTd broken = with_inf;
  broken.infinity = pt(F5, {1, 3, 1});
  CHECK_FALSE(verify_embedding(broken).ok);
}

TEST_CASE("group extraction round-trips") {
  auto F5 = descriptor_from_name("Fp:5");
  EmbeddedTd e5 = construct_additive(prime_additive(F5));
  auto [g5, rec5] = extract_group(e5);
  CHECK(g5.tag == GroupTag::Additive);
  CHECK(g5.order() == 5);
  CHECK(rec5.pattern == GroupTag::Additive);

  // different base points extract the same translated group
  auto [g5b, rec5b] = extract_group(e5, 2, 5 + 3);
  CHECK(g5b.order() == 5);
  EquivWitness w = group_equivalence(g5, g5b, GroupTag::Additive);
  CHECK(w.found);

  EmbeddedTd q8e = construct_multiplicative(catalog("Q8"), 2);
  auto [gq, recq] = extract_group(q8e);
  CHECK(gq.tag == GroupTag::Multiplicative);
  CHECK(gq.order() == 8);
  CHECK_FALSE(gq.abelian);
  GeneratedGroup q8 = catalog("Q8");
  CHECK(tables_isomorphic(cayley_table(gq), gq.identity_index, cayley_table(q8),
                          q8.identity_index));
  // nonstandard base points still extract a loop isomorphic to Q8
  auto [gq2, recq2] = extract_group(q8e, 3, 8 + 5);
  CHECK(gq2.order() == 8);

  auto Z5 = make_cyclotomic(5);
  GeneratedGroup sg = semidirect_cyclic(nf_generator(Z5), {s_one(Z5)});
  EmbeddedTd se = construct_semidirect(sg, 3);
  auto [gsd, recsd] = extract_group(se);
  CHECK(gsd.tag == GroupTag::Semidirect);
  CHECK(gsd.order() == 5);

  // extraction refuses non-canonical frames
  EmbeddedTd moved = e5;
  std::swap(moved.part_hyperplanes[0], moved.part_hyperplanes[2]);
  CHECK_THROWS_AS(extract_group(moved), Error);
}

TEST_CASE("stabilizer subfield D_G") {
  auto F5 = descriptor_from_name("Fp:5");
  CHECK(stabilizer_subfield(prime_additive(F5)).size() == 5);

  auto F9 = descriptor_from_name("Fq:9:x^2+1");
  CHECK(stabilizer_subfield(prime_additive(F9)).size() == 3);
  CHECK(stabilizer_subfield(full_additive(F9)).size() == 9);

  auto F8 = descriptor_from_name("Fq:8:x^3+x+1");
  GeneratedGroup plane = additive_group(F8, 1, {{s_one(F8)}, {s_fin(F8, {0, 1})}});
  CHECK(plane.order() == 4);
  StabilizerSubfield dg = stabilizer_subfield(plane);
  CHECK(dg.size() == 2);
  CHECK(dg.t == 1);
}

TEST_CASE("transversal point formula over F_5") {
  auto F5 = descriptor_from_name("Fp:5");
  EmbeddedTd e = construct_additive(prime_additive(F5));
  TransversalPointSet tp = transversal_points(e);
  CHECK(tp.finite);
  CHECK(tp.expected_count == 15);
  CHECK(tp.points.size() == 15);
  std::set<std::string> keys;
  for (const HomPoint& q : tp.points) {
    keys.insert(q.key());
    CHECK(tp.member(q));
    CHECK(is_transversal_point(e, q));  // formula points pass the geometric test
  }
  CHECK(keys.size() == 15);
  CHECK(tp.member(pt(F5, {0, 2, 1})));
  CHECK_FALSE(tp.member(pt(F5, {0, 1, 1})));  // a = 1 excluded
  CHECK_FALSE(tp.member(pt(F5, {1, 0, 0})));

  // beta outside D_G fails the geometric test: G = F_3 in F_9, a = x
  auto F9 = descriptor_from_name("Fq:9:x^2+1");
  EmbeddedTd e9 = construct_additive(prime_additive(F9));
  HomPoint off(F9, {s_zero(F9), s_fin(F9, {0, 1}), s_one(F9)});
  CHECK_FALSE(is_transversal_point(e9, off));
  CHECK_FALSE(transversal_points(e9).member(off));

  // |D_G| = 2: no transversal points at all
  auto F8 = descriptor_from_name("Fq:8:x^3+x+1");
  GeneratedGroup plane = additive_group(F8, 1, {{s_one(F8)}, {s_fin(F8, {0, 1})}});
  EmbeddedTd e8 = construct_additive(plane);
  TransversalPointSet none = transversal_points(e8);
  CHECK(none.finite);
  CHECK(none.points.empty());
  CHECK(none.expected_count == 0);

  // wrong classification errors
  EmbeddedTd tri = construct_multiplicative(catalog("cyclic:3"), 2);
  CHECK_THROWS_AS(transversal_points(tri), Error);
}

TEST_CASE("Thm-5 extension and its sharpness") {
  auto F5 = descriptor_from_name("Fp:5");
  EmbeddedTd e5 = construct_additive(prime_additive(F5));
  EmbeddedTd big = extend_to_max_td(e5);
  CHECK(big.td.k == 6);
  CHECK_FALSE(validate_td(big.td).has_value());
  CHECK(verify_embedding(big).ok);
  MolsSet mols = td_to_mols(big.td);
  REQUIRE(mols.squares.size() == 4);
  for (size_t a = 0; a < 4; ++a)
    for (size_t b = a + 1; b < 4; ++b)
      CHECK(check_orthogonal(mols.squares[a], mols.squares[b]).ok);

  // TD(4,3) from the prime subfield of F_9
  auto F9 = descriptor_from_name("Fq:9:x^2+1");
  EmbeddedTd e3 = construct_additive(prime_additive(F9));
  EmbeddedTd ext3 = extend_to_max_td(e3);
  CHECK(ext3.td.k == 4);
  MolsSet mols3 = td_to_mols(ext3.td);
  REQUIRE(mols3.squares.size() == 2);
  CHECK(check_orthogonal(mols3.squares[0], mols3.squares[1]).ok);

  // sharpness: any a outside D_G produces a pair-coverage violation
  Scalar outside = s_fin(F9, {0, 1});
  ExtendOutcome bad = attempt_extend(e3, {outside});
  REQUIRE(bad.violation.has_value());
  CHECK(bad.violation->what.find("pair") != std::string::npos);
  CHECK_FALSE(bad.extended.has_value());

  // |D_G| = 2 has nothing to extend
  auto F8 = descriptor_from_name("Fq:8:x^3+x+1");
  GeneratedGroup plane = additive_group(F8, 1, {{s_one(F8)}, {s_fin(F8, {0, 1})}});
  EmbeddedTd e8 = construct_additive(plane);
  CHECK_THROWS_MATCHES(extend_to_max_td(e8), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("NothingToExtend")));
}
