#include "catch_amalgamated.hpp"

#include <set>

#include "tdembed/design.hpp"

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

LatinSquare slope_square(int n, int slope) {
  LatinSquare ls;
  ls.n = n;
  ls.cells.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ls.cells[i][j] = (i + slope * j) % n;
  return ls;
}

// independent oracle: count transversals by scanning all n! permutations
int count_transversals_by_permutations(const LatinSquare& ls) {
  std::vector<int> perm(ls.n);
  for (int i = 0; i < ls.n; ++i) perm[i] = i;
  int count = 0;
  do {
    std::vector<char> sym(ls.n, 0);
    bool ok = true;
    for (int i = 0; i < ls.n && ok; ++i) {
      int s = ls.cells[i][perm[i]];
      if (sym[s]) ok = false;
      sym[s] = 1;
    }
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

}  // namespace

TEST_CASE("Latin square validation") {
  LatinSquare z3 = cyclic_square(3);
  CHECK_FALSE(validate_latin_square(z3).has_value());

  LatinSquare bad = z3;
  bad.cells[0][0] = bad.cells[0][1];  // duplicate inside row 0
  auto v = validate_latin_square(bad);
  REQUIRE(v.has_value());
  CHECK(v->what == "row");
  CHECK(v->index == 0);
  CHECK(v->symbol == z3.cells[0][1]);

  LatinSquare tiny;
  tiny.n = 2;
  tiny.cells = {{0, 1}, {1, 0}};
  CHECK_THROWS_AS(validate_latin_square(tiny), Error);
}

TEST_CASE("transversal counts match the permutation oracle") {
  struct Case {
    int n;
    int expect;
  };
  // frozen counts from the permutation scan: cyclic Z3 -> 3, Z4 -> 0, Z5 -> 15
  for (Case c : {Case{3, 3}, Case{4, 0}, Case{5, 15}}) {
    LatinSquare ls = cyclic_square(c.n);
    auto ts = find_transversals(ls);
    CHECK(static_cast<int>(ts.size()) == c.expect);
    CHECK(count_transversals_by_permutations(ls) == c.expect);
    std::set<std::vector<int>> distinct;
    for (const auto& t : ts) {
      CHECK(transversal_valid(ls, t));
      distinct.insert(t.sigma);
    }
    CHECK(distinct.size() == ts.size());
  }
  // limit short-circuits deterministically
  auto limited = find_transversals(cyclic_square(5), 4);
  CHECK(limited.size() == 4);
}

TEST_CASE("orthogonality checks") {
  LatinSquare a = slope_square(5, 1);
  LatinSquare b = slope_square(5, 2);
  CHECK(check_orthogonal(a, b).ok);

  auto self = check_orthogonal(a, a);
  CHECK_FALSE(self.ok);
  CHECK(self.cell1 != self.cell2);
  // the witness cells really collide
  auto [i1, j1] = self.cell1;
  auto [i2, j2] = self.cell2;
  CHECK(a.cells[i1][j1] == a.cells[i2][j2]);

  // the four MOLS of order 5 are pairwise orthogonal
  for (int s = 1; s <= 4; ++s)
    for (int t = s + 1; t <= 4; ++t)
      CHECK(check_orthogonal(slope_square(5, s), slope_square(5, t)).ok);

  LatinSquare wrong = cyclic_square(4);
  CHECK_THROWS_AS(check_orthogonal(a, wrong), Error);
}

TEST_CASE("latin <-> TD round trip") {
  LatinSquare z3 = cyclic_square(3);
  TransversalDesign td = latin_to_td(z3);
  CHECK(td.k == 3);
  CHECK(td.n == 3);
  CHECK(td.points() == 9);
  CHECK(td.blocks.size() == 9);
  CHECK_FALSE(validate_td(td).has_value());
  LatinSquare back = td_to_latin(td);
  CHECK(back.cells == z3.cells);

  LatinSquare z5 = cyclic_square(5);
  auto ts = find_transversals(z5);
  REQUIRE(ts.size() == 15);
  TransversalDesign td5 = latin_to_td(z5, ts[0]);
  REQUIRE(td5.T.has_value());
  CHECK(td5.T->size() == 5);
  CHECK_FALSE(validate_td(td5).has_value());

  TransversalDesign big = mols_to_td(MolsSet{{slope_square(5, 1), slope_square(5, 2)}});
  CHECK_THROWS_AS(td_to_latin(big), Error);
}

TEST_CASE("MOLS <-> TD") {
  MolsSet one{{cyclic_square(3)}};
  TransversalDesign td3 = mols_to_td(one);
  CHECK(td3.k == 3);
  CHECK_FALSE(validate_td(td3).has_value());

  MolsSet four{{slope_square(5, 1), slope_square(5, 2), slope_square(5, 3), slope_square(5, 4)}};
  TransversalDesign td6 = mols_to_td(four);
  CHECK(td6.k == 6);
  CHECK(td6.points() == 30);
  CHECK(td6.blocks.size() == 25);
  CHECK_FALSE(validate_td(td6).has_value());

  MolsSet back = td_to_mols(td6);
  REQUIRE(back.squares.size() == 4);
  for (int s = 0; s < 4; ++s) CHECK(back.squares[s].cells == four.squares[s].cells);

  MolsSet collide{{slope_square(5, 2), slope_square(5, 2)}};
  CHECK_THROWS_AS(mols_to_td(collide), Error);
}

TEST_CASE("validate_td catches tampering") {
  TransversalDesign td = latin_to_td(cyclic_square(4));
  REQUIRE_FALSE(validate_td(td).has_value());
  // swap a symbol point between two blocks
  std::swap(td.blocks[0][2], td.blocks[1][2]);
  auto v = validate_td(td);
  REQUIRE(v.has_value());
  CHECK(v->what.find("pair") != std::string::npos);
}

TEST_CASE("loop operation on a cyclic TD") {
  TransversalDesign td = latin_to_td(cyclic_square(5));
  LoopTable lt = loop_operation(td);
  CHECK(lt.latin);
  CHECK(lt.two_sided_identity);
  CHECK(lt.associative);
  CHECK(lt.abelian);
  // the loop is Z5: some element generates all of it
  bool has_generator = false;
  for (int g = 0; g < 5 && !has_generator; ++g) {
    std::set<int> orbit;
    int x = lt.identity;
    for (int s = 0; s < 5; ++s) {
      x = lt.table[x][g];
      orbit.insert(x);
    }
    has_generator = orbit.size() == 5;
  }
  CHECK(has_generator);

  // identity law holds for every base-point choice
  for (int o1 = 0; o1 < 5; ++o1) {
    for (int o2 = 5; o2 < 10; ++o2) {
      LoopTable alt = loop_operation(td, o1, o2);
      CHECK(alt.latin);
      CHECK(alt.two_sided_identity);
      CHECK(alt.identity == o1);
    }
  }
  CHECK_THROWS_AS(loop_operation(td, 5, 5), Error);  // base points in wrong parts
}
