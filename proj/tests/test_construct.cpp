#include "conlat/construct.hpp"

#include <fstream>
#include <random>

#include "conlat/canonical.hpp"
#include "conlat/census.hpp"
#include "conlat/congruence.hpp"
#include "doctest.h"

using namespace conlat;

#ifndef CONLAT_TEST_DATA_DIR
#define CONLAT_TEST_DATA_DIR "tests/golden"
#endif

TEST_CASE("chains") {
  CHECK(chain(1).size() == 1);
  CHECK(count_congruences(chain(2)) == 2);
  CHECK(count_congruences(chain(4)) == 8);
  CHECK_THROWS_AS(chain(0), ConstructError);
}

TEST_CASE("ordinal sum sizes and behavior") {
  CHECK(ordinal_sum(chain(2), chain(2)) == chain(3));
  Lattice stacked = build("B2+B2");
  CHECK(stacked.size() == 7);
  CHECK(count_congruences(stacked) == 16);
  Lattice mid = build("C(2)+N5+C(2)");
  CHECK(mid.size() == 7);
  CHECK(count_congruences(mid) == 20);
  // identity element
  CHECK(canonical_code(build("N5+C(1)")) == canonical_code(named("N5")));
  CHECK(canonical_code(build("C(1)+N5")) == canonical_code(named("N5")));
}

TEST_CASE("horizontal sum") {
  CHECK(canonical_code(build("C(3)#C(3)")) == canonical_code(named("B2")));
  CHECK(canonical_code(build("C(3)#C(3)#C(3)")) == canonical_code(named("M3")));
  CHECK(canonical_code(build("C(3)#C(4)")) == canonical_code(named("N5")));
  Lattice five_fold = build("C(3)#C(3)#C(3)#C(3)#C(3)");
  CHECK(five_fold.size() == 7);
  CHECK(count_congruences(five_fold) == 2);
  CHECK_THROWS_AS(horizontal_sum({chain(3), chain(2)}), SummandTooSmall);
  CHECK_THROWS_AS(build("C(2)#C(3)"), SummandTooSmall);
  CHECK_THROWS_AS(horizontal_sum({chain(4)}), ConstructError);
}

TEST_CASE("direct product") {
  CHECK(canonical_code(build("C(1)*N5")) == canonical_code(named("N5")));
  Lattice grid = build("C(2)*C(3)");
  CHECK(grid.size() == 6);
  CHECK(count_congruences(grid) == 8);
  CHECK(canonical_code(build("C(2)*C(2)")) == canonical_code(named("B2")));
  CHECK(count_congruences(build("C(2)*C(2)")) == 4);
}

TEST_CASE("named catalogue") {
  CHECK(named("N5").size() == 5);
  CHECK(count_congruences(named("N5")) == 5);
  CHECK(named("G").size() == 7);
  CHECK(canonical_code(named("Gp")) == canonical_code(dual(named("G"))));
  CHECK(canonical_code(named("Hp")) == canonical_code(dual(named("H"))));
  CHECK(canonical_code(named("Kp")) == canonical_code(dual(named("K"))));
  CHECK_THROWS_AS(named("Q7"), UnknownName);
  CHECK_THROWS_AS(build("Q7"), SyntaxError);
}

// All six gluings carry 10 congruences. The drawn diagrams place the
// doubled edge next to the same frame element in G and in K, so those two
// come out isomorphic; H genuinely differs.
TEST_CASE("gluing congruence counts and isomorphy") {
  for (const char* id : {"G", "H", "K", "Gp", "Hp", "Kp"})
    CHECK(count_congruences(named(id)) == 10);
  CHECK(canonical_code(named("G")) != canonical_code(named("H")));
  CHECK(canonical_code(named("H")) != canonical_code(named("K")));
  CHECK(canonical_code(named("G")) == canonical_code(named("K")));
  CHECK(canonical_code(named("Gp")) == canonical_code(named("Kp")));
  CHECK(canonical_code(named("G")) != canonical_code(named("Gp")));
  CHECK(canonical_code(named("H")) != canonical_code(named("Hp")));
}

TEST_CASE("named lattices match their golden cover lists") {
  std::ifstream in(std::string(CONLAT_TEST_DATA_DIR) + "/named_lattices.json");
  REQUIRE(in.good());
  nlohmann::json golden = nlohmann::json::parse(in);
  for (const auto& [id, doc] : golden.at("exact").items()) {
    Lattice expected = lattice_from_json(doc);
    CHECK_MESSAGE(named(id) == expected, "cover list mismatch for ", id);
  }
  for (const auto& [id, doc] : golden.at("up_to_isomorphism").items()) {
    Lattice expected = lattice_from_json(doc);
    CHECK_MESSAGE(is_isomorphic(named(id), expected).has_value(),
                  "figure mismatch for ", id);
  }
}

TEST_CASE("parser grammar and precedence") {
  LatticeExpr e = parse_expr("C(2) + N5 # C(3) * C(2)");
  // * binds tighter than #, which binds tighter than +
  CHECK(e.kind == LatticeExpr::Kind::OrdinalSum);
  CHECK(e.children[1].kind == LatticeExpr::Kind::HorizontalSum);
  CHECK(e.children[1].children[1].kind == LatticeExpr::Kind::Product);

  CHECK(build("C(3) # C(3) # C(3)").size() == 5);
  CHECK(build("dual(C(2)+B2)").size() == 5);
  CHECK(canonical_code(build("dual(dual(N5))")) == canonical_code(named("N5")));

  CHECK_THROWS_AS(parse_expr(""), SyntaxError);
  CHECK_THROWS_AS(parse_expr("C(2"), SyntaxError);
  CHECK_THROWS_AS(parse_expr("C()"), SyntaxError);
  CHECK_THROWS_AS(parse_expr("C(0)"), SyntaxError);
  CHECK_THROWS_AS(parse_expr("N5 + + C(2)"), SyntaxError);
  CHECK_THROWS_AS(parse_expr("N5 C(2)"), SyntaxError);
  try {
    parse_expr("C(2) + ?");
  } catch (const SyntaxError& err) {
    CHECK(err.position == 7);
  }
}

TEST_CASE("render round trips") {
  std::mt19937 rng(7);
  for (int i = 0; i < 120; ++i) {
    LatticeExpr e = random_expr(rng, 10);
    std::string text = render_expr(e);
    LatticeExpr back = parse_expr(text);
    CHECK(render_expr(back) == text);
    CHECK(canonical_code(build(back)) == canonical_code(build(e)));
  }
}

TEST_CASE("size formulas") {
  std::mt19937 rng(8);
  for (int i = 0; i < 60; ++i) {
    LatticeExpr a = random_expr(rng, 6), b = random_expr(rng, 6);
    Lattice la = build(a), lb = build(b);
    CHECK(ordinal_sum(la, lb).size() == la.size() + lb.size() - 1);
    CHECK(direct_product({la, lb}).size() == la.size() * lb.size());
    if (la.size() > 2 && lb.size() > 2) {
      CHECK(horizontal_sum({la, lb}).size() == la.size() + lb.size() - 2);
    }
    CHECK(expr_size(a) == la.size());
    CHECK(expr_size(b) == lb.size());
  }
}

TEST_CASE("sum associativity and commutativity up to isomorphism") {
  std::mt19937 rng(9);
  for (int i = 0; i < 40; ++i) {
    LatticeExpr ea = random_expr(rng, 5), eb = random_expr(rng, 5),
                ec = random_expr(rng, 5);
    Lattice a = build(ea), b = build(eb), c = build(ec);
    CHECK(canonical_code(ordinal_sum(ordinal_sum(a, b), c)) ==
          canonical_code(ordinal_sum(a, ordinal_sum(b, c))));
    if (a.size() > 2 && b.size() > 2 && c.size() > 2) {
      CHECK(canonical_code(horizontal_sum({a, b, c})) ==
            canonical_code(horizontal_sum({horizontal_sum({a, b}), c})));
      CHECK(canonical_code(horizontal_sum({a, b})) ==
            canonical_code(horizontal_sum({b, a})));
    }
  }
}

TEST_CASE("chains fold from 2-chains") {
  for (int n = 2; n <= 8; ++n) {
    Lattice acc = chain(2);
    for (int i = 2; i < n; ++i) acc = ordinal_sum(acc, chain(2));
    CHECK(acc == chain(n));
  }
}
