#include "conlat/lattice.hpp"

#include <algorithm>
#include <set>

#include "conlat/construct.hpp"
#include "conlat/enumerate.hpp"
#include "doctest.h"

using namespace conlat;

TEST_CASE("one-element lattice validates") {
  Lattice lat = Lattice::validate(1, {});
  CHECK(lat.size() == 1);
  CHECK(lat.bottom() == lat.top());
  CHECK(lat.meet(0, 0) == 0);
  CHECK(lat.covers().empty());
}

TEST_CASE("rhombus tables") {
  Lattice lat = Lattice::validate(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  CHECK(lat.meet(1, 2) == 0);
  CHECK(lat.join(1, 2) == 3);
  CHECK(lat.meet(1, 1) == 1);
  CHECK(lat.leq(0, 3));
  CHECK(!lat.leq(1, 2));
  CHECK(lat.height(3) == 2);
}

TEST_CASE("two minimal upper bounds are rejected") {
  // elements 3 and 4 are incomparable common upper bounds of {1,2}
  CHECK_THROWS_AS(
      Lattice::validate(6, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}}),
      NotALattice);
  try {
    Lattice::validate(6, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}});
  } catch (const NotALattice& e) {
    CHECK(e.x == 1);
    CHECK(e.y == 2);
  }
}

TEST_CASE("validation error taxonomy") {
  CHECK_THROWS_AS(Lattice::validate(2, {{1, 0}}), BadIndexing);
  CHECK_THROWS_AS(Lattice::validate(2, {{0, 1}, {1, 0}}), NotAPoset);
  CHECK_THROWS_AS(Lattice::validate(2, {{1, 1}}), NotAPoset);
  CHECK_THROWS_AS(Lattice::validate(2, {{0, 5}}), BadIndexing);
  CHECK_THROWS_AS(Lattice::validate(0, {}), BadIndexing);
  // two maximal elements: no join
  CHECK_THROWS_AS(Lattice::validate(3, {{0, 1}, {0, 2}}), NotALattice);
  // disconnected pair: no meet
  CHECK_THROWS_AS(Lattice::validate(2, {}), NotALattice);
}

TEST_CASE("redundant generating pairs reduce to covers") {
  Lattice lat = Lattice::validate(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(lat.covers() == CoverList{{0, 1}, {1, 2}});
}

TEST_CASE("irreducibility on chains and the rhombus") {
  Lattice three = chain(3);
  CHECK(is_meet_irreducible(three, 1));
  CHECK(is_join_irreducible(three, 1));
  CHECK(!is_meet_irreducible(three, 2));  // top has no upper cover
  CHECK(!is_join_irreducible(three, 0));

  Lattice rhombus = named("B2");
  CHECK(!is_meet_irreducible(rhombus, 0));  // two upper covers
  CHECK(is_meet_irreducible(rhombus, 1));

  Lattice pentagon = named("N5");
  CHECK(is_join_irreducible(pentagon, 2));  // b has unique lower cover 0
}

TEST_CASE("narrows") {
  Lattice five = chain(5);
  for (auto [a, b] : five.covers()) CHECK(is_narrows(five, a, b));

  Lattice rhombus = named("B2");
  CHECK(!is_narrows(rhombus, 0, 1));

  Lattice pentagon = named("N5");
  CHECK(is_narrows(pentagon, 2, 3));   // the (b,c) edge
  CHECK(!is_narrows(pentagon, 0, 1));  // 0 is meet-reducible
  CHECK(!is_narrows(pentagon, 1, 2));  // not even a cover
}

TEST_CASE("filters and ideals are the principal ones") {
  CHECK(filters(Lattice::validate(1, {})).size() == 1);

  Lattice pentagon = named("N5");
  CHECK(filters(pentagon).size() == 5);
  CHECK(ideals(pentagon).size() == 5);

  Lattice rhombus = named("B2");
  std::vector<std::vector<int>> expected = {
      {0, 1, 2, 3}, {1, 3}, {2, 3}, {3}};
  std::sort(expected.begin(), expected.end());
  CHECK(filters(rhombus) == expected);

  // every filter is a principal up-set
  for (int n = 1; n <= 6; ++n) {
    for (const Lattice& lat : enumerate_lattices(n)) {
      auto filts = filters(lat);
      CHECK(filts.size() == static_cast<size_t>(lat.size()));
      for (const auto& filt : filts) {
        int least = filt[0];
        for (int x : filt) least = lat.meet(least, x);
        std::vector<int> principal;
        for (int x = 0; x < lat.size(); ++x)
          if (lat.leq(least, x)) principal.push_back(x);
        CHECK(filt == principal);
      }
    }
  }
}

TEST_CASE("meet and join satisfy the bound laws and absorption") {
  for (int n = 1; n <= 6; ++n) {
    for (const Lattice& lat : enumerate_lattices(n)) {
      for (int x = 0; x < lat.size(); ++x) {
        for (int y = 0; y < lat.size(); ++y) {
          int m = lat.meet(x, y), j = lat.join(x, y);
          CHECK(lat.leq(m, x));
          CHECK(lat.leq(m, y));
          CHECK(lat.leq(x, j));
          CHECK(lat.join(x, lat.meet(x, y)) == x);
          CHECK(lat.meet(x, lat.join(x, y)) == x);
          for (int z = 0; z < lat.size(); ++z) {
            if (lat.leq(z, x) && lat.leq(z, y)) CHECK(lat.leq(z, m));
            if (lat.leq(x, z) && lat.leq(y, z)) CHECK(lat.leq(j, z));
          }
        }
      }
    }
  }
}

TEST_CASE("covers are exactly the gap-free comparabilities") {
  for (const Lattice& lat : enumerate_lattices(6)) {
    std::set<std::pair<int, int>> cover_set(lat.covers().begin(),
                                            lat.covers().end());
    for (int a = 0; a < lat.size(); ++a) {
      for (int b = 0; b < lat.size(); ++b) {
        bool gap_free = a != b && lat.leq(a, b);
        for (int c = 0; gap_free && c < lat.size(); ++c)
          if (c != a && c != b && lat.leq(a, c) && lat.leq(c, b))
            gap_free = false;
        CHECK(cover_set.count({a, b}) == static_cast<size_t>(gap_free));
      }
    }
  }
}

TEST_CASE("dual") {
  CHECK(dual(chain(4)) == chain(4));
  Lattice pentagon = named("N5");
  CHECK(dual(dual(pentagon)) == pentagon);
  CHECK(atoms_of(pentagon) == std::vector<int>{1, 2});
  CHECK(atoms_of(named("M3")) == std::vector<int>{1, 2, 3});
}

TEST_CASE("interval") {
  Lattice pentagon = named("N5");
  auto [sub, elements] = interval(pentagon, 0, 3);
  CHECK(sub == chain(3));
  CHECK(elements == std::vector<int>{0, 2, 3});
  CHECK_THROWS_AS(interval(pentagon, 1, 2), EmptyInterval);
  auto whole = interval(pentagon, 0, 4);
  CHECK(whole.lattice.size() == 5);
}

TEST_CASE("json round trip and loader validation") {
  Lattice pentagon = named("N5");
  nlohmann::json doc = lattice_to_json(pentagon);
  CHECK(doc["n"] == 5);
  Lattice back = lattice_from_json(doc);
  CHECK(back == pentagon);
  CHECK_THROWS_AS(lattice_from_json(nlohmann::json{{"n", 2}}), BadIndexing);
  nlohmann::json bad = {{"n", 6},
                        {"covers", {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}}}};
  CHECK_THROWS_AS(lattice_from_json(bad), NotALattice);
}

TEST_CASE("dot export mentions every element and cover") {
  Lattice rhombus = named("B2");
  std::string dot = lattice_to_dot(rhombus);
  CHECK(dot.find("rankdir=BT") != std::string::npos);
  CHECK(dot.find("n0 -> n1") != std::string::npos);
  CHECK(dot.find("n2 -> n3") != std::string::npos);
  CHECK(dot.find("rank=same") != std::string::npos);
}
