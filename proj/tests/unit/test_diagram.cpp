#include <set>

#include "brute.hpp"
#include "doctest.h"
#include "springer/diagram.hpp"
#include "springer/error.hpp"

using namespace springer;

TEST_SUITE("diagram") {
  TEST_CASE("type A enumeration matches brute force") {
    for (int n = 0; n <= 10; ++n)
      for (int k = 0; 2 * k <= n; ++k) {
        auto got = enumerate_typeA(n, k);
        auto ref = brute::typeA_diagrams(n, k);
        REQUIRE(got.size() == ref.size());
        CHECK(got.size() == brute::binom(n, k) - brute::binom(n, k - 1));
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].cups() == ref[i]);
      }
    CHECK_THROWS_AS(enumerate_typeA(3, 2), InvalidShape);
  }

  TEST_CASE("small type A sets") {
    auto b21 = enumerate_typeA(3, 1);
    REQUIRE(b21.size() == 2);
    CHECK(serialize_diagram(b21[0]) == "A n=3 k=1: 1-2");
    CHECK(serialize_diagram(b21[1]) == "A n=3 k=1: 2-3");
    CHECK(enumerate_typeA(3, 0).size() == 1);
    CHECK(enumerate_typeA(6, 3).size() == 5);
  }

  TEST_CASE("type D enumeration") {
    CHECK(enumerate_typeD(2, 1).size() == 2);
    CHECK(enumerate_typeD(4, 2).size() == 2);
    CHECK(enumerate_typeD(6, 3).size() == 6);
    CHECK_THROWS_AS(enumerate_typeD(5, 2), NotTypeDPartition);
    CHECK_THROWS_AS(enumerate_typeD(6, 2), NotTypeDPartition);
    // every enumerated diagram is accessible and has floor(k/2) cups
    for (auto [n, k] : {std::pair{8, 4}, std::pair{8, 3}, std::pair{10, 5}, std::pair{10, 1}})
      for (const auto& d : enumerate_typeD(n, k)) {
        CHECK(d.marker_violation().empty());
        CHECK(d.num_cups() == k / 2);
        CHECK(d.m() == n / 2);
      }
  }

  TEST_CASE("statistics") {
    DiagramStats rays = stats(parse_typeA("A n=4 k=0: 1, 2, 3, 4"));
    for (int i = 1; i <= 4; ++i) {
      CHECK(rays.rho(i) == i);
      CHECK(rays.c(i) == 0);
    }
    DiagramStats d = stats(parse_typeA("A n=3 k=1: 1-2"));
    CHECK(d.rho(3) == 1);
    CHECK(d.c(3) == 1);
    CHECK(d.sigma(1) == 2);
    CHECK(d.delta(1) == 1);
    CHECK(d.m_of(1) == 1);
    CHECK_THROWS_AS(d.sigma(3), NotACupEndpoint);
    // rho + 2c = i at rays
    for (const auto& a : enumerate_typeA(8, 3)) {
      DiagramStats st = stats(a);
      for (int i : a.rays()) CHECK(st.rho(i) + 2 * st.c(i) == i);
    }
  }

  TEST_CASE("DSL round trip") {
    for (int n = 1; n <= 8; ++n)
      for (int k = 0; 2 * k <= n; ++k)
        for (const auto& a : enumerate_typeA(n, k)) CHECK(parse_typeA(serialize_diagram(a)) == a);
    for (auto [n, k] : {std::pair{6, 3}, std::pair{8, 4}, std::pair{8, 1}, std::pair{10, 3}})
      for (const auto& d : enumerate_typeD(n, k)) CHECK(parse_typeD(serialize_diagram(d)) == d);
    auto d = parse_typeD("D m=3 cups=1: 1-2, 3*");
    CHECK(d.cups().size() == 1);
    CHECK(d.rays().size() == 1);
    CHECK(d.rays()[0].marked);
    CHECK(std::holds_alternative<CupDiagram>(parse_diagram("A n=3 k=1: 1-2")));
  }

  TEST_CASE("DSL errors") {
    CHECK_THROWS_AS(parse_diagram("B n=3 k=1: 1-2"), SyntaxError);
    try {
      parse_diagram("A n=3 k=1: 1-x");
      FAIL("no error");
    } catch (const SyntaxError& e) {
      CHECK(e.position() > 10);
    }
    CHECK_THROWS_AS(parse_diagram("A n=4 k=2: 1-3, 2-4"), ValidationError);  // crossing
    CHECK_THROWS_AS(parse_diagram("A n=3 k=1: 1-3"), ValidationError);       // ray under a cup
    CHECK_THROWS_AS(parse_diagram("A n=4 k=1: 1-2, 3-4"), ValidationError);  // cup count
    CHECK_THROWS_AS(parse_diagram("D m=3 cups=1: 1-2*, 3"), ValidationError);
    CHECK_THROWS_AS(parse_diagram("D m=3 cups=1: 1*, 2*, 3"), ValidationError);
  }

  TEST_CASE("marked ray left of a cup is accessible") {
    // a path to the border passes beneath the cup
    auto d = parse_typeD("D m=3 cups=1: 2-3, 1*");
    CHECK(d.marker_violation().empty());
  }

  TEST_CASE("fold steps") {
    auto [p, m] = fold_step(with_marks(parse_typeA("A n=6 k=3: 1-2, 3-4, 5-6")));
    CHECK(p.rays().size() == 2);
    CHECK_FALSE(p.rays()[0].marked);
    CHECK(m.rays()[0].marked);
    CHECK(m.rays()[1].marked);
    CHECK_THROWS_AS(fold_step(with_marks(parse_typeA("A n=4 k=2: 1-2, 3-4"))), NoAxisCrossingCup);
    CHECK(axis_crossing_cups(with_marks(parse_typeA("A n=6 k=3: 1-6, 2-5, 3-4"))) == 3);
  }

  TEST_CASE("folding terminates and is accessible") {
    for (int n : {2, 4, 6, 8})
      for (int k = 0; 2 * k <= n; ++k)
        for (const auto& b : enumerate_typeA(n, k))
          for (const auto& full : fully_folded(b)) {
            CHECK(axis_crossing_cups(full) == 0);
          }
  }

  TEST_CASE("unfold order on (3,3)") {
    auto a1 = parse_typeD("D m=3 cups=1: 1-2, 3");
    auto a3 = parse_typeD("D m=3 cups=1: 1, 2-3");
    CHECK(unfolds_to(a3, parse_typeA("A n=6 k=3: 1-6, 2-3, 4-5")));
    CHECK(unfolds_to(a3, parse_typeA("A n=6 k=3: 1-6, 2-5, 3-4")));
    CHECK_FALSE(unfolds_to(a1, parse_typeA("A n=6 k=3: 1-6, 2-3, 4-5")));
    CHECK(unfolds_to(a1, parse_typeA("A n=6 k=3: 1-2, 3-4, 5-6")));
    CHECK_THROWS_AS(unfolds_to(a1, parse_typeA("A n=4 k=2: 1-2, 3-4")), SizeMismatch);
  }

  TEST_CASE("every type D diagram unfolds to some type A diagram") {
    for (auto [n, k] : {std::pair{4, 2}, std::pair{6, 3}, std::pair{8, 4}, std::pair{8, 3}})
      for (const auto& d : enumerate_typeD(n, k)) {
        bool any = false;
        for (const auto& b : enumerate_typeA(n, k)) any = any || unfolds_to(d, b);
        CHECK_MESSAGE(any, serialize_diagram(d));
      }
  }
}
