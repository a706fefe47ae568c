#include <algorithm>
#include <atomic>
#include <mutex>

#include "brute.hpp"
#include "doctest.h"
#include "springer/error.hpp"
#include "springer/oracle.hpp"

using namespace springer;

TEST_SUITE("oracle") {
  TEST_CASE("type A flag counts match brute force") {
    for (std::uint32_t p : {2u, 3u}) {
      for (int n = 1; n <= 5; ++n) {
        for (int k = 0; 2 * k <= n; ++k) {
          Shape s = Shape::from_nk(n, k);
          CAPTURE(s.str());
          CAPTURE(p);
          std::uint64_t got = enumerate_stable_flags(EnumerationTask{s, Field::Fp(p), false}, [](const Flag&) {});
          CHECK(got == brute::count_flags(brute::TwoRow{s.a, s.b, p}, false));
        }
      }
    }
  }

  TEST_CASE("type D flag counts match brute force") {
    struct C {
      Shape s;
      std::uint32_t p;
    };
    for (const auto& c : std::vector<C>{{Shape(1, 1), 2}, {Shape(1, 1), 5}, {Shape(2, 2), 2}, {Shape(2, 2), 3},
                                        {Shape(3, 1), 3}, {Shape(3, 3), 2}, {Shape(5, 1), 3}}) {
      CAPTURE(c.s.str());
      CAPTURE(c.p);
      std::uint64_t got = enumerate_stable_flags(EnumerationTask{c.s, Field::Fp(c.p), true}, [](const Flag&) {});
      CHECK(got == brute::count_flags(brute::TwoRow{c.s.a, c.s.b, c.p}, true));
    }
  }

  TEST_CASE("enumerated flags are stable and isotropic") {
    const Field f = Field::Fp(3);
    Shape s(3, 3);
    Matrix x = standard_nilpotent(f, s), g = gram_matrix(f, s);
    for (const auto& fl : collect_stable_flags(EnumerationTask{s, f, true})) {
      CHECK(is_x_stable(fl, x));
      CHECK(is_isotropic_flag(fl, g));
    }
  }

  TEST_CASE("thread count does not change the result") {
    const Field f = Field::Fp(3);
    for (bool d : {false, true}) {
      EnumerationTask one{Shape(3, 3), f, d, 10'000'000, 1};
      EnumerationTask four = one;
      four.threads = 4;
      auto a = collect_stable_flags(one), b = collect_stable_flags(four);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      CHECK(a == b);
      CHECK(std::adjacent_find(a.begin(), a.end()) == a.end());
    }
  }

  TEST_CASE("visit may be called concurrently") {
    std::atomic<std::uint64_t> seen{0};
    EnumerationTask t{Shape(3, 2), Field::Fp(3), false, 10'000'000, 4};
    std::uint64_t n = enumerate_stable_flags(t, [&](const Flag&) { ++seen; });
    CHECK(n == seen.load());
  }

  TEST_CASE("count cap") {
    EnumerationTask t{Shape(2, 2), Field::Fp(3), true, 3, 1};
    CHECK_THROWS_AS(enumerate_stable_flags(t, [](const Flag&) {}), CapExceeded);
    t.max_count = 1000;
    CHECK_NOTHROW(enumerate_stable_flags(t, [](const Flag&) {}));
  }

  TEST_CASE("component counts") {
    CHECK(count_component(parse_typeD("D m=2 cups=1: 1-2"), Field::Fp(3)) == 4);
    CHECK(count_component(parse_typeD("D m=2 cups=1: 1-2*"), Field::Fp(5)) == 6);
    CHECK(count_component(parse_typeD("D m=2 cups=0: 1, 2"), Field::Fp(3)) == 1);
    CHECK(count_component(parse_typeA("A n=4 k=2: 1-2, 3-4"), Field::Fp(2)) == 9);
    CHECK(count_component(parse_typeA("A n=3 k=0: "), Field::Fp(2)) == 1);
  }

  TEST_CASE("type A decomposition covers every flag") {
    for (std::uint32_t p : {2u, 3u}) {
      for (int n = 2; n <= 5; ++n)
        for (int k = 1; 2 * k <= n; ++k) {
          Shape s = Shape::from_nk(n, k);
          CAPTURE(s.str());
          auto ds = enumerate_typeA(n, k);
          DecompositionReport r = decompose(EnumerationTask{s, Field::Fp(p), false}, ds);
          CHECK(r.uncovered_count == 0);
          CHECK(r.components.size() == brute::binom(n, k) - brute::binom(n, k - 1));
          CHECK(r.no_containment());
          for (std::size_t c = 0; c < ds.size(); ++c) CHECK(r.per_component[c] == brute::power(p + 1, k));
        }
    }
  }

  TEST_CASE("type D decomposition over F_3") {
    const Field f = Field::Fp(3);
    for (auto [n, k] : std::vector<std::pair<int, int>>{{4, 2}, {6, 1}, {6, 3}}) {
      Shape s = Shape::from_nk(n, k);
      CAPTURE(s.str());
      auto ds = enumerate_typeD(n, k);
      DecompositionReport r = decompose(EnumerationTask{s, f, true}, ds);
      CHECK(r.uncovered_count == 0);
      CHECK(r.uncovered.empty());
      // (5,1) has no F_3-points at all
      CHECK(r.no_containment() == (r.total_flags > 0));
      for (std::size_t c = 0; c < ds.size(); ++c) CHECK(r.per_component[c] == count_component(ds[c], f));
    }
  }
}
