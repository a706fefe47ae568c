#include "brute.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "springer/error.hpp"
#include "springer/flag.hpp"
#include "springer/oracle.hpp"

using namespace springer;

namespace {

Flag from_rows(const Field& f, const std::vector<brute::Rows>& chain, std::size_t n) {
  std::vector<Subspace> sp;
  for (const auto& rows : chain) {
    std::vector<Vector> vs;
    for (const auto& r : rows) {
      Vector v;
      for (auto c : r) v.push_back(Scalar(f, static_cast<long>(c)));
      vs.push_back(v);
    }
    sp.push_back(Subspace::span(f, n, vs));
  }
  return Flag(sp);
}

}  // namespace

TEST_SUITE("flag") {
  TEST_CASE("gram matrices match the antidiagonal J blocks") {
    for (auto [a, b] : {std::pair{1, 1}, std::pair{2, 2}, std::pair{3, 3}, std::pair{3, 1}, std::pair{5, 3}, std::pair{5, 1}}) {
      Field q = Field::Q();
      Matrix g = gram_matrix(q, Shape(a, b));
      brute::TwoRow t{a, b, 101};
      for (int r = 0; r < a + b; ++r)
        for (int c = 0; c < a + b; ++c) CHECK(g(r, c) == Scalar(q, static_cast<long>(t.gram(r, c))));
      CHECK(g == g.transpose());
    }
    Field q = Field::Q();
    CHECK(gram_matrix(q, Shape(1, 1)) == Matrix::from_ints(q, {{0, 1}, {1, 0}}));
    CHECK(gram_matrix(q, Shape(2, 2)) == Matrix::from_ints(q, {{0, 0, 0, 1}, {0, 0, -1, 0}, {0, -1, 0, 0}, {1, 0, 0, 0}}));
    CHECK_THROWS_AS(gram_matrix(q, Shape(3, 2)), NotTypeDPartition);
  }

  TEST_CASE("standard nilpotent") {
    Field q = Field::Q();
    for (auto [a, b] : {std::pair{2, 2}, std::pair{4, 1}, std::pair{3, 2}}) {
      Matrix x = standard_nilpotent(q, Shape(a, b));
      CHECK(x.pow(a).is_zero());
      CHECK_FALSE(x.pow(a - 1).is_zero());
      CHECK(x.rank() == static_cast<std::size_t>(a + b - 2));
    }
  }

  TEST_CASE("x-stability") {
    Field q = Field::Q();
    Shape s(2, 2);
    Matrix x = standard_nilpotent(q, s);
    Flag coord = Flag::from_proper(q, 4, {fx::span(q, s, {s.e(q, 1)}), fx::span(q, s, {s.e(q, 1), s.e(q, 2)}),
                                          fx::span(q, s, {s.e(q, 1), s.e(q, 2), s.f(q, 1)})});
    CHECK(is_x_stable(coord, x));
    Flag bad = Flag::from_proper(q, 4, {fx::span(q, s, {s.e(q, 2)}), fx::span(q, s, {s.e(q, 1), s.e(q, 2)}),
                                        fx::span(q, s, {s.e(q, 1), s.e(q, 2), s.f(q, 1)})});
    CHECK_FALSE(is_x_stable(bad, x));
    CHECK(is_x_stable(bad, Matrix::zero(q, 4, 4)));
    CHECK_THROWS_AS(is_x_stable(bad, Matrix::zero(q, 3, 3)), AmbientMismatch);
  }

  TEST_CASE("cup relations on the (2,2) examples") {
    Field q = Field::Q();
    Shape s(2, 2);
    Matrix x = standard_nilpotent(q, s);
    // <f1> < <f1, e1 - f2> < <e1, f1, f2>
    Flag fi = Flag::from_proper(q, 4, {fx::span(q, s, {s.f(q, 1)}), fx::span(q, s, {s.f(q, 1), fx::vec(q, s, {{'e', 1}, {'f', 2, -1}})}),
                                       fx::span(q, s, {s.e(q, 1), s.f(q, 1), s.f(q, 2)})});
    CHECK(is_x_stable(fi, x));
    CHECK(typeA_cup_rel(fi, x, 2, 3));
    CHECK_FALSE(typeA_cup_rel(fi, x, 1, 2));
    CHECK_THROWS_AS(typeA_cup_rel(fi, x, 1, 3), BadParity);
    Flag k13 = Flag::from_proper(q, 4, {fx::span(q, s, {s.e(q, 1)}), fx::span(q, s, {s.e(q, 1), s.f(q, 1)}),
                                        fx::span(q, s, {s.e(q, 1), s.f(q, 1), s.e(q, 2)})});
    CHECK(in_K_a(k13, s, parse_typeA("A n=4 k=2: 1-2, 3-4")));
  }

  TEST_CASE("all-rays diagram forces the coordinate flag") {
    Field f = Field::Fp(3);
    Shape s(4, 0);
    auto flags = collect_stable_flags(EnumerationTask{s, f, false});
    CupDiagram rays = parse_typeA("A n=4 k=0: 1, 2, 3, 4");
    int hits = 0;
    for (const auto& fl : flags) {
      if (!in_K_a(fl, s, rays)) continue;
      ++hits;
      for (int i = 1; i <= 4; ++i) {
        std::vector<Vector> es;
        for (int j = 1; j <= i; ++j) es.push_back(s.e(f, j));
        CHECK(fl[i] == fx::span(f, s, es));
      }
    }
    CHECK(hits == 1);
  }

  TEST_CASE("ray relation in preimage form on the component") {
    // on K^a, F_i = x^{-(i - rho)/2}(x^{n-k-rho} F_n) at every ray i, n <= 5
    for (int n = 2; n <= 5; ++n)
      for (int k = 0; 2 * k <= n; ++k) {
        Field f = Field::Fp(2);
        Shape s = Shape::from_nk(n, k);
        Matrix x = standard_nilpotent(f, s);
        auto flags = collect_stable_flags(EnumerationTask{s, f, false});
        for (const auto& a : enumerate_typeA(n, k)) {
          DiagramStats st = stats(a);
          for (int i : a.rays()) {
            int rho = st.rho(i);
            for (const auto& fl : flags) {
              if (!in_K_a(fl, s, a)) continue;
              Subspace alt = x_preimage(x, x_image(x, fl[n], s.a - rho), (i - rho) / 2);
              CHECK(fl[i] == alt);
            }
          }
        }
      }
  }

  TEST_CASE("isotropy in characteristic 2 and 0") {
    Shape s(1, 1);
    for (Field f : {Field::Q(), Field::Fp(2)}) {
      Matrix g = gram_matrix(f, s);
      Flag e1 = Flag::from_proper(f, 2, {fx::span(f, s, {s.e(f, 1)})});
      Flag diag = Flag::from_proper(f, 2, {fx::span(f, s, {fx::vec(f, s, {{'e', 1}, {'f', 1}})})});
      CHECK(is_isotropic_flag(e1, g));
      CHECK_FALSE(is_isotropic_flag(diag, g));
    }
  }

  TEST_CASE("flags from brute force are isotropic and x-stable") {
    for (auto [a, b, p] : {std::tuple{2, 2, 3u}, std::tuple{3, 1, 5u}, std::tuple{3, 3, 3u}}) {
      Field f = Field::Fp(p);
      Shape s(a, b);
      std::size_t count = 0;
      brute::for_each_flag({a, b, p}, true, [&](const std::vector<brute::Rows>& chain) {
        Flag fl = from_rows(f, chain, s.n());
        CHECK(is_isotropic_flag(fl, gram_matrix(f, s)));
        CHECK(is_x_stable(fl, standard_nilpotent(f, s)));
        ++count;
      });
      CHECK(count == collect_stable_flags(EnumerationTask{s, f, true}).size());
    }
  }

  TEST_CASE("marked relations on the (2,2) families") {
    Field f = Field::Fp(5);
    Shape s(2, 2);
    auto plain = parse_typeD("D m=2 cups=1: 1-2"), marked = parse_typeD("D m=2 cups=1: 1-2*");
    Vector l1 = fx::vec(f, s, {{'e', 1}, {'f', 1}}), l2 = fx::vec(f, s, {{'e', 2}, {'f', 2}});
    Flag k12 = fx::isotropic_flag(f, s, {{l1}, {l1, l2}});
    CHECK(is_isotropic_flag(k12, gram_matrix(f, s)));
    MarkedReport r = marked_relations(k12, s, marked);
    CHECK(r.holds);
    REQUIRE(r.features.size() == 1);
    CHECK(r.features[0].kind == "cup");
    CHECK(r.features[0].marked);
    CHECK_FALSE(marked_relations(k12, s, plain).holds);
  }

  TEST_CASE("rightmost ray twist") {
    // tau^2 = (-1)^((n-2k)/2 + 1)
    for (auto [a, b] : {std::pair{3, 1}, std::pair{5, 1}, std::pair{5, 3}, std::pair{7, 1}}) {
      Field f = Field::Fp(13);
      auto tau = ray_twist(f, Shape(a, b));
      REQUIRE(tau.has_value());
      long sign = ((a - b) / 2 + 1) % 2 ? -1 : 1;
      CHECK(*tau * *tau == Scalar(f, sign));
    }
    CHECK_FALSE(ray_twist(Field::Fp(7), Shape(5, 1)).has_value());
  }

  TEST_CASE("isotropic flags are fixed by their lower half") {
    Field f = Field::Fp(3);
    Shape s(3, 3);
    auto flags = collect_stable_flags(EnumerationTask{s, f, true});
    std::set<std::string> lower;
    for (const auto& fl : flags) lower.insert(fl[1].key() + "|" + fl[2].key() + "|" + fl[3].key());
    CHECK(lower.size() == flags.size());
  }

  TEST_CASE("membership survives the sign symmetry e -> -e") {
    // a similitude for equal parts; for unequal parts it would swap the sign of the rightmost ray
    Field f = Field::Fp(5);
    for (auto [a, b] : {std::pair{1, 1}, std::pair{2, 2}, std::pair{3, 3}}) {
      Shape s(a, b);
      Matrix sign = Matrix::identity(f, s.n());
      for (int i = 1; i <= a; ++i) sign(s.e_index(i), s.e_index(i)) = Scalar(f, -1L);
      for (const auto& fl : collect_stable_flags(EnumerationTask{s, f, true})) {
        std::vector<Subspace> moved;
        for (const auto& sp : fl.spaces()) moved.push_back(apply(sign, sp));
        Flag g(moved);
        for (const auto& d : enumerate_typeD(s.n(), s.k())) CHECK(in_K_marked(fl, s, d) == in_K_marked(g, s, d));
      }
    }
  }
}
