#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "springer/error.hpp"
#include "springer/quiver.hpp"

using namespace springer;

namespace {

std::vector<Matrix> random_g(const QuiverRep& r, std::mt19937_64& rng) {
  const Field& f = r.field();
  std::vector<Matrix> g;
  for (int i = 0; i <= r.n(); ++i) {
    std::size_t d = static_cast<std::size_t>(r.v(i));
    while (true) {
      Matrix m(f, d, d);
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) m(a, b) = random_scalar(f, rng, 3);
      if (m.rank() == d) {
        g.push_back(m);
        break;
      }
    }
  }
  return g;
}

}  // namespace

TEST_SUITE("quiver") {
  TEST_CASE("dimension vectors") {
    DimVectors d = dim_vectors(4, 1);
    CHECK(d.v == std::vector<int>{0, 1, 1, 1, 0});
    CHECK(d.d[1] == 1);
    CHECK(d.d[3] == 1);
    DimVectors e = dim_vectors(4, 2);
    CHECK(e.v == std::vector<int>{0, 1, 2, 1, 0});
    CHECK(e.d[2] == 2);
    CHECK(dim_vectors(2, 1).v == std::vector<int>{0, 1, 0});
    CHECK(dim_vectors(2, 1).d[1] == 2);
    CHECK_THROWS_AS(dim_vectors(4, 3), InvalidShape);
  }

  TEST_CASE("admissibility and stability of the fixtures") {
    QuiverRep r = fx::ex_fi();
    CHECK(is_admissible(r));
    CHECK(is_stable(r));
    CHECK(is_springer_point(r));
    QuiverRep bad = r;
    bad.B[1] = Matrix::parse(r.field(), "[1 0]");
    CHECK_FALSE(is_admissible(bad));
    CHECK_THROWS_AS(is_stable(bad), NotAdmissible);
    QuiverRep zero(Field::Q(), 4, 2);
    CHECK(is_admissible(zero));
    CHECK_FALSE(is_stable(zero));
    QuiverRep t = fx::three_one();
    CHECK(is_admissible(t));
    CHECK(is_stable(t));
    QuiverRep withd = r;
    withd.Delta[2] = Matrix::parse(r.field(), "[1 0; 0 0]");
    CHECK_FALSE(is_springer_point(withd));
  }

  TEST_CASE("paths") {
    QuiverRep r = fx::ex_fi();
    CHECK(r.path_A(2, 2) == Matrix::identity(r.field(), 2));
    CHECK(r.gamma_path(2, 1) == Matrix::parse(r.field(), "[0 1]"));
    CHECK(r.delta_path(2, 1).is_zero());
    CHECK_THROWS_AS(r.gamma_path(7, 1), IndexOutOfRange);
  }

  TEST_CASE("GL action") {
    std::mt19937_64 rng(5);
    QuiverRep r = fx::ex_fi();
    std::vector<Matrix> id;
    for (int i = 0; i <= r.n(); ++i) id.push_back(Matrix::identity(r.field(), static_cast<std::size_t>(r.v(i))));
    CHECK(gl_apply(id, r) == r);
    for (int t = 0; t < 10; ++t) {
      auto g = random_g(r, rng), h = random_g(r, rng);
      std::vector<Matrix> gh;
      for (std::size_t i = 0; i < g.size(); ++i) gh.push_back(g[i] * h[i]);
      QuiverRep moved = gl_apply(g, r);
      CHECK(gl_apply(g, gl_apply(h, r)) == gl_apply(gh, r));
      CHECK(is_admissible(moved));
      CHECK(is_stable(moved));
      CHECK(maffei_flag(moved).flag == maffei_flag(r).flag);
    }
    auto g = random_g(r, rng);
    g[2] = Matrix::zero(r.field(), 2, 2);
    CHECK_THROWS_AS(gl_apply(g, r), SingularG);
  }

  TEST_CASE("Maffei flags of the fixtures") {
    QuiverRep r = fx::ex_fi();
    MaffeiResult m = maffei_flag(r);
    CHECK(m.labels == std::vector<std::string>{"f1", "e1", "f2", "e2"});
    const Field& f = r.field();
    CHECK(m.kernels[1] == Subspace::span(Matrix::from_ints(f, {{1, 0, 0, 0}})));
    CHECK(m.kernels[2] == Subspace::span(Matrix::from_ints(f, {{1, 0, 0, 0}, {0, 1, -1, 0}})));
    CHECK(m.kernels[3] == Subspace::span(Matrix::from_ints(f, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}})));
    CHECK(m.x == standard_nilpotent(f, Shape(2, 2)));
    for (std::size_t i = 0; i <= 4; ++i) CHECK(m.flag[i].dim() == i);
    QuiverRep t = fx::three_one();
    MaffeiResult n = maffei_flag(t);
    CHECK(n.labels == std::vector<std::string>{"f1", "e1", "e2", "e3"});
    CHECK(n.kernels[2] == Subspace::span(Matrix::from_ints(f, {{0, 1, 0, 0}, {1, 0, -1, 0}})));
    CHECK_THROWS_AS(maffei_flag(QuiverRep(f, 4, 2)), NotStable);
  }

  TEST_CASE("lifted representation") {
    for (const QuiverRep& r : {fx::ex_fi(), fx::three_one()}) {
      TildeRep t = build_tilde(r);
      TildeReport rep = check_tilde(t);
      CHECK(rep.ok());
      // Delta~_1 Gamma~_1 is the standard nilpotent in the D'_0 basis
      CHECK(t.B[0] * t.A[0] == standard_nilpotent(r.field(), Shape::from_nk(r.n(), r.k())));
    }
    TildeRep t = build_tilde(fx::ex_fi());
    // break one identity block of Gamma~_1
    t.A[0](t.e_at(1, 1), t.e_at(0, 2)) = Scalar::zero(t.field);
    CHECK_FALSE(check_tilde(t).ok());
  }

  TEST_CASE("component relations on the fixtures") {
    QuiverRep r = fx::ex_fi();
    CHECK(check_quiver_cup(r, 2, 3));
    CHECK_FALSE(check_quiver_cup(r, 1, 2));
    CHECK_THROWS_AS(check_quiver_cup(r, 1, 3), BadParity);
    QuiverRep t = fx::three_one();
    CHECK(check_quiver_ray(t, 1, stats(parse_typeA("A n=4 k=1: 1, 2-3, 4"))));
    CHECK(check_quiver_ray(t, 3, stats(parse_typeA("A n=4 k=1: 1-2, 3, 4"))));
    CHECK_FALSE(in_lambda_a(r, parse_typeA("A n=4 k=1: 1-2, 3, 4")));
  }

  TEST_CASE("theta") {
    QuiverRep r = fx::ex_fi();
    CHECK(theta(r) == r);
    QuiverRep t = fx::three_one();
    QuiverRep tt = theta(t);
    CHECK(tt.Gamma[1] == t.Gamma[3]);
    CHECK(tt.Gamma[3] == t.Gamma[1]);
    for (int s = 1; s <= 10; ++s) {
      auto p = sample_springer_point(Field::Fp(7), 6, 3, std::nullopt, s);
      REQUIRE(p.has_value());
      CHECK(theta(theta(*p)) == *p);
    }
    CHECK_THROWS_AS(theta(QuiverRep(Field::Q(), 5, 2)), NotTypeDPartition);
  }

  TEST_CASE("theta fixed points") {
    ThetaFixedResult fixed = is_theta_fixed(fx::ex_fi());
    REQUIRE(fixed.kind == ThetaFixedResult::Kind::FixedWith);
    CHECK(gl_apply(fixed.g, theta(fx::ex_fi())) == fx::ex_fi());
    // (3,1) with Gamma_1 = Gamma_3 = 1 forces g_1 = g_3 = 1, then g_2 = A_1/B_2 = B_2/A_1 needs A_1^2 = B_2^2
    Field f = Field::Fp(5);
    QuiverRep w(f, 4, 1);
    w.A[1] = Matrix::parse(f, "[1]");
    w.A[2] = Matrix::parse(f, "[0]");
    w.B[1] = Matrix::parse(f, "[0]");
    w.B[2] = Matrix::parse(f, "[2]");
    w.Gamma[1] = Matrix::parse(f, "[1]");
    w.Gamma[3] = Matrix::parse(f, "[1]");
    REQUIRE(is_admissible(w));
    REQUIRE(is_stable(w));
    ThetaFixedResult nf = is_theta_fixed(w);
    CHECK(nf.exhaustive);
    CHECK(nf.kind == ThetaFixedResult::Kind::NotFixed);
    w.B[2] = Matrix::parse(f, "[4]");
    ThetaFixedResult yes = is_theta_fixed(w);
    REQUIRE(yes.kind == ThetaFixedResult::Kind::FixedWith);
    CHECK(gl_apply(yes.g, theta(w)) == w);
    w.B[2] = Matrix::parse(f, "[2]");
    // outcome kind is constant on GL orbits
    std::mt19937_64 rng(2);
    for (int t = 0; t < 5; ++t) {
      QuiverRep moved = gl_apply(random_g(w, rng), w);
      CHECK(is_theta_fixed(moved).kind == ThetaFixedResult::Kind::NotFixed);
    }
  }

  TEST_CASE("marked component relations on the fixtures") {
    QuiverRep r = fx::ex_fi();
    CHECK(in_lambda_marked(r, parse_typeD("D m=2 cups=1: 1-2*")));
    CHECK_FALSE(in_lambda_marked(r, parse_typeD("D m=2 cups=1: 1-2")));
    QuiverRep t = fx::three_one();
    CHECK(in_lambda_marked(t, parse_typeD("D m=2 cups=0: 1, 2")) != in_lambda_marked(t, parse_typeD("D m=2 cups=0: 1, 2*")));
    CHECK_FALSE(in_lambda_marked(r, parse_typeD("D m=2 cups=0: 1, 2")));
  }

  TEST_CASE("sampling is deterministic and lands in the requested component") {
    Field f = Field::Fp(5);
    auto a = sample_springer_point(f, 4, 2, std::nullopt, 42), b = sample_springer_point(f, 4, 2, std::nullopt, 42);
    REQUIRE(a.has_value());
    CHECK(*a == *b);
    CHECK(maffei_flag(*a).x == standard_nilpotent(f, Shape(2, 2)));
    CupDiagram d = parse_typeA("A n=4 k=2: 1-4, 2-3");
    for (std::uint64_t s = 1; s <= 10; ++s) {
      auto r = sample_springer_point(f, 4, 2, d, s);
      REQUIRE(r.has_value());
      CHECK(in_lambda_a(*r, d));
      CHECK(typeA_cup_rel(maffei_flag(*r).flag, standard_nilpotent(f, Shape(2, 2)), 2, 3));
    }
    CupDiagram c = parse_typeA("A n=3 k=1: 1-2, 3");
    for (std::uint64_t s = 1; s <= 10; ++s) {
      auto r = sample_springer_point(f, 3, 1, c, s);
      REQUIRE(r.has_value());
      Flag fl = maffei_flag(*r).flag;
      Shape sh(2, 1);
      CHECK(fl[2] == preimage(standard_nilpotent(f, sh), fl[0]));
    }
  }
}
