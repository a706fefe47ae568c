#include <random>

#include "brute.hpp"
#include "doctest.h"
#include "springer/error.hpp"
#include "springer/flag.hpp"
#include "springer/linalg.hpp"

using namespace springer;

namespace {

Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = random_scalar(f, rng, 2);
  return m;
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("rref examples") {
    Field q = Field::Q();
    CHECK(rref(Matrix::from_ints(q, {{2, 4}, {1, 2}})) == Matrix::from_ints(q, {{1, 2}}));
    CHECK(rref(Matrix::identity(q, 3)) == Matrix::identity(q, 3));
    Field f2 = Field::Fp(2);
    CHECK(rref(Matrix::from_ints(f2, {{0, 1}, {0, 0}})) == Matrix::from_ints(f2, {{0, 1}}));
  }

  TEST_CASE("kernels from the (2,2) fixture") {
    Field q = Field::Q();
    CHECK(kernel(Matrix::parse(q, "[0 1]")) == Subspace::span(Matrix::from_ints(q, {{1, 0}})));
    Subspace k = kernel(Matrix::from_ints(q, {{0, 1, 1, 0}, {0, 0, 0, 1}}));
    CHECK(k == Subspace::span(Matrix::from_ints(q, {{1, 0, 0, 0}, {0, 1, -1, 0}})));
    CHECK(kernel(Matrix::identity(q, 3)).dim() == 0);
  }

  TEST_CASE("empty matrices act as zero maps") {
    Field q = Field::Q();
    Matrix z = Matrix::parse(q, "[]");
    CHECK(z.rows() == 0);
    CHECK(z.cols() == 0);
    Matrix to_zero(q, 0, 3);
    CHECK(kernel(to_zero).dim() == 3);
    Matrix from_zero(q, 2, 0);
    CHECK(image(from_zero).dim() == 0);
    CHECK((from_zero * to_zero).is_zero());
  }

  TEST_CASE("lattice operations") {
    Field q = Field::Q();
    Shape s(2, 2);
    Subspace e1 = Subspace::span(q, 4, {s.e(q, 1)}), f1 = Subspace::span(q, 4, {s.f(q, 1)});
    CHECK(subspace_sum(e1, f1) == Subspace::span(q, 4, {s.e(q, 1), s.f(q, 1)}));
    Subspace u = Subspace::span(q, 4, {s.e(q, 1), s.f(q, 1)}), v = Subspace::span(q, 4, {s.f(q, 1), s.e(q, 2)});
    CHECK(subspace_intersect(u, v) == f1);
    CHECK_THROWS_AS(subspace_sum(e1, Subspace::zero(q, 3)), AmbientMismatch);
  }

  TEST_CASE("preimages under the (2,2) nilpotent") {
    Field q = Field::Q();
    Shape s(2, 2);
    Matrix x = standard_nilpotent(q, s);
    Subspace f1 = Subspace::span(q, 4, {s.f(q, 1)});
    CHECK(preimage(x, f1) == Subspace::span(q, 4, {s.e(q, 1), s.f(q, 1), s.f(q, 2)}));
    CHECK(preimage(x, Subspace::zero(q, 4)) == Subspace::span(q, 4, {s.e(q, 1), s.f(q, 1)}));
    CHECK(preimage(x, Subspace::full(q, 4)) == Subspace::full(q, 4));
  }

  TEST_CASE("orthogonal complements") {
    Field q = Field::Q();
    Matrix g11 = gram_matrix(q, Shape(1, 1));
    Subspace e1 = Subspace::span(q, 2, {Shape(1, 1).e(q, 1)});
    CHECK(orth_complement(e1, g11) == e1);
    CHECK(orth_complement(Subspace::zero(q, 2), g11) == Subspace::full(q, 2));
    Shape s(2, 2);
    Subspace ef = Subspace::span(q, 4, {s.e(q, 1), s.f(q, 1)});
    CHECK(orth_complement(ef, gram_matrix(q, s)) == ef);
    CHECK_THROWS_AS(orth_complement(e1, Matrix::zero(q, 2, 2)), SingularGram);
  }

  TEST_CASE("solve_linear") {
    Field f2 = Field::Fp(2);
    AffineSolution s = solve_linear(Matrix::from_ints(f2, {{1, 1}}), Matrix::from_ints(f2, {{1}}));
    REQUIRE(s.consistent);
    CHECK(s.homogeneous.size() == 1);
    CHECK(s.particular[0] + s.particular[1] == Scalar::one(f2));
    CHECK(s.homogeneous[0] == Vector{Scalar::one(f2), Scalar::one(f2)});
    CHECK_FALSE(solve_linear(Matrix::from_ints(f2, {{0}}), Matrix::from_ints(f2, {{1}})).consistent);
  }

  TEST_CASE("rank-nullity, modularity and double perp on random data") {
    std::mt19937_64 rng(11);
    for (Field f : {Field::Q(), Field::Qi(), Field::Fp(5)}) {
      for (int t = 0; t < 40; ++t) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 5;
        Matrix m = random_matrix(f, r, c, rng);
        CHECK(kernel(m).dim() + m.rank() == c);
        Subspace u = Subspace::span(random_matrix(f, 1 + rng() % 3, 5, rng));
        Subspace v = Subspace::span(random_matrix(f, 1 + rng() % 3, 5, rng));
        CHECK(subspace_sum(u, v).dim() + subspace_intersect(u, v).dim() == u.dim() + v.dim());
        CHECK(subspace_sum(u, v).contains(u));
        CHECK(u.contains(subspace_intersect(u, v)));
      }
      if (f.kind() == FieldKind::prime) continue;
      Matrix g = gram_matrix(f, Shape(3, 3));
      for (int t = 0; t < 20; ++t) {
        Subspace w = Subspace::span(random_matrix(f, 1 + rng() % 4, 6, rng));
        CHECK(orth_complement(orth_complement(w, g), g) == w);
      }
    }
  }

  TEST_CASE("rref agrees with an independent reduction mod p") {
    std::mt19937_64 rng(3);
    const std::uint32_t p = 7;
    Field f = Field::Fp(p);
    for (int t = 0; t < 100; ++t) {
      std::size_t r = 1 + rng() % 4, c = 1 + rng() % 5;
      brute::Rows rows(r, brute::Vec(c));
      Matrix m(f, r, c);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
          rows[i][j] = static_cast<std::uint32_t>(rng() % p);
          m(i, j) = Scalar(f, static_cast<long>(rows[i][j]));
        }
      auto ref = brute::reduce(rows, p);
      Matrix got = rref(m);
      REQUIRE(got.rows() == ref.size());
      for (std::size_t i = 0; i < ref.size(); ++i)
        for (std::size_t j = 0; j < c; ++j) CHECK(got(i, j).residue() == ref[i][j]);
    }
  }

  TEST_CASE("matrix literal syntax") {
    Field q = Field::Q();
    Matrix m = Matrix::parse(q, "[1/2 -1; 0 3]");
    CHECK(m.rows() == 2);
    CHECK(m(0, 0) == Scalar::parse(q, "1/2"));
    CHECK(m(1, 1) == Scalar(q, 3L));
    CHECK_THROWS_AS(Matrix::parse(q, "[1 2; 3]"), SyntaxError);
    CHECK(m * m.inverse() == Matrix::identity(q, 2));
    CHECK_THROWS_AS(Matrix::from_ints(q, {{1, 1}, {1, 1}}).inverse(), SingularMatrix);
  }
}
