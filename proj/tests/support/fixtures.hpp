#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "springer/bundle.hpp"
#include "springer/flag.hpp"
#include "springer/quiver.hpp"

namespace fx {

using namespace springer;

// the (2,2) point whose Maffei flag is <f1> < <f1, e1 - f2> < <f1, e1, f2>
inline QuiverRep ex_fi(const Field& f = Field::Q()) {
  QuiverRep r(f, 4, 2);
  r.A[1] = Matrix::parse(f, "[1; 0]");
  r.A[2] = Matrix::parse(f, "[0 1]");
  r.B[1] = Matrix::parse(f, "[0 1]");
  r.B[2] = Matrix::parse(f, "[1; 0]");
  r.Gamma[2] = Matrix::identity(f, 2);
  return r;
}

// the (3,1) point whose Maffei flag is <e1> < <e1, f1 - e2> < <e1, f1, e2>
inline QuiverRep three_one(const Field& f = Field::Q()) {
  QuiverRep r(f, 4, 1);
  r.A[1] = Matrix::parse(f, "[1]");
  r.A[2] = Matrix::parse(f, "[0]");
  r.B[1] = Matrix::parse(f, "[0]");
  r.B[2] = Matrix::parse(f, "[1]");
  r.Gamma[1] = Matrix::parse(f, "[1]");
  r.Gamma[3] = Matrix::parse(f, "[1]");
  return r;
}

// term ('e', i, c) is c * e_i
struct Term {
  char side;
  int i;
  long c = 1;
};

inline Vector vec(const Field& f, const Shape& s, std::initializer_list<Term> terms) {
  Vector v = zero_vector(f, s.n());
  for (const auto& t : terms) {
    Vector u = t.side == 'e' ? s.e(f, t.i) : s.f(f, t.i);
    Scalar c(f, t.c);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += c * u[j];
  }
  return v;
}

inline Vector lin(const Scalar& l, const Vector& u, const Scalar& m, const Vector& w) {
  Vector v = u;
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = l * u[j] + m * w[j];
  return v;
}

inline Subspace span(const Field& f, const Shape& s, const std::vector<Vector>& vs) { return Subspace::span(f, s.n(), vs); }

// F_1..F_m completed by perp
inline Flag isotropic_flag(const Field& f, const Shape& s, const std::vector<std::vector<Vector>>& lower) {
  std::vector<Subspace> sp;
  for (const auto& l : lower) sp.push_back(span(f, s, l));
  return complete_isotropic(sp, gram_matrix(f, s));
}

}  // namespace fx
