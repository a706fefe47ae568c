#pragma once

#include <optional>
#include <string>
#include <vector>

#include "springer/diagram.hpp"
#include "springer/linalg.hpp"

namespace springer {

// Two-row partition (n-k, k) with the ordered basis e_1..e_{n-k}, f_1..f_k.
struct Shape {
  int a = 0;  // n - k
  int b = 0;  // k
  Shape() = default;
  Shape(int n_minus_k, int k);
  static Shape from_nk(int n, int k) { return Shape(n - k, k); }
  int n() const { return a + b; }
  int k() const { return b; }
  bool equal_parts() const { return a == b; }
  std::size_t e_index(int i) const;  // 0-based coordinate of e_i
  std::size_t f_index(int i) const;
  Vector e(const Field& f, int i) const;
  Vector f(const Field& f, int i) const;
  std::string str() const { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }
  bool operator==(const Shape& o) const { return a == o.a && b == o.b; }
};

Matrix standard_nilpotent(const Field& f, const Shape& s);
// J_m blocks: [[0,J],[J^T,0]] for (m,m), J_{n-k} (+) J_k otherwise
Matrix gram_matrix(const Field& f, const Shape& s);

class Flag {
 public:
  Flag() = default;
  // spaces F_0..F_n; checks F_0 = 0, dim F_i = i, F_{i-1} in F_i
  explicit Flag(std::vector<Subspace> spaces);
  // F_1..F_{n-1} only
  static Flag from_proper(const Field& f, std::size_t n, std::vector<Subspace> middle);

  std::size_t ambient_dim() const { return spaces_.empty() ? 0 : spaces_.back().ambient_dim(); }
  std::size_t length() const { return spaces_.empty() ? 0 : spaces_.size() - 1; }
  const Subspace& operator[](std::size_t i) const { return spaces_.at(i); }
  const std::vector<Subspace>& spaces() const { return spaces_; }
  const Field& field() const { return spaces_.front().field(); }

  bool operator==(const Flag& o) const { return spaces_ == o.spaces_; }
  bool operator!=(const Flag& o) const { return !(*this == o); }
  bool operator<(const Flag& o) const { return key() < o.key(); }
  std::string key() const;

 private:
  std::vector<Subspace> spaces_;
};

// given F_1..F_m (m = n/2), F_{n-i} = F_i^perp
Flag complete_isotropic(const std::vector<Subspace>& lower, const Matrix& gram);

bool is_x_stable(const Flag& fl, const Matrix& x);
// x^{-s} W and x^s W
Subspace x_preimage(const Matrix& x, const Subspace& w, int s);
Subspace x_image(const Matrix& x, const Subspace& w, int s);

// F_j = x^{-(j-i+1)/2} F_{i-1}
bool typeA_cup_rel(const Flag& fl, const Matrix& x, int i, int j);
// F_i = F_{i-1} (+) <e_{(i+rho(i))/2}>
bool typeA_ray_rel(const Flag& fl, const Shape& s, const DiagramStats& st, int i);
bool in_K_a(const Flag& fl, const Shape& s, const CupDiagram& a);

// In characteristic 2 a vector is isotropic when the quadratic form with polar gram vanishes.
bool is_isotropic_vector(const Vector& v, const Matrix& gram);
bool is_totally_isotropic(const Subspace& w, const Matrix& gram);
bool is_isotropic_flag(const Flag& fl, const Matrix& gram);

// scalar tau with f_{c+1} + tau e_{i-c} spanning the marked rightmost ray when n > 2k
std::optional<Scalar> ray_twist(const Field& f, const Shape& s);
// the subspace a ray at i forces on F_i; empty if the field lacks the needed square root
std::optional<Subspace> ray_space(const Field& f, const Shape& s, const MarkedCupDiagram& adot, int i, bool marked);

struct FeatureReport {
  std::string kind;  // "cup" or "ray"
  bool marked = false;
  int i = 0, j = 0;  // j = 0 for rays
  bool holds = false;
};

struct MarkedReport {
  bool holds = true;
  std::vector<FeatureReport> features;
};

MarkedReport marked_relations(const Flag& fl, const Shape& s, const MarkedCupDiagram& adot);
bool in_K_marked(const Flag& fl, const Shape& s, const MarkedCupDiagram& adot);

}  // namespace springer
