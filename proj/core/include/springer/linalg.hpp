#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "springer/scalar.hpp"

namespace springer {

using Vector = std::vector<Scalar>;

// Dense exact matrix. 0-row and 0-col matrices are legal and behave as zero maps.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols);
  static Matrix zero(Field f, std::size_t rows, std::size_t cols) { return Matrix(f, rows, cols); }
  static Matrix identity(Field f, std::size_t n);
  static Matrix from_ints(Field f, const std::vector<std::vector<long>>& rows);
  static Matrix from_rows(Field f, const std::vector<Vector>& rows, std::size_t cols);
  static Matrix column(Field f, const Vector& v);
  // "[0 1; 0 0]", entries in the scalar syntax; "[]" is 0x0.
  static Matrix parse(Field f, const std::string& text);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }

  const Scalar& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  Scalar& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  Vector row(std::size_t r) const;
  Vector col(std::size_t c) const;

  Matrix operator*(const Matrix& o) const;
  Vector operator*(const Vector& v) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator-() const;
  Matrix scaled(const Scalar& s) const;
  Matrix transpose() const;
  Matrix pow(unsigned e) const;
  Matrix inverse() const;
  std::size_t rank() const;
  bool is_zero() const;

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& m);
  static Matrix hstack(const std::vector<Matrix>& parts);
  static Matrix vstack(const std::vector<Matrix>& parts);

  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  std::string str() const;

 private:
  Field field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> a_;
};

// Reduced row-echelon form with zero rows dropped; pivot columns returned if asked.
Matrix rref(const Matrix& m, std::vector<std::size_t>* pivots = nullptr);

// Subspace of F^n stored as the RREF of a spanning set; equality is structural.
class Subspace {
 public:
  Subspace() = default;
  static Subspace zero(Field f, std::size_t n);
  static Subspace full(Field f, std::size_t n);
  // row span of m
  static Subspace span(const Matrix& rows);
  static Subspace span(Field f, std::size_t n, const std::vector<Vector>& vs);

  const Field& field() const { return basis_.field(); }
  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  Vector vector(std::size_t i) const { return basis_.row(i); }

  bool contains(const Vector& v) const;
  bool contains(const Subspace& w) const;

  bool operator==(const Subspace& o) const;
  bool operator!=(const Subspace& o) const { return !(*this == o); }
  bool operator<(const Subspace& o) const { return key() < o.key(); }
  std::string key() const;
  std::string str() const;

 private:
  Subspace(std::size_t n, Matrix b) : n_(n), basis_(std::move(b)) {}
  std::size_t n_ = 0;
  Matrix basis_;
};

Subspace kernel(const Matrix& m);
Subspace image(const Matrix& m);  // column space
Subspace apply(const Matrix& m, const Subspace& u);  // m(u)
Subspace subspace_sum(const Subspace& u, const Subspace& v);
Subspace subspace_intersect(const Subspace& u, const Subspace& v);
Subspace preimage(const Matrix& m, const Subspace& w);
Subspace orth_complement(const Subspace& w, const Matrix& gram);
// vectors of full completing u to a basis of w (u must lie in w)
std::vector<Vector> complement_basis(const Subspace& w, const Subspace& u);

struct AffineSolution {
  bool consistent = false;
  Vector particular;
  std::vector<Vector> homogeneous;
};

// coeffs * x = rhs with rhs a single column.
AffineSolution solve_linear(const Matrix& coeffs, const Matrix& rhs);

Vector zero_vector(Field f, std::size_t n);
Vector unit_vector(Field f, std::size_t n, std::size_t i);
Scalar dot(const Vector& u, const Vector& v);
std::string vector_str(const Vector& v);

}  // namespace springer
