#include "springer/linalg.hpp"

#include <sstream>

#include "springer/error.hpp"

namespace springer {

namespace {

void need_same_field(const Field& a, const Field& b) {
  if (a != b) throw FieldMismatch(a.name() + " vs " + b.name());
}

}  // namespace

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), a_(rows * cols, Scalar(f)) {}

Matrix Matrix::identity(Field f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
  return m;
}

Matrix Matrix::from_ints(Field f, const std::vector<std::vector<long>>& rows) {
  std::size_t c = rows.empty() ? 0 : rows[0].size();
  Matrix m(f, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw ShapeMismatch("ragged integer rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar(f, rows[i][j]);
  }
  return m;
}

Matrix Matrix::from_rows(Field f, const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(f, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw ShapeMismatch("row " + std::to_string(i) + " has length " + std::to_string(rows[i].size()));
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::column(Field f, const Vector& v) {
  Matrix m(f, v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

Matrix Matrix::parse(Field f, const std::string& text) {
  auto open = text.find('[');
  auto close = text.rfind(']');
  if (open == std::string::npos) throw SyntaxError("matrix literal must start with '['", 0);
  if (close == std::string::npos || close < open) throw SyntaxError("missing ']'", text.size());
  std::string body = text.substr(open + 1, close - open - 1);
  std::vector<std::vector<Scalar>> rows;
  std::size_t start = 0, offset = open + 1;
  while (true) {
    auto semi = body.find(';', start);
    std::string r = body.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
    std::istringstream is(r);
    std::vector<Scalar> row;
    std::string tok;
    while (is >> tok) {
      try {
        row.push_back(Scalar::parse(f, tok));
      } catch (const SyntaxError& e) {
        throw SyntaxError("bad matrix entry '" + tok + "'", offset + start + r.find(tok));
      }
    }
    rows.push_back(std::move(row));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  if (rows.size() == 1 && rows[0].empty()) return Matrix(f, 0, 0);
  std::size_t c = rows[0].size();
  Matrix m(f, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw SyntaxError("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) + " entries, expected " + std::to_string(c), open);
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_);
}

Vector Matrix::col(std::size_t c) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
  return v;
}

Matrix Matrix::operator*(const Matrix& o) const {
  need_same_field(field_, o.field_);
  if (cols_ != o.rows_)
    throw ShapeMismatch(std::to_string(rows_) + "x" + std::to_string(cols_) + " * " + std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
  Matrix r(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t l = 0; l < cols_; ++l) {
      const Scalar& a = (*this)(i, l);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(l, j);
    }
  return r;
}

Vector Matrix::operator*(const Vector& v) const {
  if (v.size() != cols_) throw ShapeMismatch("vector length " + std::to_string(v.size()) + " vs " + std::to_string(cols_) + " columns");
  Vector r(rows_, Scalar(field_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  need_same_field(field_, o.field_);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("sum of differently shaped matrices");
  Matrix r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

Matrix Matrix::operator-() const {
  Matrix r = *this;
  for (auto& x : r.a_) x = -x;
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + (-o); }

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix r = *this;
  for (auto& x : r.a_) x *= s;
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

Matrix Matrix::pow(unsigned e) const {
  if (rows_ != cols_) throw ShapeMismatch("power of a non-square matrix");
  Matrix r = identity(field_, rows_);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

Matrix Matrix::inverse() const {
  if (rows_ != cols_) throw ShapeMismatch("inverse of a non-square matrix");
  std::size_t n = rows_;
  Matrix aug = hstack({*this, identity(field_, n)});
  std::vector<std::size_t> piv;
  Matrix r = rref(aug, &piv);
  if (r.rows() < n || piv[n - 1] != n - 1) throw SingularMatrix(std::to_string(n) + "x" + std::to_string(n) + " matrix has rank < n");
  return r.block(0, n, n, n);
}

std::size_t Matrix::rank() const { return rref(*this).rows(); }

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw IndexOutOfRange("block outside the matrix");
  Matrix r(field_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
  return r;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
  need_same_field(field_, m.field_);
  if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) throw IndexOutOfRange("block outside the matrix");
  for (std::size_t i = 0; i < m.rows_; ++i)
    for (std::size_t j = 0; j < m.cols_; ++j) (*this)(r0 + i, c0 + j) = m(i, j);
}

Matrix Matrix::hstack(const std::vector<Matrix>& parts) {
  if (parts.empty()) return Matrix();
  std::size_t r = parts[0].rows_, c = 0;
  for (const auto& p : parts) {
    if (p.rows_ != r) throw ShapeMismatch("hstack of matrices with different row counts");
    c += p.cols_;
  }
  Matrix out(parts[0].field_, r, c);
  std::size_t at = 0;
  for (const auto& p : parts) {
    out.set_block(0, at, p);
    at += p.cols_;
  }
  return out;
}

Matrix Matrix::vstack(const std::vector<Matrix>& parts) {
  if (parts.empty()) return Matrix();
  std::size_t c = parts[0].cols_, r = 0;
  for (const auto& p : parts) {
    if (p.cols_ != c) throw ShapeMismatch("vstack of matrices with different column counts");
    r += p.rows_;
  }
  Matrix out(parts[0].field_, r, c);
  std::size_t at = 0;
  for (const auto& p : parts) {
    out.set_block(at, 0, p);
    at += p.rows_;
  }
  return out;
}

bool Matrix::operator==(const Matrix& o) const {
  return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

std::string Matrix::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) s += ' ';
      s += (*this)(i, j).str();
    }
  }
  return s + "]";
}

Matrix rref(const Matrix& m, std::vector<std::size_t>* pivots) {
  Matrix a = m;
  std::size_t rows = a.rows(), cols = a.cols(), r = 0;
  std::vector<std::size_t> piv;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
    Scalar inv = a(r, c).inverse();
    for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      Scalar f = a(i, c);
      for (std::size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  if (pivots) *pivots = piv;
  return a.block(0, 0, r, cols);
}

// Subspace

Subspace Subspace::zero(Field f, std::size_t n) { return Subspace(n, Matrix(f, 0, n)); }

Subspace Subspace::full(Field f, std::size_t n) { return Subspace(n, Matrix::identity(f, n)); }

Subspace Subspace::span(const Matrix& rows) { return Subspace(rows.cols(), rref(rows)); }

Subspace Subspace::span(Field f, std::size_t n, const std::vector<Vector>& vs) {
  return span(Matrix::from_rows(f, vs, n));
}

bool Subspace::contains(const Vector& v) const {
  if (v.size() != n_) throw AmbientMismatch("vector of length " + std::to_string(v.size()) + " in F^" + std::to_string(n_));
  // reduce against the canonical basis
  Vector w = v;
  for (std::size_t r = 0; r < basis_.rows(); ++r) {
    std::size_t c = 0;
    while (basis_(r, c).is_zero()) ++c;
    if (w[c].is_zero()) continue;
    Scalar f = w[c];
    for (std::size_t j = c; j < n_; ++j) w[j] -= f * basis_(r, j);
  }
  for (const auto& x : w)
    if (!x.is_zero()) return false;
  return true;
}

bool Subspace::contains(const Subspace& w) const {
  if (w.n_ != n_) throw AmbientMismatch("F^" + std::to_string(w.n_) + " vs F^" + std::to_string(n_));
  if (w.dim() > dim()) return false;
  for (std::size_t i = 0; i < w.dim(); ++i)
    if (!contains(w.vector(i))) return false;
  return true;
}

bool Subspace::operator==(const Subspace& o) const { return n_ == o.n_ && basis_ == o.basis_; }

std::string Subspace::key() const { return std::to_string(n_) + basis_.str(); }

std::string Subspace::str() const {
  std::string s = "<";
  for (std::size_t i = 0; i < dim(); ++i) {
    if (i) s += ", ";
    s += vector_str(vector(i));
  }
  return s + ">";
}

Subspace kernel(const Matrix& m) {
  std::vector<std::size_t> piv;
  Matrix r = rref(m, &piv);
  std::size_t n = m.cols();
  std::vector<bool> is_piv(n, false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<Vector> vs;
  for (std::size_t fcol = 0; fcol < n; ++fcol) {
    if (is_piv[fcol]) continue;
    Vector v(n, Scalar(m.field()));
    v[fcol] = Scalar::one(m.field());
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, fcol);
    vs.push_back(std::move(v));
  }
  return Subspace::span(m.field(), n, vs);
}

Subspace image(const Matrix& m) { return Subspace::span(m.transpose()); }

Subspace apply(const Matrix& m, const Subspace& u) {
  if (m.cols() != u.ambient_dim()) throw AmbientMismatch("map from F^" + std::to_string(m.cols()) + " applied to a subspace of F^" + std::to_string(u.ambient_dim()));
  if (u.dim() == 0) return Subspace::zero(m.field(), m.rows());
  return Subspace::span(u.basis() * m.transpose());
}

Subspace subspace_sum(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw AmbientMismatch("F^" + std::to_string(u.ambient_dim()) + " vs F^" + std::to_string(v.ambient_dim()));
  return Subspace::span(Matrix::vstack({u.basis(), v.basis()}));
}

Subspace subspace_intersect(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw AmbientMismatch("F^" + std::to_string(u.ambient_dim()) + " vs F^" + std::to_string(v.ambient_dim()));
  const Field& f = u.field();
  std::size_t n = u.ambient_dim();
  if (u.dim() == 0 || v.dim() == 0) return Subspace::zero(f, n);
  // a.U = b.V  <=>  [U^T | -V^T] (a, b) = 0
  Matrix sys = Matrix::hstack({u.basis().transpose(), -v.basis().transpose()});
  Subspace k = kernel(sys);
  if (k.dim() == 0) return Subspace::zero(f, n);
  Matrix coeff = k.basis().block(0, 0, k.dim(), u.dim());
  return Subspace::span(coeff * u.basis());
}

Subspace preimage(const Matrix& m, const Subspace& w) {
  if (m.rows() != w.ambient_dim()) throw AmbientMismatch("map into F^" + std::to_string(m.rows()) + " vs subspace of F^" + std::to_string(w.ambient_dim()));
  const Field& f = m.field();
  std::size_t n = m.cols();
  if (w.dim() == w.ambient_dim()) return Subspace::full(f, n);
  // M v = W^T c  <=>  [M | -W^T] (v, c) = 0
  Matrix sys = Matrix::hstack({m, -w.basis().transpose()});
  if (w.dim() == 0) sys = m;
  Subspace k = kernel(sys);
  if (k.dim() == 0) return Subspace::zero(f, n);
  return Subspace::span(k.basis().block(0, 0, k.dim(), n));
}

Subspace orth_complement(const Subspace& w, const Matrix& gram) {
  std::size_t n = w.ambient_dim();
  if (gram.rows() != n || gram.cols() != n) throw AmbientMismatch("gram is " + std::to_string(gram.rows()) + "x" + std::to_string(gram.cols()) + ", ambient F^" + std::to_string(n));
  if (gram.rank() != n) throw SingularGram("rank " + std::to_string(gram.rank()) + " < " + std::to_string(n));
  if (w.dim() == 0) return Subspace::full(w.field(), n);
  return kernel(w.basis() * gram);
}

std::vector<Vector> complement_basis(const Subspace& w, const Subspace& u) {
  std::vector<Vector> out;
  Subspace cur = u;
  for (std::size_t i = 0; i < w.dim(); ++i) {
    Vector v = w.vector(i);
    if (cur.contains(v)) continue;
    out.push_back(v);
    cur = subspace_sum(cur, Subspace::span(w.field(), w.ambient_dim(), {v}));
  }
  return out;
}

AffineSolution solve_linear(const Matrix& coeffs, const Matrix& rhs) {
  if (rhs.cols() != 1 || rhs.rows() != coeffs.rows()) throw ShapeMismatch("rhs must be a column with one entry per equation");
  const Field& f = coeffs.field();
  std::size_t n = coeffs.cols();
  std::vector<std::size_t> piv;
  Matrix r = rref(Matrix::hstack({coeffs, rhs}), &piv);
  AffineSolution s;
  if (!piv.empty() && piv.back() == n) return s;
  s.consistent = true;
  s.particular = zero_vector(f, n);
  for (std::size_t i = 0; i < piv.size(); ++i) s.particular[piv[i]] = r(i, n);
  Subspace k = kernel(coeffs);
  for (std::size_t i = 0; i < k.dim(); ++i) s.homogeneous.push_back(k.vector(i));
  return s;
}

Vector zero_vector(Field f, std::size_t n) { return Vector(n, Scalar(f)); }

Vector unit_vector(Field f, std::size_t n, std::size_t i) {
  Vector v = zero_vector(f, n);
  v.at(i) = Scalar::one(f);
  return v;
}

Scalar dot(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) throw ShapeMismatch("dot of vectors of different lengths");
  if (u.empty()) return Scalar();
  Scalar s(u[0].field());
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

std::string vector_str(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

}  // namespace springer
