#include "springer/flag.hpp"

#include "springer/error.hpp"

namespace springer {

Shape::Shape(int n_minus_k, int k) : a(n_minus_k), b(k) {
  if (k < 0 || n_minus_k < k) throw InvalidShape("need n-k >= k >= 0, got (" + std::to_string(n_minus_k) + "," + std::to_string(k) + ")");
}

std::size_t Shape::e_index(int i) const {
  if (i < 1 || i > a) throw IndexOutOfRange("e_" + std::to_string(i) + " in shape " + str());
  return static_cast<std::size_t>(i - 1);
}

std::size_t Shape::f_index(int i) const {
  if (i < 1 || i > b) throw IndexOutOfRange("f_" + std::to_string(i) + " in shape " + str());
  return static_cast<std::size_t>(a + i - 1);
}

Vector Shape::e(const Field& f, int i) const { return unit_vector(f, n(), e_index(i)); }
Vector Shape::f(const Field& fld, int i) const { return unit_vector(fld, n(), f_index(i)); }

Matrix standard_nilpotent(const Field& f, const Shape& s) {
  Matrix x(f, s.n(), s.n());
  for (int i = 2; i <= s.a; ++i) x(s.e_index(i - 1), s.e_index(i)) = Scalar::one(f);
  for (int i = 2; i <= s.b; ++i) x(s.f_index(i - 1), s.f_index(i)) = Scalar::one(f);
  return x;
}

Matrix gram_matrix(const Field& f, const Shape& s) {
  require_typeD_partition(s.n(), s.k());
  Matrix g(f, s.n(), s.n());
  auto sign = [&](int r) { return Scalar(f, r % 2 ? 1L : -1L); };
  if (s.equal_parts()) {
    int m = s.a;
    for (int r = 1; r <= m; ++r) {
      g(s.e_index(r), s.f_index(m + 1 - r)) = sign(r);
      g(s.f_index(m + 1 - r), s.e_index(r)) = sign(r);
    }
  } else {
    for (int r = 1; r <= s.a; ++r) g(s.e_index(r), s.e_index(s.a + 1 - r)) = sign(r);
    for (int r = 1; r <= s.b; ++r) g(s.f_index(r), s.f_index(s.b + 1 - r)) = sign(r);
  }
  return g;
}

Flag::Flag(std::vector<Subspace> spaces) : spaces_(std::move(spaces)) {
  if (spaces_.empty()) throw ValidationError("a flag needs at least F_0");
  std::size_t n = spaces_.size() - 1;
  for (std::size_t i = 0; i <= n; ++i) {
    if (spaces_[i].ambient_dim() != n) throw AmbientMismatch("F_" + std::to_string(i) + " lives in F^" + std::to_string(spaces_[i].ambient_dim()));
    if (spaces_[i].dim() != i) throw ValidationError("dim F_" + std::to_string(i) + " = " + std::to_string(spaces_[i].dim()));
    if (i && !spaces_[i].contains(spaces_[i - 1])) throw ValidationError("F_" + std::to_string(i - 1) + " not inside F_" + std::to_string(i));
  }
}

Flag Flag::from_proper(const Field& f, std::size_t n, std::vector<Subspace> middle) {
  std::vector<Subspace> all;
  all.push_back(Subspace::zero(f, n));
  for (auto& s : middle) all.push_back(std::move(s));
  all.push_back(Subspace::full(f, n));
  return Flag(std::move(all));
}

std::string Flag::key() const {
  std::string k;
  for (const auto& s : spaces_) k += s.key() + "|";
  return k;
}

Flag complete_isotropic(const std::vector<Subspace>& lower, const Matrix& gram) {
  std::size_t n = gram.rows();
  std::size_t m = n / 2;
  if (lower.size() < m) throw SizeMismatch("need F_1..F_" + std::to_string(m) + ", got " + std::to_string(lower.size()));
  const Field& f = gram.field();
  std::vector<Subspace> all;
  all.push_back(Subspace::zero(f, n));
  for (std::size_t i = 0; i < m; ++i) all.push_back(lower[i]);
  for (std::size_t i = m + 1; i <= n; ++i) all.push_back(orth_complement(all[n - i], gram));
  return Flag(std::move(all));
}

bool is_x_stable(const Flag& fl, const Matrix& x) {
  if (x.cols() != fl.ambient_dim()) throw AmbientMismatch("x acts on F^" + std::to_string(x.cols()) + ", flag in F^" + std::to_string(fl.ambient_dim()));
  for (std::size_t i = 1; i <= fl.length(); ++i)
    if (!fl[i - 1].contains(apply(x, fl[i]))) return false;
  return true;
}

Subspace x_preimage(const Matrix& x, const Subspace& w, int s) {
  Subspace r = w;
  for (int t = 0; t < s; ++t) r = preimage(x, r);
  return r;
}

Subspace x_image(const Matrix& x, const Subspace& w, int s) {
  Subspace r = w;
  for (int t = 0; t < s; ++t) r = apply(x, r);
  return r;
}

bool typeA_cup_rel(const Flag& fl, const Matrix& x, int i, int j) {
  if ((j - i + 1) % 2) throw BadParity("cup " + std::to_string(i) + "-" + std::to_string(j) + " has even span");
  if (i < 1 || static_cast<std::size_t>(j) > fl.length()) throw IndexOutOfRange("cup outside the flag");
  return fl[j] == x_preimage(x, fl[i - 1], (j - i + 1) / 2);
}

bool typeA_ray_rel(const Flag& fl, const Shape& s, const DiagramStats& st, int i) {
  if (!st.is_ray(i)) throw NotACupEndpoint("vertex " + std::to_string(i) + " is not a ray");
  int twice = i + st.rho(i);
  if (twice % 2) throw BadParity("i + rho(i) odd at " + std::to_string(i));
  const Field& f = fl.field();
  Vector e = s.e(f, twice / 2);
  if (fl[i - 1].contains(e)) return false;
  return fl[i] == subspace_sum(fl[i - 1], Subspace::span(f, s.n(), {e}));
}

bool in_K_a(const Flag& fl, const Shape& s, const CupDiagram& a) {
  if (a.n() != s.n() || a.k() != s.k()) return false;
  Matrix x = standard_nilpotent(fl.field(), s);
  for (auto [i, j] : a.cups())
    if (!typeA_cup_rel(fl, x, i, j)) return false;
  DiagramStats st = stats(a);
  for (int r : a.rays())
    if (!typeA_ray_rel(fl, s, st, r)) return false;
  return true;
}

bool is_isotropic_vector(const Vector& v, const Matrix& gram) {
  const Field& f = gram.field();
  if (f.characteristic() != 2) return dot(v, gram * v).is_zero();
  // quadratic form sum_{r<c} g_rc v_r v_c (the diagonal is required to vanish)
  Scalar q(f);
  for (std::size_t r = 0; r < v.size(); ++r) {
    if (!gram(r, r).is_zero()) throw SingularGram("characteristic 2 needs a gram matrix with zero diagonal");
    for (std::size_t c = r + 1; c < v.size(); ++c) q += gram(r, c) * v[r] * v[c];
  }
  return q.is_zero();
}

bool is_totally_isotropic(const Subspace& w, const Matrix& gram) {
  Matrix b = w.basis();
  if (!(b * gram * b.transpose()).is_zero()) return false;
  for (std::size_t i = 0; i < w.dim(); ++i)
    if (!is_isotropic_vector(w.vector(i), gram)) return false;
  return true;
}

bool is_isotropic_flag(const Flag& fl, const Matrix& gram) {
  std::size_t n = fl.length();
  if (gram.rows() != n) throw AmbientMismatch("gram of size " + std::to_string(gram.rows()) + " for a flag in F^" + std::to_string(n));
  for (std::size_t i = 0; i <= n; ++i)
    if (fl[i] != orth_complement(fl[n - i], gram)) return false;
  if (gram.field().characteristic() == 2 && !is_totally_isotropic(fl[n / 2], gram)) return false;
  return true;
}

std::optional<Scalar> ray_twist(const Field& f, const Shape& s) {
  // tau^2 = (-1)^{(n-2k)/2 + 1}
  if (((s.n() - 2 * s.k()) / 2) % 2 == 1) return Scalar::one(f);
  return sqrt_minus_one(f);
}

std::optional<Subspace> ray_space(const Field& f, const Shape& s, const MarkedCupDiagram& adot, int i, bool marked) {
  std::vector<Vector> vs;
  if (s.equal_parts()) {
    if (i % 2 == 0) throw BadParity("ray at even vertex " + std::to_string(i) + " for equal parts");
    int ne = marked ? (i - 1) / 2 : (i + 1) / 2;
    int nf = marked ? (i + 1) / 2 : (i - 1) / 2;
    for (int t = 1; t <= ne; ++t) vs.push_back(s.e(f, t));
    for (int t = 1; t <= nf; ++t) vs.push_back(s.f(f, t));
    return Subspace::span(f, s.n(), vs);
  }
  int c = adot.cups_left_of(i);
  if (i == adot.rightmost_ray()) {
    auto tau = ray_twist(f, s);
    if (!tau) return std::nullopt;
    Scalar t = marked ? *tau : -*tau;
    for (int u = 1; u <= i - c - 1; ++u) vs.push_back(s.e(f, u));
    for (int u = 1; u <= c; ++u) vs.push_back(s.f(f, u));
    Vector v = s.f(f, c + 1);
    v[s.e_index(i - c)] = t;
    vs.push_back(v);
  } else {
    for (int u = 1; u <= i - c; ++u) vs.push_back(s.e(f, u));
    for (int u = 1; u <= c; ++u) vs.push_back(s.f(f, u));
  }
  return Subspace::span(f, s.n(), vs);
}

MarkedReport marked_relations(const Flag& fl, const Shape& s, const MarkedCupDiagram& adot) {
  require_typeD_partition(s.n(), s.k());
  MarkedReport rep;
  if (fl.length() != static_cast<std::size_t>(s.n())) throw AmbientMismatch("flag length " + std::to_string(fl.length()) + " for shape " + s.str());
  if (2 * adot.m() != s.n() || adot.num_cups() != s.k() / 2) {
    rep.holds = false;
    return rep;
  }
  const Field& f = fl.field();
  int n = s.n();
  Matrix x = standard_nilpotent(f, s);
  Matrix gram = gram_matrix(f, s);
  for (const auto& c : adot.cups()) {
    FeatureReport fr{"cup", c.marked, c.i, c.j, false};
    int h = (c.j - c.i + 1) / 2;
    if ((c.j - c.i + 1) % 2) throw BadParity("cup " + std::to_string(c.i) + "-" + std::to_string(c.j));
    if (!c.marked) {
      fr.holds = fl[c.j] == x_preimage(x, fl[c.i - 1], h);
    } else {
      bool first = subspace_sum(x_image(x, fl[c.j], h), fl[c.i - 1]) == fl[c.i];
      bool second = x_image(x, orth_complement(fl[c.j], gram), (n - 2 * c.j) / 2) == fl[c.j];
      fr.holds = first && second;
    }
    rep.holds = rep.holds && fr.holds;
    rep.features.push_back(fr);
  }
  for (const auto& r : adot.rays()) {
    FeatureReport fr{"ray", r.marked, r.i, 0, false};
    auto want = ray_space(f, s, adot, r.i, r.marked);
    fr.holds = want && fl[r.i] == *want;
    rep.holds = rep.holds && fr.holds;
    rep.features.push_back(fr);
  }
  return rep;
}

bool in_K_marked(const Flag& fl, const Shape& s, const MarkedCupDiagram& adot) { return marked_relations(fl, s, adot).holds; }

}  // namespace springer
