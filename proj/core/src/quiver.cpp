#include "springer/quiver.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "springer/error.hpp"

namespace springer {

namespace {

std::string idx(int i) { return std::to_string(i); }

Scalar sparse_scalar(const Field& f, std::mt19937_64& rng) {
  if (rng() % 2 == 0) return Scalar(f);
  return random_scalar(f, rng, 3);
}

Matrix sparse_matrix(const Field& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = sparse_scalar(f, rng);
  return m;
}

// Linear system from a residual R(u) = L(u) - c over a flat unknown vector.
struct LinearSystem {
  Matrix coeffs, rhs;
};

LinearSystem linearize(const Field& f, std::size_t unknowns, const std::function<Vector(const Vector&)>& residual) {
  Vector zero = zero_vector(f, unknowns);
  Vector r0 = residual(zero);
  LinearSystem s{Matrix(f, r0.size(), unknowns), Matrix(f, r0.size(), 1)};
  for (std::size_t e = 0; e < r0.size(); ++e) s.rhs(e, 0) = -r0[e];
  for (std::size_t u = 0; u < unknowns; ++u) {
    Vector ru = residual(unit_vector(f, unknowns, u));
    for (std::size_t e = 0; e < r0.size(); ++e) s.coeffs(e, u) = ru[e] - r0[e];
  }
  return s;
}

void append(Vector& out, const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
}

// square blocks g_1..g_{n-1} packed row-major
struct BlockLayout {
  std::vector<std::size_t> offset;
  std::vector<int> size;
  std::size_t total = 0;
  BlockLayout(const std::vector<int>& sizes) : size(sizes) {
    for (int s : sizes) {
      offset.push_back(total);
      total += static_cast<std::size_t>(s) * s;
    }
  }
  Matrix block(const Field& f, const Vector& u, int i) const {
    Matrix m(f, size[i], size[i]);
    for (int r = 0; r < size[i]; ++r)
      for (int c = 0; c < size[i]; ++c) m(r, c) = u[offset[i] + r * size[i] + c];
    return m;
  }
};

}  // namespace

DimVectors dim_vectors(int n, int k) {
  if (n < 0 || k < 0 || 2 * k > n) throw InvalidShape("need 0 <= k <= n-k, got n=" + idx(n) + " k=" + idx(k));
  DimVectors d;
  d.n = n;
  d.k = k;
  d.v.assign(n + 1, 0);
  d.d.assign(n + 1, 0);
  for (int i = 0; i <= n; ++i) d.v[i] = std::min({i, k, n - i});
  if (n == 2 * k) {
    d.d[k] = 2;
  } else {
    d.d[k] = 1;
    d.d[n - k] = 1;
  }
  return d;
}

QuiverRep::QuiverRep(Field f, int n, int k) : field_(f), dims_(dim_vectors(n, k)) {
  const auto& v = dims_.v;
  for (int i = 0; i < n; ++i) {
    A.emplace_back(f, v[i + 1], v[i]);
    B.emplace_back(f, v[i], v[i + 1]);
  }
  for (int j = 0; j <= n; ++j) {
    Gamma.emplace_back(f, v[j], dims_.d[j]);
    Delta.emplace_back(f, dims_.d[j], v[j]);
  }
}

void QuiverRep::validate() const {
  const auto& v = dims_.v;
  int n = dims_.n;
  auto need = [&](const Matrix& m, int r, int c, const std::string& name) {
    if (m.rows() != static_cast<std::size_t>(r) || m.cols() != static_cast<std::size_t>(c))
      throw ShapeMismatch(name + " is " + idx(static_cast<int>(m.rows())) + "x" + idx(static_cast<int>(m.cols())) + ", expected " + idx(r) + "x" + idx(c));
    if (m.field() != field_ && (r * c) > 0) throw FieldMismatch(name + " over " + m.field().name());
  };
  if (A.size() != static_cast<std::size_t>(n) || B.size() != static_cast<std::size_t>(n)) throw ShapeMismatch("need A_0..A_{n-1} and B_0..B_{n-1}");
  if (Gamma.size() != static_cast<std::size_t>(n + 1) || Delta.size() != static_cast<std::size_t>(n + 1)) throw ShapeMismatch("need Gamma_0..Gamma_n");
  for (int i = 0; i < n; ++i) {
    need(A[i], v[i + 1], v[i], "A_" + idx(i));
    need(B[i], v[i], v[i + 1], "B_" + idx(i));
  }
  for (int j = 0; j <= n; ++j) {
    need(Gamma[j], v[j], dims_.d[j], "Gamma_" + idx(j));
    need(Delta[j], dims_.d[j], v[j], "Delta_" + idx(j));
  }
}

std::size_t QuiverRep::e_col() const { return dims_.n == 2 * dims_.k ? 1 : 0; }

Matrix QuiverRep::path_A(int p, int q) const {
  if (p < 0 || q > n() || p > q) throw IndexOutOfRange("A-path " + idx(p) + "->" + idx(q));
  Matrix m = Matrix::identity(field_, v(p));
  for (int t = p; t < q; ++t) m = A[t] * m;
  return m;
}

Matrix QuiverRep::path_B(int q, int p) const {
  if (p < 0 || q > n() || p > q) throw IndexOutOfRange("B-path " + idx(q) + "->" + idx(p));
  Matrix m = Matrix::identity(field_, v(q));
  for (int t = q - 1; t >= p; --t) m = B[t] * m;
  return m;
}

Matrix QuiverRep::gamma_path(int j, int i) const {
  if (j < 0 || j > n() || i < 0 || i > n()) throw IndexOutOfRange("Gamma-path " + idx(j) + "->" + idx(i));
  return (j >= i ? path_B(j, i) : path_A(j, i)) * Gamma[j];
}

Matrix QuiverRep::delta_path(int j, int i) const {
  if (j < 0 || j > n() || i < 0 || i > n()) throw IndexOutOfRange("Delta-path " + idx(j) + "->" + idx(i));
  return Delta[i] * (j >= i ? path_B(j, i) : path_A(j, i));
}

Matrix QuiverRep::gamma_e_to(int i) const {
  Matrix g = gamma_path(n() - k(), i);
  return g.block(0, e_col(), g.rows(), 1);
}

Matrix QuiverRep::gamma_f_to(int i) const {
  Matrix g = gamma_path(k(), i);
  return g.block(0, f_col(), g.rows(), 1);
}

Matrix QuiverRep::delta_e_from(int i) const {
  Matrix d = delta_path(i, n() - k());
  return d.block(e_col(), 0, 1, d.cols());
}

Matrix QuiverRep::delta_f_from(int i) const {
  Matrix d = delta_path(i, k());
  return d.block(f_col(), 0, 1, d.cols());
}

bool QuiverRep::operator==(const QuiverRep& o) const {
  return field_ == o.field_ && dims_.n == o.dims_.n && dims_.k == o.dims_.k && A == o.A && B == o.B && Gamma == o.Gamma &&
         Delta == o.Delta;
}

bool is_admissible(const QuiverRep& r) {
  r.validate();
  for (int i = 1; i < r.n(); ++i) {
    Matrix lhs = r.B[i] * r.A[i];
    Matrix rhs = r.A[i - 1] * r.B[i - 1] + r.Gamma[i] * r.Delta[i];
    if (lhs != rhs) return false;
  }
  return true;
}

bool is_stable(const QuiverRep& r) {
  if (!is_admissible(r)) throw NotAdmissible("ADHM equations fail");
  const Field& f = r.field();
  for (int i = 1; i < r.n(); ++i) {
    Subspace s = image(r.A[i - 1]);
    for (int j : {r.k(), r.n() - r.k()}) {
      if (j < i) continue;
      s = subspace_sum(s, image(r.gamma_path(j, i)));
      if (r.n() == 2 * r.k()) break;
    }
    if (s != Subspace::full(f, r.v(i))) return false;
  }
  return true;
}

bool is_springer_point(const QuiverRep& r) {
  for (const auto& d : r.Delta)
    if (!d.is_zero()) return false;
  return true;
}

QuiverRep gl_apply(const std::vector<Matrix>& g, const QuiverRep& r) {
  int n = r.n();
  if (g.size() != static_cast<std::size_t>(n + 1)) throw ShapeMismatch("need g_0..g_n");
  std::vector<Matrix> inv;
  for (int i = 0; i <= n; ++i) {
    if (g[i].rows() != static_cast<std::size_t>(r.v(i)) || g[i].cols() != static_cast<std::size_t>(r.v(i)))
      throw ShapeMismatch("g_" + idx(i) + " must be " + idx(r.v(i)) + "x" + idx(r.v(i)));
    try {
      inv.push_back(g[i].rows() ? g[i].inverse() : g[i]);
    } catch (const SingularMatrix&) {
      throw SingularG("g_" + idx(i) + " is not invertible");
    }
  }
  QuiverRep out = r;
  for (int i = 0; i < n; ++i) {
    out.A[i] = g[i + 1] * r.A[i] * inv[i];
    out.B[i] = g[i] * r.B[i] * inv[i + 1];
  }
  for (int j = 0; j <= n; ++j) {
    out.Gamma[j] = g[j] * r.Gamma[j];
    out.Delta[j] = r.Delta[j] * inv[j];
  }
  return out;
}

TildeRep build_tilde(const QuiverRep& r) {
  if (!is_stable(r)) throw NotStable("stability fails");
  int n = r.n(), k = r.k();
  const Field& f = r.field();
  TildeRep t;
  t.n = n;
  t.k = k;
  t.field = f;
  for (int i = 0; i <= n; ++i) {
    t.v.push_back(r.v(i));
    t.ne.push_back(std::max(n - k - i, 0));
    t.nf.push_back(std::max(k - i, 0));
  }
  Scalar one = Scalar::one(f);
  for (int i = 0; i < n; ++i) {
    Matrix a(f, t.tilde_dim(i + 1), t.tilde_dim(i));
    a.set_block(0, 0, r.A[i]);
    if (t.ne[i] >= 1) a.set_block(0, t.e_at(i, 1), r.gamma_e_to(i + 1));
    if (t.nf[i] >= 1) a.set_block(0, t.f_at(i, 1), r.gamma_f_to(i + 1));
    for (int h = 2; h <= t.ne[i]; ++h) a(t.e_at(i + 1, h - 1), t.e_at(i, h)) = one;
    for (int h = 2; h <= t.nf[i]; ++h) a(t.f_at(i + 1, h - 1), t.f_at(i, h)) = one;
    t.A.push_back(std::move(a));

    Matrix b(f, t.tilde_dim(i), t.tilde_dim(i + 1));
    b.set_block(0, 0, r.B[i]);
    for (int h = 1; h <= t.ne[i + 1]; ++h) b(t.e_at(i, h), t.e_at(i + 1, h)) = one;
    for (int h = 1; h <= t.nf[i + 1]; ++h) b(t.f_at(i, h), t.f_at(i + 1, h)) = one;
    if (t.ne[i] >= 1) b.set_block(t.e_at(i, t.ne[i]), 0, r.delta_e_from(i + 1));
    if (t.nf[i] >= 1) b.set_block(t.f_at(i, t.nf[i]), 0, r.delta_f_from(i + 1));
    t.B.push_back(std::move(b));
  }
  return t;
}

TildeReport check_tilde(const TildeRep& t) {
  TildeReport rep;
  const Field& f = t.field;
  int n = t.n, k = t.k;
  Scalar one = Scalar::one(f);

  rep.admissible = true;
  for (int i = 1; i < n; ++i) {
    // index 0 holds Gamma~_1, Delta~_1, so at i = 1 the right side is Gamma~_1 Delta~_1
    if (t.B[i] * t.A[i] != t.A[i - 1] * t.B[i - 1]) {
      rep.admissible = false;
      rep.failures.push_back("admissibility at " + idx(i));
    }
  }

  rep.stable = true;
  for (int i = 1; i < n; ++i) {
    if (t.A[i - 1].rank() != static_cast<std::size_t>(t.tilde_dim(i))) {
      rep.stable = false;
      rep.failures.push_back("stability at " + idx(i));
    }
  }

  rep.commutator = true;
  for (int i = 0; i + 2 <= n; ++i) {
    int ne = t.ne[i], nf = t.nf[i], d = ne + nf;
    Matrix ba = t.B[i] * t.A[i];
    Matrix c = ba.block(t.v[i], t.v[i], d, d);
    Matrix x(f, d, d), y(f, d, d);
    for (int h = 2; h <= ne; ++h) x(h - 2, h - 1) = one;
    for (int h = 2; h <= nf; ++h) x(ne + h - 2, ne + h - 1) = one;
    for (int h = 1; h < ne; ++h) y(h, h - 1) = Scalar(f, static_cast<long>(h) * (ne - h));
    for (int h = 1; h < nf; ++h) y(ne + h, ne + h - 1) = Scalar(f, static_cast<long>(h) * (nf - h));
    Matrix cx = c - x;
    if (cx * y != y * cx) {
      rep.commutator = false;
      rep.failures.push_back("commutator at " + idx(i));
    }
  }

  rep.block_pattern = true;
  auto fail = [&](int i, const std::string& what) {
    rep.block_pattern = false;
    rep.failures.push_back("block pattern at " + idx(i) + ": " + what);
  };
  for (int i = 0; i + 2 <= n; ++i) {
    const Matrix& a = t.A[i];
    const Matrix& b = t.B[i];
    // T blocks: D'_i -> D'_{i+1} inside A~_i; S blocks: D'_{i+1} -> D'_i inside B~_i
    for (int ps = 0; ps < 2; ++ps)
      for (int ph = 0; ph < 2; ++ph) {
        bool psi_e = ps == 0, phi_e = ph == 0;
        int nb_t = psi_e ? t.ne[i] : t.nf[i], na_t = phi_e ? t.ne[i + 1] : t.nf[i + 1];
        for (int bb = 1; bb <= nb_t; ++bb)
          for (int aa = 1; aa <= na_t; ++aa) {
            const Scalar& val = a(phi_e ? t.e_at(i + 1, aa) : t.f_at(i + 1, aa), psi_e ? t.e_at(i, bb) : t.f_at(i, bb));
            bool zero_needed = false, id_needed = false;
            if (psi_e == phi_e) {
              zero_needed = bb > aa + 1;
              id_needed = bb == aa + 1;
            } else if (psi_e) {
              zero_needed = bb >= aa + 1;
            } else {
              zero_needed = bb >= aa + 1 + 2 * k - n;
            }
            if (zero_needed && !val.is_zero()) fail(i, "T block nonzero");
            if (id_needed && !val.is_one()) fail(i, "T block not identity");
          }
        int nb_s = psi_e ? t.ne[i + 1] : t.nf[i + 1], na_s = phi_e ? t.ne[i] : t.nf[i];
        for (int bb = 1; bb <= nb_s; ++bb)
          for (int aa = 1; aa <= na_s; ++aa) {
            const Scalar& val = b(phi_e ? t.e_at(i, aa) : t.f_at(i, aa), psi_e ? t.e_at(i + 1, bb) : t.f_at(i + 1, bb));
            bool zero_needed = false, id_needed = false;
            if (psi_e == phi_e) {
              zero_needed = bb > aa;
              id_needed = bb == aa;
            } else if (psi_e) {
              zero_needed = bb >= aa;
            } else {
              zero_needed = bb >= aa + 2 * k - n;
            }
            if (zero_needed && !val.is_zero()) fail(i, "S block nonzero");
            if (id_needed && !val.is_one()) fail(i, "S block not identity");
          }
      }
    // V_i -> D'_{i+1} and D'_{i+1} -> V_i vanish
    if (!a.block(t.v[i + 1], 0, t.ne[i + 1] + t.nf[i + 1], t.v[i]).is_zero()) fail(i, "A~ maps V into D'");
    if (!b.block(0, t.v[i + 1], t.v[i], t.ne[i + 1] + t.nf[i + 1]).is_zero()) fail(i, "B~ maps D' into V");
    // D'_i -> V_{i+1} only from e_1, f_1
    for (int bb = 2; bb <= t.ne[i]; ++bb)
      if (!a.block(0, t.e_at(i, bb), t.v[i + 1], 1).is_zero()) fail(i, "A~ maps e_" + idx(bb) + " into V");
    for (int bb = 2; bb <= t.nf[i]; ++bb)
      if (!a.block(0, t.f_at(i, bb), t.v[i + 1], 1).is_zero()) fail(i, "A~ maps f_" + idx(bb) + " into V");
    // V_{i+1} -> D'_i only into e_{n-k-i}, f_{k-i}
    for (int aa = 1; aa <= t.ne[i]; ++aa)
      if (aa != n - k - i && !b.block(t.e_at(i, aa), 0, 1, t.v[i + 1]).is_zero()) fail(i, "B~ maps V into e_" + idx(aa));
    for (int aa = 1; aa <= t.nf[i]; ++aa)
      if (aa != k - i && !b.block(t.f_at(i, aa), 0, 1, t.v[i + 1]).is_zero()) fail(i, "B~ maps V into f_" + idx(aa));
  }

  // Delta_{i->} Gamma_{->i} sits in B~_{i-1} A~_{i-1} between the top and bottom of D'_{i-1}
  rep.delta_gamma = true;
  for (int i = 2; i < n; ++i) {
    int j = i - 1;
    Matrix ba = t.B[j] * t.A[j];
    std::vector<std::size_t> rows, cols;
    if (t.ne[j] >= 1) {
      rows.push_back(t.e_at(j, t.ne[j]));
      cols.push_back(t.e_at(j, 1));
    }
    if (t.nf[j] >= 1) {
      rows.push_back(t.f_at(j, t.nf[j]));
      cols.push_back(t.f_at(j, 1));
    }
    for (auto rr : rows)
      for (auto cc : cols) {
        // x_j contributes e_2 -> e_1 only, never top <- bottom unless D' has one vector, where x_j = 0
        if (!ba(rr, cc).is_zero()) {
          rep.delta_gamma = false;
          rep.failures.push_back("Delta Gamma at " + idx(i));
        }
      }
  }
  return rep;
}

std::vector<std::string> maffei_labels(int n, int k) {
  std::vector<std::string> out;
  for (int t = 1; t <= n - k; ++t) {
    if (t <= k) out.push_back("f" + idx(t));
    out.push_back("e" + idx(t));
  }
  return out;
}

Matrix maffei_to_standard(const Field& f, int n, int k) {
  Shape s(n - k, k);
  Matrix p(f, n, n);
  std::size_t col = 0;
  for (int t = 1; t <= n - k; ++t) {
    if (t <= k) p(s.f_index(t), col++) = Scalar::one(f);
    p(s.e_index(t), col++) = Scalar::one(f);
  }
  return p;
}

MaffeiResult maffei_flag(const QuiverRep& r) {
  TildeRep t = build_tilde(r);
  int n = r.n(), k = r.k();
  const Field& f = r.field();
  MaffeiResult res;
  res.labels = maffei_labels(n, k);
  Matrix to_std = maffei_to_standard(f, n, k);
  std::vector<Subspace> standard;
  for (int i = 0; i <= n; ++i) {
    std::vector<Matrix> blocks;
    for (int tt = 1; tt <= i && tt <= n - k; ++tt) {
      Matrix path = r.path_A(tt, i);
      if (tt <= k) blocks.push_back(path * r.gamma_f_to(tt));
      blocks.push_back(path * r.gamma_e_to(tt));
    }
    std::size_t cols = 0;
    for (const auto& b : blocks) cols += b.cols();
    Subspace ker = blocks.empty() ? Subspace::zero(f, 0) : kernel(Matrix::hstack(blocks));
    // pad to all n Maffei coordinates
    Matrix padded(f, ker.dim(), n);
    padded.set_block(0, 0, ker.basis());
    (void)cols;
    Subspace km = Subspace::span(padded);
    res.kernels.push_back(km);
    standard.push_back(apply(to_std, km));
  }
  res.flag = Flag(standard);
  res.x = t.B[0] * t.A[0];
  return res;
}

bool check_quiver_cup(const QuiverRep& r, int i, int j) {
  if ((j - i + 1) % 2) throw BadParity("cup " + idx(i) + "-" + idx(j) + " has even span");
  if (i < 1 || j > r.n() || i >= j) throw IndexOutOfRange("cup " + idx(i) + "-" + idx(j));
  int m = (i + j - 1) / 2;
  return kernel(r.path_B(m, i - 1)) == kernel(r.path_A(m, j));
}

bool check_quiver_ray(const QuiverRep& r, int i, const DiagramStats& st) {
  int c = st.c(i);
  if (c >= 1) {
    if (i >= r.n()) return true;
    return (r.B[i] * r.A[i]).is_zero();
  }
  return r.gamma_e_to(i).is_zero();
}

bool in_lambda_a(const QuiverRep& r, const CupDiagram& a) {
  if (a.n() != r.n() || a.k() != r.k()) return false;
  for (auto [i, j] : a.cups())
    if (!check_quiver_cup(r, i, j)) return false;
  return true;
}

namespace {

// sigma_k on D_k = <f, e>: f -> (-1)^k f, e -> e
Matrix sigma_k(const Field& f, int k) {
  Matrix s = Matrix::identity(f, 2);
  if (k % 2) s(0, 0) = Scalar(f, -1L);
  return s;
}

}  // namespace

QuiverRep theta(const QuiverRep& r) {
  int n = r.n(), k = r.k();
  require_typeD_partition(n, k);
  QuiverRep out = r;
  for (int i = 0; i < n; ++i) {
    out.A[i] = r.B[n - 1 - i];
    out.B[i] = r.A[n - 1 - i];
  }
  for (int j = 0; j <= n; ++j) {
    out.Gamma[j] = r.Gamma[n - j];
    out.Delta[j] = r.Delta[n - j];
  }
  // sigma_k is its own inverse
  if (n == 2 * k) out.Gamma[k] = r.Gamma[k] * sigma_k(r.field(), k);
  return out;
}

std::string ThetaFixedResult::name() const {
  switch (kind) {
    case Kind::FixedWith: return "FixedWith";
    case Kind::NotFixed: return "NotFixed";
    case Kind::Undetermined: return "Undetermined";
  }
  return "?";
}

ThetaFixedResult is_theta_fixed(const QuiverRep& r, int trials, std::uint64_t seed) {
  int n = r.n(), k = r.k();
  require_typeD_partition(n, k);
  const Field& f = r.field();
  std::vector<int> sizes;
  for (int i = 0; i <= n; ++i) sizes.push_back(r.v(i));
  BlockLayout lay(sizes);

  auto residual = [&](const Vector& u) {
    Vector out;
    auto g = [&](int i) { return lay.block(f, u, i); };
    for (int i = 1; i + 1 < n; ++i) {
      append(out, r.A[i] * g(i) - g(i + 1) * r.B[n - 1 - i]);
      append(out, r.B[i] * g(i + 1) - g(i) * r.A[n - 1 - i]);
    }
    if (n == 2 * k) {
      append(out, r.Gamma[k] - g(k) * r.Gamma[k] * sigma_k(f, k));
    } else {
      append(out, r.Gamma[k] - g(k) * r.Gamma[n - k]);
      append(out, r.Gamma[n - k] - g(n - k) * r.Gamma[k]);
    }
    return out;
  };
  LinearSystem sys = linearize(f, lay.total, residual);
  AffineSolution sol = solve_linear(sys.coeffs, sys.rhs);
  ThetaFixedResult res;
  if (!sol.consistent) {
    res.kind = ThetaFixedResult::Kind::NotFixed;
    res.exhaustive = true;
    return res;
  }
  auto try_point = [&](const std::vector<Scalar>& coeff) -> bool {
    Vector u = sol.particular;
    for (std::size_t h = 0; h < coeff.size(); ++h)
      for (std::size_t e = 0; e < u.size(); ++e) u[e] += coeff[h] * sol.homogeneous[h][e];
    std::vector<Matrix> g;
    for (int i = 0; i <= n; ++i) {
      Matrix gi = lay.block(f, u, i);
      if (gi.rank() != gi.rows()) return false;
      g.push_back(gi);
    }
    res.kind = ThetaFixedResult::Kind::FixedWith;
    res.g = g;
    return true;
  };
  std::size_t h = sol.homogeneous.size();
  if (f.is_prime()) {
    double points = 1;
    for (std::size_t t = 0; t < h; ++t) points *= f.p();
    if (points <= 65536) {
      res.exhaustive = true;
      std::vector<std::uint32_t> digits(h, 0);
      while (true) {
        std::vector<Scalar> coeff;
        for (auto d : digits) coeff.emplace_back(f, static_cast<long>(d));
        if (try_point(coeff)) return res;
        std::size_t pos = 0;
        while (pos < h && ++digits[pos] == f.p()) digits[pos++] = 0;
        if (pos == h) break;
      }
      res.kind = ThetaFixedResult::Kind::NotFixed;
      return res;
    }
  }
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<Scalar> coeff;
    for (std::size_t t = 0; t < h; ++t) coeff.push_back(random_scalar(f, rng, 8));
    if (try_point(coeff)) return res;
  }
  res.kind = ThetaFixedResult::Kind::Undetermined;
  return res;
}

bool in_lambda_marked(const QuiverRep& r, const MarkedCupDiagram& adot) {
  int n = r.n(), k = r.k();
  require_typeD_partition(n, k);
  if (2 * adot.m() != n || adot.num_cups() != k / 2) return false;
  const Field& f = r.field();
  for (const auto& c : adot.cups()) {
    if ((c.j - c.i + 1) % 2) throw BadParity("cup " + idx(c.i) + "-" + idx(c.j));
    int m = (c.i + c.j - 1) / 2;
    bool same = kernel(r.path_B(m, c.i - 1)) == kernel(r.path_A(m, c.j));
    if (same == c.marked) return false;
  }
  DiagramStats st = stats(adot);
  for (const auto& ray : adot.rays()) {
    int i = ray.i;
    if (n == 2 * k) {
      if (i % 2 == 0) throw BadParity("ray at even vertex " + idx(i));
      int p = (i + 1) / 2;
      Matrix m = r.path_A(p, i) * r.gamma_path(k, p);
      Matrix ms = m * sigma_k(f, k);
      if (ray.marked ? m != ms : m != -ms) return false;
    } else if (i == adot.rightmost_ray()) {
      int p = k + st.rho(i) - 1;
      auto tau = ray_twist(f, Shape(n - k, k));
      if (!tau) return false;
      Matrix lhs = r.path_A(k, p) * r.Gamma[k];
      Matrix rhs = r.path_B(n - k, p) * r.Gamma[n - k];
      // marked: A Gamma_k = -tau B Gamma_{n-k}; unmarked: +tau
      Scalar s = ray.marked ? -*tau : *tau;
      if (lhs != rhs.scaled(s)) return false;
    }
  }
  return true;
}

std::optional<QuiverRep> sample_springer_point(const Field& f, int n, int k, const std::optional<CupDiagram>& a, std::uint64_t seed,
                                               const SampleOptions& opt) {
  DimVectors dv = dim_vectors(n, k);
  if (a && (a->n() != n || a->k() != k)) throw ShapeMismatch("diagram does not match the shape");
  std::mt19937_64 rng(seed);
  // unknowns: entries of B_1..B_{n-2}
  std::vector<std::size_t> off(n, 0);
  std::size_t total = 0;
  for (int i = 1; i + 1 < n; ++i) {
    off[i] = total;
    total += static_cast<std::size_t>(dv.v[i]) * dv.v[i + 1];
  }
  for (int attempt = 0; attempt < opt.component_retries; ++attempt) {
    std::optional<QuiverRep> found;
    for (int s = 0; s < opt.stability_retries && !found; ++s) {
      QuiverRep r(f, n, k);
      for (int i = 1; i + 1 < n; ++i) r.A[i] = sparse_matrix(f, dv.v[i + 1], dv.v[i], rng);
      auto bmat = [&](const Vector& u, int i) {
        Matrix b(f, dv.v[i], dv.v[i + 1]);
        if (i < 1 || i + 1 >= n) return b;
        for (int x = 0; x < dv.v[i]; ++x)
          for (int y = 0; y < dv.v[i + 1]; ++y) b(x, y) = u[off[i] + x * dv.v[i + 1] + y];
        return b;
      };
      auto residual = [&](const Vector& u) {
        Vector out;
        for (int i = 1; i < n; ++i) append(out, bmat(u, i) * r.A[i] - r.A[i - 1] * bmat(u, i - 1));
        return out;
      };
      LinearSystem sys = linearize(f, total, residual);
      AffineSolution sol = solve_linear(sys.coeffs, sys.rhs);
      Vector u = sol.particular;
      for (const auto& hv : sol.homogeneous) {
        Scalar c = sparse_scalar(f, rng);
        for (std::size_t e = 0; e < u.size(); ++e) u[e] += c * hv[e];
      }
      for (int i = 1; i + 1 < n; ++i) r.B[i] = bmat(u, i);
      r.Gamma[k] = sparse_matrix(f, dv.v[k], dv.d[k], rng);
      if (n != 2 * k) r.Gamma[n - k] = sparse_matrix(f, dv.v[n - k], dv.d[n - k], rng);
      if (is_stable(r)) found = std::move(r);
    }
    if (!found) continue;
    if (a && !in_lambda_a(*found, *a)) continue;
    return found;
  }
  return std::nullopt;
}

}  // namespace springer
