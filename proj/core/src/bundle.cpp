#include "springer/bundle.hpp"

#include <algorithm>
#include <tuple>

#include "springer/error.hpp"

namespace springer {

namespace {

std::string idx(int i) { return std::to_string(i); }

Vector combo(const Shape& s, const Field& f, const std::vector<std::tuple<char, int, Scalar>>& terms) {
  Vector v = zero_vector(f, s.n());
  for (const auto& [kind, i, c] : terms) {
    std::size_t at = kind == 'e' ? s.e_index(i) : s.f_index(i);
    v[at] += c;
  }
  return v;
}

MarkedCupDiagram shifted(int d, int new_m, const std::vector<Cup>& cups, const std::vector<Ray>& rays) {
  std::vector<Cup> c;
  std::vector<Ray> r;
  for (const auto& cup : cups) c.push_back({cup.i - d, cup.j - d, cup.marked});
  for (const auto& ray : rays) r.push_back({ray.i - d, ray.marked});
  return MarkedCupDiagram(new_m, c, r);
}

Scalar need_sqrt(const Scalar& a, const std::string& what) {
  auto r = sqrt(a);
  if (!r) throw MissingSqrtMinusOne(what + " needs a square root of " + a.str() + " in " + a.field().name());
  return *r;
}

Flag base_flag(const Field& f, const MarkedCupDiagram& adot, const std::vector<P1Point>& params) {
  Shape s = shape_of(adot);
  Matrix gram = gram_matrix(f, s);
  std::size_t n = s.n();
  std::vector<Subspace> lower;
  if (s.a == 1 && s.b == 1) {
    lower.push_back(Subspace::span(f, n, {adot.rays().at(0).marked ? s.f(f, 1) : s.e(f, 1)}));
  } else if (s.a == 2 && s.b == 2) {
    P1Point p = params.at(0).normalized();
    Vector v1 = combo(s, f, {{'e', 1, p.a}, {'f', 1, p.b}});
    lower.push_back(Subspace::span(f, n, {v1}));
    if (adot.cups().at(0).marked)
      lower.push_back(Subspace::span(f, n, {v1, combo(s, f, {{'e', 2, p.a}, {'f', 2, p.b}})}));
    else
      lower.push_back(Subspace::span(f, n, {s.e(f, 1), s.f(f, 1)}));
  } else if (s.a == 3 && s.b == 1) {
    lower.push_back(Subspace::span(f, n, {s.e(f, 1)}));
    const Ray& r = adot.rays().back();
    auto sp = ray_space(f, s, adot, r.i, r.marked);
    if (!sp) throw MissingSqrtMinusOne("the rightmost ray of " + serialize_diagram(adot) + " needs sqrt(-1) in " + f.name());
    lower.push_back(*sp);
  } else {
    throw WrongCase("no base flag for shape " + s.str());
  }
  return complete_isotropic(lower, gram);
}

// rightmost-ray marker of cdot, found by pushing the ray subspace of adot through Q
MarkedCupDiagram transport_marker(const Field& f, const MarkedCupDiagram& adot, const Reduction& red) {
  const Shape& lam = red.tag.lambda;
  if (lam.equal_parts()) return red.cdot;
  int i = adot.rightmost_ray();
  bool mk = adot.rays().back().marked;
  auto x = ray_space(f, lam, adot, i, mk);
  if (!x) throw MissingSqrtMinusOne("the rightmost ray of " + serialize_diagram(adot) + " needs sqrt(-1) in " + f.name());
  Subspace img = apply(red.q.lift, *x);
  int d = adot.m() - red.cdot.m();
  for (bool m2 : {false, true}) {
    std::vector<Ray> rays = red.cdot.rays();
    for (auto& r : rays)
      if (r.i == i - d) r.marked = m2;
    MarkedCupDiagram cand(red.cdot.m(), red.cdot.cups(), rays);
    auto want = ray_space(f, red.tag.nu, cand, i - d, m2);
    if (want && *want == img) return cand;
  }
  throw ValidationError("no marker on the smaller diagram matches the transported ray");
}

std::vector<Subspace> glue_lower(const Reduction& red, const Flag* fb, const Flag& fc) {
  const Field& f = fc.field();
  std::vector<Subspace> lower;
  if (red.tag.kind == CaseTag::Kind::I) {
    Shape mu(2 * red.tag.t, 2 * red.tag.t);
    Matrix emb = projection_P(f, mu, red.tag.lambda);
    for (int i = 1; i <= 2 * red.tag.t; ++i) lower.push_back(apply(emb, (*fb)[i]));
  } else {
    lower.push_back(red.w);
  }
  for (auto& s : omega_lift(red.q, fc)) lower.push_back(std::move(s));
  return lower;
}

P1Point line_point(const Shape& s, const Subspace& line) {
  Vector v = line.vector(0);
  return P1Point{v[s.e_index(1)], v[s.f_index(1)]}.normalized();
}

}  // namespace

Shape shape_of(const MarkedCupDiagram& adot) {
  int m = adot.m(), c = adot.num_cups();
  int k = 2 * c == m ? 2 * c : 2 * c + 1;
  if (k > m) throw InvalidShape("too many cups for " + idx(m) + " vertices");
  require_typeD_partition(2 * m, k);
  return Shape(2 * m - k, k);
}

P1Point P1Point::normalized() const {
  if (!a.is_zero()) return {Scalar::one(a.field()), b / a};
  if (b.is_zero()) throw BadParameters("[0:0] is not a point of P^1");
  return {Scalar(a.field()), Scalar::one(a.field())};
}

bool P1Point::operator==(const P1Point& o) const {
  P1Point x = normalized(), y = o.normalized();
  return x.a == y.a && x.b == y.b;
}

std::string P1Point::str() const { return "[" + a.str() + ":" + b.str() + "]"; }

std::vector<P1Point> p1_points(const Field& f) {
  if (!f.is_prime()) throw BadParameters("P^1 is only enumerated over F_p");
  std::vector<P1Point> out;
  for (std::uint32_t t = 0; t < f.p(); ++t) out.push_back({Scalar::one(f), Scalar(f, static_cast<long>(t))});
  out.push_back({Scalar(f), Scalar::one(f)});
  return out;
}

std::string CaseTag::name() const {
  switch (kind) {
    case Kind::I: return "I(t=" + idx(t) + ")";
    case Kind::II: return "II";
    case Kind::III_1: return "III_1";
    case Kind::III_2: return "III_2";
    case Kind::III_3: return "III_3";
    case Kind::III_4: return "III_4";
  }
  return "?";
}

CaseTag classify_case(const MarkedCupDiagram& adot) {
  int m = adot.m();
  if (m < 3) throw TooSmall("m = " + idx(m) + " is a base case");
  CaseTag tag;
  tag.lambda = shape_of(adot);
  const Shape& lam = tag.lambda;
  int j = adot.partner(1);
  if (j) {
    const Cup& c = adot.cups().front();
    if (!c.marked && j < m) {
      tag.kind = CaseTag::Kind::I;
      tag.t = j / 2;
      tag.nu = Shape(lam.a - j, lam.b - j);
      return tag;
    }
    if (m % 2) throw WrongCase("case II with m odd cannot occur: " + serialize_diagram(adot));
    tag.kind = CaseTag::Kind::II;
    tag.j = j;
    tag.marked = c.marked;
    tag.nu = Shape(m - 1, m - 1);
    return tag;
  }
  if (lam.equal_parts()) {
    tag.kind = adot.rays().front().marked ? CaseTag::Kind::III_2 : CaseTag::Kind::III_1;
    tag.nu = Shape(m - 1, m - 1);
  } else if (lam.a - 2 == lam.b) {
    tag.kind = CaseTag::Kind::III_3;
    tag.nu = Shape(lam.b, lam.b);
  } else {
    tag.kind = CaseTag::Kind::III_4;
    tag.nu = Shape(lam.a - 2, lam.b);
  }
  return tag;
}

Matrix projection_P(const Field& f, const Shape& from, const Shape& to) {
  Matrix p(f, to.n(), from.n());
  for (int i = 1; i <= std::min(from.a, to.a); ++i) p(to.e_index(i), from.e_index(i)) = Scalar::one(f);
  for (int i = 1; i <= std::min(from.b, to.b); ++i) p(to.f_index(i), from.f_index(i)) = Scalar::one(f);
  return p;
}

Quotient quotient_psi(const Subspace& w, const Matrix& gram) {
  const Field& f = gram.field();
  std::size_t n = gram.rows();
  if (w.ambient_dim() != n) throw ShapeMismatch("W lives in F^" + idx(static_cast<int>(w.ambient_dim())));
  if (!(w.basis() * gram * w.basis().transpose()).is_zero()) throw ShapeMismatch("W is not isotropic");
  Quotient q;
  q.w = w;
  q.wperp = orth_complement(w, gram);
  q.reps = complement_basis(q.wperp, w);
  std::vector<Vector> outside = complement_basis(Subspace::full(f, n), q.wperp);
  // columns: W, reps, outside; coords sends them to 0, unit vectors, 0
  Matrix s(f, n, n), t(f, q.reps.size(), n);
  std::size_t col = 0;
  for (std::size_t i = 0; i < w.dim(); ++i, ++col)
    for (std::size_t r = 0; r < n; ++r) s(r, col) = w.vector(i)[r];
  for (std::size_t j = 0; j < q.reps.size(); ++j, ++col) {
    for (std::size_t r = 0; r < n; ++r) s(r, col) = q.reps[j][r];
    t(j, col) = Scalar::one(f);
  }
  for (const auto& v : outside) {
    for (std::size_t r = 0; r < n; ++r) s(r, col) = v[r];
    ++col;
  }
  q.coords = t * s.inverse();
  q.gram = Matrix(f, q.reps.size(), q.reps.size());
  for (std::size_t i = 0; i < q.reps.size(); ++i)
    for (std::size_t j = 0; j < q.reps.size(); ++j) q.gram(i, j) = dot(q.reps[i], gram * q.reps[j]);
  return q;
}

Matrix induced_nilpotent(const Quotient& q, const Matrix& x) {
  const Field& f = x.field();
  Matrix out(f, q.dim(), q.dim());
  for (std::size_t j = 0; j < q.dim(); ++j) {
    Vector img = x * q.reps[j];
    if (!q.wperp.contains(img)) throw ShapeMismatch("x does not preserve W^perp");
    Vector c = q.coords * img;
    for (std::size_t i = 0; i < q.dim(); ++i) out(i, j) = c[i];
  }
  return out;
}

std::string qvariant_name(QVariant v) {
  switch (v) {
    case QVariant::I_odd: return "I_odd";
    case QVariant::I_even: return "I_even";
    case QVariant::II_1: return "II_1";
    case QVariant::II_2: return "II_2";
    case QVariant::III_1: return "III_1";
    case QVariant::III_2: return "III_2";
    case QVariant::III_3: return "III_3";
    case QVariant::III_4: return "III_4";
  }
  return "?";
}

bool FormedIso::form_compatible() const {
  Matrix g = gram_matrix(matrix.field(), target);
  return matrix.transpose() * g * matrix == quot.gram;
}

bool FormedIso::intertwines() const {
  const Field& f = matrix.field();
  Matrix xbar = induced_nilpotent(quot, standard_nilpotent(f, source));
  return matrix * xbar == standard_nilpotent(f, target) * matrix;
}

FormedIso formed_iso(const Field& f, QVariant v, const Shape& lam, int t, const P1Point& cd, const QOptions& opt) {
  require_typeD_partition(lam.n(), lam.k());
  FormedIso q;
  q.variant = v;
  q.source = lam;
  int m = lam.n() / 2;
  Scalar one = Scalar::one(f), zero(f);
  std::vector<Vector> w, srcs, tgts;
  std::vector<Scalar> scale;  // scale[j] * srcs[j] -> tgts[j]
  auto sqrt_m1 = [&](const std::string& what) { return opt.normalized ? need_sqrt(Scalar(f, -1L), what) : one; };
  switch (v) {
    case QVariant::I_odd:
    case QVariant::I_even: {
      if (t < 1 || 2 * t >= m) throw BadParameters("Case I needs 1 <= t and 2t < m, got t=" + idx(t));
      if ((t % 2 == 1) != (v == QVariant::I_odd)) throw BadParameters("t=" + idx(t) + " does not match " + qvariant_name(v));
      q.target = Shape(lam.a - 2 * t, lam.b - 2 * t);
      for (int i = 1; i <= t; ++i) {
        w.push_back(lam.e(f, i));
        w.push_back(lam.f(f, i));
      }
      Scalar s = v == QVariant::I_odd ? sqrt_m1("Q^I") : one;
      for (int i = 1; i <= q.target.a; ++i) {
        srcs.push_back(lam.e(f, t + i));
        tgts.push_back(q.target.e(f, i));
        scale.push_back(s);
      }
      for (int i = 1; i <= q.target.b; ++i) {
        srcs.push_back(lam.f(f, t + i));
        tgts.push_back(q.target.f(f, i));
        scale.push_back(s);
      }
      break;
    }
    case QVariant::II_1:
    case QVariant::II_2:
    case QVariant::III_1:
    case QVariant::III_2: {
      if (!lam.equal_parts()) throw BadParameters(qvariant_name(v) + " needs equal parts");
      q.target = Shape(m - 1, m - 1);
      const Shape& nu = q.target;
      Scalar c = cd.a, d = cd.b;
      if (v == QVariant::III_1) c = one, d = zero;
      if (v == QVariant::III_2) c = zero, d = one;
      if ((v == QVariant::II_1 || v == QVariant::II_2) && m % 2) throw BadParameters(qvariant_name(v) + " needs m even");
      if (v == QVariant::II_1 && c.is_zero()) throw BadParameters("Q^II_1 needs c != 0");
      if (v == QVariant::II_2 && d.is_zero()) throw BadParameters("Q^II_2 needs d != 0");
      w.push_back(combo(lam, f, {{'e', 1, c}, {'f', 1, d}}));
      bool e_shift = v == QVariant::II_1 || v == QVariant::III_1;
      Scalar s = e_shift ? sqrt_m1(qvariant_name(v)) : one;
      for (int i = 1; i < m; ++i) {
        if (e_shift) {
          srcs.push_back(combo(lam, f, {{'e', i + 1, one}, {'f', i + 1, d / c}}));
          tgts.push_back(nu.e(f, i));
          scale.push_back(s);
          srcs.push_back(lam.f(f, i));
          tgts.push_back(nu.f(f, i));
          scale.push_back(s);
        } else {
          srcs.push_back(combo(lam, f, {{'e', i + 1, c / d}, {'f', i + 1, one}}));
          tgts.push_back(nu.f(f, i));
          scale.push_back(s);
          srcs.push_back(lam.e(f, i));
          tgts.push_back(nu.e(f, i));
          scale.push_back(s);
        }
      }
      break;
    }
    case QVariant::III_3: {
      if (lam.a - 2 != lam.b) throw BadParameters("Q^III_3 needs n-k-2 = k");
      int k = lam.b;
      q.target = Shape(k, k);
      w.push_back(lam.e(f, 1));
      Scalar s = opt.normalized ? need_sqrt(Scalar(f, -1L) / Scalar(f, 2L), "Q^III_3") : one;
      for (int i = 1; i <= k; ++i) {
        srcs.push_back(combo(lam, f, {{'e', i + 1, one}, {'f', i, one}}));
        tgts.push_back(q.target.e(f, i));
        scale.push_back(s);
      }
      for (int i = 1; i <= k; ++i) {
        srcs.push_back(combo(lam, f, {{'e', i + 1, one}, {'f', i, -one}}));
        tgts.push_back(q.target.f(f, i));
        scale.push_back(s);
      }
      break;
    }
    case QVariant::III_4: {
      if (lam.a - 2 <= lam.b) throw BadParameters("Q^III_4 needs n-k-2 > k");
      q.target = Shape(lam.a - 2, lam.b);
      w.push_back(lam.e(f, 1));
      // the e block always needs sqrt(-1) relative to the f block
      Scalar s = need_sqrt(Scalar(f, -1L), "Q^III_4");
      for (int i = 1; i <= q.target.a; ++i) {
        srcs.push_back(lam.e(f, i + 1));
        tgts.push_back(q.target.e(f, i));
        scale.push_back(s);
      }
      for (int i = 1; i <= lam.b; ++i) {
        srcs.push_back(lam.f(f, i));
        tgts.push_back(q.target.f(f, i));
        scale.push_back(opt.both_blocks_scaled ? s : one);
      }
      break;
    }
  }
  Matrix gram = gram_matrix(f, lam);
  q.quot = quotient_psi(Subspace::span(f, lam.n(), w), gram);
  if (srcs.size() != q.quot.dim()) throw BadParameters("source list has " + idx(static_cast<int>(srcs.size())) + " vectors, quotient has dimension " + idx(static_cast<int>(q.quot.dim())));
  std::size_t d = q.quot.dim();
  Matrix sq(f, d, d), tq(f, q.target.n(), d);
  for (std::size_t j = 0; j < d; ++j) {
    if (!q.quot.wperp.contains(srcs[j])) throw BadParameters(qvariant_name(v) + ": a source vector is not in W^perp");
    Vector c = q.quot.coords * srcs[j];
    for (std::size_t i = 0; i < d; ++i) sq(i, j) = c[i] * scale[j];
    for (std::size_t i = 0; i < static_cast<std::size_t>(q.target.n()); ++i) tq(i, j) = tgts[j][i];
  }
  try {
    q.matrix = tq * sq.inverse();
  } catch (const SingularMatrix&) {
    throw BadParameters(qvariant_name(v) + ": source vectors are dependent modulo W");
  }
  q.lift = q.matrix * q.quot.coords;
  return q;
}

FormedIso formed_iso_Q(const Field& f, const CaseTag& tag, const P1Point& cd, const QOptions& opt) {
  switch (tag.kind) {
    case CaseTag::Kind::I: return formed_iso(f, tag.t % 2 ? QVariant::I_odd : QVariant::I_even, tag.lambda, tag.t, cd, opt);
    case CaseTag::Kind::II: return formed_iso(f, cd.a.is_zero() ? QVariant::II_2 : QVariant::II_1, tag.lambda, 0, cd, opt);
    case CaseTag::Kind::III_1: return formed_iso(f, QVariant::III_1, tag.lambda, 0, cd, opt);
    case CaseTag::Kind::III_2: return formed_iso(f, QVariant::III_2, tag.lambda, 0, cd, opt);
    case CaseTag::Kind::III_3: return formed_iso(f, QVariant::III_3, tag.lambda, 0, cd, opt);
    case CaseTag::Kind::III_4: return formed_iso(f, QVariant::III_4, tag.lambda, 0, cd, opt);
  }
  throw WrongCase("unknown case");
}

Flag omega_map(const FormedIso& q, const Flag& fl, int ell) {
  if (fl.length() != static_cast<std::size_t>(q.source.n())) throw AmbientMismatch("flag length " + idx(static_cast<int>(fl.length())) + " for shape " + q.source.str());
  if (!fl[ell].contains(q.quot.w)) throw NotContained("W is not inside F_" + idx(ell));
  int m_nu = q.target.n() / 2;
  std::vector<Subspace> lower;
  for (int i = 1; i <= m_nu; ++i) lower.push_back(apply(q.lift, fl[ell + i]));
  return complete_isotropic(lower, gram_matrix(fl.field(), q.target));
}

std::vector<Subspace> omega_lift(const FormedIso& q, const Flag& lower) {
  int m_nu = q.target.n() / 2;
  std::vector<Subspace> out;
  for (int i = 1; i <= m_nu; ++i) out.push_back(subspace_intersect(q.quot.wperp, preimage(q.lift, lower[i])));
  return out;
}

std::pair<MarkedCupDiagram, MarkedCupDiagram> split_caseI(const MarkedCupDiagram& adot) {
  CaseTag tag = classify_case(adot);
  if (tag.kind != CaseTag::Kind::I) throw WrongCase(serialize_diagram(adot) + " is in case " + tag.name());
  int l = 2 * tag.t;
  std::vector<Cup> bc, cc;
  std::vector<Ray> cr;
  for (const auto& c : adot.cups()) (c.j <= l ? bc : cc).push_back(c);
  for (const auto& r : adot.rays()) cr.push_back(r);
  MarkedCupDiagram b(l, bc, {});
  return {b, shifted(l, adot.m() - l, cc, cr)};
}

Flag pi_ab(const Flag& fl, const CaseTag& tag) {
  if (tag.kind != CaseTag::Kind::I) throw WrongCase("pi_ab needs case I, got " + tag.name());
  const Field& f = fl.field();
  Shape mu(2 * tag.t, 2 * tag.t);
  Matrix p = projection_P(f, tag.lambda, mu);
  std::vector<Subspace> lower;
  for (int i = 1; i <= 2 * tag.t; ++i) lower.push_back(apply(p, fl[i]));
  return complete_isotropic(lower, gram_matrix(f, mu));
}

Reduction reduce(const Field& f, const MarkedCupDiagram& adot, const P1Point& first, int chart) {
  Reduction red;
  red.tag = classify_case(adot);
  const CaseTag& tag = red.tag;
  QOptions loose{false, false};
  int m = adot.m();
  switch (tag.kind) {
    case CaseTag::Kind::I: {
      red.q = formed_iso_Q(f, tag, first, loose);
      auto [b, c] = split_caseI(adot);
      red.bdot = b;
      red.cdot = c;
      break;
    }
    case CaseTag::Kind::II: {
      P1Point p = first.normalized();
      if (chart == 0) chart = p.a.is_zero() ? 2 : 1;
      if (chart == 1 && p.a.is_zero()) throw BadParameters("chart U_1 needs a nonzero e_1 coordinate");
      if (chart == 2 && p.b.is_zero()) throw BadParameters("chart U_2 needs a nonzero f_1 coordinate");
      red.chart = chart;
      red.q = formed_iso(f, chart == 1 ? QVariant::II_1 : QVariant::II_2, tag.lambda, 0, p, loose);
      std::vector<Cup> cups(adot.cups().begin() + 1, adot.cups().end());
      std::vector<Ray> rays = adot.rays();
      rays.push_back({tag.j, tag.marked != (chart == 1)});
      std::sort(rays.begin(), rays.end());
      red.cdot = shifted(1, m - 1, cups, rays);
      break;
    }
    default: {
      red.q = formed_iso_Q(f, tag, first, loose);
      std::vector<Ray> rays(adot.rays().begin() + 1, adot.rays().end());
      red.cdot = shifted(1, m - 1, adot.cups(), rays);
      break;
    }
  }
  red.w = red.q.quot.w;
  red.cdot = transport_marker(f, adot, red);
  return red;
}

Flag build_flag(const Field& f, const MarkedCupDiagram& adot, const std::vector<P1Point>& params) {
  if (params.size() != static_cast<std::size_t>(adot.num_cups()))
    throw ParamCountMismatch(idx(static_cast<int>(params.size())) + " points for " + idx(adot.num_cups()) + " cups");
  for (const auto& p : params)
    if (p.a.field() != f || p.b.field() != f) throw FieldMismatch("parameter " + p.str() + " is not over " + f.name());
  if (adot.m() <= 2) return base_flag(f, adot, params);
  P1Point first = params.empty() ? P1Point{Scalar::one(f), Scalar(f)} : params.front();
  Reduction red = reduce(f, adot, first);
  std::vector<P1Point> rest;
  std::optional<Flag> fb;
  Flag fc;
  switch (red.tag.kind) {
    case CaseTag::Kind::I: {
      std::size_t t = red.tag.t;
      fb = build_flag(f, red.bdot, {params.begin(), params.begin() + t});
      fc = build_flag(f, red.cdot, {params.begin() + t, params.end()});
      break;
    }
    case CaseTag::Kind::II: fc = build_flag(f, red.cdot, {params.begin() + 1, params.end()}); break;
    default: fc = build_flag(f, red.cdot, params); break;
  }
  return complete_isotropic(glue_lower(red, fb ? &*fb : nullptr, fc), gram_matrix(f, red.tag.lambda));
}

std::vector<P1Point> recover_params(const MarkedCupDiagram& adot, const Flag& fl) {
  Shape s = shape_of(adot);
  if (fl.length() != static_cast<std::size_t>(s.n()) || !in_K_marked(fl, s, adot))
    throw NotInComponent("flag is not in the component of " + serialize_diagram(adot));
  const Field& f = fl.field();
  if (adot.m() <= 2) {
    if (adot.num_cups() == 0) return {};
    return {line_point(s, fl[1])};
  }
  CaseTag tag = classify_case(adot);
  P1Point first{Scalar::one(f), Scalar(f)};
  if (tag.kind == CaseTag::Kind::II) first = line_point(s, fl[1]);
  Reduction red = reduce(f, adot, first);
  std::vector<P1Point> out;
  if (tag.kind == CaseTag::Kind::I) out = recover_params(red.bdot, pi_ab(fl, tag));
  if (tag.kind == CaseTag::Kind::II) out.push_back(first);
  for (auto& p : recover_params(red.cdot, omega_map(red.q, fl, tag.ell()))) out.push_back(p);
  return out;
}

bool BundleReport::ok() const {
  for (const auto& [name, v] : checks)
    if (!v) return false;
  for (const auto& c : children)
    if (!c.ok()) return false;
  return true;
}

BundleReport verify_bundle_point(const MarkedCupDiagram& adot, const Flag& fl) {
  Shape s = shape_of(adot);
  if (fl.length() != static_cast<std::size_t>(s.n()) || !in_K_marked(fl, s, adot))
    throw NotInComponent("flag is not in the component of " + serialize_diagram(adot));
  const Field& f = fl.field();
  BundleReport rep;
  rep.diagram = serialize_diagram(adot);
  Matrix gram = gram_matrix(f, s);
  if (adot.m() <= 2) {
    rep.tag = "base";
    Flag back = build_flag(f, adot, recover_params(adot, fl));
    rep.checks.push_back({"roundtrip", back == fl});
    if (back != fl) rep.reconstructed = back;
    return rep;
  }
  CaseTag tag = classify_case(adot);
  rep.tag = tag.name();
  P1Point first{Scalar::one(f), Scalar(f)};
  if (tag.kind == CaseTag::Kind::II) first = line_point(s, fl[1]);

  std::vector<int> charts{0};
  if (tag.kind == CaseTag::Kind::II && !first.a.is_zero() && !first.b.is_zero()) charts = {1, 2};
  for (int chart : charts) {
    Reduction red = reduce(f, adot, first, chart);
    std::string sfx = charts.size() > 1 ? "@U" + idx(chart) : "";
    if (rep.chart == 0) rep.chart = red.chart;
    rep.checks.push_back({"W in F_ell" + sfx, fl[tag.ell()].contains(red.w)});
    rep.checks.push_back({"intertwining" + sfx, red.q.intertwines()});
    try {
      FormedIso exact = formed_iso(f, red.q.variant, tag.lambda, tag.t, first, {});
      rep.checks.push_back({"form" + sfx, exact.form_compatible()});
    } catch (const MissingSqrtMinusOne&) {
      // the exact Q is not defined over this field; the unscaled one still moves subspaces
    }
    std::optional<Flag> fb;
    if (tag.kind == CaseTag::Kind::I) {
      fb = pi_ab(fl, tag);
      bool in_b = in_K_marked(*fb, shape_of(red.bdot), red.bdot);
      rep.checks.push_back({"pi_ab in bdot" + sfx, in_b});
      if (in_b) rep.children.push_back(verify_bundle_point(red.bdot, *fb));
    }
    Flag fc = omega_map(red.q, fl, tag.ell());
    bool in_c = in_K_marked(fc, red.tag.nu, red.cdot);
    rep.checks.push_back({"omega in cdot" + sfx, in_c});
    if (in_c) rep.children.push_back(verify_bundle_point(red.cdot, fc));
    Flag back = complete_isotropic(glue_lower(red, fb ? &*fb : nullptr, fc), gram);
    rep.checks.push_back({"roundtrip" + sfx, back == fl});
    if (back != fl) rep.reconstructed = back;
  }
  return rep;
}

}  // namespace springer
