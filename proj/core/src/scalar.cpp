#include "springer/scalar.hpp"

#include <cctype>

#include "springer/error.hpp"

namespace springer {

namespace {

std::uint32_t mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

std::uint32_t powmod(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint32_t r = 1 % p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint32_t reduce(long v, std::uint32_t p) {
  long r = v % static_cast<long>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t reduce(const mpq_class& q, std::uint32_t p) {
  mpz_class num = q.get_num() % p;
  mpz_class den = q.get_den() % p;
  if (num < 0) num += p;
  if (den == 0) throw DivisionByZero("denominator vanishes mod " + std::to_string(p));
  auto n = static_cast<std::uint32_t>(num.get_ui());
  auto d = static_cast<std::uint32_t>(den.get_ui());
  return mulmod(n, powmod(d, p - 2, p), p);
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

mpq_class parse_rational(const std::string& raw) {
  std::string s = trim(raw);
  if (s.empty()) throw SyntaxError("empty rational", 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' ||
              ((c == '-' || c == '+') && i == 0);
    if (!ok) throw SyntaxError("unexpected '" + std::string(1, c) + "' in '" + s + "'", i);
  }
  std::string t = s[0] == '+' ? s.substr(1) : s;
  mpq_class q;
  if (q.set_str(t, 10) != 0) throw SyntaxError("bad rational '" + s + "'", 0);
  if (q.get_den() == 0) throw DivisionByZero("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

bool perfect_square(const mpz_class& z, mpz_class& root) {
  if (z < 0) return false;
  root = sqrt(z);
  return root * root == z;
}

bool rational_sqrt(const mpq_class& q, mpq_class& out) {
  mpz_class a, b;
  if (!perfect_square(q.get_num(), a) || !perfect_square(q.get_den(), b)) return false;
  out = mpq_class(a, b);
  out.canonicalize();
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::Fp(std::uint32_t p) {
  if (p >= (1u << 31) || !springer::is_prime(p)) throw InvalidShape("modulus " + std::to_string(p) + " is not a prime below 2^31");
  return Field(FieldKind::prime, p);
}

Field Field::parse(const std::string& text) {
  std::string s = trim(text);
  if (s == "Q") return Q();
  if (s == "Qi" || s == "Q(i)") return Qi();
  if (s.rfind("Fp:", 0) == 0 || s.rfind("F", 0) == 0) {
    std::string num = s.rfind("Fp:", 0) == 0 ? s.substr(3) : s.substr(1);
    if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
      throw SyntaxError("bad field '" + s + "'", 0);
    return Fp(static_cast<std::uint32_t>(std::stoul(num)));
  }
  throw SyntaxError("unknown field '" + s + "' (expected Q, Qi or Fp:<p>)", 0);
}

std::string Field::name() const {
  switch (kind_) {
    case FieldKind::rationals: return "Q";
    case FieldKind::gaussian_rationals: return "Qi";
    case FieldKind::prime: return "Fp:" + std::to_string(p_);
  }
  return "?";
}

Scalar::Scalar(Field f) : field_(f) {
  switch (f.kind()) {
    case FieldKind::prime: v_ = std::uint32_t{0}; break;
    case FieldKind::rationals: v_ = mpq_class(0); break;
    case FieldKind::gaussian_rationals: v_ = Gauss{0, 0}; break;
  }
}

Scalar::Scalar(Field f, long v) : field_(f) {
  switch (f.kind()) {
    case FieldKind::prime: v_ = reduce(v, f.p()); break;
    case FieldKind::rationals: v_ = mpq_class(v); break;
    case FieldKind::gaussian_rationals: v_ = Gauss{mpq_class(v), 0}; break;
  }
}

Scalar::Scalar(Field f, const mpq_class& v) : field_(f) {
  switch (f.kind()) {
    case FieldKind::prime: v_ = reduce(v, f.p()); break;
    case FieldKind::rationals: v_ = v; break;
    case FieldKind::gaussian_rationals: v_ = Gauss{v, 0}; break;
  }
}

Scalar::Scalar(Field f, const mpq_class& re, const mpq_class& im) : field_(f) {
  if (f.kind() != FieldKind::gaussian_rationals) {
    if (im != 0) throw FieldMismatch("imaginary part outside Q(i)");
    *this = Scalar(f, re);
    return;
  }
  v_ = Gauss{re, im};
}

Scalar Scalar::imag_unit(Field f) {
  auto s = sqrt_minus_one(f);
  if (!s) throw MissingSqrtMinusOne("no square root of -1 in " + f.name());
  return *s;
}

Scalar Scalar::parse(Field f, const std::string& raw) {
  std::string s = trim(raw);
  auto mod = s.find("mod");
  if (mod != std::string::npos) {
    std::string rest = trim(s.substr(mod + 3));
    if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
      throw SyntaxError("bad modulus in '" + s + "'", mod + 3);
    auto p = static_cast<std::uint32_t>(std::stoul(rest));
    if (!f.is_prime() || f.p() != p) throw FieldMismatch("'" + s + "' is not an element of " + f.name());
    return Scalar(f, parse_rational(s.substr(0, mod)));
  }
  if (!s.empty() && s.back() == 'i') {
    // a+bi, a-bi, bi, i, -i
    std::string body = s.substr(0, s.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
      if (body[i] == '+' || body[i] == '-') {
        split = i;
        break;
      }
    }
    std::string re = split == std::string::npos ? "0" : body.substr(0, split);
    std::string im = split == std::string::npos ? body : body.substr(split);
    if (im.empty() || im == "+") im = "1";
    if (im == "-") im = "-1";
    mpq_class r = parse_rational(re), m = parse_rational(im);
    if (f.kind() == FieldKind::gaussian_rationals) return Scalar(f, r, m);
    return Scalar(f, r) + Scalar(f, m) * imag_unit(f);
  }
  return Scalar(f, parse_rational(s));
}

bool Scalar::is_zero() const {
  switch (field_.kind()) {
    case FieldKind::prime: return std::get<std::uint32_t>(v_) == 0;
    case FieldKind::rationals: return sgn(std::get<mpq_class>(v_)) == 0;
    case FieldKind::gaussian_rationals: {
      const auto& g = std::get<Gauss>(v_);
      return sgn(g.re) == 0 && sgn(g.im) == 0;
    }
  }
  return false;
}

bool Scalar::is_one() const { return *this == one(field_); }

std::uint32_t Scalar::residue() const {
  if (!field_.is_prime()) throw FieldMismatch("residue() on " + field_.name());
  return std::get<std::uint32_t>(v_);
}

mpq_class Scalar::real() const {
  if (field_.kind() == FieldKind::rationals) return std::get<mpq_class>(v_);
  if (field_.kind() == FieldKind::gaussian_rationals) return std::get<Gauss>(v_).re;
  throw FieldMismatch("real() on " + field_.name());
}

mpq_class Scalar::imag() const {
  if (field_.kind() == FieldKind::gaussian_rationals) return std::get<Gauss>(v_).im;
  if (field_.kind() == FieldKind::rationals) return 0;
  throw FieldMismatch("imag() on " + field_.name());
}

void Scalar::check_same(const Scalar& o) const {
  if (field_ != o.field_) throw FieldMismatch(field_.name() + " vs " + o.field_.name());
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  Scalar r(field_);
  switch (field_.kind()) {
    case FieldKind::prime: {
      std::uint32_t s = std::get<std::uint32_t>(v_) + std::get<std::uint32_t>(o.v_);
      r.v_ = s >= field_.p() ? s - field_.p() : s;
      break;
    }
    case FieldKind::rationals: r.v_ = mpq_class(std::get<mpq_class>(v_) + std::get<mpq_class>(o.v_)); break;
    case FieldKind::gaussian_rationals: {
      const auto& a = std::get<Gauss>(v_);
      const auto& b = std::get<Gauss>(o.v_);
      r.v_ = Gauss{a.re + b.re, a.im + b.im};
      break;
    }
  }
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r(field_);
  switch (field_.kind()) {
    case FieldKind::prime: {
      std::uint32_t a = std::get<std::uint32_t>(v_);
      r.v_ = a == 0 ? 0u : field_.p() - a;
      break;
    }
    case FieldKind::rationals: r.v_ = mpq_class(-std::get<mpq_class>(v_)); break;
    case FieldKind::gaussian_rationals: {
      const auto& a = std::get<Gauss>(v_);
      r.v_ = Gauss{-a.re, -a.im};
      break;
    }
  }
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  Scalar r(field_);
  switch (field_.kind()) {
    case FieldKind::prime: r.v_ = mulmod(std::get<std::uint32_t>(v_), std::get<std::uint32_t>(o.v_), field_.p()); break;
    case FieldKind::rationals: r.v_ = mpq_class(std::get<mpq_class>(v_) * std::get<mpq_class>(o.v_)); break;
    case FieldKind::gaussian_rationals: {
      const auto& a = std::get<Gauss>(v_);
      const auto& b = std::get<Gauss>(o.v_);
      r.v_ = Gauss{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
      break;
    }
  }
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in " + field_.name());
  Scalar r(field_);
  switch (field_.kind()) {
    case FieldKind::prime: r.v_ = powmod(std::get<std::uint32_t>(v_), field_.p() - 2, field_.p()); break;
    case FieldKind::rationals: r.v_ = mpq_class(1 / std::get<mpq_class>(v_)); break;
    case FieldKind::gaussian_rationals: {
      const auto& a = std::get<Gauss>(v_);
      mpq_class norm = a.re * a.re + a.im * a.im;
      r.v_ = Gauss{a.re / norm, -a.im / norm};
      break;
    }
  }
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const {
  check_same(o);
  if (o.is_zero()) throw DivisionByZero(str() + " / 0");
  return *this * o.inverse();
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar r = one(field_), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

bool Scalar::operator==(const Scalar& o) const {
  if (field_ != o.field_) return false;
  switch (field_.kind()) {
    case FieldKind::prime: return std::get<std::uint32_t>(v_) == std::get<std::uint32_t>(o.v_);
    case FieldKind::rationals: return std::get<mpq_class>(v_) == std::get<mpq_class>(o.v_);
    case FieldKind::gaussian_rationals: {
      const auto& a = std::get<Gauss>(v_);
      const auto& b = std::get<Gauss>(o.v_);
      return a.re == b.re && a.im == b.im;
    }
  }
  return false;
}

std::string Scalar::str() const {
  switch (field_.kind()) {
    case FieldKind::prime: return std::to_string(std::get<std::uint32_t>(v_));
    case FieldKind::rationals: return std::get<mpq_class>(v_).get_str();
    case FieldKind::gaussian_rationals: {
      const auto& a = std::get<Gauss>(v_);
      if (sgn(a.im) == 0) return a.re.get_str();
      std::string im;
      if (a.im == 1) im = "i";
      else if (a.im == -1) im = "-i";
      else im = a.im.get_str() + "i";
      if (sgn(a.re) == 0) return im;
      return a.re.get_str() + (sgn(a.im) > 0 ? "+" : "") + im;
    }
  }
  return "?";
}

std::optional<Scalar> sqrt_minus_one(const Field& f) {
  switch (f.kind()) {
    case FieldKind::rationals: return std::nullopt;
    case FieldKind::gaussian_rationals: return Scalar(f, 0, 1);
    case FieldKind::prime: return sqrt(Scalar(f, -1L));
  }
  return std::nullopt;
}

std::optional<Scalar> sqrt(const Scalar& a) {
  const Field& f = a.field();
  if (a.is_zero()) return a;
  switch (f.kind()) {
    case FieldKind::prime: {
      std::uint32_t p = f.p(), n = a.residue();
      if (p == 2) return a;
      if (powmod(n, (p - 1) / 2, p) != 1) return std::nullopt;
      // Tonelli-Shanks
      std::uint32_t q = p - 1, s = 0;
      while ((q & 1) == 0) {
        q >>= 1;
        ++s;
      }
      std::uint32_t z = 2;
      while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
      std::uint32_t m = s, c = powmod(z, q, p), t = powmod(n, q, p), r = powmod(n, (q + 1) / 2, p);
      while (t != 1) {
        std::uint32_t i = 0, tt = t;
        while (tt != 1) {
          tt = mulmod(tt, tt, p);
          ++i;
        }
        std::uint32_t b = c;
        for (std::uint32_t j = 0; j + 1 < m - i; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
      }
      std::uint32_t other = p - r;
      return Scalar(f, static_cast<long>(r < other ? r : other));
    }
    case FieldKind::rationals: {
      mpq_class out;
      if (!rational_sqrt(a.real(), out)) return std::nullopt;
      return Scalar(f, out);
    }
    case FieldKind::gaussian_rationals: {
      // only square roots of rational elements are attempted
      if (sgn(a.imag()) != 0) return std::nullopt;
      mpq_class re = a.real(), out;
      if (sgn(re) > 0 && rational_sqrt(re, out)) return Scalar(f, out, 0);
      if (sgn(re) < 0 && rational_sqrt(-re, out)) return Scalar(f, 0, out);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

Scalar random_scalar(const Field& f, std::mt19937_64& rng, int span) {
  if (f.is_prime()) {
    std::uniform_int_distribution<std::uint32_t> d(0, f.p() - 1);
    return Scalar(f, static_cast<long>(d(rng)));
  }
  std::uniform_int_distribution<int> d(-span, span);
  if (f.kind() == FieldKind::gaussian_rationals) {
    long re = d(rng);
    long im = d(rng);
    return Scalar(f, mpq_class(re), mpq_class(im));
  }
  return Scalar(f, static_cast<long>(d(rng)));
}

}  // namespace springer
