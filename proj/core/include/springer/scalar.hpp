#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace springer {

enum class FieldKind { rationals, gaussian_rationals, prime };

// Coefficient field: Q, Q(i) or F_p with p < 2^31.
class Field {
 public:
  Field() = default;
  static Field Q() { return Field(FieldKind::rationals, 0); }
  static Field Qi() { return Field(FieldKind::gaussian_rationals, 0); }
  static Field Fp(std::uint32_t p);
  // "Q", "Qi", "Fp:<p>"
  static Field parse(const std::string& text);

  FieldKind kind() const { return kind_; }
  std::uint32_t p() const { return p_; }
  bool is_prime() const { return kind_ == FieldKind::prime; }
  std::uint32_t characteristic() const { return is_prime() ? p_ : 0; }
  std::string name() const;

  bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }
  bool operator!=(const Field& o) const { return !(*this == o); }

 private:
  Field(FieldKind k, std::uint32_t p) : kind_(k), p_(p) {}
  FieldKind kind_ = FieldKind::rationals;
  std::uint32_t p_ = 0;
};

bool is_prime(std::uint64_t n);

struct Gauss {
  mpq_class re, im;
};

class Scalar {
 public:
  Scalar() : Scalar(Field::Q()) {}
  explicit Scalar(Field f);
  Scalar(Field f, long v);
  Scalar(Field f, const mpq_class& v);
  Scalar(Field f, const mpq_class& re, const mpq_class& im);

  static Scalar zero(Field f) { return Scalar(f); }
  static Scalar one(Field f) { return Scalar(f, 1L); }
  static Scalar imag_unit(Field f);
  // "3/4", "-2", "2+5i", "-i", "7 mod 13" (the modulus must agree with f when prime).
  static Scalar parse(Field f, const std::string& text);

  const Field& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;
  std::uint32_t residue() const;  // prime fields only
  mpq_class real() const;         // Q and Q(i) only
  mpq_class imag() const;         // Q(i) only

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inverse() const;
  Scalar pow(long e) const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string str() const;

 private:
  void check_same(const Scalar& o) const;
  Field field_;
  std::variant<std::uint32_t, mpq_class, Gauss> v_;
};

// s with s^2 = -1, canonical choice (i, or the smaller residue); empty otherwise.
std::optional<Scalar> sqrt_minus_one(const Field& f);
// Any square root, canonical choice (smaller residue / the one with positive leading part).
std::optional<Scalar> sqrt(const Scalar& a);

// Uniform element: any residue over F_p, small Gaussian/rational integers otherwise.
Scalar random_scalar(const Field& f, std::mt19937_64& rng, int span = 4);

}  // namespace springer
