#ifndef SERIVAL_FIELD_H
#define SERIVAL_FIELD_H

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace serival {

class Scalar;

/// The base field k: either the rationals or a prime field F_p.
class Field {
 public:
  Field() = default;

  static Field rationals() { return Field(); }
  /// Throws std::invalid_argument unless p is a prime below 2^31.
  static Field prime(std::uint32_t p);
  /// Accepts "QQ", "Q", "F2", "f3", "GF(5)".
  static Field parse(std::string_view text);

  bool is_rational() const { return modulus_ == 0; }
  std::uint32_t characteristic() const { return modulus_; }
  std::string name() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long value) const;
  Scalar from_rational(const mpq_class& value) const;

  friend bool operator==(const Field& a, const Field& b) { return a.modulus_ == b.modulus_; }
  friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

 private:
  friend class Scalar;
  explicit Field(std::uint32_t p) : modulus_(p) {}
  std::uint32_t modulus_ = 0;
};

/// An exact element of a base field. Prime-field elements are stored as a
/// residue in [0, p); rationals are GMP rationals in canonical form.
class Scalar {
 public:
  Scalar() = default;

  Field field() const;
  bool is_zero() const { return modulus_ != 0 ? residue_ == 0 : sgn(rational_) == 0; }
  bool is_one() const { return modulus_ != 0 ? residue_ == 1 : rational_ == 1; }
  /// Whether the printed form starts with a minus sign (always false over F_p).
  bool is_negative() const { return modulus_ == 0 && sgn(rational_) < 0; }

  const mpq_class& rational() const { return rational_; }
  std::uint32_t residue() const { return residue_; }

  Scalar operator-() const;
  Scalar inverse() const;

  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar pow(unsigned long exponent) const;
  std::string to_string() const;

 private:
  friend class Field;
  void check_same_field(const Scalar& other) const;

  std::uint32_t modulus_ = 0;
  std::uint32_t residue_ = 0;
  mpq_class rational_;
};

}  // namespace serival

#endif  // SERIVAL_FIELD_H
