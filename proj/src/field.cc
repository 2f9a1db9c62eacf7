#include "serival/field.h"

#include <cctype>
#include <stdexcept>
#include <string>

#include "serival/error.h"

namespace serival {
namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint32_t reduce(const mpz_class& value, std::uint32_t p) {
  mpz_class r = value % p;
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r.get_ui());
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  // Extended Euclid on (a, p).
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

}  // namespace

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p)) {
    throw std::invalid_argument("field characteristic must be a prime below 2^31, got " +
                                std::to_string(p));
  }
  return Field(p);
}

Field Field::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::toupper(c));
  }
  if (s == "Q" || s == "QQ") return rationals();
  std::string digits;
  if (s.rfind("GF(", 0) == 0 && s.size() > 4 && s.back() == ')') {
    digits = s.substr(3, s.size() - 4);
  } else if (s.size() > 1 && (s[0] == 'F')) {
    digits = s.substr(1);
  } else {
    digits = s;
  }
  if (digits.empty() || digits.size() > 10) {
    throw std::invalid_argument("unrecognized field '" + std::string(text) + "'");
  }
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("unrecognized field '" + std::string(text) + "'");
    }
  }
  return prime(static_cast<std::uint32_t>(std::stoul(digits)));
}

std::string Field::name() const {
  return is_rational() ? std::string("QQ") : "F" + std::to_string(modulus_);
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long value) const {
  Scalar s;
  s.modulus_ = modulus_;
  if (modulus_ == 0) {
    s.rational_ = value;
  } else {
    long r = value % static_cast<long>(modulus_);
    if (r < 0) r += modulus_;
    s.residue_ = static_cast<std::uint32_t>(r);
  }
  return s;
}

Scalar Field::from_rational(const mpq_class& value) const {
  Scalar s;
  s.modulus_ = modulus_;
  if (modulus_ == 0) {
    s.rational_ = value;
    s.rational_.canonicalize();
    return s;
  }
  const std::uint32_t den = reduce(value.get_den(), modulus_);
  if (den == 0) throw DivisionByZero("denominator vanishes in " + name());
  const std::uint64_t num = reduce(value.get_num(), modulus_);
  s.residue_ = static_cast<std::uint32_t>(num * inverse_mod(den, modulus_) % modulus_);
  return s;
}

Field Scalar::field() const {
  return Field(modulus_);
}

void Scalar::check_same_field(const Scalar& other) const {
  if (modulus_ != other.modulus_) throw std::invalid_argument("scalar field mismatch");
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (modulus_ == 0) {
    s.rational_ = -rational_;
  } else if (residue_ != 0) {
    s.residue_ = modulus_ - residue_;
  }
  return s;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("division by zero in base field");
  Scalar s = *this;
  if (modulus_ == 0) {
    s.rational_ = 1 / rational_;
  } else {
    s.residue_ = inverse_mod(residue_, modulus_);
  }
  return s;
}

Scalar& Scalar::operator+=(const Scalar& other) {
  check_same_field(other);
  if (modulus_ == 0) {
    rational_ += other.rational_;
  } else {
    std::uint64_t r = std::uint64_t{residue_} + other.residue_;
    if (r >= modulus_) r -= modulus_;
    residue_ = static_cast<std::uint32_t>(r);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
  check_same_field(other);
  if (modulus_ == 0) {
    rational_ -= other.rational_;
  } else {
    std::uint64_t r = std::uint64_t{residue_} + modulus_ - other.residue_;
    if (r >= modulus_) r -= modulus_;
    residue_ = static_cast<std::uint32_t>(r);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& other) {
  check_same_field(other);
  if (modulus_ == 0) {
    rational_ *= other.rational_;
  } else {
    residue_ = static_cast<std::uint32_t>(std::uint64_t{residue_} * other.residue_ % modulus_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& other) {
  check_same_field(other);
  return *this *= other.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.modulus_ != b.modulus_) return false;
  return a.modulus_ != 0 ? a.residue_ == b.residue_ : a.rational_ == b.rational_;
}

Scalar Scalar::pow(unsigned long exponent) const {
  Scalar result = field().one();
  Scalar base = *this;
  while (exponent != 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent != 0) base *= base;
  }
  return result;
}

std::string Scalar::to_string() const {
  return modulus_ == 0 ? rational_.get_str() : std::to_string(residue_);
}

}  // namespace serival
