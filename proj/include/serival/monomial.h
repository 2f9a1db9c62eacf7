#ifndef SERIVAL_MONOMIAL_H
#define SERIVAL_MONOMIAL_H

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>

namespace serival {

/// Exponent vector in at most kMaxVars variables. Slot 0 caches the total
/// degree, so the built-in lexicographic comparison of the array is the
/// graded-lexicographic order with x1 > x2 > ... .
class Monomial {
 public:
  static constexpr int kMaxVars = 7;
  static constexpr int kMaxDegree = 65535;

  constexpr Monomial() = default;

  static Monomial from_exponents(std::span<const int> exponents) {
    if (static_cast<int>(exponents.size()) > kMaxVars) {
      throw std::invalid_argument("too many variables in monomial");
    }
    Monomial m;
    int total = 0;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      if (exponents[i] < 0) throw std::invalid_argument("negative exponent in monomial");
      total += exponents[i];
      m.e_[i + 1] = static_cast<std::uint16_t>(exponents[i]);
    }
    if (total > kMaxDegree) throw std::overflow_error("monomial degree overflow");
    m.e_[0] = static_cast<std::uint16_t>(total);
    return m;
  }

  static Monomial variable(int index, int exponent = 1) {
    if (index < 0 || index >= kMaxVars) throw std::invalid_argument("variable index out of range");
    if (exponent < 0 || exponent > kMaxDegree) throw std::overflow_error("monomial degree overflow");
    Monomial m;
    m.e_[0] = static_cast<std::uint16_t>(exponent);
    m.e_[index + 1] = static_cast<std::uint16_t>(exponent);
    return m;
  }

  int degree() const { return e_[0]; }
  int exponent(int index) const { return e_[index + 1]; }
  bool is_one() const { return e_[0] == 0; }

  Monomial operator*(const Monomial& other) const {
    if (int{e_[0]} + int{other.e_[0]} > kMaxDegree) {
      throw std::overflow_error("monomial degree overflow");
    }
    Monomial m;
    for (int i = 0; i <= kMaxVars; ++i) m.e_[i] = static_cast<std::uint16_t>(e_[i] + other.e_[i]);
    return m;
  }

  bool divides(const Monomial& other) const {
    for (int i = 1; i <= kMaxVars; ++i) {
      if (e_[i] > other.e_[i]) return false;
    }
    return true;
  }

  /// Requires other.divides(*this).
  Monomial operator/(const Monomial& other) const {
    Monomial m;
    for (int i = 0; i <= kMaxVars; ++i) m.e_[i] = static_cast<std::uint16_t>(e_[i] - other.e_[i]);
    return m;
  }

  /// Componentwise minimum (the gcd of two monomials).
  Monomial meet(const Monomial& other) const {
    Monomial m;
    int total = 0;
    for (int i = 1; i <= kMaxVars; ++i) {
      m.e_[i] = std::min(e_[i], other.e_[i]);
      total += m.e_[i];
    }
    m.e_[0] = static_cast<std::uint16_t>(total);
    return m;
  }

  /// Drops variable `index` and shifts the later ones down.
  Monomial without(int index) const {
    Monomial m;
    int j = 1;
    for (int i = 1; i <= kMaxVars; ++i) {
      if (i == index + 1) continue;
      m.e_[j++] = e_[i];
    }
    m.e_[0] = static_cast<std::uint16_t>(e_[0] - e_[index + 1]);
    return m;
  }

  /// Inverse of without(0): inserts a new first variable with `exponent`.
  Monomial prepend(int exponent) const {
    if (e_[kMaxVars] != 0) throw std::invalid_argument("too many variables in monomial");
    if (int{e_[0]} + exponent > kMaxDegree) throw std::overflow_error("monomial degree overflow");
    Monomial m;
    m.e_[0] = static_cast<std::uint16_t>(e_[0] + exponent);
    m.e_[1] = static_cast<std::uint16_t>(exponent);
    for (int i = 1; i < kMaxVars; ++i) m.e_[i + 1] = e_[i];
    return m;
  }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::array<std::uint16_t, kMaxVars + 1> e_{};
};

}  // namespace serival

#endif  // SERIVAL_MONOMIAL_H
