#ifndef SERIVAL_RATFUNC_H
#define SERIVAL_RATFUNC_H

#include <span>
#include <string>

#include "serival/poly.h"

namespace serival {

/// An element of K = k(t1, ..., tn).
///
/// Canonical form: numerator and denominator coprime, denominator monic in
/// graded-lex order, zero stored as 0/1. Coprimality is enforced only for
/// n <= kMaxGcdVars; beyond that the denominator is merely made monic and
/// equality falls back to cross-multiplication.
class RatFunc {
 public:
  static constexpr int kMaxGcdVars = 2;

  RatFunc() = default;
  RatFunc(Field field, int nvars);

  /// Throws DivisionByZero("division by zero in K") if den == 0.
  static RatFunc normalize(Poly num, Poly den);
  static RatFunc from_poly(Poly num);
  static RatFunc constant(Field field, int nvars, const Scalar& value);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const Field& field() const { return num_.field(); }
  int nvars() const { return num_.nvars(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  /// max(total degree of numerator, total degree of denominator).
  int degree() const { return std::max(num_.total_degree(), den_.total_degree()); }
  /// Whether canonical forms are unique, so == is structural.
  bool is_reduced() const { return nvars() <= kMaxGcdVars; }

  RatFunc operator-() const;
  RatFunc inverse() const;
  RatFunc& operator+=(const RatFunc& other) { return *this = *this + other; }
  RatFunc& operator-=(const RatFunc& other) { return *this = *this - other; }
  RatFunc& operator*=(const RatFunc& other) { return *this = *this * other; }
  RatFunc& operator/=(const RatFunc& other) { return *this = *this / other; }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend bool operator==(const RatFunc& a, const RatFunc& b);
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  RatFunc scaled(const Scalar& c) const;
  RatFunc pow(long exponent) const;

  std::string to_string(std::span<const std::string> names) const;
  /// Names t1..tn.
  std::string to_string() const;

 private:
  RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {}
  Poly num_;
  Poly den_;
};

}  // namespace serival

#endif  // SERIVAL_RATFUNC_H
