#ifndef SERIVAL_SERIES_H
#define SERIVAL_SERIES_H

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "serival/poly.h"

namespace serival {

/// Precision value standing for "no truncation": a polynomial known exactly.
inline constexpr int kExactPrec = 1 << 24;

/// Saturating sum for precisions and order bounds.
inline int sat_add(int a, int b) {
  const long s = static_cast<long>(a) + b;
  return s >= kExactPrec ? kExactPrec : static_cast<int>(s);
}

/// The m-adic order of a truncated object: either known exactly, or only
/// bounded below because everything under the precision vanished. Callers
/// must branch on is_exact() before using an order in an inequality.
class OrderValue {
 public:
  static OrderValue exact(int k) { return OrderValue(true, k); }
  static OrderValue at_least(int bound) { return OrderValue(false, std::min(bound, kExactPrec)); }
  static OrderValue infinite() { return OrderValue(false, kExactPrec); }

  bool is_exact() const { return exact_; }
  /// An at-least value carrying no information cut-off: an actual zero.
  bool is_infinite() const { return !exact_ && value_ >= kExactPrec; }
  /// The exact order; throws PrecisionError for at-least values.
  int value() const;
  /// Exact order, or the lower bound for at-least values.
  int bound() const { return value_; }

  /// "3", ">=5" or "inf".
  std::string to_string() const;

  friend bool operator==(const OrderValue&, const OrderValue&) = default;

 private:
  OrderValue(bool exact, int value) : exact_(exact), value_(value) {}
  bool exact_;
  int value_;
};

/// Order of a product: exact + exact stays exact.
OrderValue operator+(const OrderValue& a, const OrderValue& b);
/// Order of a sum known to be at least both: min with at-least propagation.
OrderValue min_order(const OrderValue& a, const OrderValue& b);

/// A truncated element of k[[T1, ..., TN]]: the class of a polynomial
/// modulo m^prec. Terms of total degree >= prec are never stored.
class Series {
 public:
  Series() = default;
  /// The truncated zero at the given precision.
  Series(Field field, int nvars, int prec);
  Series(Poly poly, int prec);
  static Series exact(Poly poly) { return Series(std::move(poly), kExactPrec); }
  static Series constant(Field field, int nvars, const Scalar& c, int prec = kExactPrec);
  static Series variable(Field field, int nvars, int index, int exponent = 1, int prec = kExactPrec);

  const Poly& poly() const { return poly_; }
  int prec() const { return prec_; }
  bool is_exact() const { return prec_ >= kExactPrec; }
  int nvars() const { return poly_.nvars(); }
  const Field& field() const { return poly_.field(); }
  /// No stored term: zero at this precision (an actual zero if exact).
  bool is_zero() const { return poly_.is_zero(); }

  Series truncated(int prec) const;
  Series homogeneous_part(int degree) const;

  Series operator-() const { return Series(-poly_, prec_); }
  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b);
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator*(const Series& a, const Scalar& c) { return Series(a.poly_ * c, a.prec_); }
  Series& operator+=(const Series& b) { return *this = *this + b; }
  Series& operator-=(const Series& b) { return *this = *this - b; }
  Series& operator*=(const Series& b) { return *this = *this * b; }
  Series pow(unsigned exponent) const;

  /// Structural equality: same stored terms and same precision.
  friend bool operator==(const Series& a, const Series& b) = default;

  /// "1 + T1^2*T2 - 3*T2^3 @6"; exact series carry no annotation.
  std::string to_string() const;

 private:
  Poly poly_;
  int prec_ = kExactPrec;
};

/// Names T1, ..., TN.
std::vector<std::string> series_names(int nvars);

OrderValue ord(const Series& s);

/// Whether a and b agree modulo m^min(prec_a, prec_b).
bool congruent(const Series& a, const Series& b);

/// The homogeneous piece of degree ord(s). Throws PrecisionError on a
/// truncated zero.
Series initial_form(const Series& s);

struct NotDivisible {
  /// First total degree at which x = q*y has no solution.
  int degree;
};

using DivisionOutcome = std::variant<Series, NotDivisible>;

/// Decides divisibility of x by y in k[[T]] by solving for the quotient one
/// graded piece at a time. The quotient has precision
/// min(prec_x, prec_y) - ord(y); when both inputs are exact and the
/// quotient is not a polynomial it is truncated at `quotient_cap`.
/// Throws PrecisionError if y is a truncated zero.
DivisionOutcome exact_divide(const Series& x, const Series& y, int quotient_cap = 64);

/// Reproducible pseudorandom series: every monomial of degree < prec is
/// present with probability `density`, with a uniformly chosen nonzero
/// coefficient (over QQ: numerator in [-height, height], denominator in
/// [1, height]).
Series random_series(const Field& field, int nvars, int prec, double density, std::uint64_t seed,
                     int height = 1);

/// Parses "1 + T1^2*T2 - 3*T2^3 @6". Without "@prec" the series is exact.
Series parse_series(std::string_view text, const Field& field, int nvars);

/// Splits "expr @prec" into its parts; prec = kExactPrec if absent.
std::pair<std::string_view, int> split_precision(std::string_view text);

}  // namespace serival

#endif  // SERIVAL_SERIES_H
