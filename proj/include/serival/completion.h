#ifndef SERIVAL_COMPLETION_H
#define SERIVAL_COMPLETION_H

#include <map>
#include <string>
#include <string_view>

#include "serival/ratfunc.h"
#include "serival/series.h"

namespace serival {

/// Upper bound on the total degree of any rational-function coefficient
/// produced by arithmetic on completed elements. Exceeding it raises
/// DegreeBudgetExceeded. Process-wide; default 200.
int degree_budget();
void set_degree_budget(int budget);

/// A truncated element of K((T_N)), K = k(t1, ..., t_{N-1}): coefficients
/// indexed by the T_N-degree, known below `tprec`. Elements with a negative
/// lowest degree lie outside the valuation ring K[[T_N]] but are still
/// representable.
class CompletedElement {
 public:
  CompletedElement() = default;
  /// The truncated zero. `nvars` is N, so coefficients live in N-1 variables.
  CompletedElement(Field field, int nvars, int tprec);
  static CompletedElement from_coefficients(Field field, int nvars, std::map<int, RatFunc> coeffs,
                                            int tprec = kExactPrec);
  /// c * T_N^j.
  static CompletedElement term(const RatFunc& c, int nvars, int j, int tprec = kExactPrec);

  const Field& field() const { return field_; }
  int nvars() const { return nvars_; }
  int tprec() const { return tprec_; }
  bool is_exact() const { return tprec_ >= kExactPrec; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::map<int, RatFunc>& coefficients() const { return coeffs_; }
  RatFunc coefficient(int j) const;
  /// Lowest stored degree; requires a nonzero element.
  int low_index() const { return coeffs_.begin()->first; }
  /// Whether the element lies in K[[T_N]] (no negative powers).
  bool in_valuation_ring() const { return coeffs_.empty() || low_index() >= 0; }
  /// Largest total degree among numerators and denominators.
  int max_coefficient_degree() const;

  CompletedElement truncated(int tprec) const;
  /// Multiplication by T_N^k.
  CompletedElement shifted(int k) const;
  CompletedElement scaled(const RatFunc& c) const;

  CompletedElement operator-() const;
  friend CompletedElement operator+(const CompletedElement& a, const CompletedElement& b);
  friend CompletedElement operator-(const CompletedElement& a, const CompletedElement& b) {
    return a + (-b);
  }
  friend CompletedElement operator*(const CompletedElement& a, const CompletedElement& b);
  CompletedElement& operator+=(const CompletedElement& b) { return *this = *this + b; }
  CompletedElement& operator-=(const CompletedElement& b) { return *this = *this - b; }
  CompletedElement& operator*=(const CompletedElement& b) { return *this = *this * b; }
  CompletedElement pow(unsigned exponent) const;

  friend bool operator==(const CompletedElement& a, const CompletedElement& b);

  /// "(t1^2)*T2^2 + T2^3 @8"; exact elements carry no annotation.
  std::string to_string() const;

 private:
  void check_compatible(const CompletedElement& other) const;

  Field field_;
  int nvars_ = 1;
  std::map<int, RatFunc> coeffs_;
  int tprec_ = kExactPrec;
};

/// Default number of T_N-digits produced when dividing exact elements whose
/// quotient does not terminate.
inline constexpr int kDefaultDivisionCap = 32;

/// a / b. The divisor must have an exact order. The quotient is known to
/// relative precision min(tprec_a - ord a, tprec_b - ord b); for exact
/// inputs it is exact when b is a single term and `cap` digits long otherwise.
CompletedElement divide(const CompletedElement& a, const CompletedElement& b,
                        int cap = kDefaultDivisionCap);
inline CompletedElement operator/(const CompletedElement& a, const CompletedElement& b) {
  return divide(a, b);
}

/// The blow-up substitution T_i = t_i * T_N (i < N). Order preserving.
CompletedElement embed_blowup(const Series& s);

OrderValue ord_hat(const CompletedElement& e);

/// ord(z - x/y), computed as ord(y z - x) - ord(y) so that no division in
/// K((T_N)) is needed. Requires ord(y) exact.
OrderValue distance(const CompletedElement& z, const Series& x, const Series& y);

/// Parses "(t1^2)*T2^2 + T2^3 @8". Identifiers: t1..t_{N-1}, the
/// uniformizer as "T<N>" or "TN", and T_i (i < N) standing for t_i * T_N.
CompletedElement parse_completed(std::string_view text, const Field& field, int nvars);

}  // namespace serival

#endif  // SERIVAL_COMPLETION_H
