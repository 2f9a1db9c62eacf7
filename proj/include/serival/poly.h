#ifndef SERIVAL_POLY_H
#define SERIVAL_POLY_H

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "serival/field.h"
#include "serival/monomial.h"

namespace serival {

/// Sparse multivariate polynomial over a base field. Terms are kept sorted
/// ascending in graded-lexicographic order with nonzero coefficients only,
/// so the lowest-degree piece sits at the front and the leading term at the
/// back.
class Poly {
 public:
  using Term = std::pair<Monomial, Scalar>;

  Poly() = default;
  Poly(Field field, int nvars);

  static Poly constant(Field field, int nvars, const Scalar& value);
  static Poly monomial(Field field, int nvars, const Monomial& m, const Scalar& c);
  static Poly variable(Field field, int nvars, int index, int exponent = 1);
  /// Sorts, combines like terms and drops zeros.
  static Poly from_terms(Field field, int nvars, std::vector<Term> terms);

  const Field& field() const { return field_; }
  int nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  bool is_monomial() const { return terms_.size() == 1; }

  /// Largest total degree, -1 for the zero polynomial.
  int total_degree() const { return terms_.empty() ? -1 : terms_.back().first.degree(); }
  /// Smallest total degree, -1 for the zero polynomial.
  int low_degree() const { return terms_.empty() ? -1 : terms_.front().first.degree(); }
  int degree_in(int index) const;
  /// Requires a nonzero polynomial.
  const Term& leading_term() const { return terms_.back(); }
  Scalar coefficient(const Monomial& m) const;
  Scalar constant_term() const { return coefficient(Monomial()); }

  Poly homogeneous_part(int degree) const;
  /// Keeps the terms of total degree < prec.
  Poly truncated(int prec) const;
  /// Scaled so that the graded-lex leading coefficient is 1. Zero stays zero.
  Poly monic() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other) { return *this = *this * other; }
  Poly& operator*=(const Scalar& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) { return multiply(a, b, -1); }
  friend Poly operator*(Poly a, const Scalar& c) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Product keeping only terms of total degree < prec; prec < 0 keeps all.
  static Poly multiply(const Poly& a, const Poly& b, int prec);
  Poly pow(unsigned exponent, int prec = -1) const;
  Poly times_monomial(const Monomial& m, const Scalar& c) const;

  /// Renders with the given variable names; `ascending` lists low degree first.
  std::string to_string(std::span<const std::string> names, bool ascending = false) const;

 private:
  void check_compatible(const Poly& other) const;
  Field field_;
  int nvars_ = 0;
  std::vector<Term> terms_;
};

/// Exact quotient a / b if b divides a, nullopt otherwise.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

/// Monic greatest common divisor by content / primitive-part recursion on
/// the first variable. gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

/// Default variable names "<prefix>1", ..., "<prefix>n".
std::vector<std::string> indexed_names(const std::string& prefix, int count);

}  // namespace serival

#endif  // SERIVAL_POLY_H
