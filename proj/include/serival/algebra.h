#ifndef SERIVAL_ALGEBRA_H
#define SERIVAL_ALGEBRA_H

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "serival/completion.h"
#include "serival/series.h"

namespace serival {

/// Q(Z) = a0 + a1 Z + ... + ad Z^d with coefficients in k[[T1..TN]].
class SeriesPoly {
 public:
  SeriesPoly() = default;
  /// Trailing coefficients that are exactly zero are dropped.
  explicit SeriesPoly(std::vector<Series> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Series>& coefficients() const { return coeffs_; }
  const Series& coeff(int i) const { return coeffs_[static_cast<std::size_t>(i)]; }
  const Series& leading() const { return coeffs_.back(); }
  int nvars() const { return coeffs_.front().nvars(); }
  const Field& field() const { return coeffs_.front().field(); }
  /// Smallest coefficient precision.
  int prec() const;
  bool is_monic() const;

  SeriesPoly derivative() const;
  Series operator()(const Series& z) const;

  friend bool operator==(const SeriesPoly&, const SeriesPoly&) = default;

  std::string to_string(const std::string& var = "Z") const;

 private:
  std::vector<Series> coeffs_;
};

/// P(X, Y) = a0 Y^d + a1 X Y^(d-1) + ... + ad X^d, sharing Q's coefficients.
struct HomogForm {
  std::vector<Series> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  const Series& coeff(int i) const { return coeffs[static_cast<std::size_t>(i)]; }
  std::string to_string() const;
  friend bool operator==(const HomogForm&, const HomogForm&) = default;
};

HomogForm homogenize(const SeriesPoly& q);

enum class Chart { kYEqualsOne, kXEqualsOne };

/// Y = 1 gives Q(Z) = P(Z, 1); X = 1 gives P(1, Y), whose coefficient
/// sequence is reversed.
SeriesPoly dehomogenize(const HomogForm& p, Chart chart = Chart::kYEqualsOne);

/// sum_i a_i x^i y^(d-i), with the usual truncated-product precision.
Series eval_P(const HomogForm& p, const Series& x, const Series& y);

/// Q_u(Z) = u^d a_d^(d-1) Q(Z / (u a_d)): the monic polynomial with
/// coefficients a_i u^(d-i) a_d^(d-i-1).
SeriesPoly normalize_Qu(const SeriesPoly& q, const Series& u);

struct DistinguishedReport {
  /// (i, homogeneous piece of a_i) for the terms of lowest weight ord(a_i) + i.
  std::vector<std::pair<int, Series>> initial_form;
  int initial_weight = 0;
  /// The initial form in Gr(k[[T, Z]]) is Z^d: a_d a unit and
  /// ord(a_i) > d - i for i < d.
  bool initial_is_Zd = false;
  /// Weierstrass convention: a_d a unit and every a_i (i < d) in m.
  bool weierstrass = false;
  std::string initial_form_text() const;
};

/// Throws PrecisionError when a truncated coefficient leaves the answer open.
DistinguishedReport is_distinguished(const SeriesPoly& q);

/// u = T_N^e with the smallest e >= 1 such that Q_u has initial form Z^d.
Series default_u(const SeriesPoly& q);

/// Elements of O_N[Z]/(Q) for monic Q, stored as coordinates in the basis
/// 1, Zbar, ..., Zbar^(d-1).
class QuotientRing {
 public:
  using Element = std::vector<Series>;

  explicit QuotientRing(SeriesPoly q);
  const SeriesPoly& modulus() const { return q_; }
  int degree() const { return q_.degree(); }

  Element from_series(const Series& s) const;
  Element zbar() const;
  /// Reduces a polynomial in Zbar of any degree.
  Element reduce(std::vector<Series> coeffs) const;
  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element mul(const Element& a, const Element& b) const;
  /// Componentwise congruence at the available precision.
  static bool congruent(const Element& a, const Element& b);

 private:
  SeriesPoly q_;
};

/// min_i (ord g_i + i). Requires Q with initial form Z^d; otherwise throws
/// std::domain_error("graded formula invalid: Q̄ ≠ Z^d").
OrderValue graded_order(const SeriesPoly& q, const QuotientRing::Element& g);

struct CofactorExpansion {
  /// b_0, ..., b_{d-1} in the quotient ring.
  std::vector<QuotientRing::Element> b;
  QuotientRing::Element h;
  /// f_0, ..., f_{d-1}, each obtained by an exact division by x^(i+1).
  std::vector<Series> f;
  /// P(x, y) and (x - Zbar y) h, reduced.
  Series p_value;
  QuotientRing::Element lhs;
  bool recurrence_holds = false;
  bool identity_holds = false;
  bool expansion_holds = false;
  /// Set when a root zbar in the completion was supplied: the identity
  /// (x - zbar y) h(zbar) = P(x, y) checked there.
  std::optional<bool> completion_identity_holds;
};

/// The b_i, h and f_i of the cofactor identity (x - Zbar y) h = P(x, y) for
/// monic Q. The f-sequence needs ord(x) exact (PrecisionError otherwise);
/// pass want_f = false to skip it.
CofactorExpansion cofactor_expand(const SeriesPoly& q, const Series& x, const Series& y,
                                  const std::optional<CompletedElement>& zbar = std::nullopt,
                                  bool want_f = true);

/// A polynomial with coefficients in the completion.
using HatPoly = std::vector<CompletedElement>;

HatPoly embed_poly(const SeriesPoly& q);
CompletedElement eval_hat(const HatPoly& f, const CompletedElement& z);
HatPoly derivative(const HatPoly& f);

struct HenselError : std::runtime_error {
  HenselError(const std::string& what, OrderValue residual, OrderValue derivative)
      : std::runtime_error(what), residual(residual), derivative(derivative) {}
  OrderValue residual;
  OrderValue derivative;
};

struct HenselStep {
  OrderValue residual;
  OrderValue derivative;
};

struct HenselResult {
  CompletedElement root;
  /// One entry per Newton iterate, starting with the seed.
  std::vector<HenselStep> steps;
};

/// Newton iteration z <- z - Q(z)/Q'(z) until ord Q(z) >= target. Requires
/// ord Q(seed) > 2 ord Q'(seed); throws HenselError otherwise, or with
/// "inseparable residual" when Q'(seed) vanishes.
HenselResult hensel_lift(const HatPoly& f, const CompletedElement& seed, int target);
HenselResult hensel_lift(const SeriesPoly& q, const CompletedElement& seed, int target);

struct RootInfo {
  CompletedElement z;
  int multiplicity = 1;
  /// z is known exactly (its minimal polynomial splits off over K_N).
  bool exact = false;
  /// For exact roots: z = u / v with u, v polynomials.
  std::optional<Series> u;
  std::optional<Series> v;
  /// gcd(u, v) is a unit.
  bool coprime = false;
};

struct RootSplit {
  std::vector<RootInfo> roots;
  /// Degree of the factor without roots found by the strategy.
  int rootless_degree = 0;
  int lifted_precision = kExactPrec;
  HatPoly remainder;
  std::vector<std::string> notes;
};

enum class SeedStrategy { kUserSeeds, kAutoSlopeZero };

/// Splits off the roots of Q in the completion. Auto mode reads integral
/// slopes off the Newton polygon and searches the residual polynomial for
/// roots c * t^alpha (c in k, small alpha); user mode lifts given seeds.
RootSplit root_split(const SeriesPoly& q, int tprec, SeedStrategy strategy = SeedStrategy::kAutoSlopeZero,
                     const std::vector<CompletedElement>& seeds = {});

/// Writes an exact element of K_N (finite T_N-expansion) as u / v with
/// coprime polynomials, undoing t_i = T_i / T_N. Nullopt if not exact.
std::optional<std::pair<Series, Series>> to_fraction(const CompletedElement& z);

/// "Z^2 - (T1^2 + T2^3) @8"; variables T1..TN and `var`.
SeriesPoly parse_series_poly(std::string_view text, const Field& field, int nvars,
                             const std::string& var = "Z");
/// "X^2 - T1^3*Y^2"; must be homogeneous in X, Y.
HomogForm parse_homog(std::string_view text, const Field& field, int nvars);

}  // namespace serival

#endif  // SERIVAL_ALGEBRA_H
