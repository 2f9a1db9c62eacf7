#ifndef SERIVAL_MEMBERSHIP_H
#define SERIVAL_MEMBERSHIP_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "serival/series.h"

namespace serival {

/// Solves A x = b exactly (rows of A given densely). Fraction-free
/// elimination over QQ, plain elimination over F_p; the pivot is the first
/// nonzero entry in column order. Free variables are set to zero. Nullopt
/// when the system is inconsistent.
std::optional<std::vector<Scalar>> solve_linear(const Field& field, std::vector<std::vector<Scalar>> a,
                                                std::vector<Scalar> b);

struct MembershipWitness {
  /// One coefficient per generator, each of order >= shift.
  std::vector<Series> eps;
  int shift = 0;
  int precision = 0;
  /// sum eps_j gen_j ≡ w mod m^precision, checked by series arithmetic.
  bool verified = false;
};

/// Decides w ≡ sum eps_j gens_j mod m^K with ord(eps_j) >= shift.
/// Nullopt means the truncated linear system is infeasible.
/// Throws std::invalid_argument if K < shift or an input is known to
/// less than K.
std::optional<MembershipWitness> in_ideal_mod(const Series& w, const std::vector<Series>& gens, int shift,
                                              int K);

struct ArtinReesReport {
  Series u;
  Series v;
  int i_max = 0;
  int K = 0;
  /// Smallest shift passing every test; empty when inconclusive.
  std::optional<int> i0;
  bool inconclusive = false;
  /// Number of membership problems solved.
  long tested = 0;
  /// For each rejected candidate i0: the first (i, w) that failed.
  std::vector<std::string> rejections;
};

/// Empirical Artin-Rees constant: the smallest i0 such that, for all
/// i <= i_max, every w in (u, v) ∩ m^(i+i0) (mod m^K) lies in
/// (u, v) m^i + m^K. The w-space is a k-vector space, so a basis of it is
/// tested; `budget` caps the number of membership solves. This is a
/// certificate at the given truncation only.
ArtinReesReport artin_rees_probe(const Series& u, const Series& v, int i_max, int K, long budget = 100000);

struct Projection {
  Series x;
  Series y;
};

/// For a solution line u Y - v X = 0: finds (xbar, ybar) with
/// u ybar - v xbar ≡ 0 mod m^K and xbar - x, ybar - y in m^i, or nullopt if
/// no such correction exists at this truncation.
std::optional<Projection> project_to_solution(const Series& x, const Series& y, const Series& u, const Series& v,
                                              int i, int K);

/// gcd(u, v) is a unit. Only decidable for exact (polynomial) inputs;
/// nullopt otherwise.
std::optional<bool> coprime(const Series& u, const Series& v);

/// All exponent vectors of total degree in [low, high), graded then
/// reverse-lex; the column order of the membership systems.
std::vector<Monomial> monomials_between(int nvars, int low, int high);

}  // namespace serival

#endif  // SERIVAL_MEMBERSHIP_H
