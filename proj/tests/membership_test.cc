#include <gtest/gtest.h>

#include <map>
#include <random>

#include "serival/membership.h"

using namespace serival;

namespace {

Field qq() { return Field::rationals(); }
Series S(const char* text, const Field& f = Field::rationals(), int n = 2) { return parse_series(text, f, n); }

// A x = b checked by direct substitution.
bool satisfies(const std::vector<std::vector<Scalar>>& a, const std::vector<Scalar>& b,
               const std::vector<Scalar>& x) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    Scalar acc = b[i].field().zero();
    for (std::size_t j = 0; j < x.size(); ++j) acc += a[i][j] * x[j];
    if (acc != b[i]) return false;
  }
  return true;
}

}  // namespace

TEST(SolveLinear, RationalConsistent) {
  const Field f = qq();
  auto s = [&](long v) { return f.from_int(v); };
  std::vector<std::vector<Scalar>> a = {{s(2), s(1), s(0)}, {s(4), s(3), s(1)}, {s(0), s(1), s(1)}};
  std::vector<Scalar> b = {s(1), s(2), s(0)};
  const auto x = solve_linear(f, a, b);
  ASSERT_TRUE(x);
  EXPECT_TRUE(satisfies(a, b, *x));
}

TEST(SolveLinear, InconsistentIsNullopt) {
  for (const Field& f : {qq(), Field::prime(5)}) {
    auto s = [&](long v) { return f.from_int(v); };
    std::vector<std::vector<Scalar>> a = {{s(1), s(1)}, {s(2), s(2)}};
    EXPECT_FALSE(solve_linear(f, a, {s(1), s(3)}));
  }
}

TEST(SolveLinear, RandomSystemsAgainstSubstitution) {
  std::mt19937_64 gen(7);
  for (const Field& f : {qq(), Field::prime(3)}) {
    for (int trial = 0; trial < 60; ++trial) {
      const int rows = 1 + static_cast<int>(gen() % 6);
      const int cols = 1 + static_cast<int>(gen() % 6);
      std::vector<std::vector<Scalar>> a(static_cast<std::size_t>(rows));
      for (auto& row : a) {
        for (int j = 0; j < cols; ++j) row.push_back(f.from_int(static_cast<long>(gen() % 5) - 2));
      }
      // Build b from a known x so the system is consistent.
      std::vector<Scalar> x0;
      for (int j = 0; j < cols; ++j) x0.push_back(f.from_int(static_cast<long>(gen() % 7) - 3));
      std::vector<Scalar> b;
      for (const auto& row : a) {
        Scalar acc = f.zero();
        for (int j = 0; j < cols; ++j) acc += row[static_cast<std::size_t>(j)] * x0[static_cast<std::size_t>(j)];
        b.push_back(acc);
      }
      const auto x = solve_linear(f, a, b);
      ASSERT_TRUE(x);
      EXPECT_TRUE(satisfies(a, b, *x));
    }
  }
}

TEST(Monomials, CountsByDegree) {
  EXPECT_EQ(monomials_between(2, 0, 4).size(), 10u);
  EXPECT_EQ(monomials_between(3, 2, 3).size(), 6u);
  EXPECT_EQ(monomials_between(2, 3, 3).size(), 0u);
}

TEST(InIdealMod, CubeOfT1) {
  const auto r = in_ideal_mod(S("T1^3"), {S("T1"), S("T2")}, 2, 5);
  ASSERT_TRUE(r);
  EXPECT_TRUE(r->verified);
  EXPECT_EQ(r->eps[0], S("T1^2"));
  EXPECT_TRUE(r->eps[1].is_zero());
}

TEST(InIdealMod, UnitIsNotInMaximalIdeal) {
  EXPECT_FALSE(in_ideal_mod(S("1"), {S("T1"), S("T2")}, 0, 2));
}

TEST(InIdealMod, ShiftTooLargeFails) {
  // T1^2 = T1 * T1 needs eps of order 1.
  EXPECT_TRUE(in_ideal_mod(S("T1^2"), {S("T1"), S("T2")}, 1, 5));
  EXPECT_FALSE(in_ideal_mod(S("T1^2"), {S("T1"), S("T2")}, 2, 5));
}

TEST(InIdealMod, BadArguments) {
  EXPECT_THROW(in_ideal_mod(S("T1"), {S("T1")}, 4, 3), std::invalid_argument);
  EXPECT_THROW(in_ideal_mod(S("T1 @3"), {S("T1")}, 0, 5), std::invalid_argument);
  EXPECT_THROW(in_ideal_mod(S("T1"), {S("T1 @2")}, 0, 5), std::invalid_argument);
}

TEST(InIdealMod, ConstructThenSolve) {
  for (const Field& f : {qq(), Field::prime(5)}) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(trial);
      const int K = 6;
      const int shift = trial % 3;
      const Series u = random_series(f, 2, K, 0.5, seed).truncated(K);
      const Series v = random_series(f, 2, K, 0.5, seed + 77).truncated(K);
      // eps_j of order >= shift: multiply by T2^shift.
      const Series m = Series::variable(f, 2, 1, shift);
      const Series e1 = m * random_series(f, 2, K, 0.5, seed + 5);
      const Series e2 = m * random_series(f, 2, K, 0.5, seed + 9);
      const Series w = Series::exact((e1 * u + e2 * v).truncated(K).poly());
      const Series ue = Series::exact(u.poly());
      const Series ve = Series::exact(v.poly());
      const auto r = in_ideal_mod(w, {ue, ve}, shift, K);
      ASSERT_TRUE(r) << w.to_string();
      EXPECT_TRUE(r->verified);
      const Series back = (r->eps[0] * ue + r->eps[1] * ve).truncated(K);
      EXPECT_TRUE((back - w.truncated(K)).is_zero());
    }
  }
}

// Over F2 with two variables and K = 4 everything lives in the 10-bit space
// of polynomials of degree < 4, so the module eps1 u + eps2 v can be listed
// completely by a Gray-code walk over the generating products.
TEST(InIdealMod, ExhaustiveOverF2) {
  const Field f2 = Field::prime(2);
  const int K = 4;
  std::map<std::pair<int, int>, int> bit;
  for (int d = 0; d < K; ++d) {
    for (int a = d; a >= 0; --a) bit.emplace(std::make_pair(a, d - a), static_cast<int>(bit.size()));
  }
  auto to_mask = [&](const Series& s) {
    unsigned mask = 0;
    for (const auto& [m, c] : s.poly().terms()) {
      if (m.degree() < K && !c.is_zero()) mask ^= 1u << bit.at({m.exponent(0), m.exponent(1)});
    }
    return mask;
  };
  auto from_mask = [&](unsigned mask) {
    Series s(f2, 2, kExactPrec);
    for (const auto& [e, b] : bit) {
      if (mask >> b & 1u) s += Series::variable(f2, 2, 0, e.first) * Series::variable(f2, 2, 1, e.second);
    }
    return s;
  };

  std::mt19937_64 gen(2024);
  int yes = 0, no = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Series u = from_mask(static_cast<unsigned>(gen() % 1024) & ~1u);
    const Series v = from_mask(static_cast<unsigned>(gen() % 1024) & ~1u);
    const int shift = static_cast<int>(gen() % 3);
    // Generators of the module: T^a u and T^a v with |a| >= shift.
    std::vector<unsigned> gens;
    for (const auto& [e, b] : bit) {
      if (e.first + e.second < shift) continue;
      const Series mono = Series::variable(f2, 2, 0, e.first) * Series::variable(f2, 2, 1, e.second);
      gens.push_back(to_mask(mono * u));
      gens.push_back(to_mask(mono * v));
    }
    std::vector<bool> reachable(1024, false);
    unsigned cur = 0;
    reachable[0] = true;
    for (std::uint32_t k = 1; k < (1u << gens.size()); ++k) {
      cur ^= gens[static_cast<std::size_t>(__builtin_ctz(k))];
      reachable[cur] = true;
    }
    for (int q = 0; q < 24; ++q) {
      const unsigned w = static_cast<unsigned>(gen() % 1024);
      const auto r = in_ideal_mod(from_mask(w), {u, v}, shift, K);
      EXPECT_EQ(r.has_value(), reachable[w]) << "u=" << u.to_string() << " v=" << v.to_string() << " w=" << w;
      if (r) {
        EXPECT_TRUE(r->verified);
        ++yes;
      } else {
        ++no;
      }
    }
  }
  EXPECT_GT(yes, 100);
  EXPECT_GT(no, 100);
}

TEST(ArtinRees, MaximalIdeal) {
  const auto r = artin_rees_probe(S("T1"), S("T2"), 3, 7);
  ASSERT_TRUE(r.i0);
  EXPECT_EQ(*r.i0, 1);
  EXPECT_FALSE(r.inconclusive);
  EXPECT_EQ(r.rejections.size(), 1u);
}

TEST(ArtinRees, RepeatedGenerator) {
  const auto r = artin_rees_probe(S("T1"), S("T1"), 3, 7);
  ASSERT_TRUE(r.i0);
  EXPECT_EQ(*r.i0, 1);
}

TEST(ArtinRees, NonCoprimePair) {
  const auto r = artin_rees_probe(S("T1^2"), S("T1*T2"), 3, 8);
  ASSERT_TRUE(r.i0);
  EXPECT_EQ(*r.i0, 2);
}

TEST(ArtinRees, BudgetExhaustion) {
  const auto r = artin_rees_probe(S("T1^2"), S("T1*T2"), 3, 8, 2);
  EXPECT_TRUE(r.inconclusive);
  EXPECT_FALSE(r.i0);
}

TEST(Projection, RemovesHighOrderError) {
  const auto p = project_to_solution(S("T1 + T2^5"), S("T2"), S("T1"), S("T2"), 4, 8);
  ASSERT_TRUE(p);
  EXPECT_TRUE((S("T1") * p->y - S("T2") * p->x).truncated(8).is_zero());
  EXPECT_GE(ord(p->x - S("T1 + T2^5")).bound(), 4);
  EXPECT_GE(ord(p->y - S("T2")).bound(), 4);
  EXPECT_EQ(p->x.truncated(8).poly(), S("T1").poly());
  EXPECT_EQ(p->y.truncated(8).poly(), S("T2").poly());
}

TEST(Projection, ErrorTooLowIsRejected) {
  EXPECT_FALSE(project_to_solution(S("T1 + T2^2"), S("T2"), S("T1"), S("T2"), 4, 8));
}

TEST(Coprime, ExactInputs) {
  EXPECT_EQ(coprime(S("T1"), S("T2")), true);
  EXPECT_EQ(coprime(S("T1^2"), S("T1*T2")), false);
  EXPECT_FALSE(coprime(S("T1 @4"), S("T2")).has_value());
}
